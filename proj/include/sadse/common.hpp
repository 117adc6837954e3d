#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sadse {

// On-chip / DRAM quantities are counted in datum words, time in clock cycles.
using Words = std::int64_t;
using Cycles = std::int64_t;
using Count = std::int64_t;

// Thrown for malformed input documents and contract violations on user data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  return (num + den - 1) / den;
}

}  // namespace sadse
