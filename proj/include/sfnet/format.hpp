#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace sfnet::detail {

/// Shortest decimal form that round-trips the exact double (std::to_chars).
/// Used for all CSV output so files are byte-stable across runs.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) throw std::logic_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

/// Fixed-point form with the given number of fractional digits.
inline std::string format_fixed(double x, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, precision);
  if (res.ec != std::errc()) throw std::logic_error("format_fixed: conversion failed");
  return std::string(buf, res.ptr);
}

}  // namespace sfnet::detail
