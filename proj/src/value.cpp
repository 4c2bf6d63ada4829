#include "hpt/value.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace hpt {

std::string format_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("format_double: non-finite value");
  }
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

std::string value_to_string(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    return format_double(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&v)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(v);
}

}  // namespace hpt
