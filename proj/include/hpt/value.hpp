#ifndef HPT_VALUE_HPP_
#define HPT_VALUE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace hpt {

/// A single hyperparameter value: real, integer, or categorical label.
using Value = std::variant<double, std::int64_t, std::string>;

/// A full hyperparameter setting: one value per hyperparameter of some
/// search space, keyed by name.
using Configuration = std::map<std::string, Value>;

/// Canonical text form of a value. Doubles use the shortest decimal that
/// round-trips, so two bit-equal doubles always format identically.
std::string value_to_string(const Value& v);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace hpt

#endif  // HPT_VALUE_HPP_
