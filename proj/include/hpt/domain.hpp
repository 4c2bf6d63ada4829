#ifndef HPT_DOMAIN_HPP_
#define HPT_DOMAIN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpt/rng.hpp"
#include "hpt/value.hpp"

namespace hpt {

enum class DomainKind { categorical, uniform_int, uniform_float, log_uniform_float };

const char* to_string(DomainKind kind);

/// One hyperparameter's range together with its implicit prior: uniform over
/// choices or the interval, uniform in log space for log_uniform_float.
///
/// Prior measure conventions: counting measure for categorical and integer
/// domains, interval length for uniform_float, and base-2 log length for
/// log_uniform_float (so power-of-two bounds have exact measures).
class Domain {
public:
  static Domain categorical(std::vector<std::string> choices);
  static Domain uniform_int(std::int64_t lo, std::int64_t hi);
  static Domain uniform_float(double lo, double hi);
  static Domain log_uniform_float(double lo, double hi);

  DomainKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ != DomainKind::categorical; }

  double float_lo() const { return flo_; }
  double float_hi() const { return fhi_; }
  std::int64_t int_lo() const { return ilo_; }
  std::int64_t int_hi() const { return ihi_; }
  const std::vector<std::string>& choices() const { return choices_; }
  std::size_t n_choices() const { return choices_.size(); }
  /// Index of a label, or nullopt if absent.
  std::optional<std::size_t> choice_index(const std::string& label) const;

  bool contains(const Value& v) const;

  /// Prior measure of the whole domain (see class comment for units).
  double measure() const;

  /// Map a contained value into [0, 1] of the transformed prior coordinate.
  /// Integers map to the center of their half-unit cell; categorical values
  /// map to their index scaled the same way.
  double to_unit(const Value& v) const;

  /// Inverse of to_unit; u in [0, 1]. Integer and categorical domains invert
  /// by cell so a uniform u yields the uniform prior exactly.
  Value from_unit(double u) const;

  /// One draw from the prior.
  Value sample(Rng& rng) const { return from_unit(rng.uniform()); }

  bool operator==(const Domain& other) const;

  std::string describe() const;

private:
  Domain() = default;

  DomainKind kind_ = DomainKind::uniform_float;
  double flo_ = 0.0, fhi_ = 0.0;       // float kinds; log kind stores native bounds
  std::int64_t ilo_ = 0, ihi_ = 0;     // uniform_int
  std::vector<std::string> choices_;   // categorical
};

/// Intersection of two same-kind domains, empty optional when the overlap has
/// zero prior mass. Categorical intersections keep `second`'s choice order.
std::optional<Domain> intersect(const Domain& first, const Domain& second);

}  // namespace hpt

#endif  // HPT_DOMAIN_HPP_
