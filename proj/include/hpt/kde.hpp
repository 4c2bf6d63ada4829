#ifndef HPT_KDE_HPP_
#define HPT_KDE_HPP_

#include <cstddef>
#include <vector>

#include "hpt/rng.hpp"
#include "hpt/search_space.hpp"
#include "hpt/value.hpp"

namespace hpt {

/// Product kernel density estimator over a search space, fitted on observed
/// configurations. Numeric dimensions use Gaussian kernels in the unit-cube
/// encoding, truncated and renormalized to [0, 1]; integer dimensions
/// integrate that kernel over half-unit cells; categorical dimensions mix the
/// center choice with a uniform floor over the alternatives.
///
/// Densities are reported against each dimension's prior base measure:
/// Lebesgue on the native interval for float kinds, counting measure for
/// integer and categorical kinds. The per-dimension mixture then integrates
/// (or sums) to one.
class KdeEstimator {
public:
  /// `unit_points` holds unit-cube encodings, one row per observation.
  static KdeEstimator fit(std::vector<std::vector<double>> unit_points,
                          const SearchSpace& space);
  static KdeEstimator fit_configs(const std::vector<Configuration>& points,
                                  const SearchSpace& space);

  /// Log density of an encoded configuration, measured per dimension against
  /// unit Lebesgue (float kinds) or counting (int/categorical) measure. The
  /// acquisition ratio uses this; base-measure factors cancel there.
  double log_density_unit(const std::vector<double>& u) const;

  /// Density in native coordinates; validates the configuration.
  double pdf(const Configuration& config) const;

  /// One draw: pick a center uniformly, then widen each numeric kernel by
  /// `bandwidth_factor`; categorical dimensions use the fitted kernel as is.
  std::vector<double> sample_unit(Rng& rng, double bandwidth_factor) const;
  Configuration sample(Rng& rng, double bandwidth_factor) const;

  const SearchSpace& space() const { return space_; }
  std::size_t n_points() const { return n_; }

  /// Numeric dims: kernel standard deviation in unit coordinates.
  /// Categorical dims: off-center mixing weight.
  double bandwidth(std::size_t dim) const { return bw_.at(dim); }

private:
  KdeEstimator() = default;

  double dim_log_mixture(std::size_t d, double u) const;

  SearchSpace space_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> pts_;       // row-major [point][dim], unit coordinates
  std::vector<double> bw_;        // per dim (see bandwidth())
  std::vector<double> log_norm_;  // row-major: -log(bw * sqrt(2pi) * Z_i) per numeric entry
  std::vector<double> trunc_z_;   // row-major: truncation mass Z_i per numeric entry

  struct DimInfo {
    DomainKind kind;
    double n_cells = 0;    // uniform_int: number of values
    double n_choices = 0;  // categorical
  };
  std::vector<DimInfo> dims_;
};

/// Draw from a Gaussian N(center, sd) truncated to [0, 1].
double sample_truncated_normal(Rng& rng, double center, double sd);

}  // namespace hpt

#endif  // HPT_KDE_HPP_
