#include "hpt/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hpt {
namespace {

constexpr double kMinBandwidth = 1e-3;
constexpr double kScottCoeff = 1.06;

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

}  // namespace

double sample_truncated_normal(Rng& rng, double center, double sd) {
  if (!(sd > 0.0)) {
    throw std::invalid_argument("sample_truncated_normal: sd must be positive");
  }
  if (sd <= 1.0) {
    // acceptance >= ~0.3 for any center in [0, 1]
    for (;;) {
      const double x = center + sd * rng.normal();
      if (x >= 0.0 && x <= 1.0) return x;
    }
  }
  // near-flat kernel: uniform proposal, bounded density ratio
  const double zmin = (std::clamp(center, 0.0, 1.0) - center) / sd;
  for (;;) {
    const double x = rng.uniform();
    const double z = (x - center) / sd;
    const double log_accept = 0.5 * (zmin * zmin - z * z);
    if (rng.uniform() < std::exp(log_accept)) return x;
  }
}

KdeEstimator KdeEstimator::fit(std::vector<std::vector<double>> unit_points,
                               const SearchSpace& space) {
  if (unit_points.empty()) {
    throw std::invalid_argument("fit_kde: need at least one point");
  }
  KdeEstimator est;
  est.space_ = space;
  est.n_ = unit_points.size();
  est.dim_ = space.dim();
  est.pts_.reserve(est.n_ * est.dim_);
  for (const auto& row : unit_points) {
    if (row.size() != est.dim_) {
      throw std::invalid_argument("fit_kde: point dimension mismatch");
    }
    est.pts_.insert(est.pts_.end(), row.begin(), row.end());
  }

  est.dims_.resize(est.dim_);
  est.bw_.resize(est.dim_, 0.0);
  est.log_norm_.assign(est.n_ * est.dim_, 0.0);
  est.trunc_z_.assign(est.n_ * est.dim_, 1.0);
  const double n = static_cast<double>(est.n_);
  const double scott_exp = -1.0 / (static_cast<double>(est.dim_) + 4.0);
  const double log_sqrt_2pi = 0.5 * std::log(2.0 * std::numbers::pi);

  for (std::size_t d = 0; d < est.dim_; ++d) {
    const auto& dom = space.domain(d);
    auto& info = est.dims_[d];
    info.kind = dom.kind();
    if (dom.kind() == DomainKind::categorical) {
      info.n_choices = static_cast<double>(dom.n_choices());
      // smoothing weight toward the alternatives, shrinking with data
      est.bw_[d] = (info.n_choices - 1.0) / (info.n_choices - 1.0 + n);
      continue;
    }
    if (dom.kind() == DomainKind::uniform_int) {
      info.n_cells = static_cast<double>(dom.int_hi() - dom.int_lo() + 1);
    }
    // normal-reference bandwidth on unit coordinates, floored
    double mean = 0.0;
    for (std::size_t i = 0; i < est.n_; ++i) mean += est.pts_[i * est.dim_ + d];
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < est.n_; ++i) {
      const double c = est.pts_[i * est.dim_ + d] - mean;
      var += c * c;
    }
    var /= n;
    const double bw =
        std::max(kMinBandwidth, kScottCoeff * std::sqrt(var) * std::pow(n, scott_exp));
    est.bw_[d] = bw;
    for (std::size_t i = 0; i < est.n_; ++i) {
      const double c = est.pts_[i * est.dim_ + d];
      const double z = normal_cdf((1.0 - c) / bw) - normal_cdf((0.0 - c) / bw);
      est.trunc_z_[i * est.dim_ + d] = z;
      est.log_norm_[i * est.dim_ + d] = -(std::log(bw) + log_sqrt_2pi + std::log(z));
    }
  }
  return est;
}

KdeEstimator KdeEstimator::fit_configs(const std::vector<Configuration>& points,
                                       const SearchSpace& space) {
  std::vector<std::vector<double>> unit;
  unit.reserve(points.size());
  for (const auto& c : points) unit.push_back(space.encode(c));
  return fit(std::move(unit), space);
}

double KdeEstimator::dim_log_mixture(std::size_t d, double u) const {
  const auto& info = dims_[d];
  const double n = static_cast<double>(n_);
  switch (info.kind) {
    case DomainKind::categorical: {
      const double m = info.n_choices;
      if (m <= 1.0) return 0.0;
      const double w = bw_[d];
      const auto idx = std::min(m - 1.0, std::floor(u * m));
      double p = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double ci = std::min(m - 1.0, std::floor(pts_[i * dim_ + d] * m));
        p += (ci == idx) ? (1.0 - w) : w / (m - 1.0);
      }
      return std::log(p / n);
    }
    case DomainKind::uniform_int: {
      const double cells = info.n_cells;
      const double cell = std::min(cells - 1.0, std::floor(u * cells));
      const double a = cell / cells;
      const double b = (cell + 1.0) / cells;
      double p = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double c = pts_[i * dim_ + d];
        const double bw = bw_[d];
        const double mass = normal_cdf((b - c) / bw) - normal_cdf((a - c) / bw);
        p += mass / trunc_z_[i * dim_ + d];
      }
      // probability of the cell; can underflow only in irrelevantly deep tails
      return std::log(p / n);
    }
    case DomainKind::uniform_float:
    case DomainKind::log_uniform_float: {
      const double bw = bw_[d];
      double max_e = -std::numeric_limits<double>::infinity();
      thread_local std::vector<double> terms;
      terms.clear();
      terms.reserve(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const double z = (u - pts_[i * dim_ + d]) / bw;
        const double e = -0.5 * z * z + log_norm_[i * dim_ + d];
        terms.push_back(e);
        max_e = std::max(max_e, e);
      }
      if (!std::isfinite(max_e)) return max_e;
      double s = 0.0;
      for (double e : terms) s += std::exp(e - max_e);
      return max_e + std::log(s / n);
    }
  }
  return 0.0;
}

double KdeEstimator::log_density_unit(const std::vector<double>& u) const {
  if (u.size() != dim_) {
    throw std::invalid_argument("log_density_unit: dimension mismatch");
  }
  double lp = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) lp += dim_log_mixture(d, u[d]);
  return lp;
}

double KdeEstimator::pdf(const Configuration& config) const {
  const auto u = space_.encode(config);
  double lp = log_density_unit(u);
  // convert float dimensions from unit to native Lebesgue measure
  for (std::size_t d = 0; d < dim_; ++d) {
    const auto& dom = space_.domain(d);
    if (dom.kind() == DomainKind::uniform_float) {
      lp -= std::log(dom.float_hi() - dom.float_lo());
    } else if (dom.kind() == DomainKind::log_uniform_float) {
      const double x = std::get<double>(config.at(space_.name(d)));
      lp -= std::log(x * std::numbers::ln2 * dom.measure());
    }
  }
  return std::exp(lp);
}

std::vector<double> KdeEstimator::sample_unit(Rng& rng, double bandwidth_factor) const {
  if (bandwidth_factor < 1.0) {
    throw std::invalid_argument("sample_unit: bandwidth_factor must be >= 1");
  }
  const std::size_t i = rng.uniform_index(n_);
  std::vector<double> u(dim_);
  for (std::size_t d = 0; d < dim_; ++d) {
    const auto& info = dims_[d];
    const double c = pts_[i * dim_ + d];
    if (info.kind == DomainKind::categorical) {
      const double m = info.n_choices;
      if (m <= 1.0) {
        u[d] = c;
        continue;
      }
      const double w = bw_[d];
      const auto center = static_cast<std::size_t>(std::min(m - 1.0, std::floor(c * m)));
      std::size_t pick = center;
      if (rng.uniform() < w) {
        const auto other = rng.uniform_index(static_cast<std::size_t>(m) - 1);
        pick = other < center ? other : other + 1;
      }
      u[d] = (static_cast<double>(pick) + 0.5) / m;
    } else {
      u[d] = sample_truncated_normal(rng, c, bw_[d] * bandwidth_factor);
    }
  }
  return u;
}

Configuration KdeEstimator::sample(Rng& rng, double bandwidth_factor) const {
  return space_.decode(sample_unit(rng, bandwidth_factor));
}

}  // namespace hpt
