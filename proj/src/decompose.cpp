#include "hpt/decompose.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace hpt {
namespace {

// Transformed coordinate of the prior for float kinds: identity for
// uniform_float, base-2 log for log_uniform_float.
double prior_coord(const Domain& d, double x) {
  return d.kind() == DomainKind::log_uniform_float ? std::log2(x) : x;
}

double prior_coord_inv(const Domain& d, double t) {
  return d.kind() == DomainKind::log_uniform_float ? std::exp2(t) : t;
}

}  // namespace

bool RangePartition::in_only_old(const Value& v) const {
  return old_domain.contains(v) && !both.contains(v);
}

bool RangePartition::in_only_new(const Value& v) const {
  return new_domain.contains(v) && !both.contains(v);
}

Value RangePartition::sample_only_new(Rng& rng) const {
  switch (new_domain.kind()) {
    case DomainKind::categorical: {
      std::vector<std::string> added;
      for (const auto& c : new_domain.choices()) {
        if (!both.choice_index(c)) added.push_back(c);
      }
      if (added.empty()) {
        throw std::runtime_error("sample_only_new: no added choices for " + name);
      }
      return added[rng.uniform_index(added.size())];
    }
    case DomainKind::uniform_int: {
      const auto n_left = std::max<std::int64_t>(0, both.int_lo() - new_domain.int_lo());
      const auto n_right = std::max<std::int64_t>(0, new_domain.int_hi() - both.int_hi());
      if (n_left + n_right <= 0) {
        throw std::runtime_error("sample_only_new: no added integers for " + name);
      }
      const auto k = static_cast<std::int64_t>(
          rng.uniform_index(static_cast<std::size_t>(n_left + n_right)));
      if (k < n_left) return new_domain.int_lo() + k;
      return both.int_hi() + 1 + (k - n_left);
    }
    case DomainKind::uniform_float:
    case DomainKind::log_uniform_float: {
      const double nlo = prior_coord(new_domain, new_domain.float_lo());
      const double nhi = prior_coord(new_domain, new_domain.float_hi());
      const double blo = prior_coord(new_domain, both.float_lo());
      const double bhi = prior_coord(new_domain, both.float_hi());
      const double m_left = std::max(0.0, blo - nlo);
      const double m_right = std::max(0.0, nhi - bhi);
      const double total = m_left + m_right;
      if (!(total > 0.0)) {
        throw std::runtime_error("sample_only_new: no added range for " + name);
      }
      const double t = rng.uniform() * total;
      double x;
      if (t < m_left) {
        x = prior_coord_inv(new_domain, nlo + t);
        // keep rounding off the closed intersection boundary
        if (x >= both.float_lo()) x = std::nextafter(both.float_lo(), new_domain.float_lo());
        if (x < new_domain.float_lo()) x = new_domain.float_lo();
      } else {
        x = prior_coord_inv(new_domain, bhi + (t - m_left));
        if (x <= both.float_hi()) x = std::nextafter(both.float_hi(), new_domain.float_hi());
        if (x > new_domain.float_hi()) x = new_domain.float_hi();
      }
      return x;
    }
  }
  throw std::runtime_error("sample_only_new: unsupported domain kind");
}

const RangePartition* SpaceDecomposition::partition_for(const std::string& name) const {
  for (const auto& p : range_partitions) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

SpaceDecomposition decompose(const SearchSpace& old_space, const SearchSpace& new_space) {
  SpaceDecomposition d;
  std::set<std::string> shared;
  for (std::size_t i = 0; i < new_space.dim(); ++i) {
    const auto& name = new_space.name(i);
    const auto& new_dom = new_space.domain(i);
    const auto old_idx = old_space.index_of(name);
    if (!old_idx) {
      d.only_new.add(name, new_dom);
      continue;
    }
    const auto& old_dom = old_space.domain(*old_idx);
    if (old_dom == new_dom) {
      d.both.add(name, new_dom);
      shared.insert(name);
      continue;
    }
    auto inter = intersect(old_dom, new_dom);
    if (!inter) {
      // kind change or disjoint ranges: behaves as a removal plus an addition
      d.only_new.add(name, new_dom);
      continue;
    }
    const double fraction = (new_dom.measure() - inter->measure()) / new_dom.measure();
    d.both.add(name, *inter);
    d.range_partitions.push_back(RangePartition{name, *inter, old_dom, new_dom, fraction});
    shared.insert(name);
  }
  for (std::size_t i = 0; i < old_space.dim(); ++i) {
    const auto& name = old_space.name(i);
    if (!shared.count(name)) {
      d.only_old.add(name, old_space.domain(i));
    }
  }
  return d;
}

bool in_only_old_region(const Configuration& config,
                        const std::vector<RangePartition>& partitions) {
  for (const auto& p : partitions) {
    const auto it = config.find(p.name);
    if (it != config.end() && p.in_only_old(it->second)) return true;
  }
  return false;
}

}  // namespace hpt
