#include "hpt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hpt {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::categorical: return "categorical";
    case DomainKind::uniform_int: return "uniform_int";
    case DomainKind::uniform_float: return "uniform_float";
    case DomainKind::log_uniform_float: return "log_uniform_float";
  }
  return "unknown";
}

Domain Domain::categorical(std::vector<std::string> choices) {
  if (choices.empty()) {
    throw std::invalid_argument("categorical domain needs at least one choice");
  }
  std::set<std::string> seen;
  for (const auto& c : choices) {
    if (!seen.insert(c).second) {
      throw std::invalid_argument("categorical domain has duplicate choice: " + c);
    }
  }
  Domain d;
  d.kind_ = DomainKind::categorical;
  d.choices_ = std::move(choices);
  return d;
}

Domain Domain::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw std::invalid_argument("uniform_int domain needs lo <= hi");
  }
  Domain d;
  d.kind_ = DomainKind::uniform_int;
  d.ilo_ = lo;
  d.ihi_ = hi;
  return d;
}

Domain Domain::uniform_float(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
    throw std::invalid_argument("uniform_float domain needs finite lo < hi");
  }
  Domain d;
  d.kind_ = DomainKind::uniform_float;
  d.flo_ = lo;
  d.fhi_ = hi;
  return d;
}

Domain Domain::log_uniform_float(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(0.0 < lo && lo < hi)) {
    throw std::invalid_argument("log_uniform_float domain needs finite 0 < lo < hi");
  }
  Domain d;
  d.kind_ = DomainKind::log_uniform_float;
  d.flo_ = lo;
  d.fhi_ = hi;
  return d;
}

std::optional<std::size_t> Domain::choice_index(const std::string& label) const {
  auto it = std::find(choices_.begin(), choices_.end(), label);
  if (it == choices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - choices_.begin());
}

bool Domain::contains(const Value& v) const {
  switch (kind_) {
    case DomainKind::categorical: {
      const auto* s = std::get_if<std::string>(&v);
      return s != nullptr && choice_index(*s).has_value();
    }
    case DomainKind::uniform_int: {
      const auto* i = std::get_if<std::int64_t>(&v);
      return i != nullptr && ilo_ <= *i && *i <= ihi_;
    }
    case DomainKind::uniform_float:
    case DomainKind::log_uniform_float: {
      const auto* d = std::get_if<double>(&v);
      return d != nullptr && std::isfinite(*d) && flo_ <= *d && *d <= fhi_;
    }
  }
  return false;
}

double Domain::measure() const {
  switch (kind_) {
    case DomainKind::categorical:
      return static_cast<double>(choices_.size());
    case DomainKind::uniform_int:
      return static_cast<double>(ihi_ - ilo_ + 1);
    case DomainKind::uniform_float:
      return fhi_ - flo_;
    case DomainKind::log_uniform_float:
      return std::log2(fhi_) - std::log2(flo_);
  }
  return 0.0;
}

double Domain::to_unit(const Value& v) const {
  if (!contains(v)) {
    throw std::invalid_argument("to_unit: value outside domain " + describe());
  }
  switch (kind_) {
    case DomainKind::categorical: {
      const auto idx = *choice_index(std::get<std::string>(v));
      const auto n = static_cast<double>(choices_.size());
      return (static_cast<double>(idx) + 0.5) / n;
    }
    case DomainKind::uniform_int: {
      const auto k = std::get<std::int64_t>(v);
      const auto n = static_cast<double>(ihi_ - ilo_ + 1);
      return (static_cast<double>(k - ilo_) + 0.5) / n;
    }
    case DomainKind::uniform_float:
      return (std::get<double>(v) - flo_) / (fhi_ - flo_);
    case DomainKind::log_uniform_float: {
      const double llo = std::log2(flo_), lhi = std::log2(fhi_);
      return (std::log2(std::get<double>(v)) - llo) / (lhi - llo);
    }
  }
  return 0.0;
}

Value Domain::from_unit(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("from_unit: coordinate outside [0, 1]");
  }
  switch (kind_) {
    case DomainKind::categorical: {
      const auto n = choices_.size();
      auto idx = static_cast<std::size_t>(u * static_cast<double>(n));
      if (idx >= n) idx = n - 1;  // u == 1.0
      return choices_[idx];
    }
    case DomainKind::uniform_int: {
      const auto n = static_cast<std::uint64_t>(ihi_ - ilo_ + 1);
      auto cell = static_cast<std::uint64_t>(u * static_cast<double>(n));
      if (cell >= n) cell = n - 1;
      return ilo_ + static_cast<std::int64_t>(cell);
    }
    case DomainKind::uniform_float:
      return std::clamp(flo_ + u * (fhi_ - flo_), flo_, fhi_);
    case DomainKind::log_uniform_float: {
      const double llo = std::log2(flo_), lhi = std::log2(fhi_);
      return std::clamp(std::exp2(llo + u * (lhi - llo)), flo_, fhi_);
    }
  }
  return 0.0;
}

bool Domain::operator==(const Domain& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case DomainKind::categorical: return choices_ == other.choices_;
    case DomainKind::uniform_int: return ilo_ == other.ilo_ && ihi_ == other.ihi_;
    case DomainKind::uniform_float:
    case DomainKind::log_uniform_float: return flo_ == other.flo_ && fhi_ == other.fhi_;
  }
  return false;
}

std::string Domain::describe() const {
  std::ostringstream out;
  out << to_string(kind_);
  switch (kind_) {
    case DomainKind::categorical: {
      out << "{";
      for (std::size_t i = 0; i < choices_.size(); ++i) {
        if (i > 0) out << ", ";
        out << choices_[i];
      }
      out << "}";
      break;
    }
    case DomainKind::uniform_int:
      out << "[" << ilo_ << ", " << ihi_ << "]";
      break;
    case DomainKind::uniform_float:
    case DomainKind::log_uniform_float:
      out << "[" << flo_ << ", " << fhi_ << "]";
      break;
  }
  return out.str();
}

std::optional<Domain> intersect(const Domain& first, const Domain& second) {
  if (first.kind() != second.kind()) return std::nullopt;
  switch (first.kind()) {
    case DomainKind::categorical: {
      std::vector<std::string> both;
      for (const auto& c : second.choices()) {
        if (first.choice_index(c).has_value()) both.push_back(c);
      }
      if (both.empty()) return std::nullopt;
      return Domain::categorical(std::move(both));
    }
    case DomainKind::uniform_int: {
      const auto lo = std::max(first.int_lo(), second.int_lo());
      const auto hi = std::min(first.int_hi(), second.int_hi());
      if (lo > hi) return std::nullopt;
      return Domain::uniform_int(lo, hi);
    }
    case DomainKind::uniform_float: {
      const auto lo = std::max(first.float_lo(), second.float_lo());
      const auto hi = std::min(first.float_hi(), second.float_hi());
      if (!(lo < hi)) return std::nullopt;
      return Domain::uniform_float(lo, hi);
    }
    case DomainKind::log_uniform_float: {
      const auto lo = std::max(first.float_lo(), second.float_lo());
      const auto hi = std::min(first.float_hi(), second.float_hi());
      if (!(lo < hi)) return std::nullopt;
      return Domain::log_uniform_float(lo, hi);
    }
  }
  return std::nullopt;
}

}  // namespace hpt
