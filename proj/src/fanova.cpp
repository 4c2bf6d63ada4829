#include "hpt/fanova.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hpt {
namespace {

constexpr int kMaxDepth = 6;

struct SplitChoice {
  double sse = 0.0;
  int dim = -1;
  double split = 0.0;
  int choice = -1;
  bool found = false;
};

double subset_sse(const std::vector<double>& y, const std::vector<std::size_t>& idx) {
  double mean = 0.0;
  for (auto i : idx) mean += y[i];
  mean /= static_cast<double>(idx.size());
  double sse = 0.0;
  for (auto i : idx) {
    const double d = y[i] - mean;
    sse += d * d;
  }
  return sse;
}

}  // namespace

RegressionTree RegressionTree::fit(const std::vector<std::vector<double>>& rows,
                                   const std::vector<double>& y,
                                   const SearchSpace& space, int max_depth) {
  if (rows.empty() || rows.size() != y.size()) {
    throw std::invalid_argument("RegressionTree::fit: rows and y must match and be non-empty");
  }
  RegressionTree tree;
  tree.dim_ = space.dim();
  tree.n_cells_.resize(tree.dim_, 0.0);
  for (std::size_t d = 0; d < tree.dim_; ++d) {
    const auto& dom = space.domain(d);
    if (dom.kind() == DomainKind::uniform_int) {
      tree.n_cells_[d] = static_cast<double>(dom.int_hi() - dom.int_lo() + 1);
    } else if (dom.kind() == DomainKind::categorical) {
      tree.n_cells_[d] = static_cast<double>(dom.n_choices());
    }
  }

  struct Frame {
    std::vector<std::size_t> idx;
    int depth;
    int node;
  };

  // cell bounds while descending, rebuilt per leaf from the root path later
  std::vector<std::size_t> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  tree.nodes_.push_back(Node{});
  std::vector<Frame> stack;
  stack.push_back(Frame{std::move(all), 0, 0});

  const auto cell_of = [&](std::size_t d, double u) {
    return std::min(tree.n_cells_[d] - 1.0, std::floor(u * tree.n_cells_[d]));
  };

  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    auto& node = tree.nodes_[frame.node];
    double mean = 0.0;
    for (auto i : frame.idx) mean += y[i];
    mean /= static_cast<double>(frame.idx.size());
    node.mean = mean;

    const double sse_here = subset_sse(y, frame.idx);
    if (frame.idx.size() < 2 || frame.depth >= max_depth || sse_here == 0.0) {
      continue;  // leaf
    }

    SplitChoice best;
    std::vector<std::size_t> order;
    for (std::size_t d = 0; d < tree.dim_; ++d) {
      const auto& dom = space.domain(d);
      if (dom.kind() == DomainKind::categorical) {
        std::set<double> cells;
        for (auto i : frame.idx) cells.insert(cell_of(d, rows[i][d]));
        if (cells.size() < 2) continue;
        for (double c : cells) {
          std::vector<std::size_t> lhs, rhs;
          for (auto i : frame.idx) {
            (cell_of(d, rows[i][d]) == c ? lhs : rhs).push_back(i);
          }
          const double sse = subset_sse(y, lhs) + subset_sse(y, rhs);
          if (!best.found || sse < best.sse) {
            best = SplitChoice{sse, static_cast<int>(d), 0.0, static_cast<int>(c), true};
          }
        }
        continue;
      }
      order.assign(frame.idx.begin(), frame.idx.end());
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rows[a][d] < rows[b][d];
      });
      // prefix sums over the sorted order for O(1) split evaluation;
      // centering keeps the sums well conditioned under objective shifts
      const std::size_t m = order.size();
      std::vector<double> ps(m + 1, 0.0), ps2(m + 1, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        const double z = y[order[k]] - mean;
        ps[k + 1] = ps[k] + z;
        ps2[k + 1] = ps2[k] + z * z;
      }
      double prev_candidate = -1.0;
      for (std::size_t k = 0; k + 1 < m; ++k) {
        const double a = rows[order[k]][d], b = rows[order[k + 1]][d];
        if (a == b) continue;
        double s = 0.5 * (a + b);
        if (tree.n_cells_[d] > 0.0) {
          // integer dims: snap to a cell boundary so measures stay exact
          s = std::floor(s * tree.n_cells_[d] + 0.5) / tree.n_cells_[d];
        }
        if (s == prev_candidate || s <= a || s > b) continue;
        prev_candidate = s;
        const double nl = static_cast<double>(k + 1);
        const double nr = static_cast<double>(m - k - 1);
        const double sse_l = ps2[k + 1] - ps[k + 1] * ps[k + 1] / nl;
        const double sse_r = (ps2[m] - ps2[k + 1]) -
                             (ps[m] - ps[k + 1]) * (ps[m] - ps[k + 1]) / nr;
        const double sse = sse_l + sse_r;
        if (!best.found || sse < best.sse) {
          best = SplitChoice{sse, static_cast<int>(d), s, -1, true};
        }
      }
    }
    if (!best.found) continue;  // all coordinates identical

    std::vector<std::size_t> lhs, rhs;
    for (auto i : frame.idx) {
      bool left;
      if (best.choice >= 0) {
        left = cell_of(best.dim, rows[i][best.dim]) == static_cast<double>(best.choice);
      } else {
        left = rows[i][best.dim] < best.split;
      }
      (left ? lhs : rhs).push_back(i);
    }
    const int left_node = static_cast<int>(tree.nodes_.size());
    const int right_node = left_node + 1;
    tree.nodes_.push_back(Node{});
    tree.nodes_.push_back(Node{});
    // re-index: the pushes may have reallocated the node storage
    Node& parent = tree.nodes_[frame.node];
    parent.dim = best.dim;
    parent.split = best.split;
    parent.choice = best.choice;
    parent.left = left_node;
    parent.right = right_node;
    stack.push_back(Frame{std::move(rhs), frame.depth + 1, right_node});
    stack.push_back(Frame{std::move(lhs), frame.depth + 1, left_node});
  }

  tree.collect_leaves(space);
  return tree;
}

void RegressionTree::collect_leaves(const SearchSpace& space) {
  struct WalkFrame {
    int node;
    std::vector<double> lo, hi;
    std::vector<std::vector<char>> allowed;
  };
  WalkFrame root;
  root.node = 0;
  root.lo.assign(dim_, 0.0);
  root.hi.assign(dim_, 1.0);
  root.allowed.resize(dim_);
  for (std::size_t d = 0; d < dim_; ++d) {
    if (space.domain(d).kind() == DomainKind::categorical) {
      root.allowed[d].assign(space.domain(d).n_choices(), 1);
    }
  }
  std::vector<WalkFrame> stack{std::move(root)};
  while (!stack.empty()) {
    WalkFrame f = std::move(stack.back());
    stack.pop_back();
    const Node& node = nodes_[f.node];
    if (node.dim < 0) {
      LeafCell cell;
      cell.mean = node.mean;
      cell.lo = f.lo;
      cell.hi = f.hi;
      cell.allowed = f.allowed;
      cell.frac.resize(dim_);
      cell.weight = 1.0;
      for (std::size_t d = 0; d < dim_; ++d) {
        double frac;
        if (!f.allowed[d].empty()) {
          double cnt = 0.0;
          for (char a : f.allowed[d]) cnt += a;
          frac = cnt / static_cast<double>(f.allowed[d].size());
        } else {
          frac = f.hi[d] - f.lo[d];
        }
        cell.frac[d] = frac;
        cell.weight *= frac;
      }
      leaves_.push_back(std::move(cell));
      continue;
    }
    WalkFrame l = f, r = std::move(f);
    if (node.choice >= 0) {
      auto& la = l.allowed[node.dim];
      std::fill(la.begin(), la.end(), 0);
      la[node.choice] = 1;
      r.allowed[node.dim][node.choice] = 0;
    } else {
      l.hi[node.dim] = node.split;
      r.lo[node.dim] = node.split;
    }
    l.node = node.left;
    r.node = node.right;
    stack.push_back(std::move(r));
    stack.push_back(std::move(l));
  }
}

double RegressionTree::predict_unit(const std::vector<double>& u) const {
  if (u.size() != dim_) {
    throw std::invalid_argument("predict_unit: dimension mismatch");
  }
  int node = 0;
  for (;;) {
    const Node& n = nodes_[node];
    if (n.dim < 0) return n.mean;
    bool left;
    if (n.choice >= 0) {
      const double cell =
          std::min(n_cells_[n.dim] - 1.0, std::floor(u[n.dim] * n_cells_[n.dim]));
      left = cell == static_cast<double>(n.choice);
    } else {
      left = u[n.dim] < n.split;
    }
    node = left ? n.left : n.right;
  }
}

double RegressionTree::total_variance() const {
  double e = 0.0, e2 = 0.0;
  for (const auto& leaf : leaves_) {
    e += leaf.weight * leaf.mean;
    e2 += leaf.weight * leaf.mean * leaf.mean;
  }
  return std::max(0.0, e2 - e * e);
}

double RegressionTree::marginal_variance(std::size_t d) const {
  if (d >= dim_) {
    throw std::invalid_argument("marginal_variance: unknown dimension");
  }
  const bool is_cat = !leaves_.empty() && !leaves_[0].allowed[d].empty();
  double e = 0.0, e2 = 0.0;
  if (is_cat) {
    const std::size_t m = leaves_[0].allowed[d].size();
    for (std::size_t c = 0; c < m; ++c) {
      double a = 0.0;
      for (const auto& leaf : leaves_) {
        if (leaf.allowed[d][c]) a += leaf.mean * leaf.weight / leaf.frac[d];
      }
      e += a / static_cast<double>(m);
      e2 += a * a / static_cast<double>(m);
    }
  } else {
    std::set<double> cuts{0.0, 1.0};
    for (const auto& leaf : leaves_) {
      cuts.insert(leaf.lo[d]);
      cuts.insert(leaf.hi[d]);
    }
    std::vector<double> bounds(cuts.begin(), cuts.end());
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const double len = bounds[s + 1] - bounds[s];
      if (len <= 0.0) continue;
      const double mid = 0.5 * (bounds[s] + bounds[s + 1]);
      double a = 0.0;
      for (const auto& leaf : leaves_) {
        if (leaf.lo[d] <= mid && mid < leaf.hi[d]) {
          a += leaf.mean * leaf.weight / leaf.frac[d];
        }
      }
      e += len * a;
      e2 += len * a * a;
    }
  }
  return std::max(0.0, e2 - e * e);
}

std::vector<RegressionTree> fit_forest(const History& history, std::size_t n_trees,
                                       Rng& rng) {
  if (n_trees == 0) {
    throw std::invalid_argument("fit_forest: need at least one tree");
  }
  if (history.size() < 2) {
    throw std::invalid_argument("fit_forest: need at least two trials");
  }
  const auto& space = history.space();
  std::vector<std::vector<double>> rows;
  rows.reserve(history.size());
  std::vector<double> y;
  y.reserve(history.size());
  for (const auto& t : history.trials()) {
    rows.push_back(space.encode(t.config));
    y.push_back(t.objective);
  }
  std::vector<RegressionTree> forest;
  forest.reserve(n_trees);
  std::vector<std::vector<double>> boot_rows(history.size());
  std::vector<double> boot_y(history.size());
  for (std::size_t t = 0; t < n_trees; ++t) {
    for (std::size_t i = 0; i < history.size(); ++i) {
      const auto j = rng.uniform_index(history.size());
      boot_rows[i] = rows[j];
      boot_y[i] = y[j];
    }
    forest.push_back(RegressionTree::fit(boot_rows, boot_y, space, kMaxDepth));
  }
  return forest;
}

ImportanceReport importance(const History& history, std::size_t n_trees, Rng& rng) {
  const auto forest = fit_forest(history, n_trees, rng);
  const auto& space = history.space();
  ImportanceReport report;
  for (std::size_t d = 0; d < space.dim(); ++d) {
    report.individual[space.name(d)] = 0.0;
  }
  for (const auto& tree : forest) {
    const double total = tree.total_variance();
    if (total <= 0.0) continue;
    for (std::size_t d = 0; d < space.dim(); ++d) {
      report.individual[space.name(d)] += tree.marginal_variance(d) / total;
    }
  }
  double sum = 0.0;
  for (auto& [name, value] : report.individual) {
    value /= static_cast<double>(forest.size());
    sum += value;
  }
  report.mean_importance =
      space.dim() == 0 ? 0.0 : sum / static_cast<double>(space.dim());
  return report;
}

}  // namespace hpt
