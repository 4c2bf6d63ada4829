#ifndef HPT_FANOVA_HPP_
#define HPT_FANOVA_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hpt/rng.hpp"
#include "hpt/search_space.hpp"
#include "hpt/tpe.hpp"

namespace hpt {

/// Axis-aligned regression tree over unit-cube encodings. Numeric splits
/// threshold one coordinate; categorical splits are one-choice-vs-rest.
/// Leaves store the mean objective of their training subset, and the leaf
/// cells' prior measures are tracked so marginals integrate exactly.
class RegressionTree {
public:
  /// `rows` are unit encodings (possibly with repeats, e.g. a bootstrap).
  static RegressionTree fit(const std::vector<std::vector<double>>& rows,
                            const std::vector<double>& y, const SearchSpace& space,
                            int max_depth);

  double predict_unit(const std::vector<double>& u) const;

  /// Variance of the tree prediction under the prior.
  double total_variance() const;

  /// Variance (under the prior of dimension d) of the prediction's exact
  /// unary marginal, integrated over all other dimensions by leaf measure.
  double marginal_variance(std::size_t d) const;

  /// Split dimension at the root, -1 when the tree is a single leaf.
  int root_dim() const { return nodes_.empty() ? -1 : nodes_[0].dim; }

private:
  RegressionTree() = default;

  void collect_leaves(const SearchSpace& space);

  struct Node {
    int dim = -1;        // -1 marks a leaf
    double split = 0.0;  // numeric: left iff u < split
    int choice = -1;     // categorical: left iff cell index == choice
    int left = -1, right = -1;
    double mean = 0.0;
  };

  // Per-dimension region of one leaf: interval for numeric dims, allowed
  // choice flags for categorical dims. frac is the dim's prior fraction.
  struct LeafCell {
    double mean = 0.0;
    double weight = 0.0;  // product of fracs
    std::vector<double> lo, hi, frac;
    std::vector<std::vector<char>> allowed;  // empty for numeric dims
  };

  std::vector<Node> nodes_;
  std::vector<LeafCell> leaves_;
  std::vector<double> n_cells_;  // per dim: int/categorical cell count, 0 for floats
  std::size_t dim_ = 0;
};

struct ImportanceReport {
  std::map<std::string, double> individual;  // name -> importance fraction
  double mean_importance = 0.0;
};

/// Fits n_trees regression trees, each on a bootstrap resample drawn from rng.
std::vector<RegressionTree> fit_forest(const History& history, std::size_t n_trees,
                                       Rng& rng);

/// Per-hyperparameter importance: marginal variance over total tree variance,
/// averaged across the forest. Trees with zero total variance contribute zero.
ImportanceReport importance(const History& history, std::size_t n_trees, Rng& rng);

}  // namespace hpt

#endif  // HPT_FANOVA_HPP_
