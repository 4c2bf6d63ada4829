#ifndef HPT_OPTIMIZER_HPP_
#define HPT_OPTIMIZER_HPP_

#include <memory>
#include <string>
#include <vector>

#include "hpt/rng.hpp"
#include "hpt/transfer.hpp"

namespace hpt {

/// Stateful sequential optimizer: alternate suggest and observe.
class Optimizer {
 public:
  virtual ~Optimizer() = default;

  virtual const SearchSpace& space() const = 0;
  virtual Configuration suggest(Rng& rng) = 0;
  virtual void observe(const Configuration& config, double objective) = 0;

  /// True once every future suggest necessarily returns the same
  /// configuration without consuming randomness.
  virtual bool is_constant() const { return false; }

  /// Tag of the code path taken by the most recent suggest; empty when the
  /// strategy does not distinguish paths.
  virtual const char* last_branch() const { return ""; }
};

/// Canonical strategy names accepted by make_optimizer.
const std::vector<std::string>& strategy_names();

/// Whether the named strategy consumes knowledge of a previous space.
bool strategy_uses_transfer(const std::string& strategy);

/// Builds a strategy by name. Transfer strategies require ctx (and optimize
/// ctx->new_space); "tpe" and "random" require ctx == nullptr and optimize
/// space. setup_rng feeds construction-time work (currently the importance
/// forest of drop-unimportant).
std::unique_ptr<Optimizer> make_optimizer(const std::string& strategy,
                                          const SearchSpace& space,
                                          const TransferContext* ctx,
                                          Rng& setup_rng,
                                          const TpeParams& params = {});

}  // namespace hpt

#endif  // HPT_OPTIMIZER_HPP_
