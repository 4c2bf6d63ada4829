#ifndef HPT_TRANSFER_HPP_
#define HPT_TRANSFER_HPP_

#include <optional>
#include <string>

#include "hpt/decompose.hpp"
#include "hpt/fanova.hpp"
#include "hpt/rng.hpp"
#include "hpt/tpe.hpp"

namespace hpt {

/// Everything a transfer strategy sees: the finished optimization over the
/// old space and the decomposition against the new space.
struct TransferContext {
  History old_history;
  SearchSpace new_space;
  SpaceDecomposition decomposition;

  static TransferContext make(History old_history, SearchSpace new_space);
};

/// Old trials restricted to the shared subspace. Trials whose value for a
/// range-adjusted hyperparameter falls in the removed region are dropped;
/// survivors keep objectives and relative order.
History project_old_history(const TransferContext& ctx);

/// Projection of the lowest-objective surviving old trial (ties: earliest).
/// Throws when no old trial survives projection.
Configuration best_valid_old(const TransferContext& ctx);

/// Freeze the shared part to the best valid old configuration and run TPE on
/// the added hyperparameters only. With nothing added, the frozen
/// configuration itself is returned and rng is left untouched.
Configuration suggest_only_optimize_new(const TransferContext& ctx,
                                        const History& new_history, Rng& rng,
                                        const TpeParams& params = {});

/// Freeze shared hyperparameters whose importance on the old task is strictly
/// below the mean importance; tune the rest (and everything added) with TPE.
Configuration suggest_drop_unimportant(const TransferContext& ctx,
                                       const History& new_history,
                                       const ImportanceReport& report, Rng& rng,
                                       const TpeParams& params = {});

/// First evaluation transfers the best old configuration; afterwards plain
/// TPE over the new space.
Configuration suggest_best_first(const TransferContext& ctx, const History& new_history,
                                 Rng& rng, const TpeParams& params = {});

/// Warm-started TPE. Until the new history reaches 2*(dim+1): model the
/// shared part on the projected old history, mutate each range-adjusted
/// coordinate into its added region with probability equal to the region's
/// prior mass fraction, and sample added hyperparameters from the prior.
/// Afterwards plain TPE on the new history. A random exploration branch
/// applies in every phase. `branch` (optional) reports which branch ran:
/// "random", "transfer", or "model".
Configuration suggest_t2pe(const TransferContext& ctx, const History& new_history,
                           Rng& rng, const TpeParams& params = {},
                           const char** branch = nullptr);

/// First evaluation as best-first, every later one as T2PE.
Configuration suggest_best_first_t2pe(const TransferContext& ctx,
                                      const History& new_history, Rng& rng,
                                      const TpeParams& params = {},
                                      const char** branch = nullptr);

}  // namespace hpt

#endif  // HPT_TRANSFER_HPP_
