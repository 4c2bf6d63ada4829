#include "hpt/transfer.hpp"

#include <limits>
#include <stdexcept>

namespace hpt {
namespace {

Configuration merge(Configuration base, const Configuration& extra) {
  for (const auto& [name, value] : extra) base[name] = value;
  return base;
}

History project_to(const History& history, const SearchSpace& subspace) {
  History out(subspace);
  for (const auto& t : history.trials()) {
    out.add(project(t.config, subspace), t.objective);
  }
  return out;
}

}  // namespace

TransferContext TransferContext::make(History old_history, SearchSpace new_space) {
  TransferContext ctx;
  ctx.decomposition = decompose(old_history.space(), new_space);
  ctx.old_history = std::move(old_history);
  ctx.new_space = std::move(new_space);
  return ctx;
}

History project_old_history(const TransferContext& ctx) {
  const auto& dec = ctx.decomposition;
  History projected(dec.both);
  for (const auto& t : ctx.old_history.trials()) {
    if (in_only_old_region(t.config, dec.range_partitions)) continue;
    projected.add(project(t.config, dec.both), t.objective);
  }
  return projected;
}

Configuration best_valid_old(const TransferContext& ctx) {
  const auto projected = project_old_history(ctx);
  if (projected.empty()) {
    throw std::runtime_error("best_valid_old: no old trial survives the adjustment");
  }
  const Trial* best = nullptr;
  for (const auto& t : projected.trials()) {
    if (best == nullptr || t.objective < best->objective) best = &t;
  }
  return best->config;
}

namespace {

// Best valid old configuration over the shared part, or a prior draw when the
// adjustment invalidated every old trial.
Configuration frozen_shared_part(const TransferContext& ctx, Rng& rng) {
  if (!project_old_history(ctx).empty()) return best_valid_old(ctx);
  return ctx.decomposition.both.sample(rng);
}

}  // namespace

Configuration suggest_only_optimize_new(const TransferContext& ctx,
                                        const History& new_history, Rng& rng,
                                        const TpeParams& params) {
  const auto& dec = ctx.decomposition;
  Configuration out = frozen_shared_part(ctx, rng);
  if (!dec.only_new.empty()) {
    const auto free_part = tpe_step(project_to(new_history, dec.only_new), rng, params);
    out = merge(std::move(out), free_part);
  }
  ctx.new_space.validate(out);
  return out;
}

Configuration suggest_drop_unimportant(const TransferContext& ctx,
                                       const History& new_history,
                                       const ImportanceReport& report, Rng& rng,
                                       const TpeParams& params) {
  const auto& dec = ctx.decomposition;
  SearchSpace tuned;
  std::vector<std::string> frozen_names;
  for (std::size_t i = 0; i < ctx.new_space.dim(); ++i) {
    const auto& name = ctx.new_space.name(i);
    if (!dec.both.has(name)) {
      tuned.add(name, ctx.new_space.domain(i));
      continue;
    }
    const auto it = report.individual.find(name);
    if (it == report.individual.end()) {
      throw std::invalid_argument("importance report does not cover " + name);
    }
    if (it->second < report.mean_importance) {
      frozen_names.push_back(name);
    } else {
      tuned.add(name, ctx.new_space.domain(i));
    }
  }

  Configuration out;
  if (!frozen_names.empty()) {
    const auto shared = frozen_shared_part(ctx, rng);
    for (const auto& name : frozen_names) out[name] = shared.at(name);
  }
  if (!tuned.empty()) {
    out = merge(std::move(out), tpe_step(project_to(new_history, tuned), rng, params));
  }
  ctx.new_space.validate(out);
  return out;
}

Configuration suggest_best_first(const TransferContext& ctx, const History& new_history,
                                 Rng& rng, const TpeParams& params) {
  if (new_history.empty()) {
    return suggest_only_optimize_new(ctx, new_history, rng, params);
  }
  return tpe_step(new_history, rng, params);
}

Configuration suggest_t2pe(const TransferContext& ctx, const History& new_history,
                           Rng& rng, const TpeParams& params, const char** branch) {
  const auto& dec = ctx.decomposition;
  if (rng.uniform() < params.random_fraction) {
    if (branch) *branch = "random";
    return ctx.new_space.sample(rng);
  }
  if (new_history.size() >= tpe_model_threshold(ctx.new_space.dim())) {
    if (branch) *branch = "model";
    return suggest_tpe(fit_tpe(new_history, params), rng, params.n_candidates);
  }
  if (branch) *branch = "transfer";
  const auto projected = project_old_history(ctx);
  Configuration out;
  if (projected.size() >= tpe_model_threshold(dec.both.dim())) {
    out = suggest_tpe(fit_tpe(projected, params), rng, params.n_candidates);
  } else {
    out = dec.both.sample(rng);
  }
  // mutate each adjusted coordinate into its added region with the region's
  // prior mass fraction; after a prior-sampled shared part this reproduces
  // the new domain's prior exactly
  for (const auto& p : dec.range_partitions) {
    if (rng.bernoulli(p.only_new_fraction)) {
      out[p.name] = p.sample_only_new(rng);
    }
  }
  for (std::size_t i = 0; i < dec.only_new.dim(); ++i) {
    out[dec.only_new.name(i)] = dec.only_new.domain(i).sample(rng);
  }
  ctx.new_space.validate(out);
  return out;
}

Configuration suggest_best_first_t2pe(const TransferContext& ctx,
                                      const History& new_history, Rng& rng,
                                      const TpeParams& params, const char** branch) {
  if (new_history.empty()) {
    if (branch) *branch = "best-first";
    return suggest_best_first(ctx, new_history, rng, params);
  }
  return suggest_t2pe(ctx, new_history, rng, params, branch);
}

}  // namespace hpt
