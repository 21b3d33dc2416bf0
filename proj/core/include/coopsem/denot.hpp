#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "coopsem/lang.hpp"
#include "coopsem/store.hpp"
#include "coopsem/trace_set.hpp"

namespace coopsem {

// Set-level operations. Every `limit` drops results longer than that many
// transitions; inputs are assumed prefix closed so the outputs stay closed.

/// The unit *: all (s, s, Ret) Done.
TraceSet unit_proc(const StoreSpace& space, std::size_t limit = kUnbounded);
/// {eps, Done}
TraceSet pool_unit();

/// Kleisli composition on Proc.
TraceSet compose(const TraceSet& p, const TraceSet& q, std::size_t limit = kUnbounded);
/// Prefixes every element with a stutter step; keeps the kind.
TraceSet delay(const TraceSet& p, const StoreSpace& space, std::size_t limit = kUnbounded);
/// Erases Ret markers; the result is an AProc set.
TraceSet clean_set(const TraceSet& p);
/// Returns immediately, leaving the pure thread q behind.
TraceSet async1(const TraceSet& q, const StoreSpace& space, std::size_t limit = kUnbounded);
/// Union of u |> v over u in p, v in q. The result has q's kind.
TraceSet rsh(const TraceSet& p, const TraceSet& q, std::size_t limit = kUnbounded);
/// Union of u <| v over proper u in p, v in q. The result has q's kind.
TraceSet lsh(const TraceSet& p, const TraceSet& q, std::size_t limit = kUnbounded);
/// Pool action on a process: `rsh` with a pool (or AProc) on the left.
TraceSet async2(const TraceSet& pool, const TraceSet& q, std::size_t limit = kUnbounded);
/// Shuffle of two pure sets; the result is a Pool.
TraceSet pool_shuffle(const TraceSet& p, const TraceSet& q, std::size_t limit = kUnbounded);
TraceSet as_pool(const TraceSet& p);

/// Marks the maximal elements of clean(p) and closes. Exact for an
/// untruncated p; at a bound L use the body at L + 1 and truncate.
TraceSet finish_den(const TraceSet& p);
TraceSet par_den(const TraceSet& p, const TraceSet& q, std::size_t limit = kUnbounded);

/// Runs generated by the cleaned elements of p.
std::vector<Run> runs_of(const TraceSet& p);

struct DenoteStats {
  std::size_t while_iterations = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

/// Computes truncated denotations for one configuration and bound, caching
/// results for hole-free subterms.
class Denoter {
 public:
  Denoter(Config cfg, std::size_t bound);

  const Config& config() const { return space_.config(); }
  const StoreSpace& space() const { return space_; }
  std::size_t bound() const { return bound_; }
  const DenoteStats& stats() const { return stats_; }

  const TraceSet& denote(const CmdPtr& c);
  TraceSet denote_pool(std::span<const CmdPtr> pool);
  TraceSet denote_state(std::span<const CmdPtr> pool, const CmdPtr& c);
  /// The denotation of ctx with the hole standing for p.
  TraceSet denote_ctx(const Context& ctx, const TraceSet& p);

  TraceSet unit() const { return unit_; }
  void clear_cache() {
    cache_.clear();
    wider_.reset();
  }

 private:
  TraceSet eval(const CmdPtr& c, const TraceSet* hole);
  TraceSet eval_while(const Command& c, const TraceSet* hole);
  TraceSet conditional(const BExp& b, const TraceSet& then_set, const TraceSet& else_set) const;
  TraceSet assignment(const Command& c) const;

  StoreSpace space_;
  std::size_t bound_;
  TraceSet unit_;
  DenoteStats stats_;
  std::unordered_map<CmdPtr, TraceSet, CmdHash, CmdEq> cache_;
  /// Same configuration at bound + 1, for finish bodies.
  std::unique_ptr<Denoter> wider_;
};

/// One-shot helper.
TraceSet denote(const CmdPtr& c, const Config& cfg, std::size_t bound);

}  // namespace coopsem
