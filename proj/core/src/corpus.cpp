#include <random>
#include <unordered_set>

#include "coopsem/harness.hpp"

namespace coopsem {

namespace {

std::vector<CmdPtr> atoms(const Config& cfg) {
  std::vector<CmdPtr> out{skip(), block(), yield()};
  for (std::size_t v = 0; v < cfg.vars.size(); ++v)
    for (int n = 0; n < cfg.k; ++n) out.push_back(assign(cfg.vars[v], static_cast<int>(v), lit(n)));
  return out;
}

/// Single-variable tests x == n.
std::vector<BExpPtr> tests(const Config& cfg) {
  std::vector<BExpPtr> out;
  for (std::size_t v = 0; v < cfg.vars.size(); ++v)
    for (int n = 0; n < cfg.k; ++n) out.push_back(cmp(BOp::Eq, var(cfg.vars[v], static_cast<int>(v)), lit(n)));
  return out;
}

struct Builder {
  const Config& cfg;
  CorpusFlags flags;
  std::vector<BExpPtr> conds = tests(cfg);

  /// Composites whose children come from `a` and `b` (for binary
  /// constructors) or `a` (unary); `emit` receives each.
  template <class F>
  void unary(const std::vector<CmdPtr>& a, F&& emit) const {
    for (const auto& b : conds)
      for (const auto& c : a) emit(while_(b, c));
    for (const auto& c : a) emit(async(c));
    if (flags.rfork)
      for (const auto& c : a) emit(rfork(c));
    if (flags.finish)
      for (const auto& c : a) emit(finish(c));
  }

  template <class F>
  void binary(const std::vector<CmdPtr>& a, const std::vector<CmdPtr>& b, F&& emit) const {
    for (const auto& x : a)
      for (const auto& y : b) emit(seq(x, y));
    for (const auto& t : conds)
      for (const auto& x : a)
        for (const auto& y : b) emit(if_(t, x, y));
    if (flags.choice)
      for (const auto& x : a)
        for (const auto& y : b) emit(choice(x, y));
    if (flags.par)
      for (const auto& x : a)
        for (const auto& y : b) emit(par(x, y));
  }
};

}  // namespace

std::vector<CmdPtr> corpus(int depth, const Config& cfg, CorpusFlags flags) {
  if (depth < 1) throw Error("corpus depth must be at least 1");
  cfg.validate();
  Builder bld{cfg, flags};
  // levels[d]: commands of constructor depth exactly d + 1; upto[d]: depth <= d + 1.
  std::vector<std::vector<CmdPtr>> levels{atoms(cfg)};
  std::vector<std::vector<CmdPtr>> upto{levels[0]};
  for (int d = 1; d < depth; ++d) {
    const auto& top = levels[d - 1];
    const auto& below = upto[d - 1];
    std::vector<CmdPtr> lower = d >= 2 ? upto[d - 2] : std::vector<CmdPtr>{};
    std::vector<CmdPtr> next;
    auto emit = [&](CmdPtr c) { next.push_back(std::move(c)); };
    bld.unary(top, emit);
    // Binary nodes with at least one child at the top level.
    bld.binary(top, below, emit);
    bld.binary(lower, top, emit);
    levels.push_back(std::move(next));
    std::vector<CmdPtr> all = below;
    all.insert(all.end(), levels.back().begin(), levels.back().end());
    upto.push_back(std::move(all));
  }
  // Structural duplicates cannot arise from distinct children, but keep the
  // promise explicit.
  std::vector<CmdPtr> out;
  std::unordered_set<CmdPtr, CmdHash, CmdEq> seen;
  for (const CmdPtr& c : upto.back())
    if (seen.insert(c).second) out.push_back(c);
  return out;
}

std::vector<CmdPtr> sample_corpus(int depth, std::size_t count, std::uint64_t seed, const Config& cfg,
                                  CorpusFlags flags) {
  if (depth < 2) throw Error("sampling needs depth at least 2");
  const std::vector<CmdPtr> below = corpus(depth - 1, cfg, flags);
  std::vector<CmdPtr> top;
  for (const CmdPtr& c : below)
    if (c->depth == depth - 2) top.push_back(c);
  const std::vector<BExpPtr> conds = tests(cfg);
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<CmdPtr>& v) { return v[rng() % v.size()]; };
  std::vector<std::size_t> kinds{0, 1, 2, 3};  // seq, if, while, async
  if (flags.rfork) kinds.push_back(4);
  if (flags.choice) kinds.push_back(5);
  if (flags.finish) kinds.push_back(6);
  if (flags.par) kinds.push_back(7);
  std::vector<CmdPtr> out;
  std::unordered_set<CmdPtr, CmdHash, CmdEq> seen;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000) throw Error("could not draw enough distinct commands");
    // One child is forced to the top level; the other is free.
    const bool left_top = rng() % 2 == 0;
    CmdPtr a = left_top ? pick(top) : pick(below);
    CmdPtr b = left_top ? pick(below) : pick(top);
    CmdPtr t = pick(top);
    CmdPtr c;
    switch (kinds[rng() % kinds.size()]) {
      case 0:
        c = seq(a, b);
        break;
      case 1:
        c = if_(conds[rng() % conds.size()], a, b);
        break;
      case 2:
        c = while_(conds[rng() % conds.size()], t);
        break;
      case 3:
        c = async(t);
        break;
      case 4:
        c = rfork(t);
        break;
      case 5:
        c = choice(a, b);
        break;
      case 6:
        c = finish(t);
        break;
      default:
        c = par(a, b);
        break;
    }
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

}  // namespace coopsem
