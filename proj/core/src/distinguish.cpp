#include <algorithm>
#include <set>

#include "coopsem/harness.hpp"

namespace coopsem {

BExpPtr mk_check(Store s, const StoreSpace& space) {
  const Config& cfg = space.config();
  BExpPtr acc;
  for (std::size_t v = 0; v < cfg.vars.size(); ++v) {
    BExpPtr eq = cmp(BOp::Eq, var(cfg.vars[v], static_cast<int>(v)), lit(space.value(s, static_cast<int>(v))));
    acc = acc ? band(acc, eq) : eq;
  }
  return acc;
}

CmdPtr mk_goto(Store s, const StoreSpace& space) {
  const Config& cfg = space.config();
  std::vector<CmdPtr> steps;
  for (std::size_t v = 0; v < cfg.vars.size(); ++v)
    steps.push_back(assign(cfg.vars[v], static_cast<int>(v), lit(space.value(s, static_cast<int>(v)))));
  return seq_all(steps);
}

CmdPtr mk_gofromto(Store s, Store t, const StoreSpace& space) {
  return if_(mk_check(s, space), mk_goto(t, space), block());
}

CmdPtr mk_tgofromto(Store s, Store t, Store r, const StoreSpace& space) {
  return seq_all({mk_gofromto(s, t, space), yield(), mk_gofromto(t, r, space), yield()});
}

namespace {

int required_modulus(std::size_t stores_needed, std::size_t nvars) {
  int k = 2;
  auto count = [&](int kk) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < nvars; ++i) n *= static_cast<std::size_t>(kk);
    return n;
  };
  while (count(k) < stores_needed) ++k;
  return k;
}

std::vector<Store> stores_of(const TraceSeq& w) {
  std::vector<Store> out;
  for (const Transition& t : w) {
    out.push_back(t.pre());
    out.push_back(t.post());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Store> fresh_stores(const std::vector<Store>& avoid, std::size_t count, const StoreSpace& space) {
  std::vector<Store> out;
  for (Store s : space.all_stores()) {
    if (out.size() == count) break;
    if (std::find(avoid.begin(), avoid.end(), s) == avoid.end()) out.push_back(s);
  }
  if (out.size() < count) {
    std::set<Store> distinct(avoid.begin(), avoid.end());
    const int k = required_modulus(distinct.size() + count, space.num_vars());
    throw FreshStoreError("need " + std::to_string(count) + " fresh stores besides " + std::to_string(distinct.size()) +
                              "; use a modulus of at least " + std::to_string(k),
                          k);
  }
  return out;
}

CmdPtr mk_mesh(const TraceSeq& w, const std::vector<Store>& aux, const StoreSpace& space) {
  if (w.empty() || w.done() || w.has_ret()) throw Error("mesh needs a non-empty plain pure sequence");
  if (aux.size() != w.size()) throw Error("mesh needs one auxiliary store per transition");
  const std::vector<Store> used = stores_of(w);
  for (std::size_t i = 0; i < aux.size(); ++i) {
    const bool clash = std::find(used.begin(), used.end(), aux[i]) != used.end() ||
                       std::find(aux.begin(), aux.begin() + i, aux[i]) != aux.begin() + i;
    if (clash) {
      const int k = required_modulus(used.size() + w.size(), space.num_vars());
      throw FreshStoreError("mesh auxiliary stores must be fresh and distinct; use a modulus of at least " +
                                std::to_string(k),
                            k);
    }
  }
  std::vector<CmdPtr> parts{yield()};
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    parts.push_back(mk_tgofromto(w[i].post(), aux[i], w[i + 1].pre(), space));
  parts.push_back(mk_gofromto(w.back().post(), aux.back(), space));
  return seq_all(parts);
}

namespace {

Context seq_ctx(CmdPtr tail) { return Context(seq(hole(), std::move(tail))); }

/// First run of `a` missing from `b`.
std::optional<Run> run_gap(const std::vector<Run>& a, const std::vector<Run>& b) {
  for (const Run& r : a)
    if (!std::binary_search(b.begin(), b.end(), r)) return r;
  return std::nullopt;
}

}  // namespace

std::optional<Distinction> distinguish(const CmdPtr& c, const CmdPtr& d, const Config& cfg, std::size_t bound) {
  if (c->extensions || d->extensions) throw Error("distinguish works on the core language only");
  if (c->holes || d->holes) throw Error("distinguish needs closed commands");
  const StoreSpace space(cfg);
  Denoter den(cfg, bound);
  const std::vector<TraceSeq> diff = set_difference(den.denote(c), den.denote(d));
  if (diff.empty()) return std::nullopt;
  const TraceSeq u = *std::min_element(diff.begin(), diff.end(), shortlex_less);

  // Mesh contexts interleave two or three steps per transition of u.
  const std::size_t check_bound = 3 * u.size() + 2;
  Denoter wide(cfg, check_bound);
  const TraceSet pc = wide.denote(c);
  const TraceSet pd = wide.denote(d);
  auto attempt = [&](const Context& ctx) -> std::optional<Distinction> {
    const auto rc = runs_of(wide.denote_ctx(ctx, pc));
    const auto rd = runs_of(wide.denote_ctx(ctx, pd));
    if (auto r = run_gap(rc, rd)) return Distinction{ctx, *r, u, check_bound};
    return std::nullopt;
  };

  // Sequential contexts first: they catch differences in where Ret sits.
  if (auto r = attempt(Context::identity())) return r;
  for (Store t : space.all_stores())
    if (auto r = attempt(seq_ctx(mk_goto(t, space)))) return r;
  for (Store s : space.all_stores())
    for (Store t : space.all_stores())
      if (auto r = attempt(seq_ctx(mk_gofromto(s, t, space)))) return r;
  if (auto r = attempt(seq_ctx(block()))) return r;

  // Spawned contexts: the mesh replays u one step at a time and marks each
  // hand-over with a fresh store.
  const TraceSeq cu = clean_seq(u);
  if (cu.empty()) throw Error("no separating context found");
  TraceSeq w;
  std::optional<Store> ret_fresh;
  const auto ri = u.ret_index();
  std::vector<Store> avoid = stores_of(cu);
  if (ri) {
    // After the return, gofromto(s_i', s'') makes the hand-over visible.
    ret_fresh = fresh_stores(avoid, 1, space).front();
    avoid.push_back(*ret_fresh);
    for (std::size_t i = 0; i < cu.size(); ++i)
      w.push_back(i == *ri ? Transition(cu[i].pre(), *ret_fresh) : cu[i]);
  } else {
    w = cu;
  }
  const std::vector<Store> aux = fresh_stores(avoid, w.size(), space);
  const CmdPtr mesh = mk_mesh(w, aux, space);
  CmdPtr inner = hole();
  if (ri) inner = seq(hole(), mk_gofromto(u[*ri].post(), *ret_fresh, space));
  if (auto r = attempt(Context(seq(async(inner), mesh)))) return r;
  if (auto r = attempt(Context(seq(async(seq(hole(), block())), mesh)))) return r;
  throw Error("no separating context found among the constructed candidates");
}

}  // namespace coopsem
