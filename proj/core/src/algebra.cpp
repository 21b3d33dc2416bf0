#include "coopsem/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coopsem/error.hpp"

namespace coopsem {

namespace {

void require_model_kind(Kind kind, const char* op) {
  if (kind == Kind::Pool) throw Error(std::string(op) + ": kind must be Proc or AProc");
}

void require_aproc(const TraceSet& p, const char* op) {
  if (p.kind() != Kind::AProc) throw Error(std::string(op) + " expects an AProc set, got " + kind_name(p.kind()));
}

}  // namespace

TraceSet alg_update(Kind kind, const TraceSet& p, int var, int n, const StoreSpace& space) {
  require_model_kind(kind, "update");
  std::vector<TraceSeq> out{TraceSeq{}};
  for (Store s : space.all_stores()) {
    const Store moved = space.upd(s, var, n);
    for (const TraceSeq& u : p.starting_at(moved)) {
      TraceSeq t = u;
      t.set(0, Transition(s, u[0].post(), u[0].ret()));
      out.push_back(t);
    }
  }
  return TraceSet(kind, std::move(out), p.bound());
}

TraceSet alg_lookup(Kind kind, std::span<const TraceSet> family, int var, const StoreSpace& space) {
  require_model_kind(kind, "lookup");
  if (family.size() != static_cast<std::size_t>(space.modulus()))
    throw Error("lookup needs " + std::to_string(space.modulus()) + " branches, got " +
                std::to_string(family.size()));
  std::vector<TraceSeq> out{TraceSeq{}};
  std::size_t bound = kUnbounded;
  for (const TraceSet& p : family) bound = std::min(bound, p.bound());
  for (Store s : space.all_stores()) {
    for (const TraceSeq& u : family[space.value(s, var)].starting_at(s)) out.push_back(u);
  }
  return TraceSet(kind, std::move(out), bound);
}

TraceSet alg_omega(Kind kind) { return TraceSet::epsilon(kind); }

TraceSet alg_delay(const TraceSet& p, const StoreSpace& space) { return delay(p, space); }

TraceSet alg_halt(const StoreSpace& space) {
  std::vector<TraceSeq> gens;
  for (Store s : space.all_stores()) gens.push_back(TraceSeq({Transition(s, s)}, true));
  return TraceSet::closure(Kind::AProc, std::move(gens));
}

TraceSet aproc_rsh(const TraceSet& p, const TraceSet& q) {
  require_aproc(p, "AProc |>");
  require_aproc(q, "AProc |>");
  return rsh(p, q);
}

TraceSet aproc_lsh(const TraceSet& p, const TraceSet& q) {
  require_aproc(p, "AProc <|");
  require_aproc(q, "AProc <|");
  std::vector<TraceSeq> out;
  for (const TraceSeq& u : p)
    for (const TraceSeq& v : q)
      for (auto& w : lsh_seq(u, v)) out.push_back(w);
  return TraceSet(Kind::AProc, std::move(out), std::min(p.bound(), q.bound()));
}

TraceSet aproc_shuffle(const TraceSet& p, const TraceSet& q) {
  require_aproc(p, "AProc shuffle");
  require_aproc(q, "AProc shuffle");
  return pool_shuffle(p, q).as_kind(Kind::AProc);
}

TraceSet act(const TraceSet& p, const TraceSet& x) { return set_union(rsh(p, x), lsh(p, x)); }

TraceSet kleisli(const TraceSet& p, const TraceSet& q) { return compose(p, q); }

TraceSet a_lmk(const TraceSet& x, int var, int m, int k, const StoreSpace& space) {
  std::vector<TraceSet> family(space.modulus(), alg_omega(x.kind()));
  family[m] = alg_update(x.kind(), x, var, k, space);
  return alg_lookup(x.kind(), family, var, space);
}

TraceSet a_pair(const TraceSet& x, Store pre, Store post, const StoreSpace& space) {
  TraceSet acc = x;
  for (int v = static_cast<int>(space.num_vars()) - 1; v >= 0; --v)
    acc = a_lmk(acc, v, space.value(pre, v), space.value(post, v), space);
  return acc;
}

namespace {

void require_plain_pure(const TraceSeq& u, const char* op) {
  if (u.done() || u.has_ret()) throw Error(std::string(op) + " needs a plain pure sequence");
}

}  // namespace

TraceSet a_seq(const TraceSeq& u, const TraceSet& x, const StoreSpace& space) {
  require_plain_pure(u, "a_u");
  TraceSet acc = x;
  for (std::size_t i = u.size(); i-- > 0;) acc = a_pair(delay(acc, space), u[i].pre(), u[i].post(), space);
  return acc;
}

TraceSet ubar(const TraceSeq& u, const StoreSpace& space) { return a_seq(u, alg_omega(Kind::AProc), space); }

TraceSet ubar_done(const TraceSeq& u, const StoreSpace& space) {
  require_plain_pure(u, "ubar_done");
  if (u.empty()) throw Error("ubar_done needs at least one transition");
  TraceSet acc = a_pair(alg_halt(space), u.back().pre(), u.back().post(), space);
  return a_seq(u.prefix(u.size() - 1), acc, space);
}

TraceSet random_set(Kind kind, std::size_t l0, std::uint64_t seed, const Config& cfg) {
  const StoreSpace space(cfg);
  std::mt19937_64 rng(seed);
  const std::size_t S = space.size();
  auto pick_store = [&] { return Store{static_cast<std::uint16_t>(rng() % S)}; };
  const std::size_t gens = rng() % 4;
  std::vector<TraceSeq> out;
  for (std::size_t g = 0; g < gens; ++g) {
    const std::size_t len = l0 == 0 ? 0 : rng() % (l0 + 1);
    TraceSeq u;
    for (std::size_t i = 0; i < len; ++i) u.push_back(Transition(pick_store(), pick_store()));
    if (kind == Kind::Proc) {
      // At most one Ret; Done only after it.
      if (len > 0 && rng() % 3 != 0) {
        const std::size_t r = rng() % len;
        u.set(r, u[r].returning());
        if (rng() % 2) u.set_done(true);
      }
    } else if (rng() % 3 == 0) {
      if (len > 0 || kind == Kind::Pool) u.set_done(true);
    }
    out.push_back(u);
  }
  return TraceSet::closure(kind, std::move(out));
}

namespace {

/// Shape choices per (pre, post) pair: absent, plain, plain with Done
/// (Proc: absent, plain) x (Ret absent, Ret, Ret with Done).
std::size_t choices_per_pair(Kind kind) { return kind == Kind::Proc ? 6 : 3; }

}  // namespace

std::vector<TraceSet> all_length1_sets(Kind kind, const StoreSpace& space) {
  const std::size_t pairs = space.size() * space.size();
  const std::size_t c = choices_per_pair(kind);
  const double total = std::pow(static_cast<double>(c), static_cast<double>(pairs)) * (kind == Kind::Pool ? 2 : 1);
  if (total > 2e6) throw Error("too many length-1 sets to enumerate");
  std::vector<Transition> trs;
  for (Store a : space.all_stores())
    for (Store b : space.all_stores()) trs.emplace_back(a, b);
  std::vector<std::size_t> digit(pairs, 0);
  std::vector<TraceSet> out;
  for (;;) {
    for (int done_alone = 0; done_alone < (kind == Kind::Pool ? 2 : 1); ++done_alone) {
      std::vector<TraceSeq> elems{TraceSeq{}};
      if (done_alone) {
        TraceSeq d;
        d.set_done(true);
        elems.push_back(d);
      }
      for (std::size_t i = 0; i < pairs; ++i) {
        const Transition t = trs[i];
        if (kind == Kind::Proc) {
          if (digit[i] % 2) elems.push_back(TraceSeq{t});
          const std::size_t r = digit[i] / 2;
          if (r >= 1) elems.push_back(TraceSeq{t.returning()});
          if (r == 2) elems.push_back(TraceSeq({t.returning()}, true));
        } else {
          if (digit[i] >= 1) elems.push_back(TraceSeq{t});
          if (digit[i] == 2) elems.push_back(TraceSeq({t}, true));
        }
      }
      out.emplace_back(kind, std::move(elems));
    }
    std::size_t i = 0;
    while (i < pairs && ++digit[i] == c) digit[i++] = 0;
    if (i == pairs) break;
  }
  return out;
}

std::vector<TraceSet> principal_length1_sets(Kind kind, const StoreSpace& space) {
  std::vector<TraceSet> out{TraceSet::epsilon(kind)};
  if (kind == Kind::Pool) out.push_back(pool_unit());
  for (Store a : space.all_stores()) {
    for (Store b : space.all_stores()) {
      const Transition t(a, b);
      if (kind == Kind::Proc) {
        out.push_back(TraceSet::closure(kind, {TraceSeq{t}}));
        out.push_back(TraceSet::closure(kind, {TraceSeq{t.returning()}}));
        out.push_back(TraceSet::closure(kind, {TraceSeq({t.returning()}, true)}));
      } else {
        out.push_back(TraceSet::closure(kind, {TraceSeq{t}}));
        out.push_back(TraceSet::closure(kind, {TraceSeq({t}, true)}));
      }
    }
  }
  return out;
}

}  // namespace coopsem
