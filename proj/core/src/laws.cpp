#include <algorithm>
#include <cmath>
#include <random>

#include "coopsem/algebra.hpp"
#include "coopsem/error.hpp"

namespace coopsem {

namespace {

using Sides = std::pair<TraceSet, TraceSet>;
using Kinds = std::vector<Kind>;

constexpr Kind A = Kind::AProc;
constexpr Kind X = Kind::Proc;
constexpr Kind W = Kind::Pool;

std::function<Kinds(const Config&)> fixed(Kinds ks) {
  return [ks](const Config&) { return ks; };
}

/// An AProc operand followed by a k-entry family of `member`.
std::function<Kinds(const Config&)> with_family(Kinds head, Kind member) {
  return [head, member](const Config& cfg) {
    Kinds ks = head;
    ks.insert(ks.end(), static_cast<std::size_t>(cfg.k), member);
    return ks;
  };
}

Law eq(std::string name, std::string group, std::string statement, std::function<Kinds(const Config&)> ops,
       std::function<Sides(const StoreSpace&, const LawInstance&)> sides, bool param = false) {
  Law l;
  l.name = std::move(name);
  l.group = std::move(group);
  l.statement = std::move(statement);
  l.operands = std::move(ops);
  l.sides = std::move(sides);
  l.parameterised = param;
  return l;
}

Law le(std::string name, std::string group, std::string statement, std::function<Kinds(const Config&)> ops,
       std::function<Sides(const StoreSpace&, const LawInstance&)> sides, Expectation expect = Expectation::Holds) {
  Law l = eq(std::move(name), std::move(group), std::move(statement), std::move(ops), std::move(sides));
  l.relation = Relation::Included;
  l.expect = expect;
  return l;
}

std::span<const TraceSet> tail(const LawInstance& in, std::size_t from) { return in.sets.subspan(from); }

/// Operand-wise application of P <| and P |> over a family.
std::vector<TraceSet> map_family(std::span<const TraceSet> fam, const std::function<TraceSet(const TraceSet&)>& f) {
  std::vector<TraceSet> out;
  out.reserve(fam.size());
  for (const TraceSet& s : fam) out.push_back(f(s));
  return out;
}

std::vector<Law> build_registry() {
  std::vector<Law> r;
  

  // Bilinearity.
  r.push_back(eq("rsh-union-left", "bilinear", "(P u P') |> x = P |> x u P' |> x", fixed({A, A, X}),
                 [&](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{rsh(set_union(s[0], s[1]), s[2]), set_union(rsh(s[0], s[2]), rsh(s[1], s[2]))};
                 }));
  r.push_back(eq("rsh-union-right", "bilinear", "P |> (x u y) = P |> x u P |> y", fixed({A, X, X}),
                 [&](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{rsh(s[0], set_union(s[1], s[2])), set_union(rsh(s[0], s[1]), rsh(s[0], s[2]))};
                 }));
  r.push_back(eq("lsh-union-left", "bilinear", "(P u P') <| x = P <| x u P' <| x", fixed({A, A, X}),
                 [&](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{lsh(set_union(s[0], s[1]), s[2]), set_union(lsh(s[0], s[2]), lsh(s[1], s[2]))};
                 }));
  r.push_back(eq("lsh-union-right", "bilinear", "P <| (x u y) = P <| x u P <| y", fixed({A, X, X}),
                 [&](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{lsh(s[0], set_union(s[1], s[2])), set_union(lsh(s[0], s[1]), lsh(s[0], s[2]))};
                 }));

  // async against the other operations.
  r.push_back(eq(
      "rsh-update", "async", "P |> update_{l,n}(x) = update_{l,n}(P |> x)", fixed({A, X}),
      [](const StoreSpace& sp, const LawInstance& in) {
        const auto& s = in.sets;
        return Sides{rsh(s[0], alg_update(X, s[1], in.var, in.value, sp)),
                     alg_update(X, rsh(s[0], s[1]), in.var, in.value, sp)};
      },
      true));
  r.push_back(eq(
      "rsh-lookup", "async", "P |> lookup_l(x_n) = lookup_l(P |> x_n)", with_family({A}, X),
      [](const StoreSpace& sp, const LawInstance& in) {
        const TraceSet& p = in.sets[0];
        const auto fam = tail(in, 1);
        const auto mapped = map_family(fam, [&](const TraceSet& x) { return rsh(p, x); });
        return Sides{rsh(p, alg_lookup(X, fam, in.var, sp)), alg_lookup(X, mapped, in.var, sp)};
      },
      true));
  r.push_back(eq("rsh-omega", "async", "P |> Omega = Omega", fixed({A}), [](const StoreSpace&, const LawInstance& in) {
    return Sides{rsh(in.sets[0], alg_omega(X)), alg_omega(X)};
  }));
  r.push_back(eq("rsh-delay", "async", "P |> d(x) = d(P * x)", fixed({A, X}),
                 [](const StoreSpace& sp, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{rsh(s[0], delay(s[1], sp)), delay(act(s[0], s[1]), sp)};
                 }));
  r.push_back(eq("rsh-assoc", "async", "P |> (P' |> x) = (P * P') |> x", fixed({A, A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{rsh(s[0], rsh(s[1], s[2])), rsh(aproc_shuffle(s[0], s[1]), s[2])};
                 }));

  // yield_to against the other operations.
  r.push_back(eq(
      "lsh-update", "yield_to", "update_{l,n}(P) <| x = update_{l,n}(P <| x)", fixed({A, X}),
      [](const StoreSpace& sp, const LawInstance& in) {
        const auto& s = in.sets;
        return Sides{lsh(alg_update(A, s[0], in.var, in.value, sp), s[1]),
                     alg_update(X, lsh(s[0], s[1]), in.var, in.value, sp)};
      },
      true));
  r.push_back(eq(
      "lsh-lookup", "yield_to", "lookup_l(P_n) <| x = lookup_l(P_n <| x)", with_family({X}, A),
      [](const StoreSpace& sp, const LawInstance& in) {
        const TraceSet& x = in.sets[0];
        const auto fam = tail(in, 1);
        const auto mapped = map_family(fam, [&](const TraceSet& p) { return lsh(p, x); });
        return Sides{lsh(alg_lookup(A, fam, in.var, sp), x), alg_lookup(X, mapped, in.var, sp)};
      },
      true));
  r.push_back(eq("lsh-omega", "yield_to", "Omega <| x = Omega", fixed({X}), [](const StoreSpace&, const LawInstance& in) {
    return Sides{lsh(alg_omega(A), in.sets[0]), alg_omega(X)};
  }));
  r.push_back(eq("lsh-delay", "yield_to", "d(P) <| x = d(P * x)", fixed({A, X}),
                 [](const StoreSpace& sp, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{lsh(delay(s[0], sp), s[1]), delay(act(s[0], s[1]), sp)};
                 }));
  r.push_back(eq("halt-yield", "yield_to", "halt <| x = d(x)", fixed({X}), [](const StoreSpace& sp, const LawInstance& in) {
    return Sides{lsh(alg_halt(sp), in.sets[0]), delay(in.sets[0], sp)};
  }));

  r.push_back(le("omega-rsh-le", "inequation", "Omega |> x <= x", fixed({X}), [](const StoreSpace&, const LawInstance& in) {
    return Sides{rsh(alg_omega(A), in.sets[0]), in.sets[0]};
  }));
  r.push_back(eq("rsh-lsh-exchange", "redundant", "P |> (P' <| x) = P' <| (P * x)", fixed({A, A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{rsh(s[0], lsh(s[1], s[2])), lsh(s[1], act(s[0], s[2]))};
                 }));
  r.push_back(le("aproc-axiom", "aproc", "d(Omega) <= halt", fixed({}), [](const StoreSpace& sp, const LawInstance&) {
    return Sides{delay(alg_omega(A), sp), alg_halt(sp)};
  }));

  // Dendriform dialgebra on AProc.
  r.push_back(eq("dialg-1", "dialgebra", "(x <| y) <| z = x <| (y * z)", fixed({A, A, A}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{aproc_lsh(aproc_lsh(s[0], s[1]), s[2]), aproc_lsh(s[0], aproc_shuffle(s[1], s[2]))};
                 }));
  r.push_back(eq("dialg-2", "dialgebra", "x |> (y |> z) = (x * y) |> z", fixed({A, A, A}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{aproc_rsh(s[0], aproc_rsh(s[1], s[2])), aproc_rsh(aproc_shuffle(s[0], s[1]), s[2])};
                 }));
  r.push_back(eq("dialg-3", "dialgebra", "(x |> y) <| z = x |> (y <| z)", fixed({A, A, A}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{aproc_lsh(aproc_rsh(s[0], s[1]), s[2]), aproc_rsh(s[0], aproc_lsh(s[1], s[2]))};
                 }));
  r.push_back(eq("dialg-comm", "dialgebra", "x <| y = y |> x", fixed({A, A}), [](const StoreSpace&, const LawInstance& in) {
    const auto& s = in.sets;
    return Sides{aproc_lsh(s[0], s[1]), aproc_rsh(s[1], s[0])};
  }));
  r.push_back(eq("dialg-shuffle", "dialgebra", "x <| y u x |> y = x * y", fixed({A, A}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{set_union(aproc_lsh(s[0], s[1]), aproc_rsh(s[0], s[1])), aproc_shuffle(s[0], s[1])};
                 }));

  // AProc acting on Proc.
  r.push_back(eq("module-1", "module", "(a <| b) <| x = a <| (b * x)", fixed({A, A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{lsh(aproc_lsh(s[0], s[1]), s[2]), lsh(s[0], act(s[1], s[2]))};
                 }));
  r.push_back(eq("module-2", "module", "a |> (b |> x) = (a * b) |> x", fixed({A, A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{rsh(s[0], rsh(s[1], s[2])), rsh(aproc_shuffle(s[0], s[1]), s[2])};
                 }));
  r.push_back(eq("module-3", "module", "(a |> b) <| x = a |> (b <| x)", fixed({A, A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{lsh(aproc_rsh(s[0], s[1]), s[2]), rsh(s[0], lsh(s[1], s[2]))};
                 }));
  r.push_back(eq("module-act", "module", "(a * b) * x = a * (b * x)", fixed({A, A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{act(aproc_shuffle(s[0], s[1]), s[2]), act(s[0], act(s[1], s[2]))};
                 }));

  // Pools and async.
  r.push_back(eq("pool-shuffle-assoc", "pool", "(P * Q) * R = P * (Q * R)", fixed({W, W, W}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{pool_shuffle(pool_shuffle(s[0], s[1]), s[2]), pool_shuffle(s[0], pool_shuffle(s[1], s[2]))};
                 }));
  r.push_back(eq("pool-shuffle-comm", "pool", "P * Q = Q * P", fixed({W, W}), [](const StoreSpace&, const LawInstance& in) {
    return Sides{pool_shuffle(in.sets[0], in.sets[1]), pool_shuffle(in.sets[1], in.sets[0])};
  }));
  r.push_back(eq("pool-shuffle-unit", "pool", "I * P = P", fixed({W}), [](const StoreSpace&, const LawInstance& in) {
    return Sides{pool_shuffle(pool_unit(), in.sets[0]), in.sets[0]};
  }));
  r.push_back(eq("async2-action", "pool", "async(P * Q, R) = async(P, async(Q, R))", fixed({W, W, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{async2(pool_shuffle(s[0], s[1]), s[2]), async2(s[0], async2(s[1], s[2]))};
                 }));
  r.push_back(eq("async2-unit", "pool", "async(I, R) = R", fixed({X}), [](const StoreSpace&, const LawInstance& in) {
    return Sides{async2(pool_unit(), in.sets[0]), in.sets[0]};
  }));
  r.push_back(eq("async1-compose", "pool", "async(P) ; R = async(P, R)", fixed({A, X}),
                 [](const StoreSpace& sp, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{compose(async1(s[0], sp), s[1]), async2(s[0], s[1])};
                 }));

  // clean as a homomorphism into AProc.
  r.push_back(eq("clean-delay", "clean", "clean(d(x)) = d(clean(x))", fixed({X}),
                 [](const StoreSpace& sp, const LawInstance& in) {
                   return Sides{clean_set(delay(in.sets[0], sp)), delay(clean_set(in.sets[0]), sp)};
                 }));
  r.push_back(eq("clean-union", "clean", "clean(x u y) = clean(x) u clean(y)", fixed({X, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{clean_set(set_union(s[0], s[1])), set_union(clean_set(s[0]), clean_set(s[1]))};
                 }));
  r.push_back(eq("clean-unit", "clean", "clean(unit) = halt", fixed({}), [](const StoreSpace& sp, const LawInstance&) {
    return Sides{clean_set(unit_proc(sp)), alg_halt(sp)};
  }));
  r.push_back(eq(
      "clean-update", "clean", "clean(update_{l,n}(x)) = update_{l,n}(clean(x))", fixed({X}),
      [](const StoreSpace& sp, const LawInstance& in) {
        return Sides{clean_set(alg_update(X, in.sets[0], in.var, in.value, sp)),
                     alg_update(A, clean_set(in.sets[0]), in.var, in.value, sp)};
      },
      true));
  r.push_back(eq("clean-rsh", "clean", "clean(P |> x) = P |> clean(x)", fixed({A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{clean_set(rsh(s[0], s[1])), aproc_rsh(s[0], clean_set(s[1]))};
                 }));
  r.push_back(eq("clean-lsh", "clean", "clean(P <| x) = P <| clean(x)", fixed({A, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{clean_set(lsh(s[0], s[1])), aproc_lsh(s[0], clean_set(s[1]))};
                 }));

  // Kleisli structure.
  r.push_back(eq("kleisli-left-unit", "kleisli", "unit ; x = x", fixed({X}), [](const StoreSpace& sp, const LawInstance& in) {
    return Sides{kleisli(unit_proc(sp), in.sets[0]), in.sets[0]};
  }));
  r.push_back(eq("kleisli-right-unit", "kleisli", "x ; unit = x", fixed({X}), [](const StoreSpace& sp, const LawInstance& in) {
    return Sides{kleisli(in.sets[0], unit_proc(sp)), in.sets[0]};
  }));
  r.push_back(eq("kleisli-assoc", "kleisli", "(x ; y) ; z = x ; (y ; z)", fixed({X, X, X}),
                 [](const StoreSpace&, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{kleisli(kleisli(s[0], s[1]), s[2]), kleisli(s[0], kleisli(s[1], s[2]))};
                 }));
  r.push_back(eq("kleisli-delay", "kleisli", "d(x) ; y = d(x ; y)", fixed({X, X}),
                 [](const StoreSpace& sp, const LawInstance& in) {
                   const auto& s = in.sets;
                   return Sides{kleisli(delay(s[0], sp), s[1]), delay(kleisli(s[0], s[1]), sp)};
                 }));

  // Conjectured stuttering and mumbling closure; the model does not have it.
  r.push_back(le(
      "stutter-probe", "probe", "d(d(x)) <= d(x)", fixed({X}),
      [](const StoreSpace& sp, const LawInstance& in) {
        return Sides{delay(delay(in.sets[0], sp), sp), delay(in.sets[0], sp)};
      },
      Expectation::Fails));
  r.push_back(le(
      "mumble-probe", "probe", "x <= d(x)", fixed({X}),
      [](const StoreSpace& sp, const LawInstance& in) { return Sides{in.sets[0], delay(in.sets[0], sp)}; },
      Expectation::Fails));
  return r;
}

std::size_t family_size(Kind kind, const StoreSpace& space) {
  const double pairs = static_cast<double>(space.size() * space.size());
  const double c = kind == Kind::Proc ? 6 : 3;
  const double n = std::pow(c, pairs) * (kind == Kind::Pool ? 2 : 1);
  return n > 1e12 ? static_cast<std::size_t>(1e12) : static_cast<std::size_t>(n);
}

/// Shortlex-least element of the symmetric difference, if any.
std::optional<std::pair<TraceSeq, bool>> witness(const TraceSet& lhs, const TraceSet& rhs, Relation rel) {
  std::optional<std::pair<TraceSeq, bool>> best;
  auto consider = [&](const std::vector<TraceSeq>& diff, bool left) {
    for (const TraceSeq& u : diff)
      if (!best || shortlex_less(u, best->first)) best = std::make_pair(u, left);
  };
  consider(set_difference(lhs, rhs), true);
  if (rel == Relation::Equal) consider(set_difference(rhs, lhs), false);
  return best;
}

struct Checker {
  const Law& law;
  const StoreSpace& space;
  LawReport& report;

  /// Returns true when the search should stop.
  bool test(std::span<const TraceSet> sets) {
    const int nvars = law.parameterised ? static_cast<int>(space.num_vars()) : 1;
    const int nvals = law.parameterised ? space.modulus() : 1;
    for (int l = 0; l < nvars; ++l) {
      for (int n = 0; n < nvals; ++n) {
        const auto [lhs, rhs] = law.sides(space, LawInstance{sets, l, n});
        auto w = witness(lhs, rhs, law.relation);
        if (!w) continue;
        Counterexample cx;
        cx.operands.assign(sets.begin(), sets.end());
        cx.var = l;
        cx.value = n;
        cx.witness = w->first;
        cx.left_only = w->second;
        report.counterexample = std::move(cx);
        report.verdict = law.expect == Expectation::Holds ? LawVerdict::Fails : LawVerdict::ExpectedFailConfirmed;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

const std::vector<Law>& law_registry() {
  static const std::vector<Law> registry = build_registry();
  return registry;
}

const Law& find_law(const std::string& name) {
  for (const Law& l : law_registry())
    if (l.name == name) return l;
  throw Error("unknown law: " + name);
}

std::string verdict_name(LawVerdict v) {
  switch (v) {
    case LawVerdict::Holds:
      return "holds";
    case LawVerdict::Fails:
      return "fails";
    case LawVerdict::ExpectedFailConfirmed:
      return "expected-fail-confirmed";
    case LawVerdict::ProbeUnconfirmed:
      return "probe-unconfirmed";
  }
  return "?";
}

LawReport check_law(const std::string& name, const Config& cfg, const LawOptions& opts) {
  const Law& law = find_law(name);
  cfg.validate();
  const StoreSpace space(cfg);
  const Kinds kinds = law.operands(cfg);
  LawReport report;
  report.name = law.name;
  Checker checker{law, space, report};

  auto finish = [&] {
    if (!report.counterexample && law.expect == Expectation::Fails) report.verdict = LawVerdict::ProbeUnconfirmed;
    return report;
  };

  if (opts.exhaustive) {
    // Full cross product when affordable, otherwise the principal sets; the
    // operations distribute over unions, so laws that use each operand once
    // are decided by the principal sets.
    double product = 1;
    for (Kind k : kinds) product *= static_cast<double>(family_size(k, space));
    const bool full = product <= static_cast<double>(opts.full_sweep_limit);
    report.sweep = full ? "full" : "principal";
    std::vector<std::vector<TraceSet>> fams;
    for (Kind k : kinds) fams.push_back(full ? all_length1_sets(k, space) : principal_length1_sets(k, space));
    std::vector<std::size_t> idx(kinds.size(), 0);
    std::vector<TraceSet> tuple(kinds.size());
    for (;;) {
      for (std::size_t i = 0; i < kinds.size(); ++i) tuple[i] = fams[i][idx[i]];
      ++report.exhaustive;
      if (checker.test(tuple)) return finish();
      std::size_t i = 0;
      while (i < kinds.size() && ++idx[i] == fams[i].size()) idx[i++] = 0;
      if (i == kinds.size()) break;
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<TraceSet> tuple(kinds.size());
  for (std::size_t s = 0; s < opts.samples; ++s) {
    for (std::size_t i = 0; i < kinds.size(); ++i) tuple[i] = random_set(kinds[i], opts.l0, rng(), cfg);
    ++report.samples;
    if (checker.test(tuple)) return finish();
  }
  return finish();
}

}  // namespace coopsem
