#include <gtest/gtest.h>

#include "coopsem/algebra.hpp"
#include "coopsem/error.hpp"
#include "coopsem/harness.hpp"
#include "helpers.hpp"

using namespace coopsem;
using namespace testing_util;

namespace {

const Config kX{{"x"}, 2};
const Config kX3{{"x"}, 3};

CmdPtr P_(const char* text, const Config& cfg = kX) { return parse(text, cfg); }

TraceSet D(const char* text, std::size_t bound = 4, const Config& cfg = kX) { return denote(P_(text, cfg), cfg, bound); }

/// Composition straight from its definition, over explicit element lists.
TraceSet oracle_compose(const TraceSet& p, const TraceSet& q) {
  std::vector<TraceSeq> out;
  for (const TraceSeq& u : p) {
    const auto r = u.ret_index();
    if (!r) {
      out.push_back(u);
      continue;
    }
    const TraceSeq w = u.suffix(*r + 1);
    for (const TraceSeq& v : q) {
      if (v.empty() || v[0].pre() != u[*r].post()) continue;
      const TraceSeq w2 = v.suffix(1);
      for (const TraceSeq& m : oracle_shuffle(w, w2)) {
        TraceSeq t = u.prefix(*r);
        t.push_back(Transition(u[*r].pre(), v[0].post(), v[0].ret()));
        t.append(m.begin(), m.end());
        t.set_done(m.done());
        out.push_back(t);
      }
    }
  }
  return TraceSet(Kind::Proc, out);
}

CmdPtr approximant(const CmdPtr& w, int i) {
  if (i == 0) return block();
  return if_(w->cond, seq(w->first, approximant(w, i - 1)), skip());
}

std::vector<TraceSet> random_procs(std::size_t n, std::uint64_t seed, std::size_t l0 = 2) {
  std::vector<TraceSet> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_set(Kind::Proc, l0, seed * 1000 + i, kX));
  return out;
}

}  // namespace

TEST(Unit, Elements) {
  const StoreSpace sp(kX);
  const TraceSet u = unit_proc(sp);
  EXPECT_EQ(u, TraceSet(Kind::Proc, {TraceSeq{}, TraceSeq{R(0, 0)}, seqd({R(0, 0)}), TraceSeq{R(1, 1)}, seqd({R(1, 1)})}));
  EXPECT_TRUE(u.contains(TraceSeq{}));
  EXPECT_EQ(u, D("skip"));
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(D("x := 1"), D("block")), TraceSet::epsilon(Kind::Proc));
  const StoreSpace sp(kX);
  const TraceSet y = D("yield");
  EXPECT_EQ(compose(y, unit_proc(sp)), y);
  EXPECT_EQ(compose(unit_proc(sp), y), y);
  EXPECT_TRUE(compose(D("x := 1"), D("yield; x := 0")).contains(seqd({P(0, 1), R(1, 0)})));
}

TEST(Compose, MatchesDefinition) {
  const auto ps = random_procs(40, 3);
  for (const TraceSet& p : ps)
    for (std::size_t j = 0; j < ps.size(); j += 3) ASSERT_EQ(compose(p, ps[j]), oracle_compose(p, ps[j]));
}

TEST(Compose, MonoidLaws) {
  const StoreSpace sp(kX);
  const auto ps = random_procs(12, 5);
  for (const TraceSet& a : ps) {
    EXPECT_EQ(compose(a, unit_proc(sp)), a);
    EXPECT_EQ(compose(unit_proc(sp), a), a);
    for (const TraceSet& b : ps)
      for (std::size_t k = 0; k < ps.size(); k += 4)
        ASSERT_EQ(compose(compose(a, b), ps[k]), compose(a, compose(b, ps[k])));
  }
}

TEST(Delay, Examples) {
  const StoreSpace sp(kX);
  EXPECT_EQ(delay(unit_proc(sp), sp), D("yield"));
  EXPECT_EQ(delay(TraceSet::epsilon(Kind::Proc), sp),
            TraceSet(Kind::Proc, {TraceSeq{}, TraceSeq{P(0, 0)}, TraceSeq{P(1, 1)}}));
  for (const TraceSet& p : random_procs(10, 9)) EXPECT_TRUE(delay(p, sp).contains(TraceSeq{}));
}

TEST(Clean, Examples) {
  const StoreSpace sp(kX);
  EXPECT_EQ(clean_set(unit_proc(sp)), alg_halt(sp));
  EXPECT_EQ(clean_set(TraceSet::epsilon(Kind::Proc)), TraceSet::epsilon(Kind::AProc));
  const TraceSet yb = D("yield; block");
  EXPECT_EQ(clean_set(yb).elems(), yb.elems());
}

TEST(Async, Unary) {
  const StoreSpace sp(kX);
  EXPECT_EQ(async1(clean_set(D("block")), sp), D("async { block }"));
  EXPECT_EQ(D("async { block }"), TraceSet(Kind::Proc, {TraceSeq{}, TraceSeq{R(0, 0)}, TraceSeq{R(1, 1)}}));
  const TraceSet a = D("async { x := 0 }");
  EXPECT_TRUE(a.contains(seqd({R(1, 1), P(1, 0)})));
  // Every non-empty element starts with a returning stutter.
  for (const TraceSeq& u : a)
    if (!u.empty()) {
      EXPECT_TRUE(u[0].ret() && u[0].pre() == u[0].post());
    }
}

TEST(Async, Binary) {
  const StoreSpace sp(kX);
  for (const TraceSet& q : random_procs(20, 11)) {
    EXPECT_EQ(async2(pool_unit(), q), q);
    // With a plain empty pool only Done-free traces pass through intact.
    EXPECT_TRUE(async2(TraceSet::epsilon(Kind::Pool), q).subset_of(q));
  }
  const TraceSet q = D("yield; x := 1");
  EXPECT_EQ(async2(TraceSet::epsilon(Kind::AProc), D("yield; block")), D("yield; block"));
  for (std::size_t i = 0; i < 20; ++i) {
    const TraceSet p = random_set(Kind::AProc, 2, 77 + i, kX);
    EXPECT_EQ(compose(async1(p, sp), q), async2(p, q));
  }
}

TEST(Async, EpsilonPoolDropsDone) {
  // async({eps}, Q) keeps Q's traces but without the final Done.
  const StoreSpace sp(kX);
  const TraceSet got = async2(TraceSet::epsilon(Kind::Pool), unit_proc(sp));
  EXPECT_EQ(got, TraceSet(Kind::Proc, {TraceSeq{}, TraceSeq{R(0, 0)}, TraceSeq{R(1, 1)}}));
}

TEST(PoolShuffle, Examples) {
  const TraceSet a = TraceSet(Kind::Pool, {TraceSeq{}, TraceSeq{P(0, 0)}});
  const TraceSet b = TraceSet(Kind::Pool, {TraceSeq{}, TraceSeq{P(1, 1)}});
  EXPECT_EQ(pool_shuffle(a, b), TraceSet(Kind::Pool, {TraceSeq{}, TraceSeq{P(0, 0)}, TraceSeq{P(1, 1)},
                                                      TraceSeq{P(0, 0), P(1, 1)}, TraceSeq{P(1, 1), P(0, 0)}}));
  for (std::uint64_t s = 0; s < 30; ++s) {
    const TraceSet p = random_set(Kind::Pool, 2, s, kX);
    const TraceSet q = random_set(Kind::Pool, 2, s + 100, kX);
    EXPECT_EQ(pool_shuffle(pool_unit(), p), p);
    EXPECT_EQ(pool_shuffle(p, q), pool_shuffle(q, p));
  }
}

TEST(Denote, Examples) {
  EXPECT_EQ(D("block"), TraceSet::epsilon(Kind::Proc));
  EXPECT_EQ(D("yield; block"), TraceSet(Kind::Proc, {TraceSeq{}, TraceSeq{P(0, 0)}, TraceSeq{P(1, 1)}}));
  EXPECT_EQ(D("while 0 == 0 { skip }"), D("block"));
  EXPECT_EQ(D("x := 1"), TraceSet(Kind::Proc, {TraceSeq{}, TraceSeq{R(0, 1)}, seqd({R(0, 1)}), TraceSeq{R(1, 1)},
                                               seqd({R(1, 1)})}));
}

TEST(Denote, FigureTwo) {
  const TraceSet p = D("async { x := 0 }; x := 1; yield; blockuntil x == 0; x := 2", 4, kX3);
  ASSERT_EQ(p.bound(), 4u);
  for (int s = 0; s < 3; ++s) {
    const TraceSeq u = seqd({P(s, 1), P(1, 0), R(0, 2)});
    EXPECT_TRUE(p.contains(u)) << s;
    for (const TraceSeq& pre : close({u})) EXPECT_TRUE(p.contains(pre));
  }
}

TEST(Denote, OutputsAreWellFormed) {
  Denoter den(kX, 3);
  for (const CmdPtr& c : corpus(2, kX, {true, true, true, true})) {
    const TraceSet& p = den.denote(c);
    const auto why = p.check();
    ASSERT_FALSE(why) << pretty(c) << ": " << *why;
    EXPECT_LE(p.max_length(), 3u);
  }
}

TEST(Denote, TruncationCommutes) {
  std::vector<Denoter> dens;
  for (std::size_t l = 0; l <= 4; ++l) dens.emplace_back(kX, l);
  for (const CmdPtr& c : corpus(2, kX)) {
    const TraceSet top = dens[4].denote(c);
    for (std::size_t l = 0; l < 4; ++l) ASSERT_EQ(truncate(top, l), dens[l].denote(c)) << pretty(c) << " L=" << l;
  }
}

TEST(Denote, LoopFreeStabilises) {
  Denoter small(kX, 6), big(kX, 9);
  for (const CmdPtr& c : corpus(2, kX)) {
    if (c->loops) continue;
    const TraceSet& a = small.denote(c);
    if (a.max_length() >= 6) continue;
    EXPECT_EQ(a, big.denote(c)) << pretty(c);
  }
}

TEST(Denote, WhileMatchesApproximants) {
  const std::size_t L = 3;
  Denoter den(kX, L);
  std::size_t loops = 0;
  for (const CmdPtr& c : corpus(2, kX)) {
    if (c->kind != Cmd::While) continue;
    ++loops;
    const TraceSet w = den.denote(c);
    TraceSet prev = TraceSet::epsilon(Kind::Proc, L);
    bool stable = false;
    for (int i = 1; i <= 40 && !stable; ++i) {
      const TraceSet a = den.denote(approximant(c, i));
      ASSERT_TRUE(prev.subset_of(a)) << pretty(c);
      ASSERT_TRUE(a.subset_of(w)) << pretty(c);
      stable = a == prev;
      prev = a;
    }
    EXPECT_TRUE(stable) << pretty(c);
    EXPECT_EQ(prev, w) << pretty(c);
  }
  EXPECT_GT(loops, 5u);
}

TEST(Denote, BoundMustBeUsable) { EXPECT_NO_THROW(D("skip", 0)); }

TEST(Pool, Examples) {
  Denoter den(kX, 3);
  EXPECT_EQ(den.denote_pool({}), pool_unit());
  const std::vector<CmdPtr> b{block()};
  EXPECT_EQ(den.denote_pool(b), TraceSet::epsilon(Kind::Pool));
  for (const CmdPtr& c : corpus(1, kX)) {
    const std::vector<CmdPtr> one{c};
    EXPECT_FALSE(den.denote_pool(one).contains(done_alone())) << pretty(c);
  }
}

TEST(State, Examples) {
  Denoter den(kX, 3);
  const StoreSpace sp(kX);
  EXPECT_EQ(den.denote_state({}, skip()), unit_proc(sp, 3));
  const std::vector<CmdPtr> pool{yield(), P_("x := 1")};
  EXPECT_EQ(den.denote_state(pool, block()), TraceSet::epsilon(Kind::Proc));
  for (const CmdPtr& c : corpus(2, kX)) EXPECT_EQ(den.denote_state({}, c), den.denote(c));
}

TEST(Context, DenoteMatchesFill) {
  Denoter den(kX, 3);
  const auto small = corpus(1, kX);
  std::vector<Context> ctxs{Context::identity(), Context(seq(hole(), block())), Context(async(hole())),
                            Context(seq(yield(), hole())), Context(if_(parse_bexp("x == 0", kX), hole(), skip())),
                            Context(while_(parse_bexp("x == 1", kX), hole())), Context(seq(async(hole()), yield()))};
  EXPECT_EQ(den.denote_ctx(Context(seq(hole(), block())), D("x := 1", 3)), compose(D("x := 1", 3), D("block", 3)));
  for (const Context& ctx : ctxs)
    for (const CmdPtr& c : corpus(2, kX)) ASSERT_EQ(den.denote_ctx(ctx, den.denote(c)), den.denote(fill(ctx, c)));
  for (const CmdPtr& c : small) EXPECT_EQ(den.denote_ctx(Context::identity(), den.denote(c)), den.denote(c));
}

TEST(Context, Monotone) {
  Denoter den(kX, 3);
  const auto cs = corpus(2, kX);
  const std::vector<Context> ctxs{Context(seq(hole(), yield())), Context(async(hole())),
                                  Context(seq(async(hole()), P_("x := 1"))),
                                  Context(while_(parse_bexp("x == 0", kX), seq(hole(), P_("x := 1"))))};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < cs.size(); i += 2)
    for (std::size_t j = 0; j < cs.size(); j += 3) {
      if (!den.denote(cs[i]).subset_of(den.denote(cs[j]))) continue;
      ++pairs;
      for (const Context& ctx : ctxs)
        ASSERT_TRUE(den.denote(fill(ctx, cs[i])).subset_of(den.denote(fill(ctx, cs[j]))))
            << pretty(cs[i]) << " / " << pretty(cs[j]);
    }
  EXPECT_GT(pairs, 20u);
}

TEST(Lemma, EvaluationContextEqualities) {
  Denoter den(kX, 3);
  const StoreSpace sp(kX);
  std::vector<Context> ectx{Context::identity()};
  for (const CmdPtr& e : corpus(1, kX)) ectx.emplace_back(seq(hole(), e));
  ectx.emplace_back(seq(seq(hole(), yield()), P_("x := 1")));
  const auto cs = corpus(2, kX);
  for (const Context& E : ectx) {
    EXPECT_EQ(den.denote(fill(E, block())), TraceSet::epsilon(Kind::Proc, 3)) << pretty(E);
    const TraceSet e_skip = den.denote(fill(E, skip()));
    for (const CmdPtr& d : cs) {
      ASSERT_EQ(den.denote(fill(E, async(d))), async2(clean_set(den.denote(d)), e_skip, 3)) << pretty(E);
    }
    EXPECT_EQ(clean_set(den.denote(fill(E, yield()))), clean_set(async2(clean_set(e_skip), den.unit(), 3)));
  }
  for (const CmdPtr& c : cs) EXPECT_EQ(den.denote(seq(skip(), c)), den.denote(c));
}

TEST(Golden, Equivalences) {
  Denoter den(kX3, 4);
  auto same = [&](const char* a, const char* b) { EXPECT_EQ(den.denote(P_(a, kX3)), den.denote(P_(b, kX3))) << a << " vs " << b; };
  same("x := 1; x := 2", "x := 2");
  same("async { yield }; x := 1", "x := 1; async { yield }");
  same("async { x := 1 }; async { yield; x := 2 }", "async { yield; x := 2 }; async { x := 1 }");
  same("async { x := 1; yield; x := 2 }", "async { x := 1; async { x := 2 } }");
  same("while 0 == 0 { skip }", "block");
  EXPECT_NE(den.denote(P_("while 0 == 0 { yield }", kX3)), den.denote(block()));
  EXPECT_NE(den.denote(P_("yield; yield", kX3)), den.denote(yield()));
}

TEST(Finish, Examples) {
  const StoreSpace sp(kX);
  EXPECT_EQ(finish_den(D("async { x := 0 }")), D("yield; x := 0"));
  EXPECT_EQ(finish_den(unit_proc(sp)), unit_proc(sp));
  EXPECT_EQ(finish_den(TraceSet::epsilon(Kind::Proc)), TraceSet::epsilon(Kind::Proc));
  EXPECT_EQ(D("finish { async { x := 0 } }"), D("yield; x := 0"));
}

TEST(Par, UnitAndCommutativity) {
  Denoter den(kX, 3);
  const auto cs = corpus(2, kX);
  for (const CmdPtr& c : cs) {
    EXPECT_EQ(par_den(den.denote(c), den.unit(), 3), den.denote(c)) << pretty(c);
    for (std::size_t j = 0; j < cs.size(); j += 5)
      ASSERT_EQ(par_den(den.denote(c), den.denote(cs[j]), 3), par_den(den.denote(cs[j]), den.denote(c), 3));
  }
}

TEST(Par, PruningIsExact) {
  // The length filter must not change the bounded result.
  Denoter den(kX, 3);
  Denoter wide(kX, 8);
  const auto cs = corpus(2, kX);
  for (std::size_t i = 0; i < cs.size(); i += 4)
    for (std::size_t j = 0; j < cs.size(); j += 7) {
      const TraceSet unpruned = truncate(par_den(wide.denote(cs[i]), wide.denote(cs[j])), 3);
      ASSERT_EQ(par_den(den.denote(cs[i]), den.denote(cs[j]), 3), unpruned) << pretty(cs[i]) << " || " << pretty(cs[j]);
    }
}

TEST(Par, RestrictedEquation) {
  Denoter den(kX, 3);
  const auto cs = corpus(2, kX);
  for (const CmdPtr& c : cs) {
    if (!yields_only_under_async(*c)) continue;
    for (const CmdPtr& d : cs) {
      if (!yields_only_under_async(*d)) continue;
      const TraceSet lhs = den.denote(par(c, d));
      const TraceSet rhs = set_union(den.denote(seq(c, d)), den.denote(seq(d, c)));
      ASSERT_EQ(lhs, rhs) << pretty(c) << " || " << pretty(d);
    }
  }
}

TEST(Choice, IsUnion) {
  Denoter den(kX, 3);
  const auto cs = corpus(1, kX);
  for (const CmdPtr& c : cs)
    for (const CmdPtr& d : cs) EXPECT_EQ(den.denote(choice(c, d)), set_union(den.denote(c), den.denote(d)));
}

TEST(RFork, SkipIsYield) {
  for (std::size_t l = 0; l <= 4; ++l) EXPECT_EQ(D("rfork { skip }", l), D("yield", l));
}

TEST(Runs, Examples) {
  const StoreSpace sp(kX);
  EXPECT_EQ(runs_of(TraceSet::epsilon(Kind::Proc)), std::vector<coopsem::Run>{coopsem::Run{}});
  EXPECT_EQ(runs_of(D("yield; block")), (std::vector<coopsem::Run>{coopsem::Run{}, coopsem::Run{{S(0), S(0)}, false}, coopsem::Run{{S(1), S(1)}, false}}));
  const auto r = runs_of(unit_proc(sp));
  EXPECT_TRUE(std::binary_search(r.begin(), r.end(), coopsem::Run{{S(0), S(0)}, true}));
}

TEST(Finish, KeepsUnfinishedSteps) {
  // A body that never terminates keeps its steps and never returns.
  EXPECT_EQ(D("finish { yield; block }"), D("yield; block"));
}

TEST(Finish, TruncationCommutes) {
  std::vector<Denoter> dens;
  for (std::size_t l = 0; l <= 4; ++l) dens.emplace_back(kX, l);
  for (const CmdPtr& c : corpus(2, kX, {.finish = true})) {
    if (c->kind != Cmd::Finish) continue;
    const TraceSet top = dens[4].denote(c);
    for (std::size_t l = 0; l < 4; ++l) ASSERT_EQ(truncate(top, l), dens[l].denote(c)) << pretty(c) << " L=" << l;
    ASSERT_FALSE(top.check()) << pretty(c);
  }
}

TEST(Par, SequencesMatchClauses) {
  for (const TraceSeq& u : ret_seqs(2, 2))
    for (const TraceSeq& v : ret_seqs(2, 2)) ASSERT_EQ(par_seqs(u, v, kUnbounded), oracle_par(u, v));
  for (const TraceSeq& u : pure_seqs(2, 2, false))
    for (const TraceSeq& v : ret_seqs(2, 2)) ASSERT_EQ(par_seqs(u, v, kUnbounded), oracle_par(u, v));
}

TEST(Par, NotAssociativeUnderTheClauses) {
  // A Ret hands control to its own partner only, so the grouping decides who
  // may run next. This pins down the failing triple behind the associativity check.
  Denoter den(kX, 3);
  const TraceSet a = D("x := 0", 3), b = D("yield", 3), c = D("x := 1", 3);
  const TraceSet left = par_den(par_den(a, b, 3), c, 3), right = par_den(a, par_den(b, c, 3), 3);
  EXPECT_TRUE(right.contains(TraceSeq{P(0, 1), R(1, 1)}));
  EXPECT_FALSE(left.contains(TraceSeq{P(0, 1), R(1, 1)}));
}
