// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "coopsem/algebra.hpp"
#include "coopsem/harness.hpp"
#include "helpers.hpp"

using namespace coopsem;
using namespace testing_util;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::size_t checks = 0;
  /// Failure count and first example per sub-check, in first-failure order.
  std::vector<std::pair<std::string, std::pair<std::size_t, std::string>>> failures;

  void expect(bool cond, const std::string& what, const std::string& group = "") {
    ++checks;
    if (cond) return;
    ok = false;
    const std::string key = group.empty() ? what : group;
    for (auto& f : failures)
      if (f.first == key) {
        ++f.second.first;
        return;
      }
    failures.push_back({key, {1, what}});
  }

  std::string failure_text() const {
    std::string out;
    for (const auto& [key, f] : failures) {
      if (!out.empty()) out += "; ";
      out += key + ": " + std::to_string(f.first) + " failing";
      if (f.second != key) out += ", e.g. " + f.second;
    }
    return out;
  }
};

const Config kX2{{"x"}, 2};
const Config kX3{{"x"}, 3};

CmdPtr P_(const std::string& text, const Config& cfg) { return parse(text, cfg); }
CmdPtr assign_n(int n, const Config& cfg) { return P_("x := " + std::to_string(n), cfg); }

std::string show(const TraceSeq& u, const Config& cfg) { return to_text(u, StoreSpace(cfg)); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const Config& cfg = kX3;
  Denoter den(cfg, 4);
  auto same = [&](const CmdPtr& a, const CmdPtr& b) {
    const Verdict v = equiv(den, a, b);
    o.expect(v.relation == SetRelation::Equal, pretty(a) + " vs " + pretty(b) + ": " + relation_name(v.relation));
  };
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) same(seq(assign_n(n, cfg), assign_n(m, cfg)), assign_n(m, cfg));
  const auto c2 = corpus(2, cfg);
  for (const CmdPtr& c : c2)
    for (int n = 0; n < 3; ++n) same(seq(async(c), assign_n(n, cfg)), seq(assign_n(n, cfg), async(c)));
  for (const CmdPtr& c : c2)
    for (const CmdPtr& d : c2) same(seq(async(c), async(d)), seq(async(d), async(c)));
  const auto c1 = corpus(1, cfg);
  for (const CmdPtr& c : c1)
    for (const CmdPtr& d : c1) same(async(seq(c, seq(yield(), d))), async(seq(c, async(d))));
  same(P_("while 0 == 0 { skip }", cfg), block());

  auto differ = [&](const CmdPtr& a, const CmdPtr& b) {
    const TraceSet& pa = den.denote(a);
    const TraceSet& pb = den.denote(b);
    const Verdict v = equiv(den, a, b);
    const bool has = v.relation != SetRelation::Equal && (v.left_witness || v.right_witness);
    bool real = has;
    if (v.left_witness) real = real && pa.contains(*v.left_witness) && !pb.contains(*v.left_witness);
    if (v.right_witness) real = real && pb.contains(*v.right_witness) && !pa.contains(*v.right_witness);
    o.expect(real, pretty(a) + " vs " + pretty(b) + " lacks a verified witness");
  };
  differ(P_("while 0 == 0 { yield }", cfg), block());
  differ(P_("yield; yield", cfg), yield());
  if (o.ok)
    o.detail = std::to_string(c2.size()) + " depth-2 commands, " + std::to_string(o.checks) + " comparisons";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::vector<AdequacyEntry> es;
  for (const CmdPtr& c : corpus(3, kX2)) es.push_back({{}, c});
  const std::size_t exhaustive = es.size();
  for (const CmdPtr& c : sample_corpus(4, 200, 1, kX2)) es.push_back({{}, c});
  const AdequacyReport r = adequacy_check(es, kX2, 3);
  o.expect(r.entries == exhaustive + 200, "wrong entry count");
  o.expect(r.failed == 0, r.first_bad ? pretty(es[*r.first_bad].cmd) + ": " + r.first_bad_result.mismatch : "fail");
  o.expect(r.inconclusive == 0, std::to_string(r.inconclusive) + " inconclusive entries");
  if (o.ok)
    o.detail = std::to_string(exhaustive) + " depth<=3 + 200 sampled depth-4 entries, " + std::to_string(r.passed) +
               " passed, 0 inconclusive";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Config& cfg = kX3;
  const StoreSpace sp(cfg);
  const CmdPtr fig = P_("async { x := 0 }; x := 1; yield; blockuntil x == 0; x := 2", cfg);
  const TraceSet p = denote(fig, cfg, 4);
  const auto runs = exec_runs({}, fig, cfg, 4).runs;
  const Store one = sp.make(std::vector<int>{1}), zero = sp.make(std::vector<int>{0}), two = sp.make(std::vector<int>{2});
  for (Store s : sp.all_stores()) {
    const TraceSeq u({Transition(s, one), Transition(one, zero), Transition(zero, two, true)}, true);
    for (const TraceSeq& pre : close({u})) o.expect(p.contains(pre), "missing " + show(pre, cfg));
    o.expect(std::find(runs.begin(), runs.end(), Run{{s, one, zero, two}, true}) != runs.end(),
             "missing run from " + sp.text(s));
  }
  if (o.ok) o.detail = "trace, prefixes and run present from all 3 start stores";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t holds = 0, probes = 0;
  for (const Law& law : law_registry()) {
    const LawReport r = check_law(law.name, kX2);
    if (law.expect == Expectation::Holds) {
      o.expect(r.verdict == LawVerdict::Holds, law.name + ": " + verdict_name(r.verdict));
      o.expect(r.exhaustive > 0, law.name + ": no exhaustive sweep");
      o.expect(r.samples >= 200, law.name + ": too few samples");
      ++holds;
    } else {
      o.expect(r.verdict == LawVerdict::ExpectedFailConfirmed && r.counterexample.has_value(),
               law.name + ": " + verdict_name(r.verdict));
      ++probes;
    }
  }
  o.expect(probes == 2, "expected two probes");
  o.expect(check_law("halt-yield", kX2).verdict == LawVerdict::Holds, "halt-yield");
  for (const Config& cfg : {kX2, kX3})
    for (std::size_t l = 0; l <= 5; ++l) {
      const Verdict v = equiv(P_("rfork { skip }", cfg), yield(), cfg, l);
      o.expect(v.relation == SetRelation::Equal, "rfork{skip} differs from yield at L=" + std::to_string(l));
    }
  if (o.ok) o.detail = std::to_string(holds) + " laws hold, " + std::to_string(probes) + " probes confirmed";
  return o;
}

Outcome criterion5() {
  Outcome o;
  {
    const StoreSpace sp(kX2);
    for (std::size_t l = 0; l <= 5; ++l) {
      const Verdict v = equiv(P_("finish { async { x := 0 } }", kX2), P_("yield; x := 0", kX2), kX2, l);
      o.expect(v.relation == SetRelation::Equal, "L=" + std::to_string(l), "finish example");
    }
  }
  const std::size_t L = 3;
  Denoter den(kX2, L);
  const auto c2 = corpus(2, kX2);
  // Distinct denotations; par_den only sees sets, so triples over these cover every command triple.
  std::vector<TraceSet> sets;
  std::vector<CmdPtr> reps;
  {
    std::map<std::vector<TraceSeq>, int> index;
    for (const CmdPtr& c : c2)
      if (index.emplace(den.denote(c).elems(), static_cast<int>(sets.size())).second) {
        sets.push_back(den.denote(c));
        reps.push_back(c);
      }
  }
  const TraceSet unit = den.unit();
  std::vector<std::vector<TraceSet>> pq(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) pq[i].push_back(par_den(sets[i], sets[j], L));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    o.expect(par_den(sets[i], unit, L) == sets[i], "right unit");
    o.expect(par_den(unit, sets[i], L) == sets[i], "left unit");
    for (std::size_t j = 0; j < sets.size(); ++j) o.expect(pq[i][j] == pq[j][i], "commutativity");
  }
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j)
      for (std::size_t k = 0; k < sets.size(); ++k)
        o.expect(par_den(pq[i][j], sets[k], L) == par_den(sets[i], pq[j][k], L),
                 "(" + pretty(reps[i]) + " || " + pretty(reps[j]) + ") || " + pretty(reps[k]), "par associativity");
  std::size_t restricted = 0;
  for (const CmdPtr& c : c2) {
    if (!yields_only_under_async(*c)) continue;
    for (const CmdPtr& d : c2) {
      if (!yields_only_under_async(*d)) continue;
      ++restricted;
      o.expect(den.denote(par(c, d)) == set_union(den.denote(seq(c, d)), den.denote(seq(d, c))),
               pretty(c) + " || " + pretty(d), "restricted par equation");
    }
  }
  Denoter den4(kX3, 4);
  for (const CmdPtr& c : corpus(1, kX3))
    for (const CmdPtr& d : corpus(1, kX3)) {
      const CmdPtr lhs = seq(async(c), seq(yield(), d));
      const CmdPtr rhs = seq(yield(), choice(seq(async(c), d), seq(rfork(c), d)));
      o.expect(equiv(den4, lhs, rhs).relation == SetRelation::Equal, pretty(lhs) + " vs " + pretty(rhs),
               "rfork/choice equation");
    }
  o.detail = std::to_string(sets.size()) + " distinct depth-2 denotations, " + std::to_string(restricted) +
             " restricted par pairs";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Config& cfg = kX3;
  const CmdPtr yb = P_("yield; block", cfg);
  std::optional<Distinction> d;
  try {
    d = distinguish(yb, skip(), cfg, 3);
  } catch (const FreshStoreError& e) {
    o.expect(false, std::string("needs k=") + std::to_string(e.required_k()));
    return o;
  }
  o.expect(d.has_value(), "no context for yield;block vs skip");
  if (d) {
    // Check the separating run both denotationally and on the machine.
    const CmdPtr l = fill(d->context, yb), r = fill(d->context, skip());
    Denoter den(cfg, d->bound);
    const auto dl = runs_of(den.denote(l)), dr = runs_of(den.denote(r));
    o.expect(std::binary_search(dl.begin(), dl.end(), d->run) && !std::binary_search(dr.begin(), dr.end(), d->run),
             "denotational runs do not separate");
    const auto el = exec_runs({}, l, cfg, d->bound).runs, er = exec_runs({}, r, cfg, d->bound).runs;
    o.expect(std::find(el.begin(), el.end(), d->run) != el.end() && std::find(er.begin(), er.end(), d->run) == er.end(),
             "operational runs do not separate");
  }
  for (const CmdPtr& c : sample_corpus(3, 50, 6, cfg)) o.expect(!distinguish(c, c, cfg, 3), pretty(c) + " vs itself");
  Denoter den(cfg, 3);
  const auto c2 = corpus(2, cfg);
  for (const CmdPtr& c : c2) {
    const TraceSet a = den.denote(seq(async(yb), c));
    const TraceSet b = den.denote(seq(async(skip()), c));
    o.expect(a.subset_of(b), "inclusion fails after " + pretty(c));
  }
  o.expect(!den.denote(yb).subset_of(den.denote(skip())), "yield;block included in skip");
  if (o.ok)
    o.detail = "context " + pretty(d->context) + " separates by run " + to_text(d->run, StoreSpace(cfg)) + "; " +
               std::to_string(c2.size()) + " inclusion contexts";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const StoreSpace sp(kX2);
  {
    std::vector<Denoter> dens;
    for (std::size_t l = 0; l <= 4; ++l) dens.emplace_back(kX2, l);
    const auto c3 = corpus(3, kX2);
    for (const CmdPtr& c : c3)
      for (std::size_t l2 = 0; l2 <= 4; ++l2) {
        const TraceSet& top = dens[l2].denote(c);
        for (std::size_t l1 = 0; l1 <= l2; ++l1)
          o.expect(truncate(top, l1) == dens[l1].denote(c),
                   pretty(c) + " L1=" + std::to_string(l1) + " L2=" + std::to_string(l2));
      }
    if (o.ok) o.detail = std::to_string(c3.size()) + " commands truncated";
  }
  std::vector<TraceSet> procs, pools;
  for (std::uint64_t s = 0; s < 30; ++s) {
    procs.push_back(random_set(Kind::Proc, 2, 500 + s, kX2));
    pools.push_back(random_set(Kind::Pool, 2, 900 + s, kX2));
  }
  const TraceSet unit = unit_proc(sp);
  for (const TraceSet& a : procs) {
    o.expect(compose(a, unit) == a && compose(unit, a) == a, "compose unit");
    for (const TraceSet& b : procs)
      for (std::size_t k = 0; k < procs.size(); k += 3)
        o.expect(compose(compose(a, b), procs[k]) == compose(a, compose(b, procs[k])), "compose associativity");
  }
  for (const TraceSet& p : pools) {
    o.expect(pool_shuffle(p, pool_unit()) == p && pool_shuffle(pool_unit(), p) == p, "pool_shuffle unit");
    for (const TraceSet& q : pools) {
      o.expect(pool_shuffle(p, q) == pool_shuffle(q, p), "pool_shuffle commutativity");
      for (std::size_t k = 0; k < pools.size(); k += 5)
        o.expect(pool_shuffle(pool_shuffle(p, q), pools[k]) == pool_shuffle(p, pool_shuffle(q, pools[k])),
                 "pool_shuffle associativity");
      for (std::size_t k = 0; k < procs.size(); k += 5)
        o.expect(async2(pool_shuffle(p, q), procs[k]) == async2(p, async2(q, procs[k])), "async2 action");
    }
  }
  for (const TraceSet& r : procs) o.expect(async2(pool_unit(), r) == r, "async2 unit");

  const auto pure = pure_seqs(2, 2);
  auto mains = ret_seqs(2, 2);
  std::size_t triples = 0;
  auto assoc = [&](const TraceSeq& u, const TraceSeq& v, const TraceSeq& w) {
    std::vector<TraceSeq> left, right;
    for (const TraceSeq& x : shuffle(u, v))
      for (const TraceSeq& y : shuffle(x, w)) left.push_back(y);
    for (const TraceSeq& x : shuffle(v, w))
      for (const TraceSeq& y : shuffle(u, x)) right.push_back(y);
    ++triples;
    return sorted(left) == sorted(right);
  };
  for (const TraceSeq& u : pure)
    for (const TraceSeq& v : pure) {
      for (const TraceSeq& w : pure) o.expect(assoc(u, v, w), "shuffle associativity, pure");
      for (const TraceSeq& w : mains) o.expect(assoc(u, v, w), "shuffle associativity, main-thread w");
    }
  if (o.ok) o.detail += ", monoid and action laws on random sets, " + std::to_string(triples) + " shuffle triples";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string text = o.detail;
    if (!o.ok) text = o.failure_text() + (text.empty() ? "" : "; " + text);
    std::printf("criterion %zu: %s (%s) [%.1fs]\n", i + 1, o.ok ? "PASS" : "FAIL", text.c_str(), secs);
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed ? 1 : 0;
}
