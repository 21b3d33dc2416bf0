#pragma once

// Small builders and brute-force oracles shared by the test binaries.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "coopsem/denot.hpp"
#include "coopsem/store.hpp"
#include "coopsem/trace_set.hpp"
#include "coopsem/traces.hpp"

namespace testing_util {

using namespace coopsem;

inline Store S(int id) { return Store{static_cast<std::uint16_t>(id)}; }
inline Transition P(int a, int b) { return Transition(S(a), S(b), false); }
inline Transition R(int a, int b) { return Transition(S(a), S(b), true); }

inline TraceSeq seqd(std::initializer_list<Transition> trs) { return TraceSeq(trs, true); }
inline TraceSeq done_alone() {
  TraceSeq d;
  d.set_done(true);
  return d;
}

inline std::vector<TraceSeq> sorted(std::vector<TraceSeq> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Every plain pure sequence over `stores` stores with at most `max_len`
/// transitions, with and without Done (Done-alone excluded).
inline std::vector<TraceSeq> pure_seqs(int stores, std::size_t max_len, bool with_done = true) {
  std::vector<TraceSeq> out{TraceSeq{}};
  std::vector<TraceSeq> layer{TraceSeq{}};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<TraceSeq> next;
    for (const TraceSeq& u : layer)
      for (int a = 0; a < stores; ++a)
        for (int b = 0; b < stores; ++b) {
          TraceSeq v = u;
          v.push_back(P(a, b));
          next.push_back(v);
        }
    for (const TraceSeq& v : next) {
      out.push_back(v);
      if (with_done) {
        TraceSeq d = v;
        d.set_done(true);
        out.push_back(d);
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// Main-thread sequences: exactly one Ret, optional Done at the end.
inline std::vector<TraceSeq> ret_seqs(int stores, std::size_t max_len) {
  std::vector<TraceSeq> out;
  for (const TraceSeq& u : pure_seqs(stores, max_len, false)) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      TraceSeq v = u;
      v.set(i, v[i].returning());
      out.push_back(v);
      v.set_done(true);
      out.push_back(v);
    }
  }
  return out;
}

/// Interleavings by choosing which positions come from `a`; an oracle
/// independent of the library's recursive merge.
inline std::vector<TraceSeq> oracle_shuffle(const TraceSeq& a, const TraceSeq& b) {
  const std::size_t n = a.size() + b.size();
  std::vector<TraceSeq> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != a.size()) continue;
    TraceSeq w;
    std::size_t i = 0, j = 0;
    for (std::size_t p = 0; p < n; ++p) w.push_back((mask >> p) & 1 ? a[i++] : b[j++]);
    w.set_done(a.done() && b.done());
    out.push_back(w);
  }
  return sorted(out);
}

/// Brute-force denotation-level union of a per-pair sequence operation.
inline std::vector<TraceSeq> lift(const std::vector<TraceSeq>& xs, const std::vector<TraceSeq>& ys,
                                  const std::function<std::vector<TraceSeq>(const TraceSeq&, const TraceSeq&)>& f) {
  std::vector<TraceSeq> out;
  for (const TraceSeq& x : xs)
    for (const TraceSeq& y : ys)
      for (const TraceSeq& r : f(x, y)) out.push_back(r);
  return sorted(out);
}

inline TraceSet set_of(Kind k, std::initializer_list<TraceSeq> gens) { return TraceSet::closure(k, gens); }

}  // namespace testing_util

namespace testing_util {

/// Parallel composition of two main-thread sequences, clause by clause:
/// the side that moves first either takes a plain step or returns into the
/// other side's next step. A stopped side lets its partner run only up to
/// the partner's Ret.
inline std::vector<TraceSeq> oracle_par(const TraceSeq& u, const TraceSeq& v) {
  std::vector<TraceSeq> gens;
  std::function<void(const TraceSeq&, const TraceSeq&, const TraceSeq&)> go;
  auto stopped = [](const TraceSeq& w) {
    TraceSeq out;
    for (const Transition& t : w) {
      if (t.ret()) return out;
      out.push_back(t);
    }
    out.set_done(w.done());
    return out;
  };
  auto left_first = [&](const TraceSeq& acc, const TraceSeq& t, const TraceSeq& t2) {
    if (!t[0].ret()) {
      TraceSeq a = acc;
      a.push_back(t[0]);
      go(a, t.suffix(1), t2);
      return;
    }
    if (t2[0].pre() != t[0].post()) return;
    for (const TraceSeq& m : oracle_shuffle(t.suffix(1), t2.suffix(1))) {
      TraceSeq a = acc;
      a.push_back(Transition(t[0].pre(), t2[0].post(), t2[0].ret()));
      for (const Transition& x : m) a.push_back(x);
      a.set_done(m.done());
      gens.push_back(a);
    }
  };
  go = [&](const TraceSeq& acc, const TraceSeq& a, const TraceSeq& b) {
    if (a.empty() || b.empty()) {
      const TraceSeq rest = stopped(a.empty() ? b : a);
      TraceSeq out = acc;
      for (const Transition& x : rest) out.push_back(x);
      out.set_done(rest.done());
      gens.push_back(out);
      return;
    }
    left_first(acc, a, b);
    left_first(acc, b, a);
  };
  go(TraceSeq{}, u, v);
  return close(gens);
}

}  // namespace testing_util
