#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopsem/denot.hpp"
#include "coopsem/lang.hpp"
#include "coopsem/store.hpp"
#include "coopsem/trace_set.hpp"

namespace coopsem {

// Operations of the concrete Proc and AProc models. `kind` is Proc or AProc.

TraceSet alg_update(Kind kind, const TraceSet& p, int var, int n, const StoreSpace& space);
/// `family` is indexed by value 0..k-1.
TraceSet alg_lookup(Kind kind, std::span<const TraceSet> family, int var, const StoreSpace& space);
TraceSet alg_omega(Kind kind);
TraceSet alg_delay(const TraceSet& p, const StoreSpace& space);
/// close{(s, s) Done}
TraceSet alg_halt(const StoreSpace& space);

/// Right and left shuffles on AProc, each built from its own sequence rule.
TraceSet aproc_rsh(const TraceSet& p, const TraceSet& q);
TraceSet aproc_lsh(const TraceSet& p, const TraceSet& q);
/// Shuffle of two AProc sets.
TraceSet aproc_shuffle(const TraceSet& p, const TraceSet& q);

/// Left action of an AProc set on a Proc set: (P |> x) u (P <| x).
TraceSet act(const TraceSet& p, const TraceSet& x);

TraceSet kleisli(const TraceSet& p, const TraceSet& q);

/// a_{l,m,k}: lookup on l with Omega off the m branch, then update l to k.
TraceSet a_lmk(const TraceSet& x, int var, int m, int k, const StoreSpace& space);
/// a_{s,s'}: a_{l,s(l),s'(l)} nested over the variables in order.
TraceSet a_pair(const TraceSet& x, Store pre, Store post, const StoreSpace& space);
/// a_u(x) = a_{s1,s1'}(d(... a_{sn,sn'}(d(x)) ...)) for a plain pure u.
TraceSet a_seq(const TraceSeq& u, const TraceSet& x, const StoreSpace& space);
/// ubar(u) = a_u(Omega), which should be close{u}.
TraceSet ubar(const TraceSeq& u, const StoreSpace& space);
/// The constant for u(s, s') Done: the chain of a_u with no delay after
/// the last step, applied to halt.
TraceSet ubar_done(const TraceSeq& u, const StoreSpace& space);

/// Seeded random prefix-closed set of sequences of at most l0 transitions.
TraceSet random_set(Kind kind, std::size_t l0, std::uint64_t seed, const Config& cfg);

/// Every set of the given kind whose elements have at most one transition.
std::vector<TraceSet> all_length1_sets(Kind kind, const StoreSpace& space);
/// {eps} plus the closure of each single sequence of length <= 1.
std::vector<TraceSet> principal_length1_sets(Kind kind, const StoreSpace& space);

// ---------------------------------------------------------------------------
// Law registry

enum class Relation { Equal, Included };
enum class Expectation { Holds, Fails };

struct LawInstance {
  std::span<const TraceSet> sets;
  int var = 0;
  int value = 0;
};

struct Law {
  std::string name;
  std::string group;
  std::string statement;
  Relation relation = Relation::Equal;
  Expectation expect = Expectation::Holds;
  /// Operand kinds; may depend on k (lookup families).
  std::function<std::vector<Kind>(const Config&)> operands;
  /// Whether the law is quantified over a variable and a value.
  bool parameterised = false;
  std::function<std::pair<TraceSet, TraceSet>(const StoreSpace&, const LawInstance&)> sides;
};

const std::vector<Law>& law_registry();
const Law& find_law(const std::string& name);

enum class LawVerdict { Holds, Fails, ExpectedFailConfirmed, ProbeUnconfirmed };

std::string verdict_name(LawVerdict v);

struct Counterexample {
  std::vector<TraceSet> operands;
  int var = 0;
  int value = 0;
  TraceSeq witness;
  /// True when the witness is in the left side only.
  bool left_only = true;
};

struct LawReport {
  std::string name;
  std::size_t samples = 0;
  std::size_t exhaustive = 0;
  /// "full" or "principal": which length-<=1 family the sweep used.
  std::string sweep;
  LawVerdict verdict = LawVerdict::Holds;
  std::optional<Counterexample> counterexample;

  bool passed() const { return verdict == LawVerdict::Holds || verdict == LawVerdict::ExpectedFailConfirmed; }
};

struct LawOptions {
  std::size_t samples = 200;
  std::size_t l0 = 2;
  std::uint64_t seed = 1;
  bool exhaustive = true;
  /// Above this many operand tuples the sweep falls back to principal sets.
  std::size_t full_sweep_limit = 150000;
};

LawReport check_law(const std::string& name, const Config& cfg, const LawOptions& opts = {});

}  // namespace coopsem
