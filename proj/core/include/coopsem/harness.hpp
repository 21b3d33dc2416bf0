#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coopsem/denot.hpp"
#include "coopsem/error.hpp"
#include "coopsem/lang.hpp"
#include "coopsem/opsem.hpp"
#include "coopsem/store.hpp"
#include "coopsem/trace_set.hpp"

namespace coopsem {

// ---------------------------------------------------------------------------
// Equivalence

enum class SetRelation { Equal, LeftIncluded, RightIncluded, Incomparable };

std::string relation_name(SetRelation r);

struct Verdict {
  SetRelation relation = SetRelation::Equal;
  /// Shortlex-least element of left \ right and of right \ left.
  std::optional<TraceSeq> left_witness;
  std::optional<TraceSeq> right_witness;
  std::size_t bound = 0;
};

Verdict compare_sets(const TraceSet& lhs, const TraceSet& rhs, std::size_t bound);
Verdict equiv(const CmdPtr& c, const CmdPtr& d, const Config& cfg, std::size_t bound);
Verdict equiv(Denoter& den, const CmdPtr& c, const CmdPtr& d);

// ---------------------------------------------------------------------------
// Adequacy

struct AdequacyEntry {
  std::vector<CmdPtr> pool;
  CmdPtr cmd;
};

enum class AdequacyStatus { Pass, Fail, Inconclusive };

std::string status_name(AdequacyStatus s);

struct AdequacyResult {
  AdequacyStatus status = AdequacyStatus::Pass;
  bool traces_match = true;
  bool runs_match = true;
  /// First differing sequence or run, in text notation, and the side it is on.
  std::string mismatch;
};

struct AdequacyReport {
  std::size_t entries = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  /// Index and detail of the first failing or inconclusive entry.
  std::optional<std::size_t> first_bad;
  AdequacyResult first_bad_result;

  bool ok() const { return failed == 0 && inconclusive == 0; }
};

/// Checks one entry against a shared denoter and explorer.
AdequacyResult adequacy_entry(const AdequacyEntry& e, Denoter& den, Explorer& ex);
AdequacyReport adequacy_check(const std::vector<AdequacyEntry>& corpus, const Config& cfg, std::size_t bound,
                              ExecOptions opts = {});

// ---------------------------------------------------------------------------
// Context constructions

/// True exactly at s.
BExpPtr mk_check(Store s, const StoreSpace& space);
/// Assignments driving any store to s.
CmdPtr mk_goto(Store s, const StoreSpace& space);
/// if check(s) { goto(t) } else { block }
CmdPtr mk_gofromto(Store s, Store t, const StoreSpace& space);
/// gofromto(s, t); yield; gofromto(t, r); yield
CmdPtr mk_tgofromto(Store s, Store t, Store r, const StoreSpace& space);
/// yield; tgofromto(s1', s1'', s2); ...; gofromto(sn', sn'') for w = (s1 s1')...(sn sn').
/// Throws FreshStoreError when aux is unusable.
CmdPtr mk_mesh(const TraceSeq& w, const std::vector<Store>& aux, const StoreSpace& space);

/// Not enough stores for a construction; carries the smallest modulus that would do.
class FreshStoreError : public Error {
 public:
  FreshStoreError(const std::string& msg, int required_k) : Error(msg), required_k_(required_k) {}
  int required_k() const { return required_k_; }

 private:
  int required_k_;
};

/// `count` stores absent from `avoid`, in store order.
std::vector<Store> fresh_stores(const std::vector<Store>& avoid, std::size_t count, const StoreSpace& space);

struct Distinction {
  Context context;
  /// A run of the filled left command that the filled right command lacks.
  Run run;
  /// The denotational witness that prompted the construction.
  TraceSeq witness;
  /// Bound used when comparing runs.
  std::size_t bound = 0;
};

/// A context separating c from d by runs when denote(c) is not included in
/// denote(d). None when it is included.
std::optional<Distinction> distinguish(const CmdPtr& c, const CmdPtr& d, const Config& cfg, std::size_t bound);

// ---------------------------------------------------------------------------
// Corpus

struct CorpusFlags {
  bool rfork = false;
  bool choice = false;
  bool finish = false;
  bool par = false;
};

/// All commands of constructor depth <= depth over the restricted pool,
/// in a fixed order without duplicates.
std::vector<CmdPtr> corpus(int depth, const Config& cfg, CorpusFlags flags = {});
/// Seeded sample of `count` distinct commands of depth exactly `depth`.
std::vector<CmdPtr> sample_corpus(int depth, std::size_t count, std::uint64_t seed, const Config& cfg,
                                  CorpusFlags flags = {});

}  // namespace coopsem
