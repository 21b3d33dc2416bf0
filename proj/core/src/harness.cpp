#include "coopsem/harness.hpp"

#include <algorithm>

namespace coopsem {

std::string relation_name(SetRelation r) {
  switch (r) {
    case SetRelation::Equal:
      return "equal";
    case SetRelation::LeftIncluded:
      return "left-included";
    case SetRelation::RightIncluded:
      return "right-included";
    case SetRelation::Incomparable:
      return "incomparable";
  }
  return "?";
}

namespace {

std::optional<TraceSeq> least(const std::vector<TraceSeq>& seqs) {
  if (seqs.empty()) return std::nullopt;
  return *std::min_element(seqs.begin(), seqs.end(), shortlex_less);
}

}  // namespace

Verdict compare_sets(const TraceSet& lhs, const TraceSet& rhs, std::size_t bound) {
  Verdict v;
  v.bound = bound;
  v.left_witness = least(set_difference(lhs, rhs));
  v.right_witness = least(set_difference(rhs, lhs));
  // Re-check on emission: each witness lies on exactly one side.
  if (v.left_witness && (!lhs.contains(*v.left_witness) || rhs.contains(*v.left_witness)))
    throw Error("internal: left witness is not in left \\ right");
  if (v.right_witness && (!rhs.contains(*v.right_witness) || lhs.contains(*v.right_witness)))
    throw Error("internal: right witness is not in right \\ left");
  if (v.left_witness && v.right_witness)
    v.relation = SetRelation::Incomparable;
  else if (v.left_witness)
    v.relation = SetRelation::RightIncluded;
  else if (v.right_witness)
    v.relation = SetRelation::LeftIncluded;
  else
    v.relation = SetRelation::Equal;
  return v;
}

Verdict equiv(Denoter& den, const CmdPtr& c, const CmdPtr& d) {
  return compare_sets(den.denote(c), den.denote(d), den.bound());
}

Verdict equiv(const CmdPtr& c, const CmdPtr& d, const Config& cfg, std::size_t bound) {
  Denoter den(cfg, bound);
  return equiv(den, c, d);
}

// ---------------------------------------------------------------------------

std::string status_name(AdequacyStatus s) {
  switch (s) {
    case AdequacyStatus::Pass:
      return "pass";
    case AdequacyStatus::Fail:
      return "fail";
    case AdequacyStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

AdequacyResult adequacy_entry(const AdequacyEntry& e, Denoter& den, Explorer& ex) {
  AdequacyResult res;
  const std::size_t n = den.bound();
  const TraceSet state = den.denote_state(e.pool, e.cmd);
  const ExecTraces op = ex.traces(e.pool, e.cmd, n);
  const ExecRuns op_runs = ex.runs(e.pool, e.cmd, n);
  if (!op.report.complete() || !op_runs.report.complete()) {
    res.status = AdequacyStatus::Inconclusive;
    res.mismatch = "active-step budget exhausted";
    return res;
  }
  const StoreSpace& space = den.space();
  const TraceSet cleaned = clean_set(state).as_kind(Kind::Pool);
  const Verdict v = compare_sets(op.traces, cleaned, n);
  if (v.relation != SetRelation::Equal) {
    res.traces_match = false;
    res.status = AdequacyStatus::Fail;
    res.mismatch = v.left_witness ? "operational only: " + to_text(*v.left_witness, space)
                                  : "denotational only: " + to_text(*v.right_witness, space);
    return res;
  }
  const std::vector<Run> den_runs = runs_of(state);
  if (den_runs != op_runs.runs) {
    res.runs_match = false;
    res.status = AdequacyStatus::Fail;
    std::vector<Run> only_op, only_den;
    std::set_difference(op_runs.runs.begin(), op_runs.runs.end(), den_runs.begin(), den_runs.end(),
                        std::back_inserter(only_op));
    std::set_difference(den_runs.begin(), den_runs.end(), op_runs.runs.begin(), op_runs.runs.end(),
                        std::back_inserter(only_den));
    res.mismatch = !only_op.empty() ? "operational run only: " + to_text(only_op.front(), space)
                                    : "denotational run only: " + to_text(only_den.front(), space);
  }
  return res;
}

AdequacyReport adequacy_check(const std::vector<AdequacyEntry>& corpus, const Config& cfg, std::size_t bound,
                              ExecOptions opts) {
  Denoter den(cfg, bound);
  Explorer ex(cfg, opts);
  AdequacyReport rep;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const AdequacyResult r = adequacy_entry(corpus[i], den, ex);
    // Machine states rarely recur across entries; keep memory flat.
    ex.clear();
    ++rep.entries;
    switch (r.status) {
      case AdequacyStatus::Pass:
        ++rep.passed;
        break;
      case AdequacyStatus::Fail:
        ++rep.failed;
        break;
      case AdequacyStatus::Inconclusive:
        ++rep.inconclusive;
        break;
    }
    if (r.status != AdequacyStatus::Pass && !rep.first_bad) {
      rep.first_bad = i;
      rep.first_bad_result = r;
    }
  }
  return rep;
}

}  // namespace coopsem
