#pragma once

#include <string>
#include <vector>

#include "coopsem/algebra.hpp"
#include "coopsem/harness.hpp"
#include "coopsem/trace_set.hpp"

namespace coopsem {

enum class Format { Text, Json };

// All outputs are byte stable: sets are sorted and JSON keys come in a
// fixed order. JSON output ends without a trailing newline.

std::string emit_store(Store s, const StoreSpace& space, Format f);
std::string emit_seq(const TraceSeq& u, const StoreSpace& space, Format f);
std::string emit_set(const TraceSet& p, const StoreSpace& space, Format f);
/// Element counts per length.
std::string emit_stats(const TraceSet& p, Format f);
std::string emit_runs(const std::vector<Run>& runs, const StoreSpace& space, Format f);
std::string emit_verdict(const Verdict& v, const StoreSpace& space, Format f);
std::string emit_law_reports(const std::vector<LawReport>& reports, const StoreSpace& space, Format f);
std::string emit_adequacy(const AdequacyReport& r, Format f);
std::string emit_distinction(const std::optional<Distinction>& d, const StoreSpace& space, Format f);

}  // namespace coopsem
