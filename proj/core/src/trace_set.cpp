#include "coopsem/trace_set.hpp"

#include <algorithm>

#include "coopsem/error.hpp"

namespace coopsem {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Proc:
      return "Proc";
    case Kind::AProc:
      return "AProc";
    case Kind::Pool:
      return "Pool";
  }
  return "?";
}

TraceSet::TraceSet(Kind kind, std::vector<TraceSeq> elems, std::size_t bound)
    : kind_(kind), elems_(std::move(elems)), bound_(bound) {
  if (!std::is_sorted(elems_.begin(), elems_.end())) std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

TraceSet TraceSet::closure(Kind kind, std::vector<TraceSeq> gens, std::size_t bound) {
  if (bound != kUnbounded)
    for (auto& g : gens) g.truncate(bound);
  return TraceSet(kind, close(std::move(gens)), bound);
}

TraceSet TraceSet::epsilon(Kind kind, std::size_t bound) { return TraceSet(kind, {TraceSeq{}}, bound); }

bool TraceSet::contains(const TraceSeq& u) const { return std::binary_search(elems_.begin(), elems_.end(), u); }

bool TraceSet::subset_of(const TraceSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

std::span<const TraceSeq> TraceSet::starting_at(Store s) const {
  const TraceSeq lo{Transition(s, Store{0}, false)};
  auto first = std::lower_bound(elems_.begin(), elems_.end(), lo);
  auto last = first;
  while (last != elems_.end() && !last->empty() && last->front().pre() == s) ++last;
  return {first, last};
}

std::size_t TraceSet::max_length() const {
  std::size_t n = 0;
  for (const auto& e : elems_) n = std::max(n, e.size());
  return n;
}

bool TraceSet::is_prefix_closed() const {
  if (!contains(TraceSeq{})) return false;
  for (const auto& e : elems_) {
    if (e.empty()) continue;
    if (e.done() && !contains(e.prefix(e.size()))) return false;
    if (!contains(e.prefix(e.size() - 1))) return false;
  }
  return true;
}

std::optional<std::string> TraceSet::check() const {
  if (elems_.empty()) return "trace set is empty";
  if (!is_prefix_closed()) return "trace set is not prefix closed";
  if (bound_ != kUnbounded && max_length() > bound_) return "element longer than the bound";
  for (const auto& e : elems_) {
    switch (kind_) {
      case Kind::Proc:
        if (!e.is_main_thread()) return "Proc element is not a main-thread sequence";
        break;
      case Kind::AProc:
        if (e.has_ret()) return "AProc element carries a Ret";
        if (e.is_done_alone()) return "AProc element is the bare Done";
        break;
      case Kind::Pool:
        if (e.has_ret()) return "Pool element carries a Ret";
        break;
    }
  }
  return std::nullopt;
}

void TraceSet::validate() const {
  if (auto why = check()) throw Error(kind_name(kind_) + ": " + *why);
}

TraceSet TraceSet::as_kind(Kind k) const {
  TraceSet out = *this;
  out.kind_ = k;
  out.validate();
  return out;
}

TraceSet set_union(const TraceSet& a, const TraceSet& b) {
  if (a.kind() != b.kind()) throw Error("union of " + kind_name(a.kind()) + " and " + kind_name(b.kind()));
  std::vector<TraceSeq> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return TraceSet(a.kind(), std::move(out), std::min(a.bound(), b.bound()));
}

std::vector<TraceSeq> set_difference(const TraceSet& a, const TraceSet& b) {
  std::vector<TraceSeq> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

TraceSet truncate(const TraceSet& p, std::size_t bound) {
  std::vector<TraceSeq> out;
  out.reserve(p.size());
  for (const auto& e : p)
    if (e.size() <= bound) out.push_back(e);
  return TraceSet(p.kind(), std::move(out), std::min(bound, p.bound()));
}

}  // namespace coopsem
