#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopsem/traces.hpp"

namespace coopsem {

/// No truncation.
inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Proc: main-thread sets. AProc: pure sets without the bare Done.
/// Pool: pure sets where the bare Done is allowed.
enum class Kind { Proc, AProc, Pool };

std::string kind_name(Kind k);

/// A finite prefix-closed set of transition sequences, stored sorted.
class TraceSet {
 public:
  TraceSet() = default;
  /// Takes `elems` as is after sorting; the caller guarantees closure.
  TraceSet(Kind kind, std::vector<TraceSeq> elems, std::size_t bound = kUnbounded);

  /// Prefix closure of `gens`.
  static TraceSet closure(Kind kind, std::vector<TraceSeq> gens, std::size_t bound = kUnbounded);
  /// {eps}
  static TraceSet epsilon(Kind kind, std::size_t bound = kUnbounded);

  Kind kind() const { return kind_; }
  std::size_t bound() const { return bound_; }
  const std::vector<TraceSeq>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const TraceSeq& u) const;
  bool subset_of(const TraceSet& other) const;

  /// Elements whose first transition starts at `s`.
  std::span<const TraceSeq> starting_at(Store s) const;

  /// Length of the longest element.
  std::size_t max_length() const;

  bool is_prefix_closed() const;
  /// Non-empty, prefix closed, and every element fits the kind. Returns an
  /// explanation when something is wrong.
  std::optional<std::string> check() const;
  void validate() const;

  /// Same elements with a different tag; the elements must fit the new kind.
  TraceSet as_kind(Kind k) const;

  friend bool operator==(const TraceSet& a, const TraceSet& b) {
    return a.kind_ == b.kind_ && a.elems_ == b.elems_;
  }

 private:
  Kind kind_ = Kind::Proc;
  std::vector<TraceSeq> elems_;
  std::size_t bound_ = kUnbounded;
};

TraceSet set_union(const TraceSet& a, const TraceSet& b);
/// Elements of a missing from b.
std::vector<TraceSeq> set_difference(const TraceSet& a, const TraceSet& b);
TraceSet truncate(const TraceSet& p, std::size_t bound);

}  // namespace coopsem
