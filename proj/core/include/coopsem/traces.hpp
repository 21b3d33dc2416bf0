#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "coopsem/store.hpp"

namespace coopsem {

/// One transition (pre, post) with an optional return marker, packed so
/// that integer order is lexicographic order on (pre, post, ret).
class Transition {
 public:
  constexpr Transition() = default;
  constexpr Transition(Store pre, Store post, bool ret = false)
      : code_(static_cast<std::uint16_t>((pre.id << 8) | (post.id << 1) | (ret ? 1 : 0))) {}

  Store pre() const { return Store{static_cast<std::uint16_t>(code_ >> 8)}; }
  Store post() const { return Store{static_cast<std::uint16_t>((code_ >> 1) & 0x7f)}; }
  bool ret() const { return (code_ & 1) != 0; }
  Transition plain() const { return from_code(code_ & ~1u); }
  Transition returning() const { return from_code(code_ | 1u); }
  std::uint16_t code() const { return code_; }

  static Transition from_code(unsigned c) {
    Transition t;
    t.code_ = static_cast<std::uint16_t>(c);
    return t;
  }

  auto operator<=>(const Transition&) const = default;

 private:
  std::uint16_t code_ = 0;
};

/// A finite transition sequence with an optional Done marker.
class TraceSeq {
 public:
  static constexpr std::size_t kCapacity = 14;

  TraceSeq() = default;
  TraceSeq(std::initializer_list<Transition> trs, bool done = false);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  bool done() const { return done_; }
  void set_done(bool d) { done_ = d; }

  const Transition& operator[](std::size_t i) const { return trs_[i]; }
  const Transition* begin() const { return trs_.data(); }
  const Transition* end() const { return trs_.data() + len_; }
  const Transition& front() const { return trs_[0]; }
  const Transition& back() const { return trs_[len_ - 1]; }

  void push_back(Transition t);
  void pop_back() { --len_; }
  void append(const Transition* first, const Transition* last);
  void set(std::size_t i, Transition t) { trs_[i] = t; }
  void truncate(std::size_t n) {
    if (n < len_) {
      len_ = static_cast<std::uint8_t>(n);
      done_ = false;
    }
  }

  /// The empty sequence and the sequence holding only Done.
  bool is_epsilon() const { return len_ == 0 && !done_; }
  bool is_done_alone() const { return len_ == 0 && done_; }
  /// Proper: not the bare Done sequence.
  bool is_proper() const { return !is_done_alone(); }

  std::optional<std::size_t> ret_index() const;
  int ret_count() const;
  bool has_ret() const { return ret_count() > 0; }
  bool is_pure() const { return !has_ret(); }

  /// At most one Ret, and Done only after a Ret (and never alone).
  bool is_main_thread() const;

  /// First `n` transitions, without Done.
  TraceSeq prefix(std::size_t n) const;
  /// Transitions from index `from`, keeping Done.
  TraceSeq suffix(std::size_t from) const;

  friend bool operator==(const TraceSeq& a, const TraceSeq& b);
  friend std::strong_ordering operator<=>(const TraceSeq& a, const TraceSeq& b);

 private:
  std::array<Transition, kCapacity> trs_{};
  std::uint8_t len_ = 0;
  bool done_ = false;
};

/// Order by length first, then lexicographically. Used to pick minimal witnesses.
bool shortlex_less(const TraceSeq& a, const TraceSeq& b);

/// Extracts the run of stores from a transition sequence.
struct Run {
  std::vector<Store> stores;
  bool done = false;

  auto operator<=>(const Run&) const = default;
};

/// Marker-sensitive prefix order. u <= u.Done; a plain step is not a prefix
/// of the same step marked Ret.
bool is_prefix(const TraceSeq& u, const TraceSeq& v);

/// Prefix closure, sorted and duplicate free.
std::vector<TraceSeq> close(std::vector<TraceSeq> seqs);

TraceSeq clean_seq(const TraceSeq& u);
/// Marks the last transition of a proper pure sequence with Ret.
TraceSeq mark_seq(const TraceSeq& u);

/// Interleavings of u and v, ordered. Done is kept iff both inputs carry it.
/// Inputs carrying a Ret each are rejected. Results longer than `limit`
/// transitions are skipped.
std::vector<TraceSeq> shuffle(const TraceSeq& u, const TraceSeq& v, std::size_t limit = SIZE_MAX);

/// u |> v: v's first transition leads, the rest is shuffled.
std::vector<TraceSeq> rsh_seq(const TraceSeq& u, const TraceSeq& v, std::size_t limit = SIZE_MAX);
/// u <| v: u's first transition leads, the rest is shuffled.
std::vector<TraceSeq> lsh_seq(const TraceSeq& u, const TraceSeq& v, std::size_t limit = SIZE_MAX);

/// Parallel composition of two main-thread sequences, prefix closed.
std::vector<TraceSeq> par_seqs(const TraceSeq& u, const TraceSeq& v, std::size_t limit = SIZE_MAX);

/// A pure sequence generates a run when consecutive transitions chain.
bool generates_run(const TraceSeq& u);
std::optional<Run> run_of(const TraceSeq& u);

std::string to_text(const TraceSeq& u, const StoreSpace& space);
std::string to_text(const Run& r, const StoreSpace& space);

namespace detail {

/// Appends to `out` every interleaving of a[0..na) and b[0..nb) after the
/// current contents of `buf`.
void interleave(TraceSeq& buf, const Transition* a, std::size_t na, const Transition* b, std::size_t nb, bool done,
                std::vector<TraceSeq>& out);

}  // namespace detail

}  // namespace coopsem
