#include "coopsem/traces.hpp"

#include <algorithm>

#include "coopsem/error.hpp"

namespace coopsem {

TraceSeq::TraceSeq(std::initializer_list<Transition> trs, bool done) : done_(done) {
  for (const auto& t : trs) push_back(t);
}

void TraceSeq::push_back(Transition t) {
  if (len_ == kCapacity) throw Error("transition sequence exceeds capacity of " + std::to_string(kCapacity));
  trs_[len_++] = t;
}

void TraceSeq::append(const Transition* first, const Transition* last) {
  for (; first != last; ++first) push_back(*first);
}

std::optional<std::size_t> TraceSeq::ret_index() const {
  for (std::size_t i = 0; i < len_; ++i)
    if (trs_[i].ret()) return i;
  return std::nullopt;
}

int TraceSeq::ret_count() const {
  int n = 0;
  for (std::size_t i = 0; i < len_; ++i) n += trs_[i].ret() ? 1 : 0;
  return n;
}

bool TraceSeq::is_main_thread() const {
  const int r = ret_count();
  if (r > 1) return false;
  if (done_ && r == 0) return false;
  return true;
}

TraceSeq TraceSeq::prefix(std::size_t n) const {
  TraceSeq out = *this;
  out.truncate(n);
  out.done_ = false;
  return out;
}

TraceSeq TraceSeq::suffix(std::size_t from) const {
  TraceSeq out;
  if (from < len_) out.append(begin() + from, end());
  out.done_ = done_;
  return out;
}

bool operator==(const TraceSeq& a, const TraceSeq& b) {
  return a.len_ == b.len_ && a.done_ == b.done_ && std::equal(a.begin(), a.end(), b.begin());
}

std::strong_ordering operator<=>(const TraceSeq& a, const TraceSeq& b) {
  const std::size_t n = std::min(a.len_, b.len_);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.trs_[i].code() <=> b.trs_[i].code(); c != 0) return c;
  }
  if (auto c = a.len_ <=> b.len_; c != 0) return c;
  return a.done_ <=> b.done_;
}

bool shortlex_less(const TraceSeq& a, const TraceSeq& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_prefix(const TraceSeq& u, const TraceSeq& v) {
  if (u.size() > v.size()) return false;
  if (!std::equal(u.begin(), u.end(), v.begin())) return false;
  if (!u.done()) return true;
  return v.done() && v.size() == u.size();
}

std::vector<TraceSeq> close(std::vector<TraceSeq> seqs) {
  std::vector<TraceSeq> out;
  out.reserve(seqs.size() * 3 + 1);
  out.emplace_back();
  for (const auto& s : seqs) {
    for (std::size_t n = 1; n <= s.size(); ++n) out.push_back(s.prefix(n));
    if (s.done()) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TraceSeq clean_seq(const TraceSeq& u) {
  TraceSeq out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out.set(i, out[i].plain());
  return out;
}

TraceSeq mark_seq(const TraceSeq& u) {
  if (u.has_ret()) throw Error("mark_seq expects a pure sequence");
  if (!u.is_proper()) throw Error("mark_seq is undefined on the bare Done sequence");
  TraceSeq out = u;
  if (out.done() && !out.empty()) out.set(out.size() - 1, out.back().returning());
  return out;
}

namespace detail {

void interleave(TraceSeq& buf, const Transition* a, std::size_t na, const Transition* b, std::size_t nb, bool done,
                std::vector<TraceSeq>& out) {
  if (na == 0 && nb == 0) {
    TraceSeq r = buf;
    r.set_done(done);
    out.push_back(r);
    return;
  }
  if (na == 0 || nb == 0) {
    TraceSeq r = buf;
    if (na) r.append(a, a + na);
    if (nb) r.append(b, b + nb);
    r.set_done(done);
    out.push_back(r);
    return;
  }
  buf.push_back(*a);
  interleave(buf, a + 1, na - 1, b, nb, done, out);
  buf.pop_back();
  buf.push_back(*b);
  interleave(buf, a, na, b + 1, nb - 1, done, out);
  buf.pop_back();
}

}  // namespace detail

namespace {

void shuffle_after(TraceSeq& buf, const TraceSeq& u, std::size_t ui, const TraceSeq& v, std::size_t vi,
                   std::vector<TraceSeq>& out) {
  detail::interleave(buf, u.begin() + ui, u.size() - ui, v.begin() + vi, v.size() - vi, u.done() && v.done(), out);
}

void check_not_both_ret(const TraceSeq& u, const TraceSeq& v) {
  if (u.has_ret() && v.has_ret()) throw Error("cannot shuffle two sequences that both carry a Ret");
}

}  // namespace

std::vector<TraceSeq> shuffle(const TraceSeq& u, const TraceSeq& v, std::size_t limit) {
  check_not_both_ret(u, v);
  std::vector<TraceSeq> out;
  if (u.size() + v.size() > limit) return out;
  TraceSeq buf;
  shuffle_after(buf, u, 0, v, 0, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TraceSeq> rsh_seq(const TraceSeq& u, const TraceSeq& v, std::size_t limit) {
  check_not_both_ret(u, v);
  std::vector<TraceSeq> out;
  if (v.empty()) {
    // u |> eps and u |> Done both give eps: there is no leading step.
    out.emplace_back();
    return out;
  }
  if (u.size() + v.size() > limit) return out;
  TraceSeq buf;
  buf.push_back(v[0]);
  shuffle_after(buf, u, 0, v, 1, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TraceSeq> lsh_seq(const TraceSeq& u, const TraceSeq& v, std::size_t limit) {
  if (u.is_done_alone()) throw Error("left operand of <| must be a proper sequence");
  check_not_both_ret(u, v);
  std::vector<TraceSeq> out;
  if (u.empty()) {
    out.emplace_back();
    return out;
  }
  if (u.size() + v.size() > limit) return out;
  TraceSeq buf;
  buf.push_back(u[0]);
  shuffle_after(buf, u, 1, v, 0, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

/// The part of w strictly before its Ret. A thread that has stopped cannot
/// let its partner return, so the partner's Ret step never becomes visible.
TraceSeq before_ret(const TraceSeq& w) {
  if (auto r = w.ret_index()) return w.prefix(*r);
  return w;
}

void par_left(const TraceSeq& t, const TraceSeq& t2, TraceSeq& buf, std::vector<TraceSeq>& out);

void par_both(const TraceSeq& t, const TraceSeq& t2, TraceSeq& buf, std::vector<TraceSeq>& out) {
  if (t.empty() || t2.empty()) {
    TraceSeq r = buf;
    const TraceSeq rest = before_ret(t.empty() ? t2 : t);
    r.append(rest.begin(), rest.end());
    r.set_done(rest.done());
    out.push_back(r);
    return;
  }
  par_left(t, t2, buf, out);
  par_left(t2, t, buf, out);
}

void par_left(const TraceSeq& t, const TraceSeq& t2, TraceSeq& buf, std::vector<TraceSeq>& out) {
  const Transition h = t[0];
  if (!h.ret()) {
    buf.push_back(h);
    par_both(t.suffix(1), t2, buf, out);
    buf.pop_back();
    return;
  }
  const Transition h2 = t2[0];
  if (h2.pre() != h.post()) return;
  buf.push_back(Transition(h.pre(), h2.post(), h2.ret()));
  detail::interleave(buf, t.begin() + 1, t.size() - 1, t2.begin() + 1, t2.size() - 1, t.done() && t2.done(), out);
  buf.pop_back();
}

}  // namespace

std::vector<TraceSeq> par_seqs(const TraceSeq& u, const TraceSeq& v, std::size_t limit) {
  if (!u.is_main_thread() || !v.is_main_thread())
    throw Error("parallel composition expects main-thread sequences");
  std::vector<TraceSeq> raw;
  TraceSeq buf;
  par_both(u, v, buf, raw);
  for (auto& r : raw) r.truncate(limit);
  return close(std::move(raw));
}

bool generates_run(const TraceSeq& u) {
  if (u.has_ret()) return false;
  for (std::size_t i = 1; i < u.size(); ++i)
    if (u[i].pre() != u[i - 1].post()) return false;
  return true;
}

std::optional<Run> run_of(const TraceSeq& u) {
  if (u.has_ret()) throw Error("run_of expects a pure sequence");
  if (!generates_run(u)) return std::nullopt;
  Run r;
  if (!u.empty()) {
    r.stores.push_back(u[0].pre());
    for (const auto& t : u) r.stores.push_back(t.post());
  }
  r.done = u.done();
  return r;
}

std::string to_text(const TraceSeq& u, const StoreSpace& space) {
  if (u.is_epsilon()) return "ε";
  std::string out;
  for (const auto& t : u) {
    out += '(';
    out += space.text(t.pre());
    out += "→";
    out += space.text(t.post());
    if (t.ret()) out += 'R';
    out += ')';
  }
  if (u.done()) out += u.empty() ? "D" : "·D";
  return out;
}

std::string to_text(const Run& r, const StoreSpace& space) {
  if (r.stores.empty()) return r.done ? "D" : "ε";
  std::string out;
  for (std::size_t i = 0; i < r.stores.size(); ++i) {
    if (i) out += ' ';
    out += space.text(r.stores[i]);
  }
  if (r.done) out += " ·D";
  return out;
}

}  // namespace coopsem
