#include "coopsem/denot.hpp"

#include <algorithm>

#include "coopsem/error.hpp"

namespace coopsem {

namespace {

void require(const TraceSet& p, Kind k, const char* op) {
  if (p.kind() != k)
    throw Error(std::string(op) + " expects a " + kind_name(k) + " set, got " + kind_name(p.kind()));
}

void require_pure(const TraceSet& p, const char* op) {
  if (p.kind() == Kind::Proc) throw Error(std::string(op) + " expects a pure set, got Proc");
}

std::size_t bound_of(std::size_t limit, const TraceSet& a) { return std::min(limit, a.bound()); }

std::size_t bound_of(std::size_t limit, const TraceSet& a, const TraceSet& b) {
  return std::min({limit, a.bound(), b.bound()});
}

}  // namespace

TraceSet unit_proc(const StoreSpace& space, std::size_t limit) {
  std::vector<TraceSeq> out{TraceSeq{}};
  if (limit >= 1) {
    for (Store s : space.all_stores()) {
      out.push_back(TraceSeq{Transition(s, s, true)});
      out.push_back(TraceSeq({Transition(s, s, true)}, true));
    }
  }
  return TraceSet(Kind::Proc, std::move(out), limit);
}

TraceSet pool_unit() {
  TraceSeq done;
  done.set_done(true);
  return TraceSet(Kind::Pool, {TraceSeq{}, done});
}

TraceSet compose(const TraceSet& p, const TraceSet& q, std::size_t limit) {
  require(p, Kind::Proc, "compose");
  require(q, Kind::Proc, "compose");
  const std::size_t bound = bound_of(limit, p, q);
  std::vector<TraceSeq> out;
  TraceSeq buf;
  for (const TraceSeq& u : p) {
    const auto r = u.ret_index();
    if (!r) {
      out.push_back(u);
      continue;
    }
    const std::size_t i = *r;
    const Transition ret = u[i];
    const std::size_t wlen = u.size() - i - 1;
    for (const TraceSeq& v : q.starting_at(ret.post())) {
      if (u.size() + v.size() - 1 > bound) continue;
      buf = u.prefix(i);
      buf.push_back(Transition(ret.pre(), v[0].post(), v[0].ret()));
      detail::interleave(buf, u.begin() + i + 1, wlen, v.begin() + 1, v.size() - 1, u.done() && v.done(), out);
    }
  }
  return TraceSet(Kind::Proc, std::move(out), bound);
}

TraceSet delay(const TraceSet& p, const StoreSpace& space, std::size_t limit) {
  const std::size_t bound = bound_of(limit, p);
  std::vector<TraceSeq> out{TraceSeq{}};
  if (bound >= 1) {
    for (Store s : space.all_stores()) {
      for (const TraceSeq& u : p) {
        if (u.size() + 1 > bound) continue;
        if (u.is_done_alone()) continue;
        TraceSeq t{Transition(s, s, false)};
        t.append(u.begin(), u.end());
        t.set_done(u.done());
        out.push_back(t);
      }
    }
  }
  return TraceSet(p.kind(), std::move(out), bound);
}

TraceSet clean_set(const TraceSet& p) {
  std::vector<TraceSeq> out;
  out.reserve(p.size());
  for (const TraceSeq& u : p) {
    if (u.is_done_alone()) throw Error("clean_set: bare Done has no AProc counterpart");
    out.push_back(clean_seq(u));
  }
  return TraceSet(Kind::AProc, std::move(out), p.bound());
}

TraceSet async1(const TraceSet& q, const StoreSpace& space, std::size_t limit) {
  require(q, Kind::AProc, "async1");
  const std::size_t bound = bound_of(limit, q);
  std::vector<TraceSeq> out{TraceSeq{}};
  if (bound >= 1) {
    for (Store s : space.all_stores()) {
      for (const TraceSeq& u : q) {
        if (u.size() + 1 > bound) continue;
        TraceSeq t{Transition(s, s, true)};
        t.append(u.begin(), u.end());
        t.set_done(u.done());
        out.push_back(t);
      }
    }
  }
  return TraceSet(Kind::Proc, std::move(out), bound);
}

TraceSet rsh(const TraceSet& p, const TraceSet& q, std::size_t limit) {
  require_pure(p, "|>");
  const std::size_t bound = bound_of(limit, p, q);
  std::vector<TraceSeq> out{TraceSeq{}};
  TraceSeq buf;
  for (const TraceSeq& v : q) {
    if (v.empty()) continue;
    for (const TraceSeq& u : p) {
      if (u.size() + v.size() > bound) continue;
      buf = TraceSeq{v[0]};
      detail::interleave(buf, u.begin(), u.size(), v.begin() + 1, v.size() - 1, u.done() && v.done(), out);
    }
  }
  return TraceSet(q.kind(), std::move(out), bound);
}

TraceSet lsh(const TraceSet& p, const TraceSet& q, std::size_t limit) {
  require_pure(p, "<|");
  const std::size_t bound = bound_of(limit, p, q);
  std::vector<TraceSeq> out{TraceSeq{}};
  TraceSeq buf;
  for (const TraceSeq& u : p) {
    if (u.empty()) continue;
    for (const TraceSeq& v : q) {
      if (u.size() + v.size() > bound) continue;
      buf = TraceSeq{u[0]};
      detail::interleave(buf, u.begin() + 1, u.size() - 1, v.begin(), v.size(), u.done() && v.done(), out);
    }
  }
  return TraceSet(q.kind(), std::move(out), bound);
}

TraceSet async2(const TraceSet& pool, const TraceSet& q, std::size_t limit) {
  require(q, Kind::Proc, "async2");
  return rsh(pool, q, limit);
}

TraceSet pool_shuffle(const TraceSet& p, const TraceSet& q, std::size_t limit) {
  require_pure(p, "pool shuffle");
  require_pure(q, "pool shuffle");
  const std::size_t bound = bound_of(limit, p, q);
  std::vector<TraceSeq> out;
  TraceSeq buf;
  for (const TraceSeq& u : p) {
    for (const TraceSeq& v : q) {
      if (u.size() + v.size() > bound) continue;
      buf = TraceSeq{};
      detail::interleave(buf, u.begin(), u.size(), v.begin(), v.size(), u.done() && v.done(), out);
    }
  }
  return TraceSet(Kind::Pool, std::move(out), bound);
}

TraceSet as_pool(const TraceSet& p) {
  require_pure(p, "as_pool");
  return TraceSet(Kind::Pool, p.elems(), p.bound());
}

TraceSet finish_den(const TraceSet& p) {
  require(p, Kind::Proc, "finish");
  // Mark the maximal elements and close. A plain u whose only extension is
  // u Done is absorbed by the marked u Done, so finish(*) = *.
  std::vector<TraceSeq> out;
  const auto& es = p.elems();
  for (std::size_t i = 0; i < es.size(); ++i) {
    // Sorted order puts every extension of es[i] right after it.
    const bool maximal = i + 1 == es.size() || !is_prefix(es[i], es[i + 1]);
    if (maximal) out.push_back(mark_seq(clean_seq(es[i])));
  }
  return TraceSet::closure(Kind::Proc, std::move(out), p.bound());
}

TraceSet par_den(const TraceSet& p, const TraceSet& q, std::size_t limit) {
  require(p, Kind::Proc, "par");
  require(q, Kind::Proc, "par");
  const std::size_t bound = bound_of(limit, p, q);
  std::vector<TraceSeq> out{TraceSeq{}};
  for (const TraceSeq& u : p) {
    for (const TraceSeq& v : q) {
      // A single merge step removes at most one transition, so longer
      // pairs only contribute prefixes that shorter pairs already give.
      if (bound != kUnbounded && u.size() + v.size() > bound + 1) continue;
      for (auto& r : par_seqs(u, v, bound)) out.push_back(r);
    }
  }
  return TraceSet(Kind::Proc, std::move(out), bound);
}

std::vector<Run> runs_of(const TraceSet& p) {
  std::vector<Run> out;
  for (const TraceSeq& u : p) {
    if (auto r = run_of(clean_seq(u))) out.push_back(std::move(*r));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

Denoter::Denoter(Config cfg, std::size_t bound)
    : space_(std::move(cfg)), bound_(bound), unit_(unit_proc(space_, bound)) {}

const TraceSet& Denoter::denote(const CmdPtr& c) {
  if (c->holes != 0) throw Error("cannot denote a command with a hole; use denote_ctx");
  if (auto it = cache_.find(c); it != cache_.end()) {
    ++stats_.cache_hits;
    return it->second;
  }
  ++stats_.cache_misses;
  TraceSet r = eval(c, nullptr);
  return cache_.emplace(c, std::move(r)).first->second;
}

TraceSet Denoter::denote_pool(std::span<const CmdPtr> pool) {
  TraceSet acc = pool_unit();
  for (const CmdPtr& c : pool) acc = pool_shuffle(acc, as_pool(clean_set(denote(c))), bound_);
  return acc;
}

TraceSet Denoter::denote_state(std::span<const CmdPtr> pool, const CmdPtr& c) {
  return async2(denote_pool(pool), denote(c), bound_);
}

TraceSet Denoter::denote_ctx(const Context& ctx, const TraceSet& p) {
  require(p, Kind::Proc, "denote_ctx");
  return eval(ctx.body(), &p);
}

TraceSet Denoter::conditional(const BExp& b, const TraceSet& then_set, const TraceSet& else_set) const {
  std::vector<TraceSeq> out{TraceSeq{}};
  for (const TraceSeq& u : then_set)
    if (!u.empty() && space_.eval_b(u[0].pre(), b)) out.push_back(u);
  for (const TraceSeq& u : else_set)
    if (!u.empty() && !space_.eval_b(u[0].pre(), b)) out.push_back(u);
  return TraceSet(Kind::Proc, std::move(out), bound_);
}

TraceSet Denoter::assignment(const Command& c) const {
  std::vector<TraceSeq> out{TraceSeq{}};
  if (bound_ >= 1) {
    for (Store s : space_.all_stores()) {
      const Transition t(s, space_.upd(s, c.var, space_.eval_n(s, *c.expr)), true);
      out.push_back(TraceSeq{t});
      out.push_back(TraceSeq({t}, true));
    }
  }
  return TraceSet(Kind::Proc, std::move(out), bound_);
}

TraceSet Denoter::eval_while(const Command& c, const TraceSet* hole) {
  const TraceSet body = hole && c.first->holes ? eval(c.first, hole) : denote(c.first);
  const std::size_t cap = (bound_ == kUnbounded ? 64 : bound_ + 2) * 2 * space_.size() * 64;
  TraceSet w = TraceSet::epsilon(Kind::Proc, bound_);
  for (std::size_t i = 0; i < cap; ++i) {
    ++stats_.while_iterations;
    TraceSet next = conditional(*c.cond, compose(body, w, bound_), unit_);
    if (next == w) return w;
    w = std::move(next);
  }
  throw Error("while iteration did not stabilise within " + std::to_string(cap) + " rounds");
}

TraceSet Denoter::eval(const CmdPtr& cp, const TraceSet* hole) {
  const Command& c = *cp;
  auto sub = [&](const CmdPtr& child) -> TraceSet {
    if (child->holes) return eval(child, hole);
    return denote(child);
  };
  switch (c.kind) {
    case Cmd::Hole:
      if (!hole) throw Error("hole without a value");
      return truncate(*hole, bound_);
    case Cmd::Skip:
      return unit_;
    case Cmd::Block:
      return TraceSet::epsilon(Kind::Proc, bound_);
    case Cmd::Yield:
      return delay(unit_, space_, bound_);
    case Cmd::Assign:
      return assignment(c);
    case Cmd::Seq:
      return compose(sub(c.first), sub(c.second), bound_);
    case Cmd::If:
      return conditional(*c.cond, sub(c.first), sub(c.second));
    case Cmd::While:
      return eval_while(c, hole);
    case Cmd::Async:
      return async1(clean_set(sub(c.first)), space_, bound_);
    case Cmd::Finish: {
      // Maximality at the bound depends on one more transition.
      if (c.first->holes) throw Error("finish around a hole is not supported");
      if (bound_ == kUnbounded) return finish_den(denote(c.first));
      if (!wider_) wider_ = std::make_unique<Denoter>(space_.config(), bound_ + 1);
      return truncate(finish_den(wider_->denote(c.first)), bound_);
    }
    case Cmd::Par:
      return par_den(sub(c.first), sub(c.second), bound_);
    case Cmd::Or:
      return set_union(sub(c.first), sub(c.second));
    case Cmd::RFork:
      return lsh(clean_set(sub(c.first)), unit_, bound_);
  }
  throw Error("unknown command kind");
}

TraceSet denote(const CmdPtr& c, const Config& cfg, std::size_t bound) {
  Denoter d(cfg, bound);
  return d.denote(c);
}

}  // namespace coopsem
