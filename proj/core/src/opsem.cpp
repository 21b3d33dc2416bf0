#include "coopsem/opsem.hpp"

#include <algorithm>
#include <unordered_map>

#include "coopsem/error.hpp"

namespace coopsem {

CmdPtr EvalContext::fill(CmdPtr c) const {
  for (const CmdPtr& r : rests_) c = seq(std::move(c), r);
  return c;
}

Context EvalContext::as_context() const { return Context(fill(hole())); }

Decomposition decompose(const CmdPtr& c) {
  Decomposition d;
  if (c->kind == Cmd::Skip) return d;
  if (c->holes) throw Error("cannot run a command with a hole");
  std::vector<CmdPtr> rests;
  CmdPtr cur = c;
  while (cur->kind == Cmd::Seq && cur->first->kind != Cmd::Skip) {
    rests.push_back(cur->second);
    cur = cur->first;
  }
  std::reverse(rests.begin(), rests.end());
  d.ctx = EvalContext(std::move(rests));
  d.redex = cur;
  d.form = cur->kind == Cmd::Block ? Decomposition::Form::Blocked : Decomposition::Form::Redex;
  return d;
}

bool same_state(const MachineState& a, const MachineState& b) {
  if (a.store != b.store || a.pool.size() != b.pool.size() || !equal(a.active, b.active)) return false;
  for (std::size_t i = 0; i < a.pool.size(); ++i)
    if (!equal(a.pool[i], b.pool[i])) return false;
  return true;
}

namespace {

struct ActiveMove {
  Store store;
  CmdPtr active;
  CmdPtr spawned;  // appended to the pool when set
};

/// Successors of a redex under its evaluation context. Or is the only
/// construct with more than one.
std::vector<ActiveMove> active_moves(Store s, const Decomposition& d, const StoreSpace& space) {
  const Command& r = *d.redex;
  const EvalContext& e = d.ctx;
  switch (r.kind) {
    case Cmd::Seq:  // skip; C
      return {{s, e.fill(r.second), nullptr}};
    case Cmd::Assign:
      return {{space.upd(s, r.var, space.eval_n(s, *r.expr)), e.fill(skip()), nullptr}};
    case Cmd::If:
      return {{s, e.fill(space.eval_b(s, *r.cond) ? r.first : r.second), nullptr}};
    case Cmd::While:
      return {{s, e.fill(if_(r.cond, seq(r.first, d.redex), skip())), nullptr}};
    case Cmd::Async:
      return {{s, e.fill(skip()), r.first}};
    case Cmd::Yield:
      return {{s, skip(), e.fill(skip())}};
    case Cmd::RFork:
      return {{s, r.first, e.fill(skip())}};
    case Cmd::Or:
      return {{s, e.fill(r.first), nullptr}, {s, e.fill(r.second), nullptr}};
    case Cmd::Finish:
      throw Error("finish has no operational rule");
    case Cmd::Par:
      throw Error("parallel composition has no operational rule");
    default:
      throw Error("unexpected redex: " + pretty(r));
  }
}

}  // namespace

std::vector<Successor> step(const MachineState& st, const StoreSpace& space) {
  std::vector<Successor> out;
  const Decomposition d = decompose(st.active);
  if (d.form == Decomposition::Form::Blocked) return out;
  if (d.form == Decomposition::Form::TerminalSkip) {
    for (std::size_t j = 0; j < st.pool.size(); ++j) {
      MachineState next{st.store, {}, st.pool[j]};
      for (std::size_t i = 0; i < st.pool.size(); ++i)
        if (i != j) next.pool.push_back(st.pool[i]);
      out.push_back({std::move(next), StepKind::Choice});
    }
    return out;
  }
  for (auto& m : active_moves(st.store, d, space)) {
    MachineState next{m.store, st.pool, m.active};
    if (m.spawned) next.pool.push_back(m.spawned);
    out.push_back({std::move(next), StepKind::Active});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exploration

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4)); }

struct ActiveKey {
  Store store;
  CmdPtr cmd;
};

struct ActiveKeyHash {
  std::size_t operator()(const ActiveKey& k) const { return mix(k.cmd->hash, k.store.id); }
};

struct ActiveKeyEq {
  bool operator()(const ActiveKey& a, const ActiveKey& b) const {
    return a.store == b.store && equal(a.cmd, b.cmd);
  }
};

struct Outcome {
  Store post;
  std::vector<CmdPtr> spawned;
};

/// Every way an active run from (store, cmd) can reach skip.
struct Closure {
  std::vector<Outcome> outcomes;
  bool cut = false;
  std::size_t divergent = 0;
};

struct StateKey {
  std::vector<CmdPtr> pool;
  CmdPtr active;
  std::size_t segments;
  int store;  // -1 when the start store is free
  std::size_t hash;
};

StateKey make_key(std::vector<CmdPtr> pool, CmdPtr active, std::size_t segments, int store) {
  std::size_t h = mix(active->hash, segments * 131 + static_cast<std::size_t>(store + 1));
  for (const auto& c : pool) h = mix(h, c->hash);
  return {std::move(pool), std::move(active), segments, store, h};
}

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const { return k.hash; }
};

struct StateKeyEq {
  bool operator()(const StateKey& a, const StateKey& b) const {
    if (a.hash != b.hash || a.segments != b.segments || a.store != b.store || a.pool.size() != b.pool.size())
      return false;
    if (!equal(a.active, b.active)) return false;
    for (std::size_t i = 0; i < a.pool.size(); ++i)
      if (!equal(a.pool[i], b.pool[i])) return false;
    return true;
  }
};

struct PathInfo {
  std::size_t spawned;
  std::size_t branches;
};

using PathMap = std::unordered_map<ActiveKey, PathInfo, ActiveKeyHash, ActiveKeyEq>;

bool same_outcome(const Outcome& a, const Outcome& b) {
  if (a.post != b.post || a.spawned.size() != b.spawned.size()) return false;
  for (std::size_t i = 0; i < a.spawned.size(); ++i)
    if (!equal(a.spawned[i], b.spawned[i])) return false;
  return true;
}

}  // namespace

struct Explorer::Impl {
  StoreSpace space;
  ExecOptions opts;
  std::unordered_map<ActiveKey, Closure, ActiveKeyHash, ActiveKeyEq> closures;
  template <class T>
  struct Memo {
    std::vector<T> items;
    bool cut = false;
  };
  std::unordered_map<StateKey, Memo<TraceSeq>, StateKeyHash, StateKeyEq> trace_memo;
  std::unordered_map<StateKey, Memo<Run>, StateKeyHash, StateKeyEq> run_memo;
  ExecReport report;

  Impl(Config cfg, ExecOptions o) : space(std::move(cfg)), opts(o) {}

  std::size_t budget_for(const CmdPtr& c) const {
    if (opts.active_budget) return opts.active_budget;
    return 10 * space.size() * static_cast<std::size_t>(c->size);
  }

  void explore(Store s, CmdPtr c, std::vector<CmdPtr>& spawned, std::size_t branches, std::size_t& steps,
               std::size_t budget, PathMap& path, Closure& out) {
    std::vector<ActiveKey> visited;
    for (;;) {
      ActiveKey key{s, c};
      if (auto it = path.find(key); it != path.end()) {
        // Same store and command again. With nothing spawned in between the
        // state repeats exactly; without a branch in between the run is
        // deterministic and repeats forever. Either way no new outcome.
        if (it->second.spawned == spawned.size() || it->second.branches == branches) {
          ++out.divergent;
        } else {
          out.cut = true;
        }
        break;
      }
      if (steps >= budget) {
        out.cut = true;
        break;
      }
      ++steps;
      path.emplace(key, PathInfo{spawned.size(), branches});
      visited.push_back(key);

      const Decomposition d = decompose(c);
      if (d.form == Decomposition::Form::TerminalSkip) {
        Outcome o{s, spawned};
        bool dup = false;
        for (const auto& prev : out.outcomes) dup = dup || same_outcome(prev, o);
        if (!dup) out.outcomes.push_back(std::move(o));
        break;
      }
      if (d.form == Decomposition::Form::Blocked) break;
      auto moves = active_moves(s, d, space);
      if (moves.size() == 1) {
        s = moves[0].store;
        c = moves[0].active;
        if (moves[0].spawned) spawned.push_back(moves[0].spawned);
        continue;
      }
      for (auto& m : moves) {
        std::vector<CmdPtr> branch = spawned;
        if (m.spawned) branch.push_back(m.spawned);
        explore(m.store, m.active, branch, branches + 1, steps, budget, path, out);
      }
      break;
    }
    for (const auto& k : visited) path.erase(k);
  }

  const Closure& closure(Store s, const CmdPtr& c) {
    ActiveKey key{s, c};
    if (auto it = closures.find(key); it != closures.end()) return it->second;
    Closure cl;
    std::vector<CmdPtr> spawned;
    std::size_t steps = 0;
    PathMap path;
    explore(s, c, spawned, 0, steps, budget_for(c), path, cl);
    ++report.active_closures;
    return closures.emplace(key, std::move(cl)).first->second;
  }

  const Closure& checked_closure(Store s, const CmdPtr& c) {
    const Closure& cl = closure(s, c);
    report.divergent += cl.divergent;
    return cl;
  }

  /// Non-empty pure sequences of at most n segments from <pool, c>.
  const Memo<TraceSeq>& seg_traces(const std::vector<CmdPtr>& pool, const CmdPtr& c, std::size_t n) {
    StateKey key = make_key(pool, c, n, -1);
    if (auto it = trace_memo.find(key); it != trace_memo.end()) return it->second;
    std::vector<TraceSeq> out;
    bool cut = false;
    for (Store s : space.all_stores()) {
      const Closure& cl = checked_closure(s, c);
      cut = cut || cl.cut;
      for (const Outcome& o : cl.outcomes) {
        std::vector<CmdPtr> next = pool;
        next.insert(next.end(), o.spawned.begin(), o.spawned.end());
        const Transition t(s, o.post, false);
        out.push_back(TraceSeq{t});
        if (next.empty()) {
          out.push_back(TraceSeq({t}, true));
          continue;
        }
        if (n <= 1) continue;
        for (std::size_t j = 0; j < next.size(); ++j) {
          std::vector<CmdPtr> rest;
          rest.reserve(next.size() - 1);
          for (std::size_t i = 0; i < next.size(); ++i)
            if (i != j) rest.push_back(next[i]);
          const auto& sub = seg_traces(rest, next[j], n - 1);
          cut = cut || sub.cut;
          for (const TraceSeq& tail : sub.items) {
            TraceSeq u{t};
            u.append(tail.begin(), tail.end());
            u.set_done(tail.done());
            out.push_back(u);
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return trace_memo.emplace(std::move(key), Memo<TraceSeq>{std::move(out), cut}).first->second;
  }

  /// Non-empty runs of at most n segments starting at s.
  const Memo<Run>& seg_runs(const std::vector<CmdPtr>& pool, const CmdPtr& c, Store s, std::size_t n) {
    StateKey key = make_key(pool, c, n, s.id);
    if (auto it = run_memo.find(key); it != run_memo.end()) return it->second;
    std::vector<Run> out;
    const Closure& cl = checked_closure(s, c);
    bool cut = cl.cut;
    for (const Outcome& o : cl.outcomes) {
      std::vector<CmdPtr> next = pool;
      next.insert(next.end(), o.spawned.begin(), o.spawned.end());
      out.push_back(Run{{s, o.post}, false});
      if (next.empty()) out.push_back(Run{{s, o.post}, true});
      if (next.empty() || n <= 1) continue;
      for (std::size_t j = 0; j < next.size(); ++j) {
        std::vector<CmdPtr> rest;
        for (std::size_t i = 0; i < next.size(); ++i)
          if (i != j) rest.push_back(next[i]);
        const auto& sub = seg_runs(rest, next[j], o.post, n - 1);
        cut = cut || sub.cut;
        for (const Run& tail : sub.items) {
          Run r;
          r.stores.reserve(tail.stores.size() + 1);
          r.stores.push_back(s);
          r.stores.insert(r.stores.end(), tail.stores.begin(), tail.stores.end());
          r.done = tail.done;
          out.push_back(std::move(r));
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return run_memo.emplace(std::move(key), Memo<Run>{std::move(out), cut}).first->second;
  }
};

Explorer::Explorer(Config cfg, ExecOptions opts) : impl_(std::make_unique<Impl>(std::move(cfg), opts)) {}
Explorer::~Explorer() = default;

const StoreSpace& Explorer::space() const { return impl_->space; }

void Explorer::clear() {
  impl_->closures.clear();
  impl_->trace_memo.clear();
  impl_->run_memo.clear();
}

ExecTraces Explorer::traces(std::span<const CmdPtr> pool, const CmdPtr& c, std::size_t n) {
  impl_->report = {};
  std::vector<TraceSeq> out{TraceSeq{}};
  if (n > 0) {
    const auto& seqs = impl_->seg_traces({pool.begin(), pool.end()}, c, n);
    out.insert(out.end(), seqs.items.begin(), seqs.items.end());
    if (seqs.cut) ++impl_->report.budget_cuts;
  }
  return {TraceSet(Kind::Pool, std::move(out), n), impl_->report};
}

ExecRuns Explorer::runs(std::span<const CmdPtr> pool, const CmdPtr& c, std::size_t n) {
  impl_->report = {};
  std::vector<Run> out{Run{}};
  if (n > 0) {
    const std::vector<CmdPtr> p(pool.begin(), pool.end());
    for (Store s : impl_->space.all_stores()) {
      const auto& rs = impl_->seg_runs(p, c, s, n);
      out.insert(out.end(), rs.items.begin(), rs.items.end());
      if (rs.cut) ++impl_->report.budget_cuts;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return {std::move(out), impl_->report};
}

ExecTraces exec_traces(std::span<const CmdPtr> pool, const CmdPtr& c, const Config& cfg, std::size_t n,
                       ExecOptions opts) {
  Explorer ex(cfg, opts);
  return ex.traces(pool, c, n);
}

ExecRuns exec_runs(std::span<const CmdPtr> pool, const CmdPtr& c, const Config& cfg, std::size_t n,
                   ExecOptions opts) {
  Explorer ex(cfg, opts);
  return ex.runs(pool, c, n);
}

}  // namespace coopsem
