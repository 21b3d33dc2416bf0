#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coopsem/lang.hpp"
#include "coopsem/store.hpp"
#include "coopsem/trace_set.hpp"

namespace coopsem {

/// Evaluation context [] ; C1 ; ... ; Cn, stored innermost continuation first.
class EvalContext {
 public:
  EvalContext() = default;
  explicit EvalContext(std::vector<CmdPtr> rests) : rests_(std::move(rests)) {}

  const std::vector<CmdPtr>& rests() const { return rests_; }
  bool is_identity() const { return rests_.empty(); }
  CmdPtr fill(CmdPtr c) const;
  Context as_context() const;

 private:
  std::vector<CmdPtr> rests_;
};

struct Decomposition {
  enum class Form { TerminalSkip, Blocked, Redex };

  Form form = Form::TerminalSkip;
  EvalContext ctx;
  CmdPtr redex;
};

/// Splits an active command into an evaluation context and a redex.
Decomposition decompose(const CmdPtr& c);

struct MachineState {
  Store store;
  std::vector<CmdPtr> pool;
  CmdPtr active;
};

bool same_state(const MachineState& a, const MachineState& b);

enum class StepKind { Active, Choice };

struct Successor {
  MachineState state;
  StepKind kind;
};

/// All one-step successors. Active steps come from the redex; choice steps
/// resume a pool command once the active command is skip.
std::vector<Successor> step(const MachineState& st, const StoreSpace& space);

struct ExecOptions {
  /// Active steps allowed per segment before giving up. Zero picks
  /// 10 * |stores| * (size of the state).
  std::size_t active_budget = 0;
};

struct ExecReport {
  /// Segments whose active run was cut by the budget without a proof of
  /// divergence. Any cut makes the result incomplete.
  std::size_t budget_cuts = 0;
  /// Active runs proved silent by revisiting a state.
  std::size_t divergent = 0;
  std::size_t active_closures = 0;

  bool complete() const { return budget_cuts == 0; }
};

struct ExecTraces {
  TraceSet traces;  // Pool kind: pure sequences, Done when the pool drains
  ExecReport report;
};

struct ExecRuns {
  std::vector<Run> runs;
  ExecReport report;
};

/// Operational trace set of <T, C> with at most n segments. Between
/// segments the environment may replace the store.
ExecTraces exec_traces(std::span<const CmdPtr> pool, const CmdPtr& c, const Config& cfg, std::size_t n,
                       ExecOptions opts = {});
/// Runs of <T, C> with at most n segments and no interference.
ExecRuns exec_runs(std::span<const CmdPtr> pool, const CmdPtr& c, const Config& cfg, std::size_t n,
                   ExecOptions opts = {});

/// Reusable explorer; memo tables persist across queries on the same space.
class Explorer {
 public:
  Explorer(Config cfg, ExecOptions opts = {});
  ~Explorer();
  Explorer(const Explorer&) = delete;
  Explorer& operator=(const Explorer&) = delete;

  const StoreSpace& space() const;
  ExecTraces traces(std::span<const CmdPtr> pool, const CmdPtr& c, std::size_t n);
  ExecRuns runs(std::span<const CmdPtr> pool, const CmdPtr& c, std::size_t n);
  void clear();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace coopsem
