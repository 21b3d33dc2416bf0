#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coopsem {

/// Program variables and the modulus of the value domain.
struct Config {
  std::vector<std::string> vars{"x"};
  int k = 2;

  void validate() const;
  std::optional<int> var_index(std::string_view name) const;

  bool operator==(const Config&) const = default;
};

// ---------------------------------------------------------------------------
// Expressions

enum class NOp { Add, Sub, Mul };

struct NExp;
using NExpPtr = std::shared_ptr<const NExp>;

struct NExp {
  enum class Kind { Lit, Var, Bin };

  Kind kind = Kind::Lit;
  int value = 0;  // Lit
  int var = -1;   // Var: index into Config::vars
  std::string name;
  NOp op = NOp::Add;
  NExpPtr lhs, rhs;
  std::size_t hash = 0;
};

NExpPtr lit(int n);
NExpPtr var(std::string name, int index);
NExpPtr bin(NOp op, NExpPtr lhs, NExpPtr rhs);

enum class BOp { Eq, Le };

struct BExp;
using BExpPtr = std::shared_ptr<const BExp>;

struct BExp {
  enum class Kind { True, False, Cmp, Not, And, Or };

  Kind kind = Kind::True;
  BOp op = BOp::Eq;
  NExpPtr nl, nr;  // Cmp
  BExpPtr bl, br;  // Not uses bl only
  std::size_t hash = 0;
};

BExpPtr btrue();
BExpPtr bfalse();
BExpPtr cmp(BOp op, NExpPtr lhs, NExpPtr rhs);
BExpPtr bnot(BExpPtr b);
BExpPtr band(BExpPtr a, BExpPtr b);
BExpPtr bor(BExpPtr a, BExpPtr b);

bool equal(const NExp& a, const NExp& b);
bool equal(const BExp& a, const BExp& b);

// ---------------------------------------------------------------------------
// Commands

enum class Cmd {
  Skip,
  Assign,
  Seq,
  If,
  While,
  Async,
  Yield,
  Block,
  Finish,
  Par,
  Or,
  RFork,
  Hole,
};

struct Command;
using CmdPtr = std::shared_ptr<const Command>;

/// Immutable AST node. Build through the factory functions below so the
/// cached hash and summary flags stay consistent.
struct Command {
  Cmd kind = Cmd::Skip;
  int var = -1;  // Assign
  std::string name;
  NExpPtr expr;   // Assign
  BExpPtr cond;   // If, While
  CmdPtr first;   // Seq lhs, If then, While/Async/Finish/RFork body, Par/Or lhs
  CmdPtr second;  // Seq rhs, If else, Par/Or rhs

  std::size_t hash = 0;
  int size = 1;
  int depth = 0;
  int holes = 0;
  bool loops = false;
  bool extensions = false;
};

CmdPtr skip();
CmdPtr block();
CmdPtr yield();
CmdPtr hole();
CmdPtr assign(std::string name, int index, NExpPtr e);
CmdPtr seq(CmdPtr a, CmdPtr b);
CmdPtr if_(BExpPtr b, CmdPtr then_c, CmdPtr else_c);
CmdPtr while_(BExpPtr b, CmdPtr body);
CmdPtr async(CmdPtr body);
CmdPtr finish(CmdPtr body);
CmdPtr par(CmdPtr a, CmdPtr b);
CmdPtr choice(CmdPtr a, CmdPtr b);
CmdPtr rfork(CmdPtr body);

/// `blockuntil b` is sugar for `if b then skip else block`.
CmdPtr blockuntil(BExpPtr b);

/// Builds `c1; c2; ...; cn` nested to the right. An empty list gives skip.
CmdPtr seq_all(const std::vector<CmdPtr>& cs);

bool equal(const Command& a, const Command& b);
bool equal(const CmdPtr& a, const CmdPtr& b);

struct CmdHash {
  std::size_t operator()(const CmdPtr& c) const { return c->hash; }
};
struct CmdEq {
  bool operator()(const CmdPtr& a, const CmdPtr& b) const { return equal(a, b); }
};

/// True when every `yield` sits inside some `async` body.
bool yields_only_under_async(const Command& c);

// ---------------------------------------------------------------------------
// Contexts

/// A command with exactly one hole.
class Context {
 public:
  explicit Context(CmdPtr body);

  const CmdPtr& body() const { return body_; }

  /// An evaluation context is a hole possibly followed by commands: [] ; C.
  bool is_evaluation() const;

  static Context identity();

 private:
  CmdPtr body_;
};

CmdPtr fill(const Context& ctx, const CmdPtr& c);

// ---------------------------------------------------------------------------
// Text form

struct ParseOptions {
  bool allow_extensions = true;
};

CmdPtr parse(std::string_view text, const Config& cfg, ParseOptions opts = {});
NExpPtr parse_nexp(std::string_view text, const Config& cfg);
BExpPtr parse_bexp(std::string_view text, const Config& cfg);

std::string pretty(const Command& c);
std::string pretty(const CmdPtr& c);
std::string pretty(const NExp& e);
std::string pretty(const BExp& b);
std::string pretty(const Context& ctx);

}  // namespace coopsem
