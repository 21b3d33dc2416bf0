#include "coopsem/lang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "coopsem/error.hpp"

namespace coopsem {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  // 64-bit variant of boost::hash_combine.
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4);
  return h;
}

std::size_t tag(int kind, int salt) { return mix(static_cast<std::size_t>(salt) * 0x100000001b3ULL, kind); }

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

void Config::validate() const {
  if (k < 2) throw Error("modulus must be at least 2, got " + std::to_string(k));
  if (vars.empty()) throw Error("at least one variable is required");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw Error("invalid variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[j] == v) throw Error("duplicate variable '" + v + "'");
  }
}

std::optional<int> Config::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Expression factories

NExpPtr lit(int n) {
  auto e = std::make_shared<NExp>();
  e->kind = NExp::Kind::Lit;
  e->value = n;
  e->hash = mix(tag(0, 11), static_cast<std::size_t>(n));
  return e;
}

NExpPtr var(std::string name, int index) {
  auto e = std::make_shared<NExp>();
  e->kind = NExp::Kind::Var;
  e->var = index;
  e->hash = mix(mix(tag(1, 11), static_cast<std::size_t>(index)), std::hash<std::string>{}(name));
  e->name = std::move(name);
  return e;
}

NExpPtr bin(NOp op, NExpPtr lhs, NExpPtr rhs) {
  auto e = std::make_shared<NExp>();
  e->kind = NExp::Kind::Bin;
  e->op = op;
  e->hash = mix(mix(mix(tag(2, 11), static_cast<std::size_t>(op)), lhs->hash), rhs->hash);
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

namespace {

BExpPtr make_b(BExp::Kind kind) {
  auto b = std::make_shared<BExp>();
  b->kind = kind;
  b->hash = tag(static_cast<int>(kind), 13);
  return b;
}

}  // namespace

BExpPtr btrue() {
  static const BExpPtr t = make_b(BExp::Kind::True);
  return t;
}

BExpPtr bfalse() {
  static const BExpPtr f = make_b(BExp::Kind::False);
  return f;
}

BExpPtr cmp(BOp op, NExpPtr lhs, NExpPtr rhs) {
  auto b = std::make_shared<BExp>();
  b->kind = BExp::Kind::Cmp;
  b->op = op;
  b->hash = mix(mix(mix(tag(2, 13), static_cast<std::size_t>(op)), lhs->hash), rhs->hash);
  b->nl = std::move(lhs);
  b->nr = std::move(rhs);
  return b;
}

BExpPtr bnot(BExpPtr inner) {
  auto b = std::make_shared<BExp>();
  b->kind = BExp::Kind::Not;
  b->hash = mix(tag(3, 13), inner->hash);
  b->bl = std::move(inner);
  return b;
}

static BExpPtr bbin(BExp::Kind kind, BExpPtr l, BExpPtr r) {
  auto b = std::make_shared<BExp>();
  b->kind = kind;
  b->hash = mix(mix(tag(static_cast<int>(kind), 13), l->hash), r->hash);
  b->bl = std::move(l);
  b->br = std::move(r);
  return b;
}

BExpPtr band(BExpPtr a, BExpPtr b) { return bbin(BExp::Kind::And, std::move(a), std::move(b)); }
BExpPtr bor(BExpPtr a, BExpPtr b) { return bbin(BExp::Kind::Or, std::move(a), std::move(b)); }

bool equal(const NExp& a, const NExp& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.kind != b.kind) return false;
  switch (a.kind) {
    case NExp::Kind::Lit:
      return a.value == b.value;
    case NExp::Kind::Var:
      return a.var == b.var && a.name == b.name;
    case NExp::Kind::Bin:
      return a.op == b.op && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
  return false;
}

bool equal(const BExp& a, const BExp& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.kind != b.kind) return false;
  switch (a.kind) {
    case BExp::Kind::True:
    case BExp::Kind::False:
      return true;
    case BExp::Kind::Cmp:
      return a.op == b.op && equal(*a.nl, *b.nl) && equal(*a.nr, *b.nr);
    case BExp::Kind::Not:
      return equal(*a.bl, *b.bl);
    case BExp::Kind::And:
    case BExp::Kind::Or:
      return equal(*a.bl, *b.bl) && equal(*a.br, *b.br);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Command factories

namespace {

bool is_extension(Cmd k) { return k == Cmd::Finish || k == Cmd::Par || k == Cmd::Or || k == Cmd::RFork; }

CmdPtr make(Cmd kind, CmdPtr first = nullptr, CmdPtr second = nullptr, BExpPtr cond = nullptr) {
  auto c = std::make_shared<Command>();
  c->kind = kind;
  std::size_t h = tag(static_cast<int>(kind), 17);
  c->extensions = is_extension(kind);
  c->loops = kind == Cmd::While;
  c->holes = kind == Cmd::Hole ? 1 : 0;
  int child_depth = -1;
  if (cond) h = mix(h, cond->hash);
  for (const CmdPtr* child : {&first, &second}) {
    if (!*child) continue;
    const Command& ch = **child;
    h = mix(h, ch.hash);
    c->size += ch.size;
    c->holes += ch.holes;
    c->loops = c->loops || ch.loops;
    c->extensions = c->extensions || ch.extensions;
    child_depth = std::max(child_depth, ch.depth);
  }
  c->depth = child_depth + 1;
  c->hash = h;
  c->cond = std::move(cond);
  c->first = std::move(first);
  c->second = std::move(second);
  return c;
}

}  // namespace

CmdPtr skip() {
  static const CmdPtr c = make(Cmd::Skip);
  return c;
}

CmdPtr block() {
  static const CmdPtr c = make(Cmd::Block);
  return c;
}

CmdPtr yield() {
  static const CmdPtr c = make(Cmd::Yield);
  return c;
}

CmdPtr hole() {
  static const CmdPtr c = make(Cmd::Hole);
  return c;
}

CmdPtr assign(std::string name, int index, NExpPtr e) {
  auto c = std::make_shared<Command>();
  c->kind = Cmd::Assign;
  c->var = index;
  c->hash = mix(mix(mix(tag(static_cast<int>(Cmd::Assign), 17), static_cast<std::size_t>(index)),
                    std::hash<std::string>{}(name)),
                e->hash);
  c->name = std::move(name);
  c->expr = std::move(e);
  return c;
}

CmdPtr seq(CmdPtr a, CmdPtr b) { return make(Cmd::Seq, std::move(a), std::move(b)); }
CmdPtr if_(BExpPtr b, CmdPtr t, CmdPtr e) { return make(Cmd::If, std::move(t), std::move(e), std::move(b)); }
CmdPtr while_(BExpPtr b, CmdPtr body) { return make(Cmd::While, std::move(body), nullptr, std::move(b)); }
CmdPtr async(CmdPtr body) { return make(Cmd::Async, std::move(body)); }
CmdPtr finish(CmdPtr body) { return make(Cmd::Finish, std::move(body)); }
CmdPtr par(CmdPtr a, CmdPtr b) { return make(Cmd::Par, std::move(a), std::move(b)); }
CmdPtr choice(CmdPtr a, CmdPtr b) { return make(Cmd::Or, std::move(a), std::move(b)); }
CmdPtr rfork(CmdPtr body) { return make(Cmd::RFork, std::move(body)); }

CmdPtr blockuntil(BExpPtr b) { return if_(std::move(b), skip(), block()); }

CmdPtr seq_all(const std::vector<CmdPtr>& cs) {
  if (cs.empty()) return skip();
  CmdPtr acc = cs.back();
  for (auto it = cs.rbegin() + 1; it != cs.rend(); ++it) acc = seq(*it, acc);
  return acc;
}

bool equal(const Command& a, const Command& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.kind != b.kind || a.size != b.size) return false;
  if (a.kind == Cmd::Assign) return a.var == b.var && a.name == b.name && equal(*a.expr, *b.expr);
  if (static_cast<bool>(a.cond) != static_cast<bool>(b.cond)) return false;
  if (a.cond && !equal(*a.cond, *b.cond)) return false;
  if (static_cast<bool>(a.first) != static_cast<bool>(b.first)) return false;
  if (a.first && !equal(*a.first, *b.first)) return false;
  if (static_cast<bool>(a.second) != static_cast<bool>(b.second)) return false;
  if (a.second && !equal(*a.second, *b.second)) return false;
  return true;
}

bool equal(const CmdPtr& a, const CmdPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool yields_only_under_async(const Command& c) {
  switch (c.kind) {
    case Cmd::Yield:
      return false;
    case Cmd::Async:
      return true;
    default:
      break;
  }
  if (c.first && !yields_only_under_async(*c.first)) return false;
  if (c.second && !yields_only_under_async(*c.second)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Contexts

Context::Context(CmdPtr body) : body_(std::move(body)) {
  if (!body_ || body_->holes != 1) throw Error("a context must contain exactly one hole");
}

Context Context::identity() { return Context(hole()); }

bool Context::is_evaluation() const {
  const Command* c = body_.get();
  while (c->kind == Cmd::Seq) {
    if (c->second->holes != 0) return false;
    c = c->first.get();
  }
  return c->kind == Cmd::Hole;
}

namespace {

CmdPtr plug(const CmdPtr& c, const CmdPtr& filler) {
  if (c->holes == 0) return c;
  switch (c->kind) {
    case Cmd::Hole:
      return filler;
    case Cmd::Seq:
      return seq(plug(c->first, filler), plug(c->second, filler));
    case Cmd::If:
      return if_(c->cond, plug(c->first, filler), plug(c->second, filler));
    case Cmd::While:
      return while_(c->cond, plug(c->first, filler));
    case Cmd::Async:
      return async(plug(c->first, filler));
    case Cmd::Finish:
      return finish(plug(c->first, filler));
    case Cmd::Par:
      return par(plug(c->first, filler), plug(c->second, filler));
    case Cmd::Or:
      return choice(plug(c->first, filler), plug(c->second, filler));
    case Cmd::RFork:
      return rfork(plug(c->first, filler));
    default:
      return c;
  }
}

}  // namespace

CmdPtr fill(const Context& ctx, const CmdPtr& c) { return plug(ctx.body(), c); }

// ---------------------------------------------------------------------------
// Pretty printing

namespace {

void put(std::string& out, const NExp& e, int level) {
  switch (e.kind) {
    case NExp::Kind::Lit:
      out += std::to_string(e.value);
      return;
    case NExp::Kind::Var:
      out += e.name;
      return;
    case NExp::Kind::Bin: {
      const int own = e.op == NOp::Mul ? 1 : 0;
      if (level > own) out += '(';
      put(out, *e.lhs, own);
      out += e.op == NOp::Add ? " + " : e.op == NOp::Sub ? " - " : " * ";
      put(out, *e.rhs, own + 1);
      if (level > own) out += ')';
      return;
    }
  }
}

void put(std::string& out, const BExp& b, int level) {
  switch (b.kind) {
    case BExp::Kind::True:
      out += "true";
      return;
    case BExp::Kind::False:
      out += "false";
      return;
    case BExp::Kind::Cmp:
      put(out, *b.nl, 0);
      out += b.op == BOp::Eq ? " == " : " <= ";
      put(out, *b.nr, 0);
      return;
    case BExp::Kind::Not:
      if (level > 2) out += '(';
      out += "not ";
      put(out, *b.bl, 2);
      if (level > 2) out += ')';
      return;
    case BExp::Kind::And:
    case BExp::Kind::Or: {
      const int own = b.kind == BExp::Kind::And ? 1 : 0;
      if (level > own) out += '(';
      put(out, *b.bl, own);
      out += own == 1 ? " and " : " or ";
      put(out, *b.br, own + 1);
      if (level > own) out += ')';
      return;
    }
  }
}

void put(std::string& out, const Command& c, int level);

void braced(std::string& out, const Command& c) {
  out += "{ ";
  put(out, c, 0);
  out += " }";
}

void put(std::string& out, const Command& c, int level) {
  switch (c.kind) {
    case Cmd::Skip:
      out += "skip";
      return;
    case Cmd::Yield:
      out += "yield";
      return;
    case Cmd::Block:
      out += "block";
      return;
    case Cmd::Hole:
      out += "[]";
      return;
    case Cmd::Assign:
      out += c.name;
      out += " := ";
      put(out, *c.expr, 0);
      return;
    case Cmd::If:
      out += "if ";
      put(out, *c.cond, 0);
      out += ' ';
      braced(out, *c.first);
      out += " else ";
      braced(out, *c.second);
      return;
    case Cmd::While:
      out += "while ";
      put(out, *c.cond, 0);
      out += ' ';
      braced(out, *c.first);
      return;
    case Cmd::Async:
      out += "async ";
      braced(out, *c.first);
      return;
    case Cmd::Finish:
      out += "finish ";
      braced(out, *c.first);
      return;
    case Cmd::RFork:
      out += "rfork ";
      braced(out, *c.first);
      return;
    case Cmd::Or:
      out += "choice ";
      braced(out, *c.first);
      out += " or ";
      braced(out, *c.second);
      return;
    case Cmd::Seq:
      if (level > 1) out += '(';
      put(out, *c.first, 2);
      out += "; ";
      put(out, *c.second, 1);
      if (level > 1) out += ')';
      return;
    case Cmd::Par:
      if (level > 0) out += '(';
      put(out, *c.first, 0);
      out += " || ";
      put(out, *c.second, 1);
      if (level > 0) out += ')';
      return;
  }
}

}  // namespace

std::string pretty(const Command& c) {
  std::string out;
  put(out, c, 0);
  return out;
}

std::string pretty(const CmdPtr& c) { return pretty(*c); }

std::string pretty(const NExp& e) {
  std::string out;
  put(out, e, 0);
  return out;
}

std::string pretty(const BExp& b) {
  std::string out;
  put(out, b, 0);
  return out;
}

std::string pretty(const Context& ctx) { return pretty(*ctx.body()); }

}  // namespace coopsem
