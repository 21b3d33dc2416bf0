#include "coopsem/store.hpp"

#include "coopsem/error.hpp"

namespace coopsem {

StoreSpace::StoreSpace(Config cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const std::size_t n = cfg_.vars.size();
  weights_.assign(n, 1);
  std::size_t total = 1;
  for (std::size_t i = n; i-- > 0;) {
    weights_[i] = static_cast<int>(total);
    total *= static_cast<std::size_t>(cfg_.k);
    if (total > kMaxStores)
      throw Error("store space too large: " + std::to_string(cfg_.k) + "^" + std::to_string(n) +
                  " exceeds " + std::to_string(kMaxStores) + " stores");
  }
  size_ = total;
  values_.resize(size_ * n);
  for (std::size_t id = 0; id < size_; ++id)
    for (std::size_t v = 0; v < n; ++v)
      values_[id * n + v] = static_cast<int>(id / weights_[v]) % cfg_.k;
}

std::vector<int> StoreSpace::values(Store s) const {
  const std::size_t n = cfg_.vars.size();
  return {values_.begin() + s.id * n, values_.begin() + (s.id + 1) * n};
}

Store StoreSpace::make(std::span<const int> vals) const {
  if (vals.size() != cfg_.vars.size()) throw Error("store needs one value per variable");
  int id = 0;
  for (std::size_t v = 0; v < vals.size(); ++v) {
    if (vals[v] < 0 || vals[v] >= cfg_.k) throw Error("store value out of range");
    id += vals[v] * weights_[v];
  }
  return Store{static_cast<std::uint16_t>(id)};
}

Store StoreSpace::upd(Store s, int var, int n) const {
  const int old = value(s, var);
  return Store{static_cast<std::uint16_t>(s.id + (n - old) * weights_[var])};
}

std::vector<Store> StoreSpace::all_stores() const {
  std::vector<Store> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = Store{static_cast<std::uint16_t>(i)};
  return out;
}

int StoreSpace::eval_n(Store s, const NExp& e) const {
  const int k = cfg_.k;
  switch (e.kind) {
    case NExp::Kind::Lit:
      return e.value % k;
    case NExp::Kind::Var:
      return value(s, e.var);
    case NExp::Kind::Bin: {
      const int a = eval_n(s, *e.lhs);
      const int b = eval_n(s, *e.rhs);
      switch (e.op) {
        case NOp::Add:
          return (a + b) % k;
        case NOp::Sub:
          return (a + k - b) % k;
        case NOp::Mul:
          return (a * b) % k;
      }
    }
  }
  return 0;
}

bool StoreSpace::eval_b(Store s, const BExp& b) const {
  switch (b.kind) {
    case BExp::Kind::True:
      return true;
    case BExp::Kind::False:
      return false;
    case BExp::Kind::Cmp: {
      const int l = eval_n(s, *b.nl);
      const int r = eval_n(s, *b.nr);
      return b.op == BOp::Eq ? l == r : l <= r;
    }
    case BExp::Kind::Not:
      return !eval_b(s, *b.bl);
    case BExp::Kind::And:
      return eval_b(s, *b.bl) && eval_b(s, *b.br);
    case BExp::Kind::Or:
      return eval_b(s, *b.bl) || eval_b(s, *b.br);
  }
  return false;
}

std::string StoreSpace::text(Store s) const {
  if (cfg_.vars.size() == 1) return std::to_string(value(s, 0));
  std::string out = "{";
  for (std::size_t v = 0; v < cfg_.vars.size(); ++v) {
    if (v) out += ',';
    out += cfg_.vars[v];
    out += ':';
    out += std::to_string(value(s, static_cast<int>(v)));
  }
  out += '}';
  return out;
}

}  // namespace coopsem
