#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coopsem/lang.hpp"

namespace coopsem {

/// A store is identified by its position in the lexicographic enumeration
/// of all maps vars -> {0..k-1}, first variable most significant.
struct Store {
  std::uint16_t id = 0;

  auto operator<=>(const Store&) const = default;
};

class StoreSpace {
 public:
  /// Stores are packed into 7 bits inside a transition.
  static constexpr std::size_t kMaxStores = 127;

  explicit StoreSpace(Config cfg);

  const Config& config() const { return cfg_; }
  std::size_t size() const { return size_; }
  std::size_t num_vars() const { return cfg_.vars.size(); }
  int modulus() const { return cfg_.k; }

  int value(Store s, int var) const { return values_[s.id * cfg_.vars.size() + var]; }
  std::vector<int> values(Store s) const;
  Store make(std::span<const int> values) const;
  Store upd(Store s, int var, int n) const;

  /// All stores in lexicographic order.
  std::vector<Store> all_stores() const;

  int eval_n(Store s, const NExp& e) const;
  bool eval_b(Store s, const BExp& b) const;

  /// `n` for a single variable, `{x:0,y:1}` otherwise.
  std::string text(Store s) const;

 private:
  Config cfg_;
  std::size_t size_ = 0;
  std::vector<int> weights_;
  std::vector<int> values_;
};

}  // namespace coopsem
