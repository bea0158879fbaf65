#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lexpref {

using VarId = std::uint32_t;
using ValueId = std::uint32_t;

// Fixed-universe bit set over variable indices. Two sets combined by a binary
// operator must share the same universe.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VarSet full(std::size_t universe) {
    VarSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<VarId>(i));
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(VarId v) const {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u);
  }
  void insert(VarId v) {
    check(v);
    words_[v >> 6] |= (std::uint64_t{1} << (v & 63));
  }
  void erase(VarId v) {
    check(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool intersects(const VarSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const VarSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  VarSet& operator|=(const VarSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VarSet& operator&=(const VarSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VarSet& operator-=(const VarSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VarSet operator|(VarSet a, const VarSet& b) { return a |= b; }
  friend VarSet operator&(VarSet a, const VarSet& b) { return a &= b; }
  friend VarSet operator-(VarSet a, const VarSet& b) { return a -= b; }

  VarSet complement() const { return full(universe_) - *this; }

  // Calls f(VarId) for each member in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int bit = std::countr_zero(w);
        f(static_cast<VarId>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<VarId> to_vector() const {
    std::vector<VarId> out;
    for_each([&](VarId v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  void check(VarId v) const {
    if (v >= universe_) throw std::out_of_range("variable index outside set universe");
  }
  void same_universe(const VarSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("variable sets over different spaces");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace lexpref
