#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace gml {

// Subset of a fixed universe of worlds, backed by a bit vector.
// All sets belonging to one model share the same universe size; binary
// operations require equal universes.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t universe)
      : blocks_((universe + 63) / 64, 0), size_(universe) {}

  static WorldSet full(std::size_t universe) {
    WorldSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  // Low 64 bits given directly; universe must be <= 64.
  static WorldSet from_bits(std::size_t universe, std::uint64_t bits) {
    WorldSet s(universe);
    if (universe > 0) s.blocks_[0] = universe < 64 ? (bits & ((1ull << universe) - 1)) : bits;
    return s;
  }

  static WorldSet of(std::size_t universe, std::initializer_list<int> xs) {
    WorldSet s(universe);
    for (int x : xs) s.set(static_cast<std::size_t>(x));
    return s;
  }

  static WorldSet of(std::size_t universe, const std::vector<int>& xs) {
    WorldSet s(universe);
    for (int x : xs) s.set(static_cast<std::size_t>(x));
    return s;
  }

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const { return (blocks_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { blocks_[i / 64] |= 1ull << (i % 64); }
  void reset(std::size_t i) { blocks_[i / 64] &= ~(1ull << (i % 64)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(__builtin_popcountll(b));
    return c;
  }

  bool empty() const {
    for (auto b : blocks_)
      if (b) return false;
    return true;
  }

  std::size_t intersect_count(const WorldSet& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      c += static_cast<std::size_t>(__builtin_popcountll(blocks_[i] & o.blocks_[i]));
    return c;
  }

  bool is_subset_of(const WorldSet& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }

  bool intersects(const WorldSet& o) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & o.blocks_[i]) return true;
    return false;
  }

  WorldSet operator&(const WorldSet& o) const {
    WorldSet r(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i] & o.blocks_[i];
    return r;
  }

  WorldSet operator|(const WorldSet& o) const {
    WorldSet r(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = blocks_[i] | o.blocks_[i];
    return r;
  }

  WorldSet& operator|=(const WorldSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }

  WorldSet complement() const {
    WorldSet r(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = ~blocks_[i];
    r.trim();
    return r;
  }

  bool operator==(const WorldSet& o) const {
    return size_ == o.size_ && blocks_ == o.blocks_;
  }

  // Numeric-value order (world 0 is the least significant bit); used as the
  // canonical order for duplicate-free collections and reports.
  std::strong_ordering operator<=>(const WorldSet& o) const {
    if (size_ != o.size_) return size_ <=> o.size_;
    for (std::size_t i = blocks_.size(); i-- > 0;)
      if (blocks_[i] != o.blocks_[i]) return blocks_[i] <=> o.blocks_[i];
    return std::strong_ordering::equal;
  }

  // Universe must be <= 64.
  std::uint64_t low_bits() const { return blocks_.empty() ? 0 : blocks_[0]; }

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < size_; ++i)
      if (test(i)) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  void trim() {
    if (size_ % 64 != 0 && !blocks_.empty())
      blocks_.back() &= (1ull << (size_ % 64)) - 1;
  }

  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

// Valuation: proposition letter -> set of worlds where it holds.
using Valuation = std::map<std::string, WorldSet>;

}  // namespace gml
