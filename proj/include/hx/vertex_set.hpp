#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace hx {

using Vertex = std::uint32_t;

/// Fixed-universe bit vector over [0, universe). Set algebra runs word by word.
///
/// Ordering is colexicographic: two sets compare like the integers whose
/// binary expansions they are, i.e. by the largest element of their symmetric
/// difference. For equal-size sets this is the colex order on sorted vertex
/// lists.
class VertexSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }
  std::span<Word> words() noexcept { return {words_.data(), words_.size()}; }

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }
  void insert(Vertex v);
  void erase(Vertex v) noexcept;
  void clear() noexcept;

  /// Smallest member, or universe() when empty.
  Vertex first() const noexcept;
  /// Largest member, or universe() when empty.
  Vertex last() const noexcept;

  std::vector<Vertex> to_vector() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        fn(static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

  VertexSet& operator|=(const VertexSet& other) noexcept;
  VertexSet& operator&=(const VertexSet& other) noexcept;
  VertexSet& operator^=(const VertexSet& other) noexcept;
  /// Set difference.
  VertexSet& operator-=(const VertexSet& other) noexcept;

  friend VertexSet operator|(VertexSet a, const VertexSet& b) noexcept { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) noexcept { return a &= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) noexcept { return a ^= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) noexcept { return a -= b; }

  bool is_subset_of(const VertexSet& other) const noexcept;
  bool intersects(const VertexSet& other) const noexcept;
  std::size_t intersection_count(const VertexSet& other) const noexcept;
  std::size_t union_count(const VertexSet& other) const noexcept;
  std::size_t difference_count(const VertexSet& other) const noexcept;

  /// Same members re-hosted on a different universe (all members must fit).
  VertexSet resized(std::size_t universe) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept;
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) noexcept;

 private:
  std::uint32_t universe_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept { return s.hash(); }
};

/// (A \ B) ∪ (B \ A).
VertexSet symmetric_difference(const VertexSet& a, const VertexSet& b);

/// |X_1 ∪ ... ∪ X_s|; throws EmptyList on an empty list.
std::size_t union_size(std::span<const VertexSet> sets);

/// Σ|X_i| − |∪X_i|, the total multiplicity lost to overlaps; throws EmptyList.
std::size_t overlap_defect(std::span<const VertexSet> sets);

}  // namespace hx

template <>
struct std::hash<hx::VertexSet> {
  std::size_t operator()(const hx::VertexSet& s) const noexcept { return s.hash(); }
};
