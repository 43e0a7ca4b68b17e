#include "hx/vertex_set.hpp"

#include <algorithm>
#include <string>

#include "hx/error.hpp"

namespace hx {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EdgeSizeMismatch: return "EdgeSizeMismatch";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::DuplicateVertexInEdge: return "DuplicateVertexInEdge";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FormatViolation: return "FormatViolation";
    case ErrorKind::UniformityZero: return "UniformityZero";
    case ErrorKind::UniformityMismatch: return "UniformityMismatch";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NonuniformPacking: return "NonuniformPacking";
    case ErrorKind::ShadowMismatch: return "ShadowMismatch";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::TooManyCandidates: return "TooManyCandidates";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::size_t words_for(std::size_t universe) {
  return (universe + VertexSet::kWordBits - 1) / VertexSet::kWordBits;
}

}  // namespace

VertexSet::VertexSet(std::size_t universe)
    : universe_(static_cast<std::uint32_t>(universe)), words_(words_for(universe), 0) {}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

std::size_t VertexSet::count() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

void VertexSet::insert(Vertex v) {
  if (v >= universe_) {
    fail(ErrorKind::VertexOutOfRange,
         "vertex " + std::to_string(v) + " outside universe of size " + std::to_string(universe_));
  }
  words_[v / kWordBits] |= Word{1} << (v % kWordBits);
}

void VertexSet::erase(Vertex v) noexcept {
  if (v < universe_) words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
}

void VertexSet::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

Vertex VertexSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w])));
    }
  }
  return universe_;
}

Vertex VertexSet::last() const noexcept {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      return static_cast<Vertex>(w * kWordBits + kWordBits - 1 -
                                 static_cast<std::size_t>(std::countl_zero(words_[w])));
    }
  }
  return universe_;
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] &= other.words_[i];
  for (std::size_t i = n; i < words_.size(); ++i) words_[i] = 0;
  return *this;
}

VertexSet& VertexSet::operator^=(const VertexSet& other) noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] ^= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word theirs = i < other.words_.size() ? other.words_[i] : 0;
    if ((words_[i] & ~theirs) != 0) return false;
  }
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::size_t VertexSet::intersection_count(const VertexSet& other) const noexcept {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return total;
}

std::size_t VertexSet::union_count(const VertexSet& other) const noexcept {
  return count() + other.count() - intersection_count(other);
}

std::size_t VertexSet::difference_count(const VertexSet& other) const noexcept {
  return count() - intersection_count(other);
}

VertexSet VertexSet::resized(std::size_t universe) const {
  VertexSet out(universe);
  for_each([&](Vertex v) { out.insert(v); });
  return out;
}

std::size_t VertexSet::hash() const noexcept {
  // splitmix64-style mixing over the significant words
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  std::size_t used = words_.size();
  while (used > 0 && words_[used - 1] == 0) --used;  // equal sets over different universes hash alike
  for (std::size_t i = 0; i < used; ++i) {
    std::uint64_t z = words_[i] + h + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h ^= z ^ (z >> 31);
    h = (h << 7) | (h >> 57);
  }
  return static_cast<std::size_t>(h);
}

bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
  const std::size_t n = std::max(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const VertexSet::Word x = i < a.words_.size() ? a.words_[i] : 0;
    const VertexSet::Word y = i < b.words_.size() ? b.words_[i] : 0;
    if (x != y) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) noexcept {
  const std::size_t n = std::max(a.words_.size(), b.words_.size());
  for (std::size_t i = n; i-- > 0;) {
    const VertexSet::Word x = i < a.words_.size() ? a.words_[i] : 0;
    const VertexSet::Word y = i < b.words_.size() ? b.words_[i] : 0;
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

VertexSet symmetric_difference(const VertexSet& a, const VertexSet& b) { return a ^ b; }

std::size_t union_size(std::span<const VertexSet> sets) {
  require(!sets.empty(), ErrorKind::EmptyList, "union_size of an empty list");
  VertexSet acc = sets.front();
  for (const VertexSet& s : sets.subspan(1)) acc |= s;
  return acc.count();
}

std::size_t overlap_defect(std::span<const VertexSet> sets) {
  require(!sets.empty(), ErrorKind::EmptyList, "overlap_defect of an empty list");
  std::size_t total = 0;
  for (const VertexSet& s : sets) total += s.count();
  return total - union_size(sets);
}

}  // namespace hx
