#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hx {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a; used for label hashing and config digests.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

/// Derives the key of a named substream. Identical (seed, labels) paths give
/// identical keys; labels are hashed in order so ("a","b") != ("b","a").
std::uint64_t substream_key(std::uint64_t seed, const std::vector<std::string>& labels);

inline std::string to_label(std::string_view s) { return std::string(s); }
inline std::string to_label(const char* s) { return std::string(s); }
inline std::string to_label(const std::string& s) { return s; }
template <class T>
  requires std::is_integral_v<T>
std::string to_label(T v) {
  return std::to_string(v);
}

/// A fresh generator keyed by (seed, labels...). Each caller owns its stream;
/// never share one across threads.
template <class... Labels>
Rng seed_substream(std::uint64_t seed, const Labels&... labels) {
  static_assert(sizeof...(Labels) > 0, "seed_substream needs at least one label");
  std::vector<std::string> parts;
  (parts.push_back(to_label(labels)), ...);
  const std::uint64_t key = substream_key(seed, parts);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(splitmix64(key)), static_cast<std::uint32_t>(splitmix64(key) >> 32)};
  return Rng(seq);
}

/// Uniform integer in [0, bound) without modulo bias.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

}  // namespace hx
