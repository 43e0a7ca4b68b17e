#include "hx/rng.hpp"

#include <limits>

#include "hx/error.hpp"

namespace hx {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) noexcept {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t substream_key(std::uint64_t seed, const std::vector<std::string>& labels) {
  require(!labels.empty(), ErrorKind::BadParameters, "substream needs at least one label");
  std::uint64_t key = splitmix64(seed);
  for (const std::string& label : labels) {
    // length prefix keeps ("ab","c") and ("a","bc") apart
    key = splitmix64(key ^ fnv1a64(label, fnv1a64(std::to_string(label.size()))));
  }
  return key;
}

// Rejection sampling instead of std::uniform_int_distribution, whose draws
// differ between standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace hx
