#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adsforms {

/// Strictly increasing index list i1 < ... < ip, stored as a bit set.
/// Bit order is also the storage order of form components: masks of equal
/// popcount sorted numerically (colexicographic order).
class MultiIndex {
 public:
  static constexpr int max_dimension = 16;

  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(std::uint32_t bits) : bits_(bits) {}

  /// From an already sorted, repeat-free list; throws otherwise.
  static MultiIndex from_sorted(std::span<const int> indices) {
    std::uint32_t bits = 0;
    int last = -1;
    for (int i : indices) {
      if (i <= last || i >= max_dimension) throw std::invalid_argument("indices must be strictly increasing");
      bits |= 1u << i;
      last = i;
    }
    return MultiIndex{bits};
  }

  /// Sorts an arbitrary list. Returns the index and the permutation sign,
  /// or nullopt when an index repeats.
  static std::optional<std::pair<MultiIndex, int>> canonical(std::span<const int> indices) {
    std::vector<int> v(indices.begin(), indices.end());
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
      for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
        if (v[j - 1] == v[j]) return std::nullopt;
        std::swap(v[j - 1], v[j]);
        sign = -sign;
      }
    }
    return std::pair{from_sorted(v), sign};
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int k) const { return (bits_ >> k) & 1u; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int k = 0; k < max_dimension; ++k)
      if (contains(k)) out.push_back(k);
    return out;
  }

  /// Number of elements strictly below k.
  constexpr int count_below(int k) const { return std::popcount(bits_ & ((1u << k) - 1u)); }

  constexpr MultiIndex with(int k) const { return MultiIndex{bits_ | (1u << k)}; }
  constexpr MultiIndex without(int k) const { return MultiIndex{bits_ & ~(1u << k)}; }
  constexpr MultiIndex complement(int dim) const { return MultiIndex{~bits_ & ((1u << dim) - 1u)}; }

  constexpr bool operator==(const MultiIndex&) const = default;
  constexpr auto operator<=>(const MultiIndex&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Sign of the permutation that sorts the concatenation (a, b); 0 if they overlap.
constexpr int concat_sign(MultiIndex a, MultiIndex b) {
  if (a.bits() & b.bits()) return 0;
  int inversions = 0;
  for (int k = 0; k < MultiIndex::max_dimension; ++k)
    if (b.contains(k)) inversions += a.size() - a.count_below(k);
  return inversions % 2 ? -1 : 1;
}

inline constexpr long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Storage rank of a multi-index among all multi-indices of the same size.
inline std::size_t combination_rank(MultiIndex idx) {
  std::size_t rank = 0;
  int i = 1;
  for (int k = 0; k < MultiIndex::max_dimension; ++k)
    if (idx.contains(k)) rank += static_cast<std::size_t>(binomial(k, i++));
  return rank;
}

/// All multi-indices of length p over dim indices, in storage order.
inline std::vector<MultiIndex> basis_indices(int dim, int p) {
  std::vector<MultiIndex> out;
  if (p < 0 || p > dim) return out;
  out.reserve(static_cast<std::size_t>(binomial(dim, p)));
  for (std::uint32_t bits = 0; bits < (1u << dim); ++bits)
    if (std::popcount(bits) == p) out.emplace_back(bits);
  return out;
}

std::string to_string(MultiIndex idx, const char* symbol = "dy");

}  // namespace adsforms
