#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace qcount {

/// Computational basis of all binary strings of length at most n, in
/// length-lexicographic order: eps, 0, 1, 00, 01, 10, 11, 000, ...
///
/// A string of length L with numeric value v sits at index 2^L - 1 + v, so a
/// basis for a smaller n is always a prefix of the basis for a larger one.
class StringBasis {
 public:
  static constexpr int kMaxLength = 24;

  explicit StringBasis(int n);

  int n() const { return n_; }
  std::size_t dim() const { return dim_; }

  /// Throws DomainError if `bits` is longer than n or contains a non-binary character.
  std::size_t index_of(std::string_view bits) const;
  /// Throws DomainError if `index >= dim()`.
  std::string string_at(std::size_t index) const;

  /// Length of the string stored at `index`, independent of n.
  static int length_at(std::size_t index);
  /// Dimension 2^(n+1) - 1 of the space of strings of length <= n.
  static std::size_t dim_for(int n);

  friend bool operator==(const StringBasis&, const StringBasis&) = default;

 private:
  int n_;
  std::size_t dim_;
};

/// Free-function spellings of the index maps.
std::size_t string_index(std::string_view bits, const StringBasis& basis);
std::string index_string(std::size_t index, const StringBasis& basis);

}  // namespace qcount
