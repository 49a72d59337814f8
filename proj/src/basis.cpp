#include "qcount/basis.hpp"

#include <bit>
#include <string>

#include "qcount/errors.hpp"

namespace qcount {

StringBasis::StringBasis(int n) : n_(n) {
  if (n < 0 || n > kMaxLength) {
    throw DomainError("string basis length bound must lie in [0, " + std::to_string(kMaxLength) +
                      "], got " + std::to_string(n));
  }
  dim_ = dim_for(n);
}

std::size_t StringBasis::dim_for(int n) { return (std::size_t{1} << (n + 1)) - 1; }

int StringBasis::length_at(std::size_t index) {
  return static_cast<int>(std::bit_width(index + 1)) - 1;
}

std::size_t StringBasis::index_of(std::string_view bits) const {
  if (static_cast<int>(bits.size()) > n_) {
    throw DomainError("string of length " + std::to_string(bits.size()) +
                      " exceeds basis bound " + std::to_string(n_));
  }
  std::size_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("non-binary character in string");
    value = (value << 1) | static_cast<std::size_t>(c == '1');
  }
  return (std::size_t{1} << bits.size()) - 1 + value;
}

std::string StringBasis::string_at(std::size_t index) const {
  if (index >= dim_) {
    throw DomainError("index " + std::to_string(index) + " out of range for dimension " +
                      std::to_string(dim_));
  }
  const int len = length_at(index);
  std::size_t value = index + 1 - (std::size_t{1} << len);
  std::string out(static_cast<std::size_t>(len), '0');
  for (int i = len - 1; i >= 0; --i, value >>= 1) out[static_cast<std::size_t>(i)] = (value & 1) ? '1' : '0';
  return out;
}

std::size_t string_index(std::string_view bits, const StringBasis& basis) {
  return basis.index_of(bits);
}

std::string index_string(std::size_t index, const StringBasis& basis) {
  return basis.string_at(index);
}

}  // namespace qcount
