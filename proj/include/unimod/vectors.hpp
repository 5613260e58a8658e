#ifndef UNIMOD_VECTORS_HPP
#define UNIMOD_VECTORS_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/ring.hpp"

namespace unimod {

/// Value vector in R^n. Equality and order are coordinate-wise on element
/// codes, first coordinate most significant.
class RingVector {
 public:
  RingVector() = default;
  explicit RingVector(std::vector<Element> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(Errc::dimension_mismatch, "vectors need at least one coordinate");
    for (const auto& c : coords_) {
      if (c.ring_ptr() != coords_.front().ring_ptr()) {
        throw Error(Errc::mixed_rings, "vector coordinates come from different rings");
      }
    }
  }

  const LocalRing& ring() const noexcept { return coords_.front().ring(); }
  std::size_t size() const noexcept { return coords_.size(); }
  const Element& operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const Element> coords() const noexcept { return coords_; }

  bool operator==(const RingVector& other) const = default;
  std::strong_ordering operator<=>(const RingVector& other) const {
    return std::lexicographical_compare_three_way(coords_.begin(), coords_.end(), other.coords_.begin(),
                                                  other.coords_.end());
  }

 private:
  std::vector<Element> coords_;
};

inline RingVector make_vector(const LocalRing& ring, std::initializer_list<std::int64_t> values) {
  std::vector<Element> coords;
  for (const auto v : values) coords.push_back(ring.from_int(v));
  return RingVector(std::move(coords));
}

/// A vector over a local ring is unimodular iff some coordinate is a unit.
inline bool is_unimodular(const RingVector& v) {
  for (const auto& c : v.coords()) {
    if (c.ring().is_unit(c)) return true;
  }
  return false;
}

inline RingVector scale(Element c, const RingVector& v) {
  std::vector<Element> coords;
  coords.reserve(v.size());
  for (const auto& x : v.coords()) coords.push_back(c * x);
  return RingVector(std::move(coords));
}

inline std::uint64_t checked_power_count(const LocalRing& ring, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > ring.options().max_card / ring.cardinality()) return ring.options().max_card + 1;
    total *= ring.cardinality();
  }
  return total;
}

/// Every unimodular vector of R^n in lexicographic order.
inline std::vector<RingVector> enumerate_unimodular(const LocalRing& ring, std::size_t n) {
  if (n == 0) throw Error(Errc::dimension_mismatch, "dimension must be >= 1");
  ring.require_enumerable(checked_power_count(ring, n), ring.label() + "^" + std::to_string(n));
  const auto card = ring.cardinality();
  std::vector<RingVector> out;
  std::vector<std::uint64_t> odometer(n, 0);
  std::vector<Element> coords(n, ring.zero());
  while (true) {
    bool unimodular = false;
    for (std::size_t i = 0; i < n; ++i) {
      coords[i] = ring.from_code(odometer[i]);
      unimodular = unimodular || ring.is_unit(coords[i]);
    }
    if (unimodular) out.emplace_back(coords);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < card) break;
      odometer[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

inline std::string format_vector(const RingVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v.ring().format(v[i]);
  }
  return out + ")";
}

inline RingVector parse_vector(const LocalRing& ring, std::string_view literal) {
  literal = detail::trim(literal);
  if (!detail::is_parenthesized(literal)) {
    throw Error(Errc::parse_error, "vector literal must be parenthesized: '" + std::string(literal) + "'");
  }
  std::vector<Element> coords;
  for (const auto part : detail::split_top_level(literal.substr(1, literal.size() - 2), ',')) {
    coords.push_back(ring.parse(part));
  }
  return RingVector(std::move(coords));
}

}  // namespace unimod

#endif  // UNIMOD_VECTORS_HPP
