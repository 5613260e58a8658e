#ifndef UNIMOD_TESTS_TEST_SUPPORT_HPP
#define UNIMOD_TESTS_TEST_SUPPORT_HPP

// Catalog fixtures and brute-force oracles shared by the suites. The oracles
// use only ring arithmetic and enumeration, never the residue-field or
// canonicalization machinery they are used to check.

#include <memory>
#include <random>
#include <set>
#include <vector>

#include "unimod/unimod.hpp"

namespace unimod::testing {

inline std::vector<std::shared_ptr<const LocalRing>> catalog_rings() {
  std::vector<std::shared_ptr<const LocalRing>> rings;
  for (const auto& spec : parse_config(default_catalog_text()).rings) rings.push_back(make_ring(spec));
  return rings;
}

inline std::vector<std::shared_ptr<const LocalRing>> small_rings(std::uint64_t max_card) {
  std::vector<std::shared_ptr<const LocalRing>> out;
  for (auto& ring : catalog_rings())
    if (ring->cardinality() <= max_card) out.push_back(ring);
  return out;
}

// Codes of u*u over every unit u.
inline std::set<std::uint64_t> exhaustive_unit_squares(const LocalRing& ring) {
  std::set<std::uint64_t> squares;
  for (std::uint64_t c = 0; c < ring.cardinality(); ++c) {
    const Element a = ring.from_code(c);
    // unit test without the residue map: a has an inverse
    bool unit = false;
    for (std::uint64_t d = 0; d < ring.cardinality() && !unit; ++d) unit = a * ring.from_code(d) == ring.one();
    if (unit) squares.insert((a * a).code());
  }
  return squares;
}

// Units found by brute-force search for an inverse.
inline std::set<std::uint64_t> exhaustive_units(const LocalRing& ring) {
  std::set<std::uint64_t> units;
  for (std::uint64_t c = 0; c < ring.cardinality(); ++c) {
    for (std::uint64_t d = 0; d < ring.cardinality(); ++d) {
      if (ring.from_code(c) * ring.from_code(d) == ring.one()) {
        units.insert(c);
        break;
      }
    }
  }
  return units;
}

inline Element random_element(const LocalRing& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, ring.cardinality() - 1);
  return ring.from_code(dist(rng));
}

inline Element random_unit(const LocalRing& ring, std::mt19937_64& rng) {
  while (true) {
    const Element a = random_element(ring, rng);
    if (ring.is_unit(a)) return a;
  }
}

inline Matrix random_matrix(const LocalRing& ring, std::size_t n, std::mt19937_64& rng) {
  Matrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_element(ring, rng);
  return m;
}

inline Matrix random_invertible(const LocalRing& ring, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Matrix m = random_matrix(ring, n, rng);
    if (ring.is_unit(m.determinant())) return m;
  }
}

inline BilinearForm random_symmetric_nondegenerate(const LocalRing& ring, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Matrix m(ring, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_element(ring, rng);
    BilinearForm f(m);
    if (is_nondegenerate(f)) return f;
  }
}

// Every 2x2 matrix with a unit determinant.
inline std::vector<Matrix> all_invertible_2x2(const LocalRing& ring) {
  std::vector<Matrix> out;
  const auto card = ring.cardinality();
  for (std::uint64_t a = 0; a < card; ++a)
    for (std::uint64_t b = 0; b < card; ++b)
      for (std::uint64_t c = 0; c < card; ++c)
        for (std::uint64_t d = 0; d < card; ++d) {
          Matrix m(ring, 2);
          m(0, 0) = ring.from_code(a);
          m(0, 1) = ring.from_code(b);
          m(1, 0) = ring.from_code(c);
          m(1, 1) = ring.from_code(d);
          if (ring.is_unit(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0))) out.push_back(std::move(m));
        }
  return out;
}

// Orbit of B under congruence, as a set of entry-code tuples.
inline std::set<std::vector<std::uint64_t>> congruence_orbit(const Matrix& b, const std::vector<Matrix>& group) {
  std::set<std::vector<std::uint64_t>> orbit;
  for (const auto& p : group) {
    const Matrix image = p.transpose() * b * p;
    orbit.insert({image(0, 0).code(), image(0, 1).code(), image(1, 0).code(), image(1, 1).code()});
  }
  return orbit;
}

inline std::vector<std::uint64_t> entry_codes(const Matrix& m) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out.push_back(m(i, j).code());
  return out;
}

}  // namespace unimod::testing

#endif  // UNIMOD_TESTS_TEST_SUPPORT_HPP
