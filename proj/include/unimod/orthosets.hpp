#ifndef UNIMOD_ORTHOSETS_HPP
#define UNIMOD_ORTHOSETS_HPP

// Unimodular orthogonal sets: sets of unimodular vectors that are pairwise
// orthogonal under a non-degenerate symmetric form (self-products are
// unconstrained). For n = 2 the largest such set has size
//
//   |R| - |M|   when the discriminant -det B is a square unit,
//   2           otherwise.
//
// The exact maximum is found here by clique search on the orthogonality
// graph and compared with that closed form.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "unimod/clique.hpp"
#include "unimod/forms.hpp"
#include "unimod/ring.hpp"
#include "unimod/vectors.hpp"

namespace unimod {

/// Deduplicated, sorted set of vectors.
struct OrthogonalSet {
  std::vector<RingVector> vectors;

  OrthogonalSet() = default;
  explicit OrthogonalSet(std::vector<RingVector> vs) : vectors(std::move(vs)) { normalize(); }

  std::size_t size() const noexcept { return vectors.size(); }
  bool contains(const RingVector& v) const { return std::binary_search(vectors.begin(), vectors.end(), v); }

  void normalize() {
    std::sort(vectors.begin(), vectors.end());
    vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
  }

  bool operator==(const OrthogonalSet&) const = default;
  auto operator<=>(const OrthogonalSet& other) const { return vectors <=> other.vectors; }
};

inline std::string format_set(const OrthogonalSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += format_vector(set.vectors[i]);
  }
  return out + "}";
}

inline bool is_orthogonal_set(const BilinearForm& form, std::span<const RingVector> vectors) {
  for (const auto& v : vectors) {
    if (v.size() != form.dimension()) throw Error(Errc::dimension_mismatch, "vector size does not match form");
    if (&v.ring() != &form.ring()) throw Error(Errc::mixed_rings, "vector over a different ring");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!is_unimodular(vectors[i])) return false;
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      if (i == j || vectors[i] == vectors[j]) continue;
      if (evaluate(form, vectors[i], vectors[j]) != form.ring().zero()) return false;
    }
  }
  return true;
}

inline bool is_orthogonal_set(const BilinearForm& form, const OrthogonalSet& set) {
  return is_orthogonal_set(form, std::span<const RingVector>(set.vectors));
}

/// No unimodular vector outside the set is orthogonal to every member.
inline bool is_inclusion_maximal(const BilinearForm& form, const OrthogonalSet& set) {
  for (const auto& candidate : enumerate_unimodular(form.ring(), form.dimension())) {
    if (set.contains(candidate)) continue;
    bool orthogonal_to_all = true;
    for (const auto& member : set.vectors) {
      if (evaluate(form, candidate, member) != form.ring().zero() ||
          evaluate(form, member, candidate) != form.ring().zero()) {
        orthogonal_to_all = false;
        break;
      }
    }
    if (orthogonal_to_all) return false;
  }
  return true;
}

struct OrthogonalityGraph {
  std::vector<RingVector> vertices;
  BitGraph graph;
};

inline OrthogonalityGraph build_orthogonality_graph(const BilinearForm& form, std::size_t n) {
  if (n != form.dimension()) throw Error(Errc::dimension_mismatch, "search dimension does not match form");
  detail::require_reducible(form);
  const LocalRing& ring = form.ring();
  OrthogonalityGraph out{enumerate_unimodular(ring, n), BitGraph()};
  const auto count = out.vertices.size();
  out.graph = BitGraph(count);

  // beta(v, w) = (v^T B) . w ; precompute the row functional of every vertex.
  std::vector<std::uint64_t> coords(count * n);
  std::vector<std::uint64_t> functional(count * n);
  for (std::size_t v = 0; v < count; ++v) {
    for (std::size_t j = 0; j < n; ++j) coords[v * n + j] = out.vertices[v][j].code();
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        acc = ring.add_code(acc, ring.mul_code(coords[v * n + i], form.matrix()(i, j).code()));
      }
      functional[v * n + j] = acc;
    }
  }
  for (std::size_t v = 0; v < count; ++v) {
    const auto* lv = &functional[v * n];
    for (std::size_t w = v + 1; w < count; ++w) {
      const auto* cw = &coords[w * n];
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc = ring.add_code(acc, ring.mul_code(lv[j], cw[j]));
      if (acc == 0) out.graph.add_edge(v, w);
    }
  }
  return out;
}

struct SearchOptions {
  std::chrono::milliseconds timeout{60000};
  bool parallel = false;
  unsigned threads = 0;
  std::uint64_t enumerate_max_card = 27;  // ring size cap for listing every maximum set

  CliqueOptions clique() const { return {timeout, parallel, threads}; }
};

struct SearchResult {
  std::size_t max_size = 0;
  OrthogonalSet witness;
  std::uint64_t node_count = 0;
  std::chrono::duration<double> elapsed{0};
};

inline SearchResult max_orthogonal_set(const BilinearForm& form, std::size_t n, const SearchOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto graph = build_orthogonality_graph(form, n);
  const auto clique = maximum_clique(graph.graph, options.clique());
  SearchResult result;
  std::vector<RingVector> members;
  for (const auto v : clique.clique) members.push_back(graph.vertices[v]);
  result.witness = OrthogonalSet(std::move(members));
  result.max_size = result.witness.size();
  result.node_count = clique.nodes;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

/// Closed-form size of the largest unimodular orthogonal set in R^2, keyed on
/// the discriminant class.
inline std::size_t theoretical_S(const BilinearForm& form) {
  if (form.dimension() != 2) {
    throw Error(Errc::unsupported_dimension, "closed form is known only for n = 2");
  }
  detail::require_reducible(form);
  const LocalRing& ring = form.ring();
  return discriminant_class(form).is_square() ? static_cast<std::size_t>(ring.unit_count()) : 2;
}

/// {P (x, x) : x unit}, where P carries the form to diag(1, -1).
inline OrthogonalSet construct_hyperbolic_witness(const BilinearForm& form) {
  if (form.dimension() != 2) throw Error(Errc::unsupported_dimension, "witness construction needs n = 2");
  const auto canon = canonicalize(form);
  const LocalRing& ring = form.ring();
  if (canon.form.u != ring.one()) throw Error(Errc::wrong_class, "discriminant is not a square");
  std::vector<RingVector> members;
  for (const auto& x : ring.enumerate(Which::units)) {
    members.push_back(canon.transform.apply(RingVector({x, x})));
  }
  return OrthogonalSet(std::move(members));
}

namespace detail {

// Partner of `seed` under x1 y1 - z x2 y2, with the free unit fixed to 1:
//   a unit:  (a^-1 z b, 1)
//   a in M:  (1, (b z)^-1 a)
inline RingVector pair_partner(const RingVector& seed, Element z) {
  const LocalRing& ring = seed.ring();
  const Element a = seed[0];
  const Element b = seed[1];
  if (ring.is_unit(a)) return RingVector({ring.invert(a) * z * b, ring.one()});
  return RingVector({ring.one(), ring.invert(b * z) * a});
}

}  // namespace detail

/// Two-element orthogonal set containing `seed`, for a form whose
/// discriminant is a non-square. Built in canonical coordinates and mapped
/// back through the canonicalizing transform.
inline OrthogonalSet construct_pair_witness(const BilinearForm& form, const RingVector& seed) {
  if (form.dimension() != 2) throw Error(Errc::unsupported_dimension, "witness construction needs n = 2");
  if (seed.size() != 2) throw Error(Errc::dimension_mismatch, "seed must lie in R^2");
  if (!is_unimodular(seed)) throw Error(Errc::not_unimodular, format_vector(seed) + " is not unimodular");
  const auto canon = canonicalize(form);
  const LocalRing& ring = form.ring();
  if (canon.form.u == ring.one()) throw Error(Errc::wrong_class, "discriminant is a square");
  const Matrix& p = canon.transform.matrix();
  const RingVector local_seed = p.inverse() * seed;
  const RingVector partner = canon.transform.apply(detail::pair_partner(local_seed, canon.form.u));
  return OrthogonalSet({seed, partner});
}

/// Every orthogonal set of maximum cardinality.
inline std::vector<OrthogonalSet> enumerate_maximum_sets(const BilinearForm& form,
                                                         const SearchOptions& options = {}) {
  const LocalRing& ring = form.ring();
  if (ring.cardinality() > options.enumerate_max_card) {
    throw Error(Errc::too_large, "listing every maximum set is limited to |R| <= " +
                                     std::to_string(options.enumerate_max_card));
  }
  const auto graph = build_orthogonality_graph(form, form.dimension());
  const auto all = all_maximum_cliques(graph.graph, options.clique());
  std::vector<OrthogonalSet> out;
  for (const auto& clique : all.cliques) {
    std::vector<RingVector> members;
    for (const auto v : clique) members.push_back(graph.vertices[v]);
    out.emplace_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class Family { unit_multiple, pair, unclassified };

inline std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::unit_multiple: return "{(ux,x)}-family";
    case Family::pair: return "pair-family";
    case Family::unclassified: return "unclassified";
  }
  return "?";
}

namespace detail {

inline std::vector<Element> square_roots_of_one(const LocalRing& ring) {
  std::vector<Element> roots;
  for (const auto& u : ring.enumerate(Which::units)) {
    if (u * u == ring.one()) roots.push_back(u);
  }
  return roots;
}

}  // namespace detail

/// Involution u (u^2 = 1) with set == {(u x, x) : x unit}, in the canonical
/// coordinates of a square-discriminant form.
inline std::optional<Element> unit_multiple_parameter(const BilinearForm& form, const OrthogonalSet& set) {
  if (form.dimension() != 2) return std::nullopt;
  const auto canon = canonicalize(form);
  const LocalRing& ring = form.ring();
  if (canon.form.u != ring.one()) return std::nullopt;
  const auto& p = canon.transform.matrix();
  const auto units = ring.enumerate(Which::units);
  for (const auto& u : detail::square_roots_of_one(ring)) {
    std::vector<RingVector> family;
    for (const auto& x : units) family.push_back(p * RingVector({u * x, x}));
    if (OrthogonalSet(std::move(family)) == set) return u;
  }
  return std::nullopt;
}

/// {(a, b), partner} with partner = (a^-1 z b y, y), y unit, when a is a
/// unit, or (x, (b z)^-1 a x), x unit, when a lies in M; checked in the
/// canonical coordinates of a non-square-discriminant form.
inline bool matches_pair_family(const BilinearForm& form, const OrthogonalSet& set) {
  if (form.dimension() != 2 || set.size() != 2) return false;
  const auto canon = canonicalize(form);
  const LocalRing& ring = form.ring();
  if (canon.form.u == ring.one()) return false;
  const Element z = canon.form.u;
  const Matrix p_inv = canon.transform.matrix().inverse();
  const RingVector first = p_inv * set.vectors[0];
  const RingVector second = p_inv * set.vectors[1];
  auto fits = [&](const RingVector& seed, const RingVector& other) {
    const Element a = seed[0];
    const Element b = seed[1];
    if (ring.is_unit(a)) {
      const Element y = other[1];
      return ring.is_unit(y) && other[0] == ring.invert(a) * z * b * y;
    }
    if (!ring.is_unit(b)) return false;
    const Element x = other[0];
    return ring.is_unit(x) && other[1] == ring.invert(b * z) * a * x;
  };
  return fits(first, second) || fits(second, first);
}

inline Family classify_family(const BilinearForm& form, const OrthogonalSet& set) {
  if (unit_multiple_parameter(form, set)) return Family::unit_multiple;
  if (matches_pair_family(form, set)) return Family::pair;
  return Family::unclassified;
}

struct VerificationRow {
  std::string ring_label;
  std::uint64_t ring_card = 0;
  std::uint64_t ideal_card = 0;
  std::string form_label;  // "hyperbolic" or "nonsquare"
  std::string det;
  bool det_square = false;
  bool disc_square = false;
  std::size_t theoretical = 0;
  std::size_t brute_force = 0;
  std::size_t witness_size = 0;
  bool inclusion_maximal = false;
  std::uint64_t node_count = 0;
  double elapsed_seconds = 0.0;

  bool match() const noexcept { return theoretical == brute_force; }
};

struct VerificationReport {
  std::vector<VerificationRow> rows;

  bool passed() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.match(); });
  }
};

/// Brute-force S(R, 2) for diag(1, -1) and diag(1, -z) against the closed form.
inline VerificationReport verify_theorem(const LocalRing& ring, const SearchOptions& options = {}) {
  VerificationReport report;
  for (const bool square : {true, false}) {
    const BilinearForm form(canonical_form(ring, 2, square).matrix(ring));
    VerificationRow row;
    row.ring_label = ring.label();
    row.ring_card = ring.cardinality();
    row.ideal_card = ring.maximal_ideal_size();
    row.form_label = square ? "hyperbolic" : "nonsquare";
    const Element det = determinant(form);
    row.det = ring.format(det);
    row.det_square = ring.is_square(det);
    row.disc_square = discriminant_class(form).is_square();
    row.theoretical = theoretical_S(form);
    const auto search = max_orthogonal_set(form, 2, options);
    if (!is_orthogonal_set(form, search.witness) || search.witness.size() != search.max_size) {
      throw Error(Errc::internal, "clique search returned an invalid witness");
    }
    row.brute_force = search.max_size;
    row.witness_size = search.witness.size();
    row.inclusion_maximal = is_inclusion_maximal(form, search.witness);
    row.node_count = search.node_count;
    row.elapsed_seconds = search.elapsed.count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace unimod

#endif  // UNIMOD_ORTHOSETS_HPP
