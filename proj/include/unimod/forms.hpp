#ifndef UNIMOD_FORMS_HPP
#define UNIMOD_FORMS_HPP

// Symmetric bilinear forms over R^n for a finite local ring R of odd
// characteristic, and their reduction to the canonical diagonal shapes
//
//   n odd:  diag(1, -1, ..., 1, -1, u)
//   n even: diag(1, -1, ..., 1, -1, 1, -u)
//
// with u = 1 or u = z, the ring's canonical non-square unit. The parameter u
// is the square class of the discriminant (-1)^(n(n-1)/2) det B.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/ring.hpp"
#include "unimod/vectors.hpp"

namespace unimod {

/// Dense n x n matrix over a LocalRing.
class Matrix {
 public:
  Matrix(const LocalRing& ring, std::size_t n) : ring_(&ring), n_(n), entries_(n * n, ring.zero()) {
    if (n == 0) throw Error(Errc::dimension_mismatch, "matrix dimension must be >= 1");
  }

  static Matrix identity(const LocalRing& ring, std::size_t n) {
    Matrix m(ring, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  static Matrix diagonal(const LocalRing& ring, std::span<const Element> entries) {
    Matrix m(ring, entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  static Matrix from_ints(const LocalRing& ring, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    Matrix m(ring, rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw Error(Errc::dimension_mismatch, "matrix must be square");
      std::size_t j = 0;
      for (const auto v : row) m(i, j++) = ring.from_int(v);
      ++i;
    }
    return m;
  }

  const LocalRing& ring() const noexcept { return *ring_; }
  std::size_t size() const noexcept { return n_; }

  Element& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }

  bool operator==(const Matrix& other) const = default;

  Matrix transpose() const {
    Matrix t(*ring_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& other) const {
    check_compatible(other);
    Matrix out(*ring_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        Element sum = ring_->zero();
        for (std::size_t k = 0; k < n_; ++k) sum = sum + (*this)(i, k) * other(k, j);
        out(i, j) = sum;
      }
    }
    return out;
  }

  RingVector operator*(const RingVector& v) const {
    if (v.size() != n_) throw Error(Errc::dimension_mismatch, "matrix/vector size mismatch");
    std::vector<Element> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Element sum = ring_->zero();
      for (std::size_t k = 0; k < n_; ++k) sum = sum + (*this)(i, k) * v[k];
      out.push_back(sum);
    }
    return RingVector(std::move(out));
  }

  /// Cofactor expansion along the first row.
  Element determinant() const { return minor_determinant(all_indices(), all_indices()); }

  Matrix adjugate() const {
    Matrix adj(*ring_, n_);
    if (n_ == 1) {
      adj(0, 0) = ring_->one();
      return adj;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        auto rows = all_indices();
        auto cols = all_indices();
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(j));
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(i));
        const Element minor = minor_determinant(rows, cols);
        adj(i, j) = (i + j) % 2 == 0 ? minor : -minor;
      }
    }
    return adj;
  }

  Matrix inverse() const {
    const Element det = determinant();
    if (!ring_->is_unit(det)) throw Error(Errc::degenerate, "matrix determinant is not a unit");
    const Element scale = ring_->invert(det);
    Matrix inv = adjugate();
    for (auto& entry : inv.entries_) entry = entry * scale;
    return inv;
  }

 private:
  std::vector<std::size_t> all_indices() const {
    std::vector<std::size_t> idx(n_);
    for (std::size_t i = 0; i < n_; ++i) idx[i] = i;
    return idx;
  }

  Element minor_determinant(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    const std::size_t m = rows.size();
    if (m == 1) return (*this)(rows[0], cols[0]);
    if (m == 2) {
      return (*this)(rows[0], cols[0]) * (*this)(rows[1], cols[1]) -
             (*this)(rows[0], cols[1]) * (*this)(rows[1], cols[0]);
    }
    Element sum = ring_->zero();
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < m; ++c) {
      const Element pivot = (*this)(rows[0], cols[c]);
      if (pivot == ring_->zero()) continue;
      std::vector<std::size_t> sub_cols;
      for (std::size_t k = 0; k < m; ++k)
        if (k != c) sub_cols.push_back(cols[k]);
      const Element term = pivot * minor_determinant(sub_rows, sub_cols);
      sum = c % 2 == 0 ? sum + term : sum - term;
    }
    return sum;
  }

  void check_compatible(const Matrix& other) const {
    if (other.ring_ != ring_) throw Error(Errc::mixed_rings, "matrices over different rings");
    if (other.n_ != n_) throw Error(Errc::dimension_mismatch, "matrix size mismatch");
  }

  const LocalRing* ring_;
  std::size_t n_;
  std::vector<Element> entries_;
};

/// Row-major text: rows separated by ';', entries by ','; entries are ring
/// element literals, e.g. "1,0;0,-1" or "(0,1),0;0,1".
inline Matrix parse_matrix(const LocalRing& ring, std::string_view literal) {
  const auto rows = detail::split_top_level(detail::trim(literal), ';');
  Matrix m(ring, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto entries = detail::split_top_level(rows[i], ',');
    if (entries.size() != rows.size()) {
      throw Error(Errc::parse_error, "matrix literal '" + std::string(literal) + "' is not square");
    }
    for (std::size_t j = 0; j < entries.size(); ++j) m(i, j) = ring.parse(entries[j]);
  }
  return m;
}

inline std::string format_matrix(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ",";
      out += m.ring().format(m(i, j));
    }
  }
  return out;
}

/// beta(x, y) = x^T B y, stored as its associate matrix B.
class BilinearForm {
 public:
  explicit BilinearForm(Matrix matrix) : matrix_(std::move(matrix)) {}

  const LocalRing& ring() const noexcept { return matrix_.ring(); }
  std::size_t dimension() const noexcept { return matrix_.size(); }
  const Matrix& matrix() const noexcept { return matrix_; }

  bool operator==(const BilinearForm&) const = default;

 private:
  Matrix matrix_;
};

/// Invertible change of basis P; the transformed form is P^T B P.
class CongruenceTransform {
 public:
  explicit CongruenceTransform(Matrix matrix) : matrix_(std::move(matrix)) {
    if (!matrix_.ring().is_unit(matrix_.determinant())) {
      throw Error(Errc::degenerate, "congruence transform must have a unit determinant");
    }
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  /// Maps coordinates in the transformed basis to the original basis.
  RingVector apply(const RingVector& w) const { return matrix_ * w; }
  BilinearForm transport(const BilinearForm& form) const {
    return BilinearForm(matrix_.transpose() * form.matrix() * matrix_);
  }

 private:
  Matrix matrix_;
};

enum class Parity { odd, even };

struct CanonicalForm {
  std::size_t n = 0;
  Element u;
  Parity parity = Parity::even;

  bool operator==(const CanonicalForm&) const = default;

  /// The associate matrix of the canonical shape.
  Matrix matrix(const LocalRing& ring) const {
    std::vector<Element> diag(n, ring.one());
    for (std::size_t i = 0; i + 1 < n; ++i) diag[i] = i % 2 == 0 ? ring.one() : -ring.one();
    diag[n - 1] = n % 2 == 1 ? u : -u;
    return Matrix::diagonal(ring, diag);
  }
};

inline CanonicalForm canonical_form(const LocalRing& ring, std::size_t n, bool square) {
  return {n, square ? ring.one() : ring.canonical_nonsquare(), n % 2 == 1 ? Parity::odd : Parity::even};
}

inline BilinearForm hyperbolic_form(const LocalRing& ring, std::size_t n = 2) {
  return BilinearForm(canonical_form(ring, n, true).matrix(ring));
}

inline BilinearForm nonsquare_form(const LocalRing& ring, std::size_t n = 2) {
  return BilinearForm(canonical_form(ring, n, false).matrix(ring));
}

inline Element evaluate(const BilinearForm& f, const RingVector& x, const RingVector& y) {
  const auto n = f.dimension();
  if (x.size() != n || y.size() != n) throw Error(Errc::dimension_mismatch, "vector size does not match form");
  const LocalRing& ring = f.ring();
  Element sum = ring.zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == ring.zero()) continue;
    Element row = ring.zero();
    for (std::size_t j = 0; j < n; ++j) row = row + f.matrix()(i, j) * y[j];
    sum = sum + x[i] * row;
  }
  return sum;
}

inline bool is_symmetric(const BilinearForm& f) {
  const auto& b = f.matrix();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (b(i, j) != b(j, i)) return false;
  return true;
}

inline Element determinant(const BilinearForm& f) { return f.matrix().determinant(); }

inline bool is_nondegenerate(const BilinearForm& f) { return f.ring().is_unit(determinant(f)); }

/// (-1)^(n(n-1)/2) det B; for n = 2 this is -det B.
inline Element discriminant(const BilinearForm& f) {
  const auto n = f.dimension();
  const Element det = determinant(f);
  return (n * (n - 1) / 2) % 2 == 0 ? det : -det;
}

inline SquareClass discriminant_class(const BilinearForm& f) {
  const Element disc = discriminant(f);
  if (!f.ring().is_unit(disc)) throw Error(Errc::degenerate, "form is degenerate");
  return f.ring().square_class(disc);
}

namespace detail {

inline void require_reducible(const BilinearForm& f) {
  if (!is_symmetric(f)) throw Error(Errc::not_symmetric, "form matrix is not symmetric");
  if (!is_nondegenerate(f)) throw Error(Errc::degenerate, "form determinant is not a unit");
}

// Column operations on P, mirrored on the Gram matrix G = P^T B P.
struct Basis {
  Matrix p;
  Matrix gram;

  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < p.size(); ++r) std::swap(p(r, i), p(r, j));
    for (std::size_t r = 0; r < gram.size(); ++r) std::swap(gram(r, i), gram(r, j));
    for (std::size_t c = 0; c < gram.size(); ++c) std::swap(gram(i, c), gram(j, c));
  }

  // e_j <- e_j + alpha * e_k
  void add_multiple(std::size_t j, std::size_t k, Element alpha) {
    for (std::size_t r = 0; r < p.size(); ++r) p(r, j) = p(r, j) + alpha * p(r, k);
    for (std::size_t r = 0; r < gram.size(); ++r) gram(r, j) = gram(r, j) + alpha * gram(r, k);
    for (std::size_t c = 0; c < gram.size(); ++c) gram(j, c) = gram(j, c) + alpha * gram(k, c);
  }

  // e_i <- c * e_i
  void scale(std::size_t i, Element c) {
    for (std::size_t r = 0; r < p.size(); ++r) p(r, i) = p(r, i) * c;
    for (std::size_t r = 0; r < gram.size(); ++r) gram(r, i) = gram(r, i) * c;
    for (std::size_t col = 0; col < gram.size(); ++col) gram(i, col) = gram(i, col) * c;
  }

  // (e_i, e_j) <- (a e_i + b e_j, c e_i + d e_j)
  void mix(std::size_t i, std::size_t j, Element a, Element b, Element c, Element d) {
    auto combine = [&](Matrix& m, bool columns) {
      for (std::size_t r = 0; r < m.size(); ++r) {
        Element& xi = columns ? m(r, i) : m(i, r);
        Element& xj = columns ? m(r, j) : m(j, r);
        const Element old_i = xi;
        const Element old_j = xj;
        xi = a * old_i + b * old_j;
        xj = c * old_i + d * old_j;
      }
    };
    combine(p, true);
    combine(gram, true);
    combine(gram, false);
  }
};

}  // namespace detail

struct Diagonalization {
  CongruenceTransform transform;
  BilinearForm diagonal;
};

/// Congruence to a diagonal form with unit diagonal. Pivot: smallest index
/// with a unit diagonal entry; failing that, the lexicographically smallest
/// unit off-diagonal b_ij, promoted by e_i <- e_i + e_j (diagonal becomes
/// b_ii + 2 b_ij + b_jj, a unit because 2 is invertible).
inline Diagonalization diagonalize(const BilinearForm& f) {
  detail::require_reducible(f);
  const LocalRing& ring = f.ring();
  const auto n = f.dimension();
  detail::Basis basis{Matrix::identity(ring, n), f.matrix()};

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i) {
      if (ring.is_unit(basis.gram(i, i))) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      for (std::size_t i = k; i < n && pivot == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (ring.is_unit(basis.gram(i, j))) {
            basis.add_multiple(i, j, ring.one());
            pivot = i;
            break;
          }
        }
      }
    }
    if (pivot == n) throw Error(Errc::degenerate, "no unit pivot; form is degenerate");
    basis.swap(k, pivot);
    const Element inverse = ring.invert(basis.gram(k, k));
    for (std::size_t j = k + 1; j < n; ++j) {
      if (basis.gram(k, j) == ring.zero()) continue;
      basis.add_multiple(j, k, -(basis.gram(k, j) * inverse));
    }
  }

  CongruenceTransform transform(basis.p);
  BilinearForm diagonal = transform.transport(f);
  if (!(diagonal.matrix() == basis.gram)) throw Error(Errc::internal, "diagonalization bookkeeping diverged");
  return {std::move(transform), std::move(diagonal)};
}

struct Canonicalization {
  CongruenceTransform transform;
  CanonicalForm form;
};

/// Congruence P with P^T B P equal to the canonical matrix, exactly.
inline Canonicalization canonicalize(const BilinearForm& f) {
  const LocalRing& ring = f.ring();
  const auto n = f.dimension();
  auto [diag_transform, diag] = diagonalize(f);
  detail::Basis basis{diag_transform.matrix(), diag.matrix()};

  // Target pattern 1, -1, 1, ... on all but the last slot.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Element target = i % 2 == 0 ? ring.one() : -ring.one();
    const Element a = basis.gram(i, i);
    const Element b = basis.gram(i + 1, i + 1);
    if (a == target) continue;
    // Solve a x^2 + b y^2 = target; then
    //   (e_i, e_{i+1}) <- (x e_i + y e_{i+1}, -b y e_i + a x e_{i+1})
    // turns diag(a, b) into diag(target, a b target).
    const Element b_inv = ring.invert(b);
    bool solved = false;
    for (std::uint64_t code = 0; code < ring.cardinality() && !solved; ++code) {
      const Element x = ring.from_code(code);
      const Element w = (target - a * x * x) * b_inv;
      Element y;
      if (w == ring.zero()) {
        y = ring.zero();
      } else if (ring.is_unit(w) && ring.is_square(w)) {
        y = ring.sqrt(w);
      } else {
        continue;
      }
      basis.mix(i, i + 1, x, y, -(b * y), a * x);
      solved = true;
    }
    if (!solved) throw Error(Errc::internal, "binary form does not represent " + ring.format(target));
  }

  // Last slot: u for odd n, -u for even n, with u in {1, z}.
  const std::size_t last = n - 1;
  const Element d = basis.gram(last, last);
  const Element signed_d = n % 2 == 1 ? d : -d;
  const bool square = ring.is_square(signed_d);
  const Element u = square ? ring.one() : ring.canonical_nonsquare();
  if (signed_d != u) {
    // signed_d = u t^2; rescale by t^-1.
    const Element t = ring.sqrt(signed_d * ring.invert(u));
    basis.scale(last, ring.invert(t));
  }

  CanonicalForm form{n, u, n % 2 == 1 ? Parity::odd : Parity::even};
  CongruenceTransform transform(basis.p);
  if (!(transform.transport(f).matrix() == form.matrix(ring))) {
    throw Error(Errc::internal, "canonical transform failed verification");
  }
  return {std::move(transform), form};
}

inline bool are_equivalent(const BilinearForm& f1, const BilinearForm& f2) {
  if (&f1.ring() != &f2.ring()) throw Error(Errc::mixed_rings, "forms over different rings");
  if (f1.dimension() != f2.dimension()) throw Error(Errc::dimension_mismatch, "forms of different dimension");
  return canonicalize(f1).form == canonicalize(f2).form;
}

}  // namespace unimod

#endif  // UNIMOD_FORMS_HPP
