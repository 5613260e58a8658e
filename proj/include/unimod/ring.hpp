#ifndef UNIMOD_RING_HPP
#define UNIMOD_RING_HPP

// Finite local rings of odd characteristic.
//
// Every supported presentation is a quotient
//
//     Z_{p^s}[x]/(f)[t]/(t^e),   f monic of degree r, irreducible mod p,
//
// with the four catalog kinds as special cases:
//   integer_modulus   Z_{p^s}                r = 1, e = 1
//   field_extension   F_p[x]/(f)             s = 1, e = 1
//   chain             F_p[x]/(f)[t]/(t^e)    s = 1
//   galois            Z_{p^s}[x]/(f)         e = 1
//
// An element is stored as the mixed-radix code of its r*e coefficients in
// Z_{p^s}; coordinate k = i + r*j holds the coefficient of x^i t^j and is
// the k-th least significant digit. Element order is code order.
//
// The maximal ideal is (p, t): the elements whose t^0 coefficients are all
// divisible by p. Residue field R/M = F_p[x]/(f mod p).

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unimod/detail/literal.hpp"
#include "unimod/error.hpp"

namespace unimod {

enum class RingKind { integer_modulus, field_extension, chain, galois };

inline constexpr std::string_view ring_kind_name(RingKind kind) noexcept {
  switch (kind) {
    case RingKind::integer_modulus: return "Zps";
    case RingKind::field_extension: return "ext";
    case RingKind::chain: return "chain";
    case RingKind::galois: return "galois";
  }
  return "?";
}

/// Constructive presentation of a local ring. `modulus` lists the
/// coefficients of f constant term first; it is empty for Z_{p^s} and may be
/// empty for a chain ring over F_p.
struct RingSpec {
  RingKind kind = RingKind::integer_modulus;
  std::int64_t p = 3;
  std::int64_t s = 1;
  std::vector<std::int64_t> modulus;
  std::int64_t e = 1;

  bool operator==(const RingSpec&) const = default;

  static RingSpec zps(std::int64_t p, std::int64_t s) { return {RingKind::integer_modulus, p, s, {}, 1}; }
  static RingSpec ext(std::int64_t p, std::vector<std::int64_t> f) {
    return {RingKind::field_extension, p, 1, std::move(f), 1};
  }
  static RingSpec chain(std::int64_t p, std::int64_t e, std::vector<std::int64_t> f = {}) {
    return {RingKind::chain, p, 1, std::move(f), e};
  }
  static RingSpec galois(std::int64_t p, std::int64_t s, std::vector<std::int64_t> f) {
    return {RingKind::galois, p, s, std::move(f), 1};
  }
};

/// Limit on exhaustive work. Enumerations of more than `max_card` items are
/// refused with TooLarge; the locality self-check runs only below it.
struct RingOptions {
  std::uint64_t max_card = 59049;  // 3^10
};

enum class Which { all, units, maximal_ideal };

class LocalRing;

/// One element of a LocalRing. Holds a non-owning pointer to its ring; the
/// ring must outlive the element.
class Element {
 public:
  Element() = default;
  Element(const LocalRing* ring, std::uint64_t code) : ring_(ring), code_(code) {}

  const LocalRing& ring() const noexcept { return *ring_; }
  const LocalRing* ring_ptr() const noexcept { return ring_; }
  std::uint64_t code() const noexcept { return code_; }

  bool operator==(const Element& other) const noexcept {
    return ring_ == other.ring_ && code_ == other.code_;
  }
  std::strong_ordering operator<=>(const Element& other) const noexcept { return code_ <=> other.code_; }

 private:
  const LocalRing* ring_ = nullptr;
  std::uint64_t code_ = 0;
};

struct SquareClass {
  bool square = false;
  std::optional<Element> witness;  // t with t*t == the classified unit

  bool is_square() const noexcept { return square; }
};

inline std::string_view square_class_name(bool square) noexcept { return square ? "square" : "non-square"; }

class LocalRing {
 public:
  static constexpr int kMaxCoordinates = 40;

  static std::shared_ptr<const LocalRing> make(const RingSpec& spec, RingOptions options = {});

  LocalRing(const LocalRing&) = delete;
  LocalRing& operator=(const LocalRing&) = delete;

  const RingSpec& spec() const noexcept { return spec_; }
  const RingOptions& options() const noexcept { return options_; }

  std::uint64_t cardinality() const noexcept { return card_; }
  std::uint64_t characteristic() const noexcept { return q_; }
  std::uint64_t residue_field_order() const noexcept { return residue_order_; }
  std::uint64_t maximal_ideal_size() const noexcept { return card_ / residue_order_; }
  std::uint64_t unit_count() const noexcept { return card_ - maximal_ideal_size(); }
  std::int64_t prime() const noexcept { return p_; }
  bool is_field() const noexcept { return card_ == residue_order_; }

  int degree() const noexcept { return r_; }
  int nilpotency() const noexcept { return e_; }
  int coordinate_count() const noexcept { return d_; }

  /// Human label: Z_9, F_9, F_3[t]/(t^2), GR(9,2).
  std::string label() const;
  /// The presentation in config grammar; re-parses to an identical ring.
  std::string spec_string() const;

  Element zero() const noexcept { return {this, 0}; }
  Element one() const noexcept { return {this, 1}; }
  Element from_int(std::int64_t value) const noexcept { return {this, reduce(value)}; }
  Element from_code(std::uint64_t code) const {
    if (code >= card_) throw Error(Errc::invalid_spec, "element code out of range for " + label());
    return {this, code};
  }
  /// Coefficients indexed by coordinate k = i + r*j (x^i t^j), reduced mod p^s.
  Element from_coeffs(std::span<const std::int64_t> coeffs) const;
  std::vector<std::int64_t> coeffs(Element a) const;

  Element add(Element a, Element b) const { return {this, add_code(code_of(a), code_of(b))}; }
  Element sub(Element a, Element b) const { return {this, add_code(code_of(a), neg_code(code_of(b)))}; }
  Element mul(Element a, Element b) const { return {this, mul_code(code_of(a), code_of(b))}; }
  Element neg(Element a) const { return {this, neg_code(code_of(a))}; }
  Element pow(Element a, std::uint64_t exponent) const;

  bool is_unit(Element a) const { return !in_maximal_ideal(a); }
  bool in_maximal_ideal(Element a) const { return residue_code(code_of(a)) == 0; }
  Element invert(Element a) const;

  std::vector<Element> enumerate(Which which) const;

  /// Euler criterion in the residue field; cheap, no witness.
  bool is_square(Element unit) const;
  SquareClass square_class(Element unit) const;
  /// Smallest-coded t with t*t == a, searched in the fiber over the residue
  /// square root. Throws NotAUnit / WrongClass.
  Element sqrt(Element unit) const;
  /// First unit in element order that is not a square.
  Element canonical_nonsquare() const noexcept { return {this, nonsquare_code_}; }

  const LocalRing& residue_field() const noexcept { return residue_ ? *residue_ : *this; }
  Element residue(Element a) const { return residue_field().from_code(residue_code(code_of(a))); }
  /// Teichmuller-free lift: the element whose t^0 digits equal the residue digits.
  Element lift(Element residue_element) const;

  std::string format(Element a) const;
  Element parse(std::string_view literal) const;

  /// Throws TooLarge when `count` exceeds the enumeration bound.
  void require_enumerable(std::uint64_t count, std::string_view what) const;

  // Code-level arithmetic for hot loops.
  std::uint64_t add_code(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t neg_code(std::uint64_t a) const noexcept;
  std::uint64_t mul_code(std::uint64_t a, std::uint64_t b) const noexcept;

 private:
  using Digits = std::array<std::uint64_t, kMaxCoordinates>;

  LocalRing(const RingSpec& spec, RingOptions options);

  std::uint64_t code_of(Element a) const {
    if (a.ring_ptr() != this) throw Error(Errc::mixed_rings, "operand does not belong to " + label());
    return a.code();
  }
  std::uint64_t reduce(std::int64_t value) const noexcept {
    const auto q = static_cast<std::int64_t>(q_);
    return static_cast<std::uint64_t>(((value % q) + q) % q);
  }
  void decode(std::uint64_t code, Digits& digits) const noexcept;
  std::uint64_t encode(const Digits& digits) const noexcept;
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t residue_code(std::uint64_t code) const noexcept;
  std::uint64_t maximal_ideal_code(std::uint64_t index) const noexcept;
  bool modulus_irreducible_mod_p() const;
  bool intrinsically_local() const;
  void verify_locality() const;

  RingSpec spec_;
  RingOptions options_;
  std::int64_t p_ = 3;
  int s_ = 1;
  int r_ = 1;
  int e_ = 1;
  int d_ = 1;
  std::uint64_t q_ = 3;
  std::uint64_t card_ = 3;
  std::uint64_t residue_order_ = 3;
  std::vector<std::uint64_t> f_;  // monic modulus mod q, degree r (size r + 1)
  std::vector<std::uint64_t> pow_q_;
  std::vector<std::uint32_t> mul_table_;
  std::shared_ptr<const LocalRing> residue_;
  std::uint64_t nonsquare_code_ = 0;
};

inline std::shared_ptr<const LocalRing> make_ring(const RingSpec& spec, RingOptions options = {}) {
  return LocalRing::make(spec, options);
}

// Operator sugar; operands must share a ring.
inline Element operator+(Element a, Element b) { return a.ring().add(a, b); }
inline Element operator-(Element a, Element b) { return a.ring().sub(a, b); }
inline Element operator*(Element a, Element b) { return a.ring().mul(a, b); }
inline Element operator-(Element a) { return a.ring().neg(a); }

inline std::string to_string(Element a) { return a.ring().format(a); }

// ---------------------------------------------------------------------------

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::int64_t exponent, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::int64_t i = 0; i < exponent; ++i) {
    if (result > limit / base) return 0;
    result *= base;
  }
  return result;
}

// Polynomials over F_p, constant term first, no trailing zeros.
using PolyP = std::vector<std::int64_t>;

inline void poly_trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP poly_rem(PolyP a, const PolyP& b, std::int64_t p) {
  // b is monic
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const std::int64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) {
      a[shift + k] = ((a[shift + k] - lead * b[k]) % p + p) % p;
    }
    poly_trim(a);
  }
  return a;
}

}  // namespace detail

inline LocalRing::LocalRing(const RingSpec& spec, RingOptions options) : spec_(spec), options_(options) {}

inline std::shared_ptr<const LocalRing> LocalRing::make(const RingSpec& spec, RingOptions options) {
  if (spec.p == 2) throw Error(Errc::even_characteristic, "p = 2; only odd characteristic is supported");
  if (spec.p % 2 == 0 && spec.p > 0) {
    throw Error(Errc::even_characteristic, "p = " + std::to_string(spec.p) + " is even");
  }
  if (!detail::is_prime(spec.p)) throw Error(Errc::not_prime, "p = " + std::to_string(spec.p) + " is not prime");
  if (spec.s < 1) throw Error(Errc::invalid_spec, "exponent s must be >= 1");
  if (spec.e < 1) throw Error(Errc::invalid_spec, "nilpotency degree e must be >= 1");

  switch (spec.kind) {
    case RingKind::integer_modulus:
      if (!spec.modulus.empty()) throw Error(Errc::invalid_spec, "Zps takes no modulus");
      if (spec.e != 1) throw Error(Errc::invalid_spec, "Zps takes no nilpotency degree");
      break;
    case RingKind::field_extension:
      if (spec.s != 1) throw Error(Errc::invalid_spec, "ext is a field over F_p; s must be 1");
      if (spec.e != 1) throw Error(Errc::invalid_spec, "ext takes no nilpotency degree");
      if (spec.modulus.size() < 2) throw Error(Errc::invalid_spec, "ext needs a modulus of degree >= 1");
      break;
    case RingKind::chain:
      if (spec.s != 1) throw Error(Errc::invalid_spec, "chain rings are built over F_q; s must be 1");
      if (!spec.modulus.empty() && spec.modulus.size() < 2) {
        throw Error(Errc::invalid_spec, "chain modulus must have degree >= 1");
      }
      break;
    case RingKind::galois:
      if (spec.e != 1) throw Error(Errc::invalid_spec, "galois takes no nilpotency degree");
      if (spec.modulus.size() < 2) throw Error(Errc::invalid_spec, "galois needs a modulus of degree >= 1");
      break;
  }

  std::shared_ptr<LocalRing> ring(new LocalRing(spec, options));
  ring->p_ = spec.p;
  ring->s_ = static_cast<int>(spec.s);
  ring->e_ = static_cast<int>(spec.e);
  ring->r_ = spec.modulus.empty() ? 1 : static_cast<int>(spec.modulus.size() - 1);
  ring->d_ = ring->r_ * ring->e_;
  if (ring->d_ > kMaxCoordinates) throw Error(Errc::invalid_spec, "too many coordinates");

  constexpr std::uint64_t kCodeLimit = std::uint64_t{1} << 62;
  const auto p = static_cast<std::uint64_t>(spec.p);
  ring->q_ = detail::checked_pow(p, spec.s, std::uint64_t{1} << 31);
  if (ring->q_ == 0) throw Error(Errc::invalid_spec, "p^s too large");
  ring->card_ = detail::checked_pow(ring->q_, ring->d_, kCodeLimit);
  if (ring->card_ == 0) throw Error(Errc::invalid_spec, "ring too large to index");
  ring->residue_order_ = detail::checked_pow(p, ring->r_, kCodeLimit);

  ring->f_.assign(ring->r_ + 1, 0);
  if (spec.modulus.empty()) {
    ring->f_[1] = 1;  // f = x
  } else {
    for (int k = 0; k <= ring->r_; ++k) ring->f_[k] = ring->reduce(spec.modulus[k]);
    if (ring->f_[ring->r_] != 1) throw Error(Errc::invalid_spec, "modulus must be monic");
  }
  ring->pow_q_.resize(ring->d_ + 1);
  ring->pow_q_[0] = 1;
  for (int k = 1; k <= ring->d_; ++k) ring->pow_q_[k] = ring->pow_q_[k - 1] * ring->q_;

  if (ring->card_ <= 729 && ring->d_ > 1) {
    const auto n = static_cast<std::size_t>(ring->card_);
    ring->mul_table_.resize(n * n);
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a; b < n; ++b) {
        const auto c = static_cast<std::uint32_t>(ring->mul_slow(a, b));
        ring->mul_table_[a * n + b] = c;
        ring->mul_table_[b * n + a] = c;
      }
    }
  }

  if (!spec.modulus.empty() && !ring->modulus_irreducible_mod_p()) {
    // Distinguish a non-local quotient from a local one with a reducible
    // modulus (e.g. x^2) where the presentation's residue map is wrong.
    if (ring->card_ <= 2187 && !ring->intrinsically_local()) {
      throw Error(Errc::not_local, "non-units of " + ring->label() + " do not form an ideal");
    }
    throw Error(Errc::reducible_modulus, "modulus is reducible mod " + std::to_string(spec.p));
  }

  if (!ring->is_field()) {
    std::vector<std::int64_t> residue_modulus;
    for (int k = 0; k <= ring->r_ && ring->r_ > 1; ++k) {
      residue_modulus.push_back(static_cast<std::int64_t>(ring->f_[k] % p));
    }
    RingSpec residue_spec = ring->r_ > 1 ? RingSpec::ext(spec.p, residue_modulus) : RingSpec::zps(spec.p, 1);
    ring->residue_ = make(residue_spec, options);
  }

  if (ring->card_ <= options.max_card) ring->verify_locality();

  // Unit squares have index 2 in an odd-characteristic local ring, so a
  // non-square exists among the first few units.
  bool found = false;
  for (std::uint64_t code = 1; code < ring->card_; ++code) {
    const Element a{ring.get(), code};
    if (ring->is_unit(a) && !ring->is_square(a)) {
      ring->nonsquare_code_ = code;
      found = true;
      break;
    }
  }
  if (!found) throw Error(Errc::internal, "no non-square unit in " + ring->label());
  return ring;
}

inline std::string LocalRing::label() const {
  const auto residue = std::to_string(residue_order_);
  switch (spec_.kind) {
    case RingKind::integer_modulus: return "Z_" + std::to_string(q_);
    case RingKind::field_extension: return "F_" + residue;
    case RingKind::chain: return "F_" + residue + "[t]/(t^" + std::to_string(e_) + ")";
    case RingKind::galois: return "GR(" + std::to_string(q_) + "," + std::to_string(r_) + ")";
  }
  return "?";
}

inline std::string LocalRing::spec_string() const {
  std::string out = "kind=\"" + std::string(ring_kind_name(spec_.kind)) + "\" p=" + std::to_string(spec_.p);
  if (spec_.kind == RingKind::integer_modulus || spec_.kind == RingKind::galois) {
    out += " s=" + std::to_string(spec_.s);
  }
  if (spec_.kind == RingKind::chain) out += " e=" + std::to_string(spec_.e);
  if (!spec_.modulus.empty()) {
    out += " modulus=[";
    for (std::size_t k = 0; k < spec_.modulus.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(spec_.modulus[k]);
    }
    out += "]";
  }
  return out;
}

inline void LocalRing::decode(std::uint64_t code, Digits& digits) const noexcept {
  for (int k = 0; k < d_; ++k) {
    digits[k] = code % q_;
    code /= q_;
  }
}

inline std::uint64_t LocalRing::encode(const Digits& digits) const noexcept {
  std::uint64_t code = 0;
  for (int k = d_ - 1; k >= 0; --k) code = code * q_ + digits[k];
  return code;
}

inline std::uint64_t LocalRing::add_code(std::uint64_t a, std::uint64_t b) const noexcept {
  if (d_ == 1) {
    const auto sum = a + b;
    return sum >= q_ ? sum - q_ : sum;
  }
  std::uint64_t code = 0;
  for (int k = 0; k < d_; ++k) {
    auto digit = a % q_ + b % q_;
    if (digit >= q_) digit -= q_;
    code += digit * pow_q_[k];
    a /= q_;
    b /= q_;
  }
  return code;
}

inline std::uint64_t LocalRing::neg_code(std::uint64_t a) const noexcept {
  if (d_ == 1) return a == 0 ? 0 : q_ - a;
  std::uint64_t code = 0;
  for (int k = 0; k < d_; ++k) {
    const auto digit = a % q_;
    code += (digit == 0 ? 0 : q_ - digit) * pow_q_[k];
    a /= q_;
  }
  return code;
}

inline std::uint64_t LocalRing::mul_code(std::uint64_t a, std::uint64_t b) const noexcept {
  if (d_ == 1) return (a * b) % q_;
  if (!mul_table_.empty()) return mul_table_[a * card_ + b];
  return mul_slow(a, b);
}

inline std::uint64_t LocalRing::mul_slow(std::uint64_t a, std::uint64_t b) const noexcept {
  Digits da{}, db{};
  decode(a, da);
  decode(b, db);
  // product[j][i]: coefficient of x^i t^j before reduction by f
  const int width = 2 * r_ - 1;
  std::array<std::uint64_t, 2 * kMaxCoordinates> product{};
  for (int j1 = 0; j1 < e_; ++j1) {
    for (int j2 = 0; j1 + j2 < e_; ++j2) {
      const int j = j1 + j2;
      for (int i1 = 0; i1 < r_; ++i1) {
        const auto x = da[i1 + r_ * j1];
        if (x == 0) continue;
        for (int i2 = 0; i2 < r_; ++i2) {
          auto& slot = product[j * width + i1 + i2];
          slot = (slot + x * db[i2 + r_ * j2]) % q_;
        }
      }
    }
  }
  Digits out{};
  for (int j = 0; j < e_; ++j) {
    std::uint64_t* row = &product[j * width];
    for (int deg = width - 1; deg >= r_; --deg) {
      const auto lead = row[deg];
      if (lead == 0) continue;
      row[deg] = 0;
      for (int k = 0; k < r_; ++k) {
        row[deg - r_ + k] = (row[deg - r_ + k] + (q_ - lead) * f_[k]) % q_;
      }
    }
    for (int i = 0; i < r_; ++i) out[i + r_ * j] = row[i];
  }
  return encode(out);
}

inline std::uint64_t LocalRing::residue_code(std::uint64_t code) const noexcept {
  const auto p = static_cast<std::uint64_t>(p_);
  std::uint64_t residue = 0;
  std::uint64_t scale = 1;
  for (int i = 0; i < r_; ++i) {
    residue += ((code % q_) % p) * scale;
    scale *= p;
    code /= q_;
  }
  return residue;
}

inline std::uint64_t LocalRing::maximal_ideal_code(std::uint64_t index) const noexcept {
  // t^0 digits range over multiples of p, all other digits are free.
  const auto p = static_cast<std::uint64_t>(p_);
  const std::uint64_t low = q_ / p;
  std::uint64_t code = 0;
  for (int k = 0; k < d_; ++k) {
    std::uint64_t digit;
    if (k < r_) {
      digit = (index % low) * p;
      index /= low;
    } else {
      digit = index % q_;
      index /= q_;
    }
    code += digit * pow_q_[k];
  }
  return code;
}

inline Element LocalRing::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (static_cast<int>(coeffs.size()) != d_) {
    throw Error(Errc::dimension_mismatch, label() + " elements have " + std::to_string(d_) + " coefficients");
  }
  Digits digits{};
  for (int k = 0; k < d_; ++k) digits[k] = reduce(coeffs[k]);
  return {this, encode(digits)};
}

inline std::vector<std::int64_t> LocalRing::coeffs(Element a) const {
  Digits digits{};
  decode(code_of(a), digits);
  return {digits.begin(), digits.begin() + d_};
}

inline Element LocalRing::pow(Element a, std::uint64_t exponent) const {
  std::uint64_t base = code_of(a);
  std::uint64_t result = 1;
  while (exponent) {
    if (exponent & 1) result = mul_code(result, base);
    base = mul_code(base, base);
    exponent >>= 1;
  }
  return {this, result};
}

inline Element LocalRing::invert(Element a) const {
  if (!is_unit(a)) throw Error(Errc::not_a_unit, format(a) + " is not a unit in " + label());
  // Lagrange in the unit group of order |R| - |M|.
  return pow(a, unit_count() - 1);
}

inline void LocalRing::require_enumerable(std::uint64_t count, std::string_view what) const {
  if (count > options_.max_card) {
    throw Error(Errc::too_large, std::string(what) + " has " + std::to_string(count) +
                                     " items, above the enumeration bound " + std::to_string(options_.max_card));
  }
}

inline std::vector<Element> LocalRing::enumerate(Which which) const {
  require_enumerable(card_, label());
  std::vector<Element> out;
  switch (which) {
    case Which::all:
      out.reserve(card_);
      for (std::uint64_t c = 0; c < card_; ++c) out.emplace_back(this, c);
      break;
    case Which::units:
      out.reserve(unit_count());
      for (std::uint64_t c = 0; c < card_; ++c) {
        if (residue_code(c) != 0) out.emplace_back(this, c);
      }
      break;
    case Which::maximal_ideal: {
      const auto m = maximal_ideal_size();
      out.reserve(m);
      for (std::uint64_t i = 0; i < m; ++i) out.emplace_back(this, maximal_ideal_code(i));
      break;
    }
  }
  return out;
}

inline bool LocalRing::is_square(Element unit) const {
  if (!is_unit(unit)) throw Error(Errc::not_a_unit, format(unit) + " is not a unit in " + label());
  const LocalRing& field = residue_field();
  const Element rho = residue(unit);
  return field.pow(rho, (field.cardinality() - 1) / 2) == field.one();
}

inline Element LocalRing::sqrt(Element unit) const {
  if (!is_square(unit)) throw Error(Errc::wrong_class, format(unit) + " is not a square in " + label());
  const LocalRing& field = residue_field();
  const auto rho = residue_code(unit.code());
  std::uint64_t root = 0;
  for (std::uint64_t c = 1; c < field.cardinality(); ++c) {
    if (field.mul_code(c, c) == rho) {
      root = c;
      break;
    }
  }
  const auto base = lift(field.from_code(root)).code();
  const auto target = unit.code();
  for (std::uint64_t i = 0; i < maximal_ideal_size(); ++i) {
    const auto candidate = add_code(base, maximal_ideal_code(i));
    if (mul_code(candidate, candidate) == target) return {this, candidate};
  }
  throw Error(Errc::internal, "residue square " + format(unit) + " has no square root in its fiber");
}

inline SquareClass LocalRing::square_class(Element unit) const {
  if (!is_square(unit)) return {false, std::nullopt};
  return {true, sqrt(unit)};
}

inline Element LocalRing::lift(Element residue_element) const {
  const LocalRing& field = residue_field();
  if (residue_element.ring_ptr() != &field) {
    throw Error(Errc::mixed_rings, "lift expects an element of the residue field of " + label());
  }
  const auto p = static_cast<std::uint64_t>(p_);
  std::uint64_t code = residue_element.code();
  std::uint64_t out = 0;
  for (int i = 0; i < r_; ++i) {
    out += (code % p) * pow_q_[i];
    code /= p;
  }
  return {this, out};
}

inline bool LocalRing::modulus_irreducible_mod_p() const {
  const detail::PolyP f = [&] {
    detail::PolyP g;
    for (const auto c : f_) g.push_back(static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p_)));
    return g;
  }();
  // Trial division by every monic polynomial of degree 1..r/2.
  for (int degree = 1; 2 * degree <= r_; ++degree) {
    const std::uint64_t count = detail::checked_pow(static_cast<std::uint64_t>(p_), degree, std::uint64_t{1} << 40);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      detail::PolyP g(degree + 1, 0);
      std::uint64_t rest = idx;
      for (int k = 0; k < degree; ++k) {
        g[k] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(p_));
        rest /= static_cast<std::uint64_t>(p_);
      }
      g[degree] = 1;
      if (detail::poly_rem(f, g, p_).empty()) return false;
    }
  }
  return true;
}

inline bool LocalRing::intrinsically_local() const {
  // A finite commutative ring is local iff its non-units are closed under addition.
  std::vector<std::uint64_t> non_units;
  for (std::uint64_t a = 0; a < card_; ++a) {
    bool unit = false;
    for (std::uint64_t b = 1; b < card_ && !unit; ++b) unit = mul_code(a, b) == 1;
    if (!unit) non_units.push_back(a);
  }
  std::vector<bool> is_non_unit(card_, false);
  for (const auto a : non_units) is_non_unit[a] = true;
  for (const auto a : non_units) {
    for (const auto b : non_units) {
      if (!is_non_unit[add_code(a, b)]) return false;
    }
  }
  return true;
}

inline void LocalRing::verify_locality() const {
  // M is an ideal by construction; locality then means every element outside
  // M is invertible, i.e. a^(|R|-|M|) == 1.
  const auto order = unit_count();
  for (std::uint64_t c = 0; c < card_; ++c) {
    if (residue_code(c) == 0) continue;
    if (pow(Element{this, c}, order).code() != 1) {
      throw Error(Errc::not_local, format(Element{this, c}) + " lies outside M but is not a unit in " + label());
    }
  }
}

inline std::string LocalRing::format(Element a) const {
  const auto digits = coeffs(a);
  if (d_ == 1) return std::to_string(digits[0]);
  auto tuple = [&](int from, int count) {
    std::string out = "(";
    for (int k = 0; k < count; ++k) {
      if (k) out += ",";
      out += std::to_string(digits[from + k]);
    }
    return out + ")";
  };
  if (e_ == 1 || r_ == 1) return tuple(0, d_);
  std::string out = "(";
  for (int j = 0; j < e_; ++j) {
    if (j) out += ",";
    out += tuple(j * r_, r_);
  }
  return out + ")";
}

inline Element LocalRing::parse(std::string_view literal) const {
  literal = detail::trim(literal);
  if (!detail::is_parenthesized(literal)) return from_int(detail::parse_integer(literal));
  const auto parts = detail::split_top_level(literal.substr(1, literal.size() - 2), ',');
  std::vector<std::int64_t> digits;
  if (static_cast<int>(parts.size()) == e_ && r_ > 1 && e_ > 1) {
    for (const auto part : parts) {
      if (!detail::is_parenthesized(part)) {
        throw Error(Errc::parse_error, "expected a nested tuple in '" + std::string(literal) + "'");
      }
      const auto inner = detail::split_top_level(part.substr(1, part.size() - 2), ',');
      if (static_cast<int>(inner.size()) != r_) {
        throw Error(Errc::parse_error, "inner tuple needs " + std::to_string(r_) + " coefficients");
      }
      for (const auto c : inner) digits.push_back(detail::parse_integer(c));
    }
  } else {
    for (const auto part : parts) digits.push_back(detail::parse_integer(part));
  }
  if (static_cast<int>(digits.size()) != d_) {
    throw Error(Errc::parse_error, "'" + std::string(literal) + "' does not have " + std::to_string(d_) +
                                       " coefficients for " + label());
  }
  return from_coeffs(digits);
}

}  // namespace unimod

#endif  // UNIMOD_RING_HPP
