#ifndef UNIMOD_ERROR_HPP
#define UNIMOD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace unimod {

enum class Errc {
  even_characteristic,
  not_prime,
  invalid_spec,
  not_local,
  reducible_modulus,
  mixed_rings,
  not_a_unit,
  too_large,
  dimension_mismatch,
  not_symmetric,
  degenerate,
  unsupported_dimension,
  wrong_class,
  not_unimodular,
  timeout,
  parse_error,
  validation_error,
  internal,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::even_characteristic: return "EvenCharacteristic";
    case Errc::not_prime: return "NotPrime";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::not_local: return "NotLocal";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::mixed_rings: return "MixedRings";
    case Errc::not_a_unit: return "NotAUnit";
    case Errc::too_large: return "TooLarge";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::degenerate: return "Degenerate";
    case Errc::unsupported_dimension: return "UnsupportedDimension";
    case Errc::wrong_class: return "WrongClass";
    case Errc::not_unimodular: return "NotUnimodular";
    case Errc::timeout: return "Timeout";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

/// Every failure raised by the library. The message is prefixed with the
/// error name so CLI output stays grep-able.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(Errc::parse_error, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Config-level wrapper around a ring construction failure; `cause()` keeps
/// the original code (EvenCharacteristic, ReducibleModulus, ...).
class ValidationError : public Error {
 public:
  ValidationError(Errc cause, const std::string& message)
      : Error(Errc::validation_error, message), cause_(cause) {}

  Errc cause() const noexcept { return cause_; }

 private:
  Errc cause_;
};

}  // namespace unimod

#endif  // UNIMOD_ERROR_HPP
