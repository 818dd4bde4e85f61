#pragma once

/**
 * @file core.hpp
 * @brief Strong index types and the error type shared by every qcat module.
 */

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcat {

/// An element of a quantale carrier, meaningful only relative to its owning Quantale.
struct QElem {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(QElem, QElem) = default;
};

/// An object of a finite Ω-category, meaningful only relative to its owning VCat.
struct ObjId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(ObjId, ObjId) = default;
};

inline constexpr QElem qe(std::size_t i) { return QElem{static_cast<std::uint32_t>(i)}; }
inline constexpr ObjId obj(std::size_t i) { return ObjId{static_cast<std::uint32_t>(i)}; }

/// Default bound on enumerated candidates (presheaves, functors, tensor tables).
inline constexpr std::uint64_t kDefaultCap = 1'000'000;

enum class ErrorKind {
  InvalidInput,
  NotAPoset,
  NotALattice,
  TensorNotAssociative,
  TensorNotCommutative,
  UnitLaw,
  TensorNotJoinPreserving,
  UnknownBuiltin,
  SizeLimitExceeded,
  ReflexivityViolation,
  TransitivityViolation,
  UnknownQuantaleElement,
  QuantaleMismatch,
  TargetNotCocomplete,
  NotAFunctor,
  NotSkeletal,
  NotCocomplete,
  SyntaxError,
  UnknownToken,
  DimensionMismatch,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::TensorNotAssociative: return "TensorNotAssociative";
    case ErrorKind::TensorNotCommutative: return "TensorNotCommutative";
    case ErrorKind::UnitLaw: return "UnitLaw";
    case ErrorKind::TensorNotJoinPreserving: return "TensorNotJoinPreserving";
    case ErrorKind::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::ReflexivityViolation: return "ReflexivityViolation";
    case ErrorKind::TransitivityViolation: return "TransitivityViolation";
    case ErrorKind::UnknownQuantaleElement: return "UnknownQuantaleElement";
    case ErrorKind::QuantaleMismatch: return "QuantaleMismatch";
    case ErrorKind::TargetNotCocomplete: return "TargetNotCocomplete";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::NotSkeletal: return "NotSkeletal";
    case ErrorKind::NotCocomplete: return "NotCocomplete";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library. `witness()` lists the offending tokens, if any.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::vector<std::string> witness_;
};

/// Row-major square table.
template <class T>
class Square {
 public:
  Square() = default;
  Square(std::size_t n, T fill) : n_(n), cells_(n * n, fill) {}
  Square(std::size_t n, std::vector<T> cells) : n_(n), cells_(std::move(cells)) {
    if (cells_.size() != n_ * n_) throw Error(ErrorKind::DimensionMismatch, "table is not square");
  }

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return cells_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }
  const std::vector<T>& cells() const noexcept { return cells_; }

  friend bool operator==(const Square&, const Square&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> cells_;
};

}  // namespace qcat
