#pragma once

/**
 * @file scalar.hpp
 * @brief Scalar concepts and the runtime description of the ground field.
 *
 * Every scalar type in the library is exact. Two families exist:
 * fields (ℚ and F_p), over which linear systems can be solved, and
 * the Laurent polynomial ring, which only supports ring operations.
 */

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kb {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Raised when a characteristic-sensitive algorithm is asked to run in a
/// characteristic where it is unsound.
class CharacteristicError : public Error {
 public:
  using Error::Error;
};

template <typename T>
concept RingScalar = requires(T a, T b) {
  { T(0) } -> std::convertible_to<T>;
  { T(1) } -> std::convertible_to<T>;
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
};

/// A ring scalar with exact division by nonzero elements.
template <typename T>
concept FieldScalar = RingScalar<T> && requires(T a, T b) {
  { a / b } -> std::convertible_to<T>;
  { a.inverse() } -> std::convertible_to<T>;
};

/// Ground field of a fixture: prime == 0 means ℚ.
struct FieldSpec {
  std::uint64_t prime = 0;

  bool is_rational() const { return prime == 0; }
  std::uint64_t characteristic() const { return prime; }
  std::string str() const { return prime == 0 ? "Q" : "F_" + std::to_string(prime); }
  bool operator==(const FieldSpec&) const = default;
};

/// Maps a field type to its parse/convert hooks. Specialized per scalar type.
template <typename K>
struct ScalarTraits;

}  // namespace kb
