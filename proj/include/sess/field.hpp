#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace sess {

using Int = boost::multiprecision::cpp_int;

/// A validated prime modulus. Construction goes through validate(), which
/// runs a Miller-Rabin test (deterministic witness set below 2^64, otherwise
/// 64 random rounds, error probability <= 2^-128). Width metadata is derived
/// once so serialization code never recomputes it.
class Prime {
public:
    /// Validates candidate and returns a shared handle to it.
    /// Throws std::invalid_argument if candidate < 2 or composite.
    static std::shared_ptr<const Prime> validate(const Int& candidate);

    const Int& value() const noexcept { return value_; }
    unsigned width_bits() const noexcept { return width_bits_; }
    unsigned width_bytes() const noexcept { return width_bytes_; }

    bool operator==(const Prime& other) const noexcept { return value_ == other.value_; }
    bool operator!=(const Prime& other) const noexcept { return !(*this == other); }

private:
    explicit Prime(Int value, unsigned width_bits)
        : value_(std::move(value)),
          width_bits_(width_bits),
          width_bytes_((width_bits + 7) / 8) {}

    Int value_;
    unsigned width_bits_;
    unsigned width_bytes_;
};

using PrimePtr = std::shared_ptr<const Prime>;

/// Miller-Rabin primality test used by Prime::validate; exposed so tests can
/// cross-check it against an independent implementation.
bool is_probable_prime(const Int& candidate);

/// Shorthand for Prime::validate.
PrimePtr validate_prime(const Int& candidate);

/// An element of Z_p. Values are kept canonical (0 <= value < p) and elements
/// only interoperate when their moduli are equal; mixing moduli throws rather
/// than coercing.
class FieldElement {
public:
    /// Requires 0 <= value < p; throws std::domain_error otherwise.
    FieldElement(Int value, PrimePtr prime);

    /// Wraps an arbitrary integer (including negatives) into [0, p).
    static FieldElement reduce(const Int& value, PrimePtr prime);

    const Int& value() const noexcept { return value_; }
    const PrimePtr& prime() const noexcept { return prime_; }
    const Int& modulus() const noexcept { return prime_->value(); }

    bool operator==(const FieldElement& other) const noexcept {
        return value_ == other.value_ && modulus() == other.modulus();
    }
    bool operator!=(const FieldElement& other) const noexcept { return !(*this == other); }

private:
    Int value_;
    PrimePtr prime_;
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);

/// Multiplicative inverse via the extended Euclidean algorithm.
/// Throws std::domain_error for the zero element.
FieldElement fe_inv(const FieldElement& a);

/// a^e by square-and-multiply; e must be non-negative. 0^0 is defined as 1.
FieldElement fe_pow(const FieldElement& a, const Int& exponent);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return fe_add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return fe_sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return fe_mul(a, b); }

}  // namespace sess
