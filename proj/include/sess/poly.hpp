#pragma once

#include <vector>

#include "sess/field.hpp"

namespace sess {

/// Dense polynomial over Z_p, coefficients in ascending powers. The length is
/// fixed at construction and never trimmed: a zero leading coefficient keeps
/// its slot, so a polynomial interpolated through k points always has length
/// k regardless of its effective degree.
class Polynomial {
public:
    /// coeffs must be non-empty and share one modulus.
    explicit Polynomial(std::vector<FieldElement> coeffs);

    std::size_t length() const noexcept { return coeffs_.size(); }
    const FieldElement& coeff(std::size_t i) const { return coeffs_.at(i); }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
    const PrimePtr& prime() const noexcept { return coeffs_.front().prime(); }

    bool operator==(const Polynomial& other) const noexcept { return coeffs_ == other.coeffs_; }
    bool operator!=(const Polynomial& other) const noexcept { return !(*this == other); }

private:
    std::vector<FieldElement> coeffs_;
};

struct Point {
    Point(FieldElement x_coord, FieldElement y_coord);
    FieldElement x;
    FieldElement y;
};

/// f(x) by Horner's rule.
FieldElement poly_eval(const Polynomial& f, const FieldElement& x);

/// The unique polynomial of length points.size() through the given points.
/// x-coordinates must be pairwise distinct. O(k^2).
Polynomial lagrange_interpolate(const std::vector<Point>& points);

/// Same contract as lagrange_interpolate, but solves the Vandermonde system
/// A*v = y by Gaussian elimination over Z_p. Kept as an independent route for
/// cross-checks and diagnostics; pivoting picks the first nonzero entry
/// (lowest row index), so results are deterministic.
Polynomial solve_vandermonde(const std::vector<Point>& points);

}  // namespace sess
