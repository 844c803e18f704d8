#include "sess/poly.hpp"

#include <stdexcept>
#include <utility>

namespace sess {

Polynomial::Polynomial(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("polynomial requires at least one coefficient");
    }
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i].modulus() != coeffs_.front().modulus()) {
            throw std::invalid_argument("polynomial coefficients mix moduli");
        }
    }
}

Point::Point(FieldElement x_coord, FieldElement y_coord)
    : x(std::move(x_coord)), y(std::move(y_coord)) {
    if (x.modulus() != y.modulus()) {
        throw std::invalid_argument("point coordinates mix moduli");
    }
}

FieldElement poly_eval(const Polynomial& f, const FieldElement& x) {
    FieldElement acc = f.coeff(f.length() - 1);
    for (std::size_t i = f.length() - 1; i-- > 0;) {
        acc = fe_add(fe_mul(acc, x), f.coeff(i));
    }
    return acc;
}

namespace {

void check_interpolation_input(const std::vector<Point>& points) {
    if (points.empty()) {
        throw std::invalid_argument("interpolation requires at least one point");
    }
    const Int& p = points.front().x.modulus();
    if (Int(points.size()) > p) {
        throw std::invalid_argument("more interpolation points than field elements");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].x.modulus() != p) {
            throw std::invalid_argument("interpolation points mix moduli");
        }
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].x == points[j].x) {
                throw std::invalid_argument("duplicate x-coordinate " + points[i].x.value().str());
            }
        }
    }
}

}  // namespace

Polynomial lagrange_interpolate(const std::vector<Point>& points) {
    check_interpolation_input(points);
    const std::size_t k = points.size();
    const PrimePtr& prime = points.front().x.prime();
    const FieldElement zero(0, prime);
    const FieldElement one = FieldElement::reduce(1, prime);

    // master(x) = prod_i (x - x_i), length k + 1.
    std::vector<FieldElement> master;
    master.reserve(k + 1);
    master.push_back(one);
    for (const Point& pt : points) {
        master.insert(master.begin(), zero);
        for (std::size_t j = 0; j < master.size() - 1; ++j) {
            master[j] = fe_sub(master[j], fe_mul(pt.x, master[j + 1]));
        }
    }

    std::vector<FieldElement> result(k, zero);
    std::vector<FieldElement> basis(k, zero);
    for (std::size_t i = 0; i < k; ++i) {
        const FieldElement& xi = points[i].x;
        // basis = master / (x - x_i) by synthetic division.
        basis[k - 1] = master[k];
        for (std::size_t j = k - 1; j-- > 0;) {
            basis[j] = fe_add(master[j + 1], fe_mul(xi, basis[j + 1]));
        }
        // denom = basis(x_i) = prod_{j != i} (x_i - x_j).
        FieldElement denom = basis[k - 1];
        for (std::size_t j = k - 1; j-- > 0;) {
            denom = fe_add(fe_mul(denom, xi), basis[j]);
        }
        const FieldElement scale = fe_mul(points[i].y, fe_inv(denom));
        for (std::size_t j = 0; j < k; ++j) {
            result[j] = fe_add(result[j], fe_mul(scale, basis[j]));
        }
    }
    return Polynomial(std::move(result));
}

Polynomial solve_vandermonde(const std::vector<Point>& points) {
    check_interpolation_input(points);
    const std::size_t k = points.size();
    const PrimePtr& prime = points.front().x.prime();
    const FieldElement zero(0, prime);

    // Augmented system: rows [1, x_i, ..., x_i^(k-1) | y_i].
    std::vector<std::vector<FieldElement>> rows(k, std::vector<FieldElement>(k + 1, zero));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            rows[i][j] = fe_pow(points[i].x, Int(j));
        }
        rows[i][k] = points[i].y;
    }

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && rows[pivot][col].value() == 0) {
            ++pivot;
        }
        if (pivot == k) {
            throw std::domain_error("singular Vandermonde system");
        }
        std::swap(rows[col], rows[pivot]);
        const FieldElement inv_pivot = fe_inv(rows[col][col]);
        for (std::size_t j = col; j <= k; ++j) {
            rows[col][j] = fe_mul(rows[col][j], inv_pivot);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            const FieldElement factor = rows[r][col];
            if (factor.value() == 0) {
                continue;
            }
            for (std::size_t j = col; j <= k; ++j) {
                rows[r][j] = fe_sub(rows[r][j], fe_mul(factor, rows[col][j]));
            }
        }
    }

    std::vector<FieldElement> solution(k, zero);
    for (std::size_t i = k; i-- > 0;) {
        FieldElement v = rows[i][k];
        for (std::size_t j = i + 1; j < k; ++j) {
            v = fe_sub(v, fe_mul(rows[i][j], solution[j]));
        }
        solution[i] = v;
    }
    return Polynomial(std::move(solution));
}

}  // namespace sess
