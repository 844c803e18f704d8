#include "sess/sss.hpp"

#include <algorithm>
#include <set>

namespace sess {

namespace {

constexpr std::uint32_t kMaxCount = 0xFFFF;  // k and n travel as u16 in share files

void check_counts(std::uint32_t k, std::uint32_t n) {
    if (k < 1) {
        throw std::invalid_argument("threshold k must be >= 1");
    }
    if (n < k) {
        throw std::invalid_argument("share count n (" + std::to_string(n) +
                                    ") must be >= threshold k (" + std::to_string(k) + ")");
    }
    if (n > kMaxCount) {
        throw std::invalid_argument("share count n must be <= 65535");
    }
}

}  // namespace

ShareParams ShareParams::sequential(std::uint32_t k, std::uint32_t n, PrimePtr prime) {
    check_counts(k, n);
    if (!prime) {
        throw std::invalid_argument("params require a prime");
    }
    if (prime->value() <= Int(k) + n - 1) {
        throw std::invalid_argument("prime " + prime->value().str() +
                                    " too small: sequential layout needs p > k+n-1 = " +
                                    Int(Int(k) + n - 1).str());
    }
    return ShareParams(k, n, std::move(prime), true, {});
}

ShareParams ShareParams::explicit_points(std::uint32_t k, std::uint32_t n, PrimePtr prime,
                                         std::vector<Int> share_xs) {
    check_counts(k, n);
    if (!prime) {
        throw std::invalid_argument("params require a prime");
    }
    if (prime->value() < Int(k) + n) {
        throw std::invalid_argument("prime " + prime->value().str() +
                                    " too small: explicit layout needs p >= k+n = " +
                                    Int(Int(k) + n).str());
    }
    if (!share_xs.empty()) {
        if (share_xs.size() != n) {
            throw std::invalid_argument("expected " + std::to_string(n) +
                                        " share coordinates, got " +
                                        std::to_string(share_xs.size()));
        }
        std::set<Int> seen;
        for (const Int& x : share_xs) {
            if (x < 0 || x >= prime->value()) {
                throw std::invalid_argument("share coordinate " + x.str() + " out of range");
            }
            if (!seen.insert(x).second) {
                throw std::invalid_argument("duplicate share coordinate " + x.str());
            }
        }
    }
    return ShareParams(k, n, std::move(prime), false, std::move(share_xs));
}

const std::vector<Int>& ShareParams::share_xs() const {
    if (sequential_) {
        throw std::logic_error("sequential params have computed share coordinates");
    }
    return share_xs_;
}

Int ShareParams::share_x(std::size_t j) const {
    if (j >= n_) {
        throw std::out_of_range("share index out of range");
    }
    if (sequential_) {
        return Int(k_) + j;
    }
    if (share_xs_.empty()) {
        throw std::logic_error("params carry no share coordinates");
    }
    return share_xs_[j];
}

SecretBlock::SecretBlock(std::vector<FieldElement> secrets) : secrets_(std::move(secrets)) {
    if (secrets_.empty()) {
        throw std::invalid_argument("secret block must not be empty");
    }
    for (std::size_t i = 1; i < secrets_.size(); ++i) {
        if (secrets_[i].modulus() != secrets_.front().modulus()) {
            throw std::invalid_argument("secret block mixes moduli");
        }
    }
}

Share::Share(FieldElement x_coord, FieldElement y_value)
    : x(std::move(x_coord)), y(std::move(y_value)) {
    if (x.modulus() != y.modulus()) {
        throw std::invalid_argument("share coordinates mix moduli");
    }
}

namespace {

void check_block(const SecretBlock& block, const ShareParams& params) {
    if (block.size() != params.k()) {
        throw std::invalid_argument("expected " + std::to_string(params.k()) + " secrets, got " +
                                    std::to_string(block.size()));
    }
    if (block.secrets().front().modulus() != params.prime()->value()) {
        throw std::invalid_argument("secret block modulus differs from params prime");
    }
}

std::vector<Share> evaluate_shares(const Polynomial& f, const ShareParams& params) {
    std::vector<Share> shares;
    shares.reserve(params.n());
    for (std::size_t j = 0; j < params.n(); ++j) {
        FieldElement x(params.share_x(j), params.prime());
        FieldElement y = poly_eval(f, x);
        shares.emplace_back(std::move(x), std::move(y));
    }
    return shares;
}

// Shared reconstruction core: validates the supplied shares, interpolates the
// k with smallest x, and optionally cross-checks the surplus ones.
Polynomial interpolate_shares(const std::vector<Share>& shares, const ShareParams& params,
                              bool verify) {
    if (shares.size() < params.k()) {
        throw InsufficientSharesError(shares.size(), params.k());
    }
    for (const Share& s : shares) {
        if (s.x.modulus() != params.prime()->value()) {
            throw std::invalid_argument("share modulus differs from params prime");
        }
    }
    std::vector<std::size_t> order(shares.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return shares[a].x.value() < shares[b].x.value();
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (shares[order[i]].x == shares[order[i - 1]].x) {
            throw std::invalid_argument("duplicate share x-coordinate " +
                                        shares[order[i]].x.value().str());
        }
    }

    std::vector<Point> points;
    points.reserve(params.k());
    for (std::size_t i = 0; i < params.k(); ++i) {
        points.emplace_back(shares[order[i]].x, shares[order[i]].y);
    }
    Polynomial f = lagrange_interpolate(points);

    if (verify) {
        for (std::size_t i = params.k(); i < order.size(); ++i) {
            const Share& s = shares[order[i]];
            if (poly_eval(f, s.x) != s.y) {
                throw ShareVerificationError(s.x.value());
            }
        }
    }
    return f;
}

}  // namespace

std::vector<Share> split_secrets(const SecretBlock& block, const ShareParams& params) {
    if (!params.is_sequential()) {
        throw std::invalid_argument("split_secrets requires sequential layout");
    }
    check_block(block, params);

    std::vector<Point> points;
    points.reserve(params.k());
    for (std::size_t i = 0; i < params.k(); ++i) {
        points.emplace_back(FieldElement(Int(i), params.prime()), block.secret(i));
    }
    return evaluate_shares(lagrange_interpolate(points), params);
}

SecretBlock reconstruct_secrets(const std::vector<Share>& shares, const ShareParams& params,
                                bool verify) {
    if (!params.is_sequential()) {
        throw std::invalid_argument("reconstruct_secrets requires sequential layout");
    }
    for (const Share& s : shares) {
        if (s.x.value() < params.k()) {
            throw std::invalid_argument("share x=" + s.x.value().str() +
                                        " collides with a secret coordinate");
        }
    }
    Polynomial f = interpolate_shares(shares, params, verify);

    std::vector<FieldElement> secrets;
    secrets.reserve(params.k());
    for (std::size_t i = 0; i < params.k(); ++i) {
        secrets.push_back(poly_eval(f, FieldElement(Int(i), params.prime())));
    }
    return SecretBlock(std::move(secrets));
}

std::vector<FieldElement> draw_secret_xs(const ShareParams& params, Rng& rng) {
    if (params.is_sequential()) {
        throw std::invalid_argument("secret coordinates are fixed in sequential layout");
    }
    std::set<Int> excluded(params.share_xs().begin(), params.share_xs().end());
    if (params.share_xs().empty()) {
        throw std::invalid_argument("params carry no share coordinates to avoid");
    }

    std::vector<FieldElement> xs;
    xs.reserve(params.k());
    std::set<Int> chosen;
    while (xs.size() < params.k()) {
        Int candidate = rng.below(params.prime()->value());
        if (excluded.count(candidate) != 0 || !chosen.insert(candidate).second) {
            continue;
        }
        xs.emplace_back(std::move(candidate), params.prime());
    }
    return xs;
}

std::vector<Share> split_secrets_with_points(const SecretBlock& block,
                                             const std::vector<FieldElement>& secret_xs,
                                             const ShareParams& params) {
    if (params.is_sequential()) {
        throw std::invalid_argument("split_secrets_with_points requires explicit layout");
    }
    check_block(block, params);
    if (secret_xs.size() != params.k()) {
        throw std::invalid_argument("expected " + std::to_string(params.k()) +
                                    " secret coordinates, got " +
                                    std::to_string(secret_xs.size()));
    }
    const std::set<Int> share_set(params.share_xs().begin(), params.share_xs().end());
    std::set<Int> seen;
    for (const FieldElement& x : secret_xs) {
        if (x.modulus() != params.prime()->value()) {
            throw std::invalid_argument("secret coordinate modulus differs from params prime");
        }
        if (!seen.insert(x.value()).second) {
            throw std::invalid_argument("duplicate secret coordinate " + x.value().str());
        }
        if (share_set.count(x.value()) != 0) {
            throw std::invalid_argument("secret coordinate " + x.value().str() +
                                        " overlaps a share coordinate");
        }
    }

    std::vector<Point> points;
    points.reserve(params.k());
    for (std::size_t i = 0; i < params.k(); ++i) {
        points.emplace_back(secret_xs[i], block.secret(i));
    }
    return evaluate_shares(lagrange_interpolate(points), params);
}

std::pair<std::vector<Share>, std::vector<FieldElement>> split_secrets_at_points(
    const SecretBlock& block, const ShareParams& params, Rng& rng) {
    std::vector<FieldElement> xs = draw_secret_xs(params, rng);
    std::vector<Share> shares = split_secrets_with_points(block, xs, params);
    return {std::move(shares), std::move(xs)};
}

SecretBlock reconstruct_secrets_at_points(const std::vector<Share>& shares,
                                          const std::vector<FieldElement>& secret_xs,
                                          const ShareParams& params, bool verify) {
    if (params.is_sequential()) {
        throw std::invalid_argument("reconstruct_secrets_at_points requires explicit layout");
    }
    if (secret_xs.size() != params.k()) {
        throw std::invalid_argument("expected " + std::to_string(params.k()) +
                                    " secret coordinates, got " +
                                    std::to_string(secret_xs.size()));
    }
    std::set<Int> secret_set;
    for (const FieldElement& x : secret_xs) {
        if (!secret_set.insert(x.value()).second) {
            throw std::invalid_argument("duplicate secret coordinate " + x.value().str());
        }
    }
    for (const Share& s : shares) {
        if (secret_set.count(s.x.value()) != 0) {
            throw std::invalid_argument("share x=" + s.x.value().str() +
                                        " collides with a secret coordinate");
        }
    }
    Polynomial f = interpolate_shares(shares, params, verify);

    std::vector<FieldElement> secrets;
    secrets.reserve(secret_xs.size());
    for (const FieldElement& x : secret_xs) {
        secrets.push_back(poly_eval(f, x));
    }
    return SecretBlock(std::move(secrets));
}

std::vector<FieldElement> enumerate_candidates(const std::vector<Share>& partial,
                                               const FieldElement& probe_x,
                                               const FieldElement& target_x,
                                               const ShareParams& params) {
    static const Int kEnumerationGuard = Int(1) << 16;
    const Int& p = params.prime()->value();
    if (p > kEnumerationGuard) {
        throw std::invalid_argument("prime too large to enumerate (guard: p <= 2^16)");
    }
    if (partial.size() + 1 != params.k()) {
        throw std::invalid_argument("expected k-1 = " + std::to_string(params.k() - 1) +
                                    " partial shares, got " + std::to_string(partial.size()));
    }

    std::vector<Point> points;
    points.reserve(params.k());
    for (const Share& s : partial) {
        if (s.x == probe_x) {
            throw std::invalid_argument("probe coordinate duplicates a known share");
        }
        points.emplace_back(s.x, s.y);
    }

    std::vector<FieldElement> candidates;
    candidates.reserve(static_cast<std::size_t>(p));
    for (Int g = 0; g < p; ++g) {
        points.emplace_back(probe_x, FieldElement(g, params.prime()));
        Polynomial f = lagrange_interpolate(points);
        candidates.push_back(poly_eval(f, target_x));
        points.pop_back();
    }
    return candidates;
}

std::vector<Share> shamir_split(const FieldElement& secret, const ShareParams& params, Rng& rng) {
    if (secret.modulus() != params.prime()->value()) {
        throw std::invalid_argument("secret modulus differs from params prime");
    }
    std::vector<FieldElement> coeffs;
    coeffs.reserve(params.k());
    coeffs.push_back(secret);
    for (std::size_t i = 1; i < params.k(); ++i) {
        coeffs.emplace_back(rng.below(params.prime()->value()), params.prime());
    }
    const Polynomial f(std::move(coeffs));

    std::vector<Share> shares;
    shares.reserve(params.n());
    for (std::size_t j = 1; j <= params.n(); ++j) {
        FieldElement x(Int(j), params.prime());
        FieldElement y = poly_eval(f, x);
        shares.emplace_back(std::move(x), std::move(y));
    }
    return shares;
}

FieldElement shamir_reconstruct(const std::vector<Share>& shares, const ShareParams& params) {
    for (const Share& s : shares) {
        if (s.x.value() == 0) {
            throw std::invalid_argument("share at x=0 collides with the secret coordinate");
        }
    }
    Polynomial f = interpolate_shares(shares, params, false);
    return poly_eval(f, FieldElement(Int(0), params.prime()));
}

}  // namespace sess
