#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sess/field.hpp"
#include "sess/poly.hpp"
#include "sess/rng.hpp"

namespace sess {

/// Thrown when fewer than k shares are supplied for reconstruction.
class InsufficientSharesError : public std::runtime_error {
public:
    InsufficientSharesError(std::size_t have, std::size_t need)
        : std::runtime_error("insufficient shares: have " + std::to_string(have) + ", need " +
                             std::to_string(need) + " (missing " + std::to_string(need - have) +
                             ")"),
          have_(have),
          need_(need) {}

    std::size_t have() const noexcept { return have_; }
    std::size_t need() const noexcept { return need_; }

private:
    std::size_t have_;
    std::size_t need_;
};

/// Thrown in verify mode when a surplus share disagrees with the polynomial
/// reconstructed from the k shares actually used.
class ShareVerificationError : public std::runtime_error {
public:
    explicit ShareVerificationError(const Int& x)
        : std::runtime_error("share verification failed: share at x=" + x.str() +
                             " is inconsistent with the reconstructed polynomial") {}
};

/// Threshold configuration: k secrets per block, n shares, prime p, and the
/// evaluation-point layout.
///
/// Sequential layout puts secrets at x = 0..k-1 and shares at x = k..k+n-1,
/// which needs p > k+n-1 distinct coordinates. Explicit layout carries the n
/// share coordinates and leaves the secret coordinates to the caller (drawn
/// at split time, supplied at reconstruction time); it needs p >= k+n. An
/// explicit ShareParams built for reconstruction may omit the share
/// coordinates, since they travel inside the shares themselves.
class ShareParams {
public:
    static ShareParams sequential(std::uint32_t k, std::uint32_t n, PrimePtr prime);
    static ShareParams explicit_points(std::uint32_t k, std::uint32_t n, PrimePtr prime,
                                       std::vector<Int> share_xs = {});

    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t n() const noexcept { return n_; }
    const PrimePtr& prime() const noexcept { return prime_; }
    bool is_sequential() const noexcept { return sequential_; }

    /// Explicit layout only; may be empty for reconstruction-side params.
    const std::vector<Int>& share_xs() const;

    /// The j-th share coordinate (j in [0, n)).
    Int share_x(std::size_t j) const;

private:
    ShareParams(std::uint32_t k, std::uint32_t n, PrimePtr prime, bool sequential,
                std::vector<Int> share_xs)
        : k_(k), n_(n), prime_(std::move(prime)), sequential_(sequential),
          share_xs_(std::move(share_xs)) {}

    std::uint32_t k_;
    std::uint32_t n_;
    PrimePtr prime_;
    bool sequential_;
    std::vector<Int> share_xs_;
};

/// One block of k secrets s_0..s_{k-1}.
class SecretBlock {
public:
    explicit SecretBlock(std::vector<FieldElement> secrets);

    std::size_t size() const noexcept { return secrets_.size(); }
    const FieldElement& secret(std::size_t i) const { return secrets_.at(i); }
    const std::vector<FieldElement>& secrets() const noexcept { return secrets_; }

    bool operator==(const SecretBlock& other) const noexcept {
        return secrets_ == other.secrets_;
    }
    bool operator!=(const SecretBlock& other) const noexcept { return !(*this == other); }

private:
    std::vector<FieldElement> secrets_;
};

/// A public point (x, f(x)) on the hidden polynomial.
struct Share {
    Share(FieldElement x_coord, FieldElement y_value);
    FieldElement x;
    FieldElement y;
};

/// Splits k secrets into n shares (sequential layout): interpolates the
/// polynomial through (i, s_i) and evaluates it at x = k..k+n-1. Shares come
/// back in ascending x order; the same inputs always produce the same shares.
std::vector<Share> split_secrets(const SecretBlock& block, const ShareParams& params);

/// Recovers the block from any >= k shares (sequential layout). The k shares
/// with smallest x are interpolated; with verify set, every surplus share is
/// checked against the reconstructed polynomial and a mismatch throws
/// ShareVerificationError.
SecretBlock reconstruct_secrets(const std::vector<Share>& shares, const ShareParams& params,
                                bool verify = false);

/// Draws k distinct secret coordinates uniformly from Z_p minus the share
/// coordinates (explicit layout).
std::vector<FieldElement> draw_secret_xs(const ShareParams& params, Rng& rng);

/// Splits with caller-chosen secret coordinates (explicit layout,
/// deterministic). secret_xs must be distinct and disjoint from the share
/// coordinates.
std::vector<Share> split_secrets_with_points(const SecretBlock& block,
                                             const std::vector<FieldElement>& secret_xs,
                                             const ShareParams& params);

/// The random-coordinates variant: draws the secret coordinates, splits, and
/// returns both. The coordinates are public metadata; reconstruction needs
/// them back.
std::pair<std::vector<Share>, std::vector<FieldElement>> split_secrets_at_points(
    const SecretBlock& block, const ShareParams& params, Rng& rng);

/// Inverse of split_secrets_with_points / split_secrets_at_points. Secrets
/// come back in secret_xs order.
SecretBlock reconstruct_secrets_at_points(const std::vector<Share>& shares,
                                          const std::vector<FieldElement>& secret_xs,
                                          const ShareParams& params, bool verify = false);

/// Exhaustive what-if analysis for small fields (p <= 2^16): given k-1 known
/// shares, tries every guess g for the missing share at probe_x and records
/// the value the resulting polynomial takes at target_x. Entry [g] of the
/// result is that candidate; the map being a bijection on Z_p is what makes
/// every candidate secret equally likely.
std::vector<FieldElement> enumerate_candidates(const std::vector<Share>& partial,
                                               const FieldElement& probe_x,
                                               const FieldElement& target_x,
                                               const ShareParams& params);

/// Classical single-secret baseline: random polynomial with f(0) = secret,
/// shares at x = 1..n. Kept for storage comparisons.
std::vector<Share> shamir_split(const FieldElement& secret, const ShareParams& params, Rng& rng);
FieldElement shamir_reconstruct(const std::vector<Share>& shares, const ShareParams& params);

}  // namespace sess
