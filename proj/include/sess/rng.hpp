#pragma once

#include <cstdint>
#include <random>

#include "sess/field.hpp"

namespace sess {

/// Randomness source for the schemes that need one (random interpolation
/// points, Shamir coefficients). below() draws uniformly by rejection
/// sampling over next_u64(); tests may override below() directly to script
/// exact outcomes.
class Rng {
public:
    virtual ~Rng() = default;

    virtual std::uint64_t next_u64() = 0;

    /// Uniform integer in [0, bound); bound must be >= 1.
    virtual Int below(const Int& bound);
};

/// Deterministic source for reproducible runs (--seed, golden tests).
class SeededRng final : public Rng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next_u64() override { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Entropy-backed source for regular use. Draws from std::random_device on
/// every call (urandom or CPU entropy, depending on the platform).
class SystemRng final : public Rng {
public:
    std::uint64_t next_u64() override {
        return (static_cast<std::uint64_t>(device_()) << 32) ^ device_();
    }

private:
    std::random_device device_;
};

}  // namespace sess
