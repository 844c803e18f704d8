#include "sess/field.hpp"

#include <array>
#include <mutex>
#include <random>
#include <set>
#include <utility>

namespace sess {

namespace {

// b^e mod m on raw integers; used by the primality test before any Prime
// object exists.
Int mod_pow(Int base, Int exponent, const Int& modulus) {
    Int result = 1;
    base %= modulus;
    while (exponent > 0) {
        if (boost::multiprecision::bit_test(exponent, 0)) {
            result = (result * base) % modulus;
        }
        base = (base * base) % modulus;
        exponent >>= 1;
    }
    return result;
}

// One Miller-Rabin round: returns false iff witness proves n composite.
// n - 1 = d * 2^r with d odd.
bool miller_rabin_round(const Int& n, const Int& d, unsigned r, const Int& witness) {
    Int x = mod_pow(witness, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (unsigned i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

// Deterministic for all 64-bit candidates.
constexpr std::array<unsigned, 12> kSmallWitnesses = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};

const Int kTwoPow64 = Int(1) << 64;

// 64 rounds at <= 1/4 error each keeps the composite-acceptance
// probability below 2^-128.
constexpr int kRandomRounds = 64;

Int random_witness(const Int& n, std::mt19937_64& eng) {
    // Uniform in [2, n - 2] by rejection over the bit width of n - 4.
    const Int span = n - 3;
    const unsigned bits = boost::multiprecision::msb(span) + 1;
    const unsigned words = (bits + 63) / 64;
    for (;;) {
        Int v = 0;
        for (unsigned w = 0; w < words; ++w) {
            v <<= 64;
            v |= Int(eng());
        }
        v >>= (words * 64 - bits);
        if (v <= span) {
            return v + 2;
        }
    }
}

}  // namespace

bool is_probable_prime(const Int& candidate) {
    if (candidate < 2) {
        return false;
    }
    for (unsigned w : kSmallWitnesses) {
        if (candidate == w) {
            return true;
        }
        if (candidate % w == 0) {
            return false;
        }
    }

    Int d = candidate - 1;
    unsigned r = 0;
    while (!boost::multiprecision::bit_test(d, 0)) {
        d >>= 1;
        ++r;
    }

    if (candidate < kTwoPow64) {
        for (unsigned w : kSmallWitnesses) {
            if (!miller_rabin_round(candidate, d, r, Int(w))) {
                return false;
            }
        }
        return true;
    }

    thread_local std::mt19937_64 eng{std::random_device{}()};
    for (int i = 0; i < kRandomRounds; ++i) {
        if (!miller_rabin_round(candidate, d, r, random_witness(candidate, eng))) {
            return false;
        }
    }
    return true;
}

PrimePtr Prime::validate(const Int& candidate) {
    if (candidate < 2) {
        throw std::invalid_argument("prime must be >= 2, got " + candidate.str());
    }

    // Re-validating the same modulus (e.g. one per share file read) is common;
    // memoize successful checks.
    static std::mutex mutex;
    static std::set<Int> known;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (known.count(candidate) == 0 && !is_probable_prime(candidate)) {
            throw std::invalid_argument("not a prime: " + candidate.str());
        }
        known.insert(candidate);
    }

    const unsigned bits = boost::multiprecision::msb(candidate) + 1;
    return std::shared_ptr<const Prime>(new Prime(candidate, bits));
}

PrimePtr validate_prime(const Int& candidate) { return Prime::validate(candidate); }

namespace {

void require_same_modulus(const FieldElement& a, const FieldElement& b) {
    if (a.prime() == b.prime()) {
        return;
    }
    if (a.modulus() != b.modulus()) {
        throw std::invalid_argument("modulus mismatch: " + a.modulus().str() + " vs " +
                                    b.modulus().str());
    }
}

}  // namespace

FieldElement::FieldElement(Int value, PrimePtr prime)
    : value_(std::move(value)), prime_(std::move(prime)) {
    if (!prime_) {
        throw std::invalid_argument("field element requires a prime modulus");
    }
    if (value_ < 0 || value_ >= prime_->value()) {
        throw std::domain_error("value " + value_.str() + " out of range for modulus " +
                                prime_->value().str());
    }
}

FieldElement FieldElement::reduce(const Int& value, PrimePtr prime) {
    if (!prime) {
        throw std::invalid_argument("field element requires a prime modulus");
    }
    Int v = value % prime->value();
    if (v < 0) {
        v += prime->value();
    }
    return FieldElement(std::move(v), std::move(prime));
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
    require_same_modulus(a, b);
    Int v = a.value() + b.value();
    if (v >= a.modulus()) {
        v -= a.modulus();
    }
    return FieldElement(std::move(v), a.prime());
}

FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
    require_same_modulus(a, b);
    Int v = a.value() - b.value();
    if (v < 0) {
        v += a.modulus();
    }
    return FieldElement(std::move(v), a.prime());
}

FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
    require_same_modulus(a, b);
    return FieldElement((a.value() * b.value()) % a.modulus(), a.prime());
}

FieldElement fe_inv(const FieldElement& a) {
    if (a.value() == 0) {
        throw std::domain_error("zero has no multiplicative inverse");
    }
    // Extended Euclid on (a, p); p prime guarantees gcd 1.
    Int r0 = a.value(), r1 = a.modulus();
    Int s0 = 1, s1 = 0;
    while (r1 != 0) {
        const Int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (s0 < 0) {
        s0 += a.modulus();
    }
    return FieldElement(std::move(s0), a.prime());
}

FieldElement fe_pow(const FieldElement& a, const Int& exponent) {
    if (exponent < 0) {
        throw std::invalid_argument("negative exponent");
    }
    Int result = 1;
    Int base = a.value();
    Int e = exponent;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) {
            result = (result * base) % a.modulus();
        }
        base = (base * base) % a.modulus();
        e >>= 1;
    }
    return FieldElement(std::move(result), a.prime());
}

}  // namespace sess
