#include "sess/rng.hpp"

#include <stdexcept>

namespace sess {

Int Rng::below(const Int& bound) {
    if (bound < 1) {
        throw std::invalid_argument("rng bound must be >= 1");
    }
    if (bound == 1) {
        return 0;
    }
    const unsigned bits = boost::multiprecision::msb(bound - 1) + 1;
    const unsigned words = (bits + 63) / 64;
    for (;;) {
        Int v = 0;
        for (unsigned w = 0; w < words; ++w) {
            v <<= 64;
            v |= Int(next_u64());
        }
        v >>= (words * 64 - bits);
        if (v < bound) {
            return v;
        }
    }
}

}  // namespace sess
