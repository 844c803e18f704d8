#include "sess/codec.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace sess {

namespace {

constexpr char kMagic[4] = {'S', 'E', 'S', 'S'};
constexpr std::uint8_t kVersion = 1;

Int int_from_be(std::span<const std::uint8_t> bytes) {
    Int v = 0;
    for (std::uint8_t b : bytes) {
        v <<= 8;
        v |= b;
    }
    return v;
}

// Minimal big-endian encoding: no leading zero byte, zero is empty.
std::vector<std::uint8_t> int_to_be_minimal(const Int& v) {
    std::vector<std::uint8_t> out;
    Int rest = v;
    while (rest > 0) {
        out.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(rest & 0xFF)));
        rest >>= 8;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void int_to_be_fixed(const Int& v, std::size_t width, std::vector<std::uint8_t>& out) {
    for (std::size_t i = width; i-- > 0;) {
        out.push_back(static_cast<std::uint8_t>(static_cast<unsigned>((v >> (8 * i)) & 0xFF)));
    }
}

void put_u16(std::uint16_t v, std::vector<std::uint8_t>& out) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_u64(std::uint64_t v, std::vector<std::uint8_t>& out) {
    for (int i = 7; i >= 0; --i) {
        out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
}

}  // namespace

ChunkingSpec ChunkingSpec::make(PrimePtr prime, std::uint32_t elements_per_block) {
    if (!prime) {
        throw std::invalid_argument("chunking spec requires a prime");
    }
    if (elements_per_block < 1 || elements_per_block > 0xFFFF) {
        throw std::invalid_argument("elements per block must be in [1, 65535]");
    }
    const std::size_t chunk_bytes = (prime->width_bits() - 1) / 8;
    if (chunk_bytes == 0) {
        throw std::invalid_argument("prime " + prime->value().str() +
                                    " too small for the byte codec (need p >= 257)");
    }
    return ChunkingSpec{std::move(prime), chunk_bytes, elements_per_block};
}

std::vector<SecretBlock> encode_stream(std::span<const std::uint8_t> data,
                                       const ChunkingSpec& spec) {
    const std::size_t cb = spec.chunk_bytes;
    const std::size_t chunks = (data.size() + cb - 1) / cb;
    const std::size_t k = spec.elements_per_block;
    const std::size_t block_count = (chunks + k - 1) / k;
    const FieldElement zero(0, spec.prime);

    std::vector<SecretBlock> blocks;
    blocks.reserve(block_count);
    for (std::size_t b = 0; b < block_count; ++b) {
        std::vector<FieldElement> secrets;
        secrets.reserve(k);
        for (std::size_t e = 0; e < k; ++e) {
            const std::size_t c = b * k + e;
            if (c >= chunks) {
                secrets.push_back(zero);
                continue;
            }
            const std::size_t begin = c * cb;
            const std::size_t avail = std::min(cb, data.size() - begin);
            Int v = int_from_be(data.subspan(begin, avail));
            // Final partial chunk: zero-pad on the right to chunk_bytes.
            v <<= 8 * (cb - avail);
            secrets.emplace_back(std::move(v), spec.prime);
        }
        blocks.emplace_back(std::move(secrets));
    }
    return blocks;
}

std::vector<std::uint8_t> decode_stream(const std::vector<SecretBlock>& blocks,
                                        std::uint64_t plaintext_length, const ChunkingSpec& spec) {
    const std::size_t cb = spec.chunk_bytes;
    const std::uint64_t capacity =
        static_cast<std::uint64_t>(blocks.size()) * spec.elements_per_block * cb;
    if (plaintext_length > capacity) {
        throw std::invalid_argument("plaintext length " + std::to_string(plaintext_length) +
                                    " exceeds decoded capacity " + std::to_string(capacity));
    }
    const Int chunk_limit = Int(1) << (8 * cb);

    std::vector<std::uint8_t> out;
    out.reserve(plaintext_length);
    for (const SecretBlock& block : blocks) {
        if (block.size() != spec.elements_per_block) {
            throw std::invalid_argument("block size differs from chunking spec");
        }
        for (const FieldElement& elem : block.secrets()) {
            if (out.size() >= plaintext_length) {
                break;
            }
            if (elem.modulus() != spec.prime->value()) {
                throw std::invalid_argument("block modulus differs from chunking spec");
            }
            if (elem.value() >= chunk_limit) {
                throw std::domain_error("element " + elem.value().str() +
                                        " does not fit a " + std::to_string(cb) + "-byte chunk");
            }
            int_to_be_fixed(elem.value(), cb, out);
        }
    }
    out.resize(plaintext_length);
    return out;
}

std::uint64_t payload_elements_for_stream(std::uint64_t plaintext_length,
                                          const ChunkingSpec& spec) {
    const std::uint64_t chunks =
        (plaintext_length + spec.chunk_bytes - 1) / spec.chunk_bytes;
    return (chunks + spec.elements_per_block - 1) / spec.elements_per_block;
}

std::uint64_t payload_elements_for_raw(std::uint64_t element_count, std::uint32_t k) {
    return (element_count + k - 1) / k;
}

namespace {

// A document's payload count must be explainable by at least one plaintext
// interpretation: the byte codec (when p supports it) or raw elements.
bool payload_count_consistent(std::uint64_t count, std::uint64_t plaintext_length,
                              std::uint32_t k, const PrimePtr& prime) {
    if (count == payload_elements_for_raw(plaintext_length, k)) {
        return true;
    }
    if (prime->width_bits() >= 9) {
        const ChunkingSpec spec = ChunkingSpec::make(prime, k);
        if (count == payload_elements_for_stream(plaintext_length, spec)) {
            return true;
        }
    }
    return false;
}

}  // namespace

ShareDocument::ShareDocument(std::uint32_t k, std::uint32_t n, Int x, PrimePtr prime,
                             std::optional<std::vector<Int>> secret_xs,
                             std::uint64_t plaintext_length, std::vector<Int> payload)
    : k_(k),
      n_(n),
      x_(std::move(x)),
      prime_(std::move(prime)),
      secret_xs_(std::move(secret_xs)),
      plaintext_length_(plaintext_length),
      payload_(std::move(payload)) {
    if (!prime_) {
        throw std::invalid_argument("share document requires a prime");
    }
    const Int& p = prime_->value();
    if (k_ < 1 || n_ < k_ || n_ > 0xFFFF) {
        throw std::invalid_argument("share document needs 1 <= k <= n <= 65535");
    }
    if (x_ < 0 || x_ >= p) {
        throw std::invalid_argument("x-coordinate out of range");
    }
    if (secret_xs_.has_value()) {
        if (p < Int(k_) + n_) {
            throw std::invalid_argument("prime too small for explicit layout");
        }
        if (secret_xs_->size() != k_) {
            throw std::invalid_argument("explicit layout needs exactly k secret coordinates");
        }
        std::set<Int> seen;
        for (const Int& sx : *secret_xs_) {
            if (sx < 0 || sx >= p) {
                throw std::invalid_argument("secret coordinate out of range");
            }
            if (!seen.insert(sx).second) {
                throw std::invalid_argument("duplicate secret coordinate");
            }
        }
        if (seen.count(x_) != 0) {
            throw std::invalid_argument("x-coordinate collides with a secret coordinate");
        }
    } else {
        if (p <= Int(k_) + n_ - 1) {
            throw std::invalid_argument("prime too small for sequential layout");
        }
        if (x_ < k_) {
            throw std::invalid_argument("sequential x-coordinate collides with a secret slot");
        }
    }
    for (const Int& y : payload_) {
        if (y < 0 || y >= p) {
            throw std::invalid_argument("payload element out of range");
        }
    }
    if (!payload_count_consistent(payload_.size(), plaintext_length_, k_, prime_)) {
        throw std::invalid_argument("payload element count inconsistent with plaintext length");
    }
}

bool ShareDocument::operator==(const ShareDocument& other) const {
    return k_ == other.k_ && n_ == other.n_ && x_ == other.x_ &&
           prime_->value() == other.prime_->value() && secret_xs_ == other.secret_xs_ &&
           plaintext_length_ == other.plaintext_length_ && payload_ == other.payload_;
}

std::vector<std::uint8_t> write_share(const ShareDocument& document) {
    const std::vector<std::uint8_t> x_bytes = int_to_be_minimal(document.x());
    const std::vector<std::uint8_t> p_bytes = int_to_be_minimal(document.prime()->value());
    if (x_bytes.size() > 0xFFFF || p_bytes.size() > 0xFFFF) {
        throw std::invalid_argument("integer too wide for the share format");
    }
    const std::size_t width = document.prime()->width_bytes();

    std::vector<std::uint8_t> out;
    out.reserve(64 + document.payload().size() * width);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    put_u16(static_cast<std::uint16_t>(document.k()), out);
    put_u16(static_cast<std::uint16_t>(document.n()), out);
    put_u16(static_cast<std::uint16_t>(x_bytes.size()), out);
    out.insert(out.end(), x_bytes.begin(), x_bytes.end());
    put_u16(static_cast<std::uint16_t>(p_bytes.size()), out);
    out.insert(out.end(), p_bytes.begin(), p_bytes.end());
    out.push_back(document.is_sequential() ? 0 : 1);
    if (!document.is_sequential()) {
        for (const Int& sx : *document.secret_xs()) {
            int_to_be_fixed(sx, width, out);
        }
    }
    put_u64(document.plaintext_length(), out);
    for (const Int& y : document.payload()) {
        int_to_be_fixed(y, width, out);
    }
    return out;
}

namespace {

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::span<const std::uint8_t> take(std::size_t count, const char* what_part) {
        if (bytes_.size() - pos_ < count) {
            throw TruncationError(what_part);
        }
        auto out = bytes_.subspan(pos_, count);
        pos_ += count;
        return out;
    }

    std::uint8_t take_u8(const char* what_part) { return take(1, what_part)[0]; }

    std::uint16_t take_u16(const char* what_part) {
        auto b = take(2, what_part);
        return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
    }

    std::uint64_t take_u64(const char* what_part) {
        auto b = take(8, what_part);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v = (v << 8) | b[i];
        }
        return v;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

Int take_minimal_int(ByteReader& reader, const char* what_part) {
    const std::uint16_t len = reader.take_u16(what_part);
    auto bytes = reader.take(len, what_part);
    if (len > 0 && bytes[0] == 0) {
        throw InconsistencyError(std::string(what_part) + " has a non-minimal integer encoding");
    }
    return int_from_be(bytes);
}

}  // namespace

ShareDocument read_share(std::span<const std::uint8_t> bytes) {
    ByteReader reader(bytes);

    auto magic = reader.take(4, "magic");
    if (!std::equal(magic.begin(), magic.end(), kMagic, kMagic + 4)) {
        throw BadMagicError();
    }
    const std::uint8_t version = reader.take_u8("version");
    if (version != kVersion) {
        throw VersionMismatchError(version);
    }
    const std::uint16_t k = reader.take_u16("k");
    const std::uint16_t n = reader.take_u16("n");
    if (k < 1 || n < k) {
        throw InconsistencyError("k/n invalid: k=" + std::to_string(k) +
                                 " n=" + std::to_string(n));
    }
    const Int x = take_minimal_int(reader, "x-coordinate");
    const Int p_value = take_minimal_int(reader, "prime");

    PrimePtr prime;
    try {
        prime = validate_prime(p_value);
    } catch (const std::invalid_argument&) {
        throw InconsistencyError("modulus " + p_value.str() + " is not prime");
    }
    if (x >= prime->value()) {
        throw RangeViolationError("x-coordinate " + x.str() + " >= p");
    }
    const std::size_t width = prime->width_bytes();

    const std::uint8_t layout_tag = reader.take_u8("layout tag");
    std::optional<std::vector<Int>> secret_xs;
    if (layout_tag == 1) {
        if (prime->value() < Int(k) + n) {
            throw InconsistencyError("prime too small for explicit layout");
        }
        std::vector<Int> xs;
        xs.reserve(k);
        std::set<Int> seen;
        for (std::uint16_t i = 0; i < k; ++i) {
            Int sx = int_from_be(reader.take(width, "secret coordinates"));
            if (sx >= prime->value()) {
                throw RangeViolationError("secret coordinate " + sx.str() + " >= p");
            }
            if (!seen.insert(sx).second) {
                throw InconsistencyError("duplicate secret coordinate " + sx.str());
            }
            xs.push_back(std::move(sx));
        }
        if (seen.count(x) != 0) {
            throw InconsistencyError("x-coordinate collides with a secret coordinate");
        }
        secret_xs = std::move(xs);
    } else if (layout_tag == 0) {
        if (prime->value() <= Int(k) + n - 1) {
            throw InconsistencyError("prime too small for sequential layout");
        }
        if (x < k) {
            throw InconsistencyError("sequential x-coordinate collides with a secret slot");
        }
    } else {
        throw InconsistencyError("unknown layout tag " + std::to_string(layout_tag));
    }

    const std::uint64_t plaintext_length = reader.take_u64("plaintext length");
    if (reader.remaining() % width != 0) {
        throw TruncationError("payload is not a whole number of elements");
    }
    const std::size_t count = reader.remaining() / width;
    std::vector<Int> payload;
    payload.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Int y = int_from_be(reader.take(width, "payload"));
        if (y >= prime->value()) {
            throw RangeViolationError("payload element " + y.str() + " >= p");
        }
        payload.push_back(std::move(y));
    }
    if (!payload_count_consistent(count, plaintext_length, k, prime)) {
        throw InconsistencyError("payload element count inconsistent with plaintext length");
    }

    try {
        return ShareDocument(k, n, x, std::move(prime), std::move(secret_xs), plaintext_length,
                             std::move(payload));
    } catch (const std::invalid_argument& e) {
        throw InconsistencyError(e.what());
    }
}

}  // namespace sess
