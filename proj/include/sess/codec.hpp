#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sess/field.hpp"
#include "sess/sss.hpp"

namespace sess {

/// Base for every share-file malformation. Each failure mode has its own
/// derived type so callers can tell them apart.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadMagicError : public FormatError {
public:
    BadMagicError() : FormatError("bad magic: not a share file") {}
};

class VersionMismatchError : public FormatError {
public:
    explicit VersionMismatchError(unsigned got)
        : FormatError("unsupported share format version " + std::to_string(got)) {}
};

class TruncationError : public FormatError {
public:
    explicit TruncationError(const std::string& what_part)
        : FormatError("truncated share file: " + what_part) {}
};

class RangeViolationError : public FormatError {
public:
    explicit RangeViolationError(const std::string& detail)
        : FormatError("field element out of range: " + detail) {}
};

class InconsistencyError : public FormatError {
public:
    explicit InconsistencyError(const std::string& detail)
        : FormatError("inconsistent share file: " + detail) {}
};

/// How a byte stream maps onto field elements. chunk_bytes is
/// floor((width_bits - 1) / 8), so every chunk read as a big-endian unsigned
/// integer is guaranteed < p with no per-element range check; that requires
/// width_bits >= 9, i.e. p >= 257.
struct ChunkingSpec {
    static ChunkingSpec make(PrimePtr prime, std::uint32_t elements_per_block);

    PrimePtr prime;
    std::size_t chunk_bytes;
    std::uint32_t elements_per_block;
};

/// Chops data into chunk_bytes-sized big-endian integers and groups them k at
/// a time. The final chunk is zero-padded on the right; the final group is
/// padded with zero elements. Empty input yields no blocks.
std::vector<SecretBlock> encode_stream(std::span<const std::uint8_t> data,
                                       const ChunkingSpec& spec);

/// Inverse of encode_stream, truncated to plaintext_length bytes.
std::vector<std::uint8_t> decode_stream(const std::vector<SecretBlock>& blocks,
                                        std::uint64_t plaintext_length, const ChunkingSpec& spec);

/// One share as stored on disk. Binary layout, all integers big-endian:
///
///   magic            4 bytes   "SESS"
///   version          u8        1
///   k, n             u16 each
///   x_len, x         u16 + x_len bytes     share x-coordinate, minimal length
///   p_len, p         u16 + p_len bytes     prime modulus, minimal length
///   layout_tag       u8        0 = sequential, 1 = explicit
///   secret_xs        k * width_bytes       explicit layout only
///   plaintext_length u64
///   payload          count * width_bytes   one y-value per block
///
/// width_bytes = ceil(width_bits(p) / 8). Minimal-length integers carry no
/// leading zero byte (zero itself is encoded as length 0). The payload count
/// is implied by the file size and must match either the byte-stream formula
/// ceil(ceil(plaintext_length / chunk_bytes) / k) or the raw-element formula
/// ceil(plaintext_length / k); which one applies is decided by the consumer.
class ShareDocument {
public:
    /// secret_xs == nullopt means sequential layout. Validates every
    /// invariant (ranges, distinctness, coordinate disjointness, payload
    /// count consistency) and throws std::invalid_argument on violation.
    ShareDocument(std::uint32_t k, std::uint32_t n, Int x, PrimePtr prime,
                  std::optional<std::vector<Int>> secret_xs, std::uint64_t plaintext_length,
                  std::vector<Int> payload);

    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t n() const noexcept { return n_; }
    const Int& x() const noexcept { return x_; }
    const PrimePtr& prime() const noexcept { return prime_; }
    bool is_sequential() const noexcept { return !secret_xs_.has_value(); }
    const std::optional<std::vector<Int>>& secret_xs() const noexcept { return secret_xs_; }
    std::uint64_t plaintext_length() const noexcept { return plaintext_length_; }
    const std::vector<Int>& payload() const noexcept { return payload_; }

    bool operator==(const ShareDocument& other) const;
    bool operator!=(const ShareDocument& other) const { return !(*this == other); }

private:
    std::uint32_t k_;
    std::uint32_t n_;
    Int x_;
    PrimePtr prime_;
    std::optional<std::vector<Int>> secret_xs_;
    std::uint64_t plaintext_length_;
    std::vector<Int> payload_;
};

/// Canonical serialization; write is injective and read(write(d)) == d.
std::vector<std::uint8_t> write_share(const ShareDocument& document);

/// Parses and fully validates a share file. Throws the FormatError subtype
/// naming the first malformation encountered.
ShareDocument read_share(std::span<const std::uint8_t> bytes);

/// Payload element count for a byte stream of the given length.
std::uint64_t payload_elements_for_stream(std::uint64_t plaintext_length,
                                          const ChunkingSpec& spec);

/// Payload element count when the plaintext is raw field elements.
std::uint64_t payload_elements_for_raw(std::uint64_t element_count, std::uint32_t k);

}  // namespace sess
