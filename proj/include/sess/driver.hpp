#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sess/codec.hpp"
#include "sess/rng.hpp"
#include "sess/sss.hpp"

namespace sess {

struct SplitResult {
    std::vector<ShareDocument> documents;  // n documents, one per share coordinate
    std::vector<Int> secret_xs;            // explicit layout only, empty otherwise
};

/// End-to-end split: byte stream -> blocks -> n share documents. Explicit
/// layout draws one set of secret coordinates for the whole stream and needs
/// an rng; sequential layout ignores it.
SplitResult split_stream(std::span<const std::uint8_t> data, const ShareParams& params,
                         Rng* rng = nullptr);

/// Split where the plaintext is a sequence of field elements rather than
/// bytes (works for any prime, including ones too small for the byte codec).
/// plaintext_length in the documents is the element count.
SplitResult split_elements(const std::vector<Int>& elements, const ShareParams& params,
                           Rng* rng = nullptr);

/// Recovers the original byte stream from >= k share documents. Headers must
/// match across documents; with verify set, surplus documents are
/// cross-checked block by block.
std::vector<std::uint8_t> combine_stream(const std::vector<ShareDocument>& documents,
                                         bool verify = false);

/// Element-mode counterpart of combine_stream.
std::vector<Int> combine_elements(const std::vector<ShareDocument>& documents,
                                  bool verify = false);

/// Storage accounting for a (k, n, p) configuration and an input of `length`
/// bytes, computed from the codec formulas without touching data.
///
/// Ratios compare share storage against the input in its field-element
/// representation (elements * element_bytes), which is the granularity at
/// which one share value and one secret value have identical size; that makes
/// the per-element Shamir baseline come out at exactly n. The raw byte ratio
/// (total payload / length) additionally carries the chunk-to-element width
/// expansion and is reported alongside.
struct StorageReport {
    std::uint64_t length = 0;
    std::size_t chunk_bytes = 0;
    std::size_t element_bytes = 0;
    std::uint64_t elements = 0;
    std::uint64_t blocks = 0;
    std::uint64_t per_share_payload_bytes = 0;
    std::uint64_t total_payload_bytes = 0;
    std::uint64_t header_bytes_total = 0;
    std::uint64_t total_file_bytes = 0;
    double payload_ratio = 0.0;   // total payload / (elements * element_bytes)
    double file_ratio = 0.0;      // (payload + headers) / (elements * element_bytes)
    double raw_byte_ratio = 0.0;  // total payload / length
    double ideal_ratio = 0.0;     // n / k
    std::uint64_t shamir_total_payload_bytes = 0;
    double shamir_ratio = 0.0;    // exactly n
};

StorageReport compute_storage_report(const ShareParams& params, std::uint64_t length);

}  // namespace sess
