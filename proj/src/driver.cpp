#include "sess/driver.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

namespace sess {

namespace {

// Turns per-block share lists into per-coordinate documents: document j
// collects the y-value of share j from every block.
std::vector<ShareDocument> assemble_documents(
    const std::vector<std::vector<Share>>& per_block_shares, const ShareParams& params,
    const std::optional<std::vector<Int>>& secret_xs, std::uint64_t plaintext_length) {
    std::vector<ShareDocument> documents;
    documents.reserve(params.n());
    for (std::size_t j = 0; j < params.n(); ++j) {
        std::vector<Int> payload;
        payload.reserve(per_block_shares.size());
        for (const std::vector<Share>& shares : per_block_shares) {
            payload.push_back(shares[j].y.value());
        }
        documents.emplace_back(params.k(), params.n(), params.share_x(j), params.prime(),
                               secret_xs, plaintext_length, std::move(payload));
    }
    return documents;
}

std::optional<std::vector<Int>> draw_coordinates(const ShareParams& params, Rng* rng,
                                                 std::vector<FieldElement>& secret_xs_out) {
    if (params.is_sequential()) {
        return std::nullopt;
    }
    if (rng == nullptr) {
        throw std::invalid_argument("explicit layout requires a randomness source");
    }
    secret_xs_out = draw_secret_xs(params, *rng);
    std::vector<Int> raw;
    raw.reserve(secret_xs_out.size());
    for (const FieldElement& x : secret_xs_out) {
        raw.push_back(x.value());
    }
    return raw;
}

std::vector<Share> split_block(const SecretBlock& block, const ShareParams& params,
                               const std::vector<FieldElement>& secret_xs) {
    if (params.is_sequential()) {
        return split_secrets(block, params);
    }
    return split_secrets_with_points(block, secret_xs, params);
}

// Header checks shared by both combine modes. Returns documents ordered as
// given; reconstruction itself picks the k smallest x per block.
void check_documents_match(const std::vector<ShareDocument>& documents) {
    if (documents.empty()) {
        throw std::invalid_argument("no share documents supplied");
    }
    const ShareDocument& first = documents.front();
    std::set<Int> xs;
    for (const ShareDocument& doc : documents) {
        const bool matches = doc.k() == first.k() && doc.n() == first.n() &&
                             doc.prime()->value() == first.prime()->value() &&
                             doc.secret_xs() == first.secret_xs() &&
                             doc.plaintext_length() == first.plaintext_length() &&
                             doc.payload().size() == first.payload().size();
        if (!matches) {
            throw InconsistencyError("share headers do not match");
        }
        if (!xs.insert(doc.x()).second) {
            throw std::invalid_argument("duplicate share file for x=" + doc.x().str());
        }
    }
}

ShareParams params_from_documents(const std::vector<ShareDocument>& documents) {
    const ShareDocument& first = documents.front();
    if (first.is_sequential()) {
        return ShareParams::sequential(first.k(), first.n(), first.prime());
    }
    return ShareParams::explicit_points(first.k(), first.n(), first.prime());
}

std::vector<SecretBlock> reconstruct_blocks(const std::vector<ShareDocument>& documents,
                                            bool verify) {
    const ShareDocument& first = documents.front();
    const ShareParams params = params_from_documents(documents);
    if (documents.size() < params.k()) {
        throw InsufficientSharesError(documents.size(), params.k());
    }

    std::vector<FieldElement> secret_xs;
    if (!first.is_sequential()) {
        secret_xs.reserve(first.secret_xs()->size());
        for (const Int& sx : *first.secret_xs()) {
            secret_xs.emplace_back(sx, first.prime());
        }
    }

    const std::size_t block_count = first.payload().size();
    std::vector<SecretBlock> blocks;
    blocks.reserve(block_count);
    for (std::size_t b = 0; b < block_count; ++b) {
        std::vector<Share> shares;
        shares.reserve(documents.size());
        for (const ShareDocument& doc : documents) {
            shares.emplace_back(FieldElement(doc.x(), doc.prime()),
                                FieldElement(doc.payload()[b], doc.prime()));
        }
        blocks.push_back(first.is_sequential()
                             ? reconstruct_secrets(shares, params, verify)
                             : reconstruct_secrets_at_points(shares, secret_xs, params, verify));
    }
    return blocks;
}

}  // namespace

SplitResult split_stream(std::span<const std::uint8_t> data, const ShareParams& params,
                         Rng* rng) {
    const ChunkingSpec spec = ChunkingSpec::make(params.prime(), params.k());
    std::vector<FieldElement> secret_xs;
    const std::optional<std::vector<Int>> raw_xs = draw_coordinates(params, rng, secret_xs);

    const std::vector<SecretBlock> blocks = encode_stream(data, spec);
    std::vector<std::vector<Share>> per_block;
    per_block.reserve(blocks.size());
    for (const SecretBlock& block : blocks) {
        per_block.push_back(split_block(block, params, secret_xs));
    }

    SplitResult result;
    result.documents = assemble_documents(per_block, params, raw_xs, data.size());
    if (raw_xs.has_value()) {
        result.secret_xs = *raw_xs;
    }
    return result;
}

SplitResult split_elements(const std::vector<Int>& elements, const ShareParams& params,
                           Rng* rng) {
    const Int& p = params.prime()->value();
    for (const Int& e : elements) {
        if (e < 0 || e >= p) {
            throw std::invalid_argument("element " + e.str() + " out of range for prime " +
                                        p.str());
        }
    }
    std::vector<FieldElement> secret_xs;
    const std::optional<std::vector<Int>> raw_xs = draw_coordinates(params, rng, secret_xs);

    const std::size_t k = params.k();
    const std::size_t block_count = (elements.size() + k - 1) / k;
    std::vector<std::vector<Share>> per_block;
    per_block.reserve(block_count);
    for (std::size_t b = 0; b < block_count; ++b) {
        std::vector<FieldElement> secrets;
        secrets.reserve(k);
        for (std::size_t e = 0; e < k; ++e) {
            const std::size_t i = b * k + e;
            secrets.emplace_back(i < elements.size() ? elements[i] : Int(0), params.prime());
        }
        per_block.push_back(split_block(SecretBlock(std::move(secrets)), params, secret_xs));
    }

    SplitResult result;
    result.documents = assemble_documents(per_block, params, raw_xs, elements.size());
    if (raw_xs.has_value()) {
        result.secret_xs = *raw_xs;
    }
    return result;
}

std::vector<std::uint8_t> combine_stream(const std::vector<ShareDocument>& documents,
                                         bool verify) {
    check_documents_match(documents);
    const ShareDocument& first = documents.front();
    const ChunkingSpec spec = ChunkingSpec::make(first.prime(), first.k());
    if (first.payload().size() !=
        payload_elements_for_stream(first.plaintext_length(), spec)) {
        throw InconsistencyError("payload count does not match a byte-stream plaintext");
    }
    return decode_stream(reconstruct_blocks(documents, verify), first.plaintext_length(), spec);
}

std::vector<Int> combine_elements(const std::vector<ShareDocument>& documents, bool verify) {
    check_documents_match(documents);
    const ShareDocument& first = documents.front();
    if (first.payload().size() !=
        payload_elements_for_raw(first.plaintext_length(), first.k())) {
        throw InconsistencyError("payload count does not match a raw-element plaintext");
    }

    std::vector<Int> elements;
    elements.reserve(first.plaintext_length());
    for (const SecretBlock& block : reconstruct_blocks(documents, verify)) {
        for (const FieldElement& secret : block.secrets()) {
            if (elements.size() >= first.plaintext_length()) {
                break;
            }
            elements.push_back(secret.value());
        }
    }
    return elements;
}

namespace {

std::size_t minimal_len(const Int& v) {
    std::size_t len = 0;
    Int rest = v;
    while (rest > 0) {
        ++len;
        rest >>= 8;
    }
    return len;
}

// magic + version + k + n + (len,x) + (len,p) + layout + [secret_xs] + length
std::uint64_t header_bytes(const ShareParams& params, const Int& x) {
    std::uint64_t size = 4 + 1 + 2 + 2;
    size += 2 + minimal_len(x);
    size += 2 + minimal_len(params.prime()->value());
    size += 1;
    if (!params.is_sequential()) {
        size += std::uint64_t(params.k()) * params.prime()->width_bytes();
    }
    size += 8;
    return size;
}

}  // namespace

StorageReport compute_storage_report(const ShareParams& params, std::uint64_t length) {
    if (length < 1) {
        throw std::invalid_argument("input length must be >= 1");
    }
    const ChunkingSpec spec = ChunkingSpec::make(params.prime(), params.k());

    StorageReport report;
    report.length = length;
    report.chunk_bytes = spec.chunk_bytes;
    report.element_bytes = params.prime()->width_bytes();
    report.elements = (length + spec.chunk_bytes - 1) / spec.chunk_bytes;
    report.blocks = payload_elements_for_stream(length, spec);
    report.per_share_payload_bytes = report.blocks * report.element_bytes;
    report.total_payload_bytes = report.per_share_payload_bytes * params.n();
    for (std::size_t j = 0; j < params.n(); ++j) {
        report.header_bytes_total += header_bytes(params, params.share_x(j));
    }
    report.total_file_bytes = report.total_payload_bytes + report.header_bytes_total;

    const double element_form_bytes =
        static_cast<double>(report.elements) * static_cast<double>(report.element_bytes);
    report.payload_ratio = static_cast<double>(report.total_payload_bytes) / element_form_bytes;
    report.file_ratio = static_cast<double>(report.total_file_bytes) / element_form_bytes;
    report.raw_byte_ratio =
        static_cast<double>(report.total_payload_bytes) / static_cast<double>(length);
    report.ideal_ratio = static_cast<double>(params.n()) / static_cast<double>(params.k());

    report.shamir_total_payload_bytes =
        report.elements * params.n() * report.element_bytes;
    report.shamir_ratio = static_cast<double>(params.n());
    return report;
}

}  // namespace sess
