#include "sess/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

#include "sess/codec.hpp"
#include "sess/driver.hpp"
#include "sess/field.hpp"
#include "sess/rng.hpp"
#include "sess/sss.hpp"

namespace fs = std::filesystem;

namespace sess {

namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return data;
}

// Write to a sibling temp file and rename into place, so an error never
// leaves a half-written output behind.
void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> data) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size()));
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " into place");
    }
}

std::vector<Int> parse_elements(const std::vector<std::uint8_t>& data) {
    std::string text(data.begin(), data.end());
    for (char& c : text) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::vector<Int> elements;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        try {
            elements.emplace_back(token);
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("not a decimal element: '" + token + "'");
        }
    }
    return elements;
}

std::string render_elements(const std::vector<Int>& elements) {
    std::string out;
    for (const Int& e : elements) {
        out += e.str();
        out += '\n';
    }
    return out;
}

struct SplitOptions {
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    std::string prime;
    std::string layout = "sequential";
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string input;
    bool raw_elements = false;
};

struct CombineOptions {
    bool verify = false;
    bool raw_elements = false;
    std::string output;
    std::vector<std::string> shares;
};

struct InspectOptions {
    bool dump = false;
    std::string share;
};

struct StatsOptions {
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    std::string prime;
    std::optional<std::uint64_t> length;
    std::string input;
};

ShareParams make_params(std::uint32_t k, std::uint32_t n, const std::string& prime_arg,
                        const std::string& layout) {
    PrimePtr prime = validate_prime(resolve_prime_argument(prime_arg));
    if (layout == "sequential") {
        return ShareParams::sequential(k, n, std::move(prime));
    }
    if (layout == "random-points") {
        // Shares at x = k..k+n-1 as in the sequential layout; only the secret
        // coordinates are randomized.
        std::vector<Int> share_xs;
        share_xs.reserve(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            share_xs.emplace_back(Int(k) + j);
        }
        return ShareParams::explicit_points(k, n, std::move(prime), std::move(share_xs));
    }
    throw std::invalid_argument("unknown layout '" + layout + "'");
}

int cmd_split(const SplitOptions& opt) {
    const ShareParams params = make_params(opt.k, opt.n, opt.prime, opt.layout);

    std::unique_ptr<Rng> rng;
    if (opt.seed.has_value()) {
        rng = std::make_unique<SeededRng>(*opt.seed);
    } else {
        rng = std::make_unique<SystemRng>();
    }

    const fs::path input(opt.input);
    const std::vector<std::uint8_t> data = read_file(input);

    SplitResult result;
    if (opt.raw_elements) {
        result = split_elements(parse_elements(data), params, rng.get());
    } else {
        result = split_stream(data, params, rng.get());
    }

    const fs::path out_dir(opt.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string());
    }

    const std::string stem = input.stem().string();
    for (const ShareDocument& doc : result.documents) {
        const fs::path path = out_dir / (stem + ".s" + doc.x().str() + ".share");
        const std::vector<std::uint8_t> bytes = write_share(doc);
        write_file_atomic(path, bytes);
        std::cout << path.string() << ": x=" << doc.x().str() << " bytes=" << bytes.size()
                  << "\n";
    }
    return 0;
}

int cmd_combine(const CombineOptions& opt) {
    std::vector<ShareDocument> documents;
    documents.reserve(opt.shares.size());
    for (const std::string& path : opt.shares) {
        documents.push_back(read_share(read_file(path)));
    }

    std::vector<std::uint8_t> output;
    if (opt.raw_elements) {
        const std::string text = render_elements(combine_elements(documents, opt.verify));
        output.assign(text.begin(), text.end());
    } else {
        output = combine_stream(documents, opt.verify);
    }
    write_file_atomic(opt.output, output);
    std::cout << opt.output << ": " << output.size() << " bytes from " << documents.size()
              << " shares\n";
    return 0;
}

int cmd_inspect(const InspectOptions& opt) {
    const ShareDocument doc = read_share(read_file(opt.share));
    std::cout << "k=" << doc.k() << " n=" << doc.n() << " p=" << doc.prime()->value().str()
              << " layout=" << (doc.is_sequential() ? "sequential" : "explicit")
              << " x=" << doc.x().str() << " blocks=" << doc.payload().size()
              << " length=" << doc.plaintext_length();
    if (!doc.is_sequential()) {
        std::cout << " secret-xs=";
        const std::vector<Int>& xs = *doc.secret_xs();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::cout << (i ? "," : "") << xs[i].str();
        }
    }
    std::cout << "\n";
    if (opt.dump) {
        std::cout << "payload=";
        for (std::size_t i = 0; i < doc.payload().size(); ++i) {
            std::cout << (i ? "," : "") << doc.payload()[i].str();
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_stats(const StatsOptions& opt) {
    const ShareParams params = make_params(opt.k, opt.n, opt.prime, "sequential");
    std::uint64_t length = 0;
    if (opt.length.has_value()) {
        length = *opt.length;
    } else if (!opt.input.empty()) {
        std::error_code ec;
        const auto size = fs::file_size(opt.input, ec);
        if (ec) {
            throw IoError("cannot stat " + opt.input);
        }
        length = size;
    } else {
        throw std::invalid_argument("stats needs --length or an input file");
    }

    const StorageReport r = compute_storage_report(params, length);
    std::cout << "algorithm-a: k=" << params.k() << " n=" << params.n()
              << " p=" << params.prime()->value().str()
              << " bits=" << params.prime()->width_bits() << " length=" << r.length << "\n";
    std::cout << "  chunk-bytes=" << r.chunk_bytes << " element-bytes=" << r.element_bytes
              << " elements=" << r.elements << " blocks=" << r.blocks << "\n";
    std::cout << "  per-share-payload-bytes=" << r.per_share_payload_bytes
              << " total-payload-bytes=" << r.total_payload_bytes
              << " header-bytes-total=" << r.header_bytes_total
              << " total-file-bytes=" << r.total_file_bytes << "\n";
    char line[256];
    std::snprintf(line, sizeof(line),
                  "  payload-ratio=%.6f file-ratio=%.6f raw-byte-ratio=%.6f ideal=%.6f\n",
                  r.payload_ratio, r.file_ratio, r.raw_byte_ratio, r.ideal_ratio);
    std::cout << line;
    std::cout << "shamir-baseline: total-payload-bytes=" << r.shamir_total_payload_bytes;
    std::snprintf(line, sizeof(line), " payload-ratio=%.6f\n", r.shamir_ratio);
    std::cout << line;
    return 0;
}

}  // namespace

Int resolve_prime_argument(const std::string& arg) {
    if (arg == "m61") {
        return (Int(1) << 61) - 1;
    }
    if (arg == "p257") {
        return 257;
    }
    if (arg == "p31") {
        return 31;
    }
    if (arg.empty() || !std::all_of(arg.begin(), arg.end(),
                                    [](unsigned char c) { return std::isdigit(c); })) {
        throw std::invalid_argument("prime must be m61, p257, p31 or a decimal literal, got '" +
                                    arg + "'");
    }
    return Int(arg);
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"space-efficient secret sharing over Z_p"};
    app.require_subcommand(1);

    SplitOptions split_opt;
    CLI::App* split = app.add_subcommand("split", "split a file into n share files");
    split->add_option("--k", split_opt.k, "threshold (secrets per block)")->required();
    split->add_option("--n", split_opt.n, "number of shares")->required();
    split->add_option("--prime", split_opt.prime, "m61, p257, p31 or a decimal prime")
        ->required();
    split->add_option("--layout", split_opt.layout, "sequential or random-points")
        ->check(CLI::IsMember({"sequential", "random-points"}));
    split->add_option("--seed", split_opt.seed, "seed the rng (reproducible runs)");
    split->add_option("--out-dir", split_opt.out_dir, "output directory")->required();
    split->add_flag("--raw-elements", split_opt.raw_elements,
                    "input holds decimal field elements, not bytes");
    split->add_option("input", split_opt.input, "input file")->required();

    CombineOptions combine_opt;
    CLI::App* combine = app.add_subcommand("combine", "recover the original file from shares");
    combine->add_flag("--verify", combine_opt.verify, "cross-check surplus shares");
    combine->add_flag("--raw-elements", combine_opt.raw_elements,
                      "write decimal field elements, not bytes");
    combine->add_option("--out", combine_opt.output, "output file")->required();
    combine->add_option("shares", combine_opt.shares, "share files")->required();

    InspectOptions inspect_opt;
    CLI::App* inspect = app.add_subcommand("inspect", "print a share file's header");
    inspect->add_flag("--dump", inspect_opt.dump, "also print payload values");
    inspect->add_option("share", inspect_opt.share, "share file")->required();

    StatsOptions stats_opt;
    CLI::App* stats = app.add_subcommand("stats", "storage-efficiency report");
    stats->add_option("--k", stats_opt.k, "threshold")->required();
    stats->add_option("--n", stats_opt.n, "number of shares")->required();
    stats->add_option("--prime", stats_opt.prime, "m61, p257, p31 or a decimal prime")
        ->required();
    stats->add_option("--length", stats_opt.length, "input length in bytes");
    stats->add_option("input", stats_opt.input, "measure this file's size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (split->parsed()) {
            return cmd_split(split_opt);
        }
        if (combine->parsed()) {
            return cmd_combine(combine_opt);
        }
        if (inspect->parsed()) {
            return cmd_inspect(inspect_opt);
        }
        return cmd_stats(stats_opt);
    } catch (const InsufficientSharesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ShareVerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sess
