#include "cedec/harness.hpp"

#include "cedec/channel.hpp"
#include "cedec/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace cedec {

namespace {

constexpr std::size_t kFramesPerChunk = 500;

std::uint64_t stream_id(std::size_t snr_index, std::size_t chunk) {
    return (static_cast<std::uint64_t>(snr_index) << 32) | static_cast<std::uint64_t>(chunk);
}

/// Draws the transmitted word and its LLRs from one stream.
void draw_frame(const CyclicCode& code, bool random_codeword, double sigma, RngStream& rng, Bits& word,
                Bits& message, std::vector<double>& llr) {
    if (random_codeword) {
        for (auto& b : message) b = rng.bit();
        word = code.encode(message);
    } else {
        std::fill(word.begin(), word.end(), std::uint8_t{0});
    }
    sample_llr(word, sigma, rng, llr);
}

struct ChunkCounts {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
};

std::string format_double(const char* fmt, double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

void ExperimentConfig::validate() const {
    try {
        (void)CyclicCode::from_id(code_id);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto code = CyclicCode::from_id(code_id);
    if (iterations < 1) throw ConfigError("t must be >= 1");
    if (boosts < 0) throw ConfigError("B must be >= 0");
    if (samples < 1) throw ConfigError("sample count must be >= 1");
    if (list_size < 1 || list_size > code.n() + 1)
        throw ConfigError("list size must be in [1, " + std::to_string(code.n() + 1) + "]");
    if (snr_grid_db.empty()) throw ConfigError("empty SNR grid");
    if (decoder == DecoderVariant::cyclic && matrix != MatrixKind::cyclic)
        throw ConfigError("the cyclic decoder runs on the cyclic matrix only");
}

double SnrPoint::ber() const noexcept {
    const double bits = static_cast<double>(samples) * static_cast<double>(n);
    return bits > 0 ? static_cast<double>(bit_errors) / bits : 0.0;
}

double SnrPoint::fer() const noexcept {
    return samples > 0 ? static_cast<double>(frame_errors) / static_cast<double>(samples) : 0.0;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Decoder make_decoder(const CyclicCode& code, MatrixKind kind, std::uint64_t matrix_seed, int iterations,
                     const WeightBank* weights) {
    auto graph = std::make_shared<const TannerGraph>(select_parity_matrix(code, kind, matrix_seed));
    if (!weights) return Decoder::vanilla(std::move(graph), iterations);
    return Decoder::neural(std::move(graph), *weights);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.decoder == DecoderVariant::vanilla) return run_experiment(config, nullptr);
    if (config.weights_path.empty()) throw ConfigError("a weight file is required for the " +
                                                       std::string(to_string(config.decoder)) + " decoder");
    const auto code = CyclicCode::from_id(config.code_id);
    const TannerGraph graph(select_parity_matrix(code, config.matrix, config.matrix_seed));
    const auto file = load_weights_for(config.weights_path, code, graph);
    if (file.weights.variant() != config.decoder)
        throw DataError("weight file holds a " + std::string(to_string(file.weights.variant())) + " bank, config asks for " +
                        std::string(to_string(config.decoder)));
    return run_experiment(config, &file.weights);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const WeightBank* weights) {
    if (config.list_size > 1) {
        const std::size_t sizes[] = {config.list_size};
        return run_list_experiment(config, sizes, weights).front();
    }
    config.validate();
    const auto code = CyclicCode::from_id(config.code_id);
    const WeightBank* bank = config.decoder == DecoderVariant::vanilla ? nullptr : weights;
    if (config.decoder != DecoderVariant::vanilla && !bank) throw ConfigError("missing weights for a weighted decoder");
    Decoder decoder = [&] {
        try {
            return make_decoder(code, config.matrix, config.matrix_seed, config.iterations, bank);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
    }();

    ExperimentResult result{code.id(), config.decoder, config.matrix, decoder.iterations(), config.boosts, 1, {}};
    const std::size_t n = code.n();
    const std::size_t chunks = (config.samples + kFramesPerChunk - 1) / kFramesPerChunk;

    for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
        const auto start = std::chrono::steady_clock::now();
        const double sigma = snr_to_sigma(config.snr_grid_db[s], code.rate());
        std::vector<ChunkCounts> counts(chunks);
        parallel_for(chunks, [&](std::size_t c) {
            RngStream rng(config.seed, stream_id(s, c));
            Bits word(n), message(code.k());
            std::vector<double> llr(n);
            const std::size_t frames = std::min(kFramesPerChunk, config.samples - c * kFramesPerChunk);
            for (std::size_t f = 0; f < frames; ++f) {
                draw_frame(code, config.random_codewords, sigma, rng, word, message, llr);
                const auto bits = hard_decision(boost(decoder, llr, config.boosts));
                std::uint64_t errs = 0;
                for (std::size_t j = 0; j < n; ++j) errs += bits[j] != word[j];
                counts[c].bit_errors += errs;
                counts[c].frame_errors += errs > 0;
            }
        });
        SnrPoint point{config.snr_grid_db[s], config.samples, n, 0, 0, 0.0};
        for (const auto& c : counts) {
            point.bit_errors += c.bit_errors;
            point.frame_errors += c.frame_errors;
        }
        if (config.record_time)
            point.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        result.points.push_back(point);
    }
    return result;
}

std::vector<ExperimentResult> run_list_experiment(const ExperimentConfig& config, std::span<const std::size_t> list_sizes,
                                                  const WeightBank* weights) {
    config.validate();
    const auto code = CyclicCode::from_id(config.code_id);
    if (list_sizes.empty()) throw ConfigError("no list sizes given");
    std::size_t max_ell = 0;
    for (auto l : list_sizes) {
        if (l < 1 || l > code.n() + 1)
            throw ConfigError("list size must be in [1, " + std::to_string(code.n() + 1) + "]");
        max_ell = std::max(max_ell, l);
    }
    const WeightBank* bank = config.decoder == DecoderVariant::vanilla ? nullptr : weights;
    if (config.decoder != DecoderVariant::vanilla && !bank) throw ConfigError("missing weights for a weighted decoder");
    Decoder decoder = [&] {
        try {
            return make_decoder(code, config.matrix, config.matrix_seed, config.iterations, bank);
        } catch (const std::invalid_argument& e) {
            throw DataError(e.what());
        }
    }();
    const auto perms = build_affine_set(GaloisField(code.m()));
    const LlrDecoder branch = [&](std::span<const double> l) { return boost(decoder, l, config.boosts); };

    std::vector<ExperimentResult> results;
    for (auto l : list_sizes)
        results.push_back({code.id(), config.decoder, config.matrix, decoder.iterations(), config.boosts, l, {}});

    const std::size_t n = code.n();
    const std::size_t chunks = (config.samples + kFramesPerChunk - 1) / kFramesPerChunk;
    for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
        const auto start = std::chrono::steady_clock::now();
        const double sigma = snr_to_sigma(config.snr_grid_db[s], code.rate());
        std::vector<std::vector<ChunkCounts>> counts(chunks, std::vector<ChunkCounts>(list_sizes.size()));
        parallel_for(chunks, [&](std::size_t c) {
            RngStream rng(config.seed, stream_id(s, c));
            Bits word(n), message(code.k());
            std::vector<double> llr(n);
            const std::size_t frames = std::min(kFramesPerChunk, config.samples - c * kFramesPerChunk);
            for (std::size_t f = 0; f < frames; ++f) {
                draw_frame(code, config.random_codewords, sigma, rng, word, message, llr);
                const auto decisions = list_decode_prefixes(code, perms, llr, max_ell, branch, config.failed_branch);
                for (std::size_t li = 0; li < list_sizes.size(); ++li) {
                    const auto& bits = decisions[list_sizes[li] - 1];
                    std::uint64_t errs = 0;
                    for (std::size_t j = 0; j < n; ++j) errs += bits[j] != word[j];
                    counts[c][li].bit_errors += errs;
                    counts[c][li].frame_errors += errs > 0;
                }
            }
        });
        const double seconds =
            config.record_time ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
        for (std::size_t li = 0; li < list_sizes.size(); ++li) {
            SnrPoint point{config.snr_grid_db[s], config.samples, n, 0, 0, seconds};
            for (std::size_t c = 0; c < chunks; ++c) {
                point.bit_errors += counts[c][li].bit_errors;
                point.frame_errors += counts[c][li].frame_errors;
            }
            results[li].points.push_back(point);
        }
    }
    return results;
}

void write_csv(std::ostream& os, std::span<const ExperimentResult> results) {
    os << kCsvHeader << '\n';
    for (const auto& r : results) {
        for (const auto& p : r.points) {
            const double ber = p.ber();
            const double fer = p.fer();
            const auto ci = r.list_size > 1
                                ? wilson_interval(p.frame_errors, p.samples)
                                : wilson_interval(p.bit_errors, static_cast<std::uint64_t>(p.samples) * p.n);
            os << csv_field(r.code_id) << ',' << to_string(r.decoder) << ',' << to_string(r.matrix) << ',' << r.iterations << ','
               << r.boosts << ',' << r.list_size << ',' << format_double("%g", p.snr_db) << ',' << p.samples << ','
               << p.bit_errors << ',' << p.frame_errors << ',' << format_double("%.6e", ber) << ','
               << format_double("%.6e", fer) << ',' << format_double("%.4f", -std::log(ber)) << ','
               << format_double("%.4f", -std::log(fer)) << ',' << format_double("%.6e", ci.lo) << ','
               << format_double("%.6e", ci.hi) << ',' << format_double("%.3f", p.seconds) << '\n';
        }
    }
}

}  // namespace cedec
