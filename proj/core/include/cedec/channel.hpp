#pragma once

#include "cedec/bit_matrix.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cedec {

/// Noise standard deviation for BPSK at Eb/N0 = snr_db and code rate k/n:
/// sigma^2 = 1 / (2 * rate * 10^(snr_db / 10)).
double snr_to_sigma(double snr_db, double rate);

/// A reproducible random stream identified by (seed, stream id). Distinct ids
/// give independent mt19937_64 streams, so Monte-Carlo chunks can run in any
/// order or on any thread and still produce the same samples.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    double normal() { return normal_(engine_); }
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }
    std::uint64_t next() { return engine_(); }
    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct ChannelSample {
    Bits codeword;
    std::vector<double> symbols;   ///< 0 -> +1, 1 -> -1
    std::vector<double> received;  ///< symbols + sigma * N(0, 1)
    std::vector<double> llr;       ///< 2 y / sigma^2
    double snr_db = 0.0;
};

/// BPSK over AWGN at the given Eb/N0 and code rate.
ChannelSample sample(std::span<const std::uint8_t> codeword, double rate, double snr_db, RngStream& rng);

/// Only the LLRs, without the intermediate vectors.
void sample_llr(std::span<const std::uint8_t> codeword, double sigma, RngStream& rng, std::span<double> llr_out);

}  // namespace cedec
