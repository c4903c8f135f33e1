#include "cedec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cedec {

double snr_to_sigma(double snr_db, double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("snr_to_sigma: rate must be positive");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
    engine_.seed(seq);
}

ChannelSample sample(std::span<const std::uint8_t> codeword, double rate, double snr_db, RngStream& rng) {
    const double sigma = snr_to_sigma(snr_db, rate);
    const double scale = 2.0 / (sigma * sigma);
    ChannelSample s;
    s.snr_db = snr_db;
    s.codeword.assign(codeword.begin(), codeword.end());
    s.symbols.resize(codeword.size());
    s.received.resize(codeword.size());
    s.llr.resize(codeword.size());
    for (std::size_t j = 0; j < codeword.size(); ++j) {
        s.symbols[j] = codeword[j] ? -1.0 : 1.0;
        s.received[j] = s.symbols[j] + sigma * rng.normal();
        s.llr[j] = scale * s.received[j];
    }
    return s;
}

void sample_llr(std::span<const std::uint8_t> codeword, double sigma, RngStream& rng, std::span<double> llr_out) {
    const double scale = 2.0 / (sigma * sigma);
    for (std::size_t j = 0; j < codeword.size(); ++j)
        llr_out[j] = scale * ((codeword[j] ? -1.0 : 1.0) + sigma * rng.normal());
}

}  // namespace cedec
