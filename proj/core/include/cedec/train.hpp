#pragma once

#include "cedec/codes.hpp"
#include "cedec/decoder.hpp"
#include "cedec/tanner.hpp"
#include "cedec/weights.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace cedec {

/// Mean over bits of BCE(sigmoid(-o_j), target_j), where sigmoid(-o_j) is the
/// decoder's probability that bit j is 1. Computed as a softplus, so it stays
/// finite for any finite o.
double bce_loss(std::span<const double> output, std::span<const std::uint8_t> target);
/// d bce_loss / d o.
std::vector<double> bce_loss_gradient(std::span<const double> output, std::span<const std::uint8_t> target);

struct LossGradient {
    double loss = 0.0;
    WeightBank gradient;
};

/// Loss of one decode and its exact gradient with respect to every weight.
LossGradient backward(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr,
                      std::span<const std::uint8_t> target);

struct TrainConfig {
    std::size_t samples_per_snr = 20;
    std::vector<double> snr_grid_db = {1, 2, 3, 4, 5, 6, 7, 8};
    int iterations = 5;
    double step_size = 1e-3;
    int steps = 2000;
    std::uint64_t seed = 1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;

    std::size_t batch_size() const noexcept { return samples_per_snr * snr_grid_db.size(); }
};

class Adam {
public:
    Adam(std::size_t size, double step_size, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);
    void step(std::span<double> params, std::span<const double> gradient);
    long long steps_taken() const noexcept { return t_; }

private:
    double lr_, beta1_, beta2_, eps_;
    long long t_ = 0;
    std::vector<double> m_, v_;
};

class TrainingDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrainResult {
    WeightBank weights;
    std::vector<double> loss_trace;  ///< mean batch loss before each step
};

using TrainProgress = std::function<void(int step, double loss)>;

/// Trains a ff or cyclic bank on AWGN corruptions of the all-zero codeword.
/// Weights start at 1 (vanilla BP). Deterministic for a fixed config.seed.
TrainResult train(const CyclicCode& code, const TannerGraph& graph, DecoderVariant variant, const TrainConfig& config,
                  const TrainProgress& progress = {});

/// CSV with header "step,loss".
void write_loss_csv(std::ostream& os, std::span<const double> trace);

}  // namespace cedec
