#pragma once

#include "cedec/bit_matrix.hpp"
#include "cedec/tanner.hpp"
#include "cedec/weights.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cedec {

/// Numerical guards. The channel LLR is clipped on entry to every decode,
/// check-node products are clipped away from +-1 before atanh, and the
/// variable-node tanh argument is clamped so messages stay strictly inside
/// (-1, 1). Derivatives are zero wherever a guard is active.
inline constexpr double kLlrClip = 20.0;
inline constexpr double kProductEpsilon = 1e-7;
inline constexpr double kTanhArgClamp = 18.0;

double clip_llr(double l) noexcept;
/// tanh(z / 2) with the argument clamp.
double variable_activation(double z) noexcept;
/// 2 atanh(p) with p clipped to [-1 + eps, 1 - eps].
double check_activation(double p) noexcept;

/// Unrolled sum-product BP with t iterations on the graph; returns the
/// output LLRs o_j = L_j + sum of the last check-to-variable messages.
std::vector<double> bp_decode(const TannerGraph& graph, std::span<const double> llr, int t);

/// Weighted BP (ff or cyclic bank). Odd layers are weighted, even layers are
/// plain check updates, output o_j = L_j + sum_b w_out[b] x(e_b).
/// Throws std::invalid_argument on a shape mismatch.
std::vector<double> neural_bp_decode(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr);

/// Per-edge messages of every layer, kept for the backward pass.
struct ForwardTrace {
    std::vector<double> llr;                   ///< clipped input
    std::vector<std::vector<double>> layers;   ///< x^[0] ... x^[2t]
    std::vector<double> output;
};

/// neural_bp_decode that also records the trace.
std::vector<double> neural_bp_forward(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr,
                                      ForwardTrace& trace);

/// Reverse-mode pass: given dLoss/do for the trace's output, returns dLoss/dw
/// shaped like `weights`, with shared weights summing over all positions.
WeightBank neural_bp_backward(const TannerGraph& graph, const WeightBank& weights, const ForwardTrace& trace,
                              std::span<const double> output_gradient);

/// bit_j = 1 iff o_j < 0; ties decode to 0.
Bits hard_decision(std::span<const double> o);

/// A configured decoder: vanilla BP or a weighted bank over a shared graph.
class Decoder {
public:
    static Decoder vanilla(std::shared_ptr<const TannerGraph> graph, int t);
    static Decoder neural(std::shared_ptr<const TannerGraph> graph, WeightBank weights);

    /// One pass.
    std::vector<double> operator()(std::span<const double> llr) const;
    const TannerGraph& graph() const noexcept { return *graph_; }
    DecoderVariant variant() const noexcept { return weights_ ? weights_->variant() : DecoderVariant::vanilla; }
    int iterations() const noexcept { return t_; }
    const WeightBank* weights() const noexcept { return weights_ ? &*weights_ : nullptr; }

private:
    Decoder(std::shared_ptr<const TannerGraph> graph, int t, std::optional<WeightBank> weights);

    std::shared_ptr<const TannerGraph> graph_;
    int t_;
    std::optional<WeightBank> weights_;
};

/// Runs `decoder` boosts + 1 times, feeding each output back in as the input LLRs.
std::vector<double> boost(const Decoder& decoder, std::span<const double> llr, int boosts);
std::vector<double> boost(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr, int boosts);

}  // namespace cedec
