#pragma once

#include "cedec/tanner.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cedec {

enum class DecoderVariant {
    vanilla,  ///< plain sum-product BP, no weights
    ff,       ///< one weight per (edge, edge) pair at each variable, per odd layer
    cyclic,   ///< weights shared across all cyclic shifts of a variable's neighborhood
};

std::string_view to_string(DecoderVariant v) noexcept;
DecoderVariant parse_decoder_variant(std::string_view text);

/// Trainable parameters of a weighted BP decoder with t iterations.
///
/// Each odd layer stores, per variable j of degree d, a d x d block W where
/// W[from * d + to] with from != to is the weight on the incoming message at
/// position `from` when computing the outgoing message at position `to`, and
/// the diagonal W[b * d + b] is the weight on the channel LLR for position b.
/// After the t layer blocks come the output weights, one per variable-edge
/// position.
///
/// The cyclic variant stores a single u x u block per layer and u output
/// weights, shared by every variable, for u^2 t + u parameters in total. The
/// ff variant stores a separate block per variable and one output weight per
/// edge.
class WeightBank {
public:
    WeightBank() = default;

    static WeightBank cyclic(std::size_t u, int t, double init = 1.0);
    static WeightBank feed_forward(std::vector<std::size_t> degrees, int t, double init = 1.0);
    /// All-ones bank shaped for `graph`. Throws std::invalid_argument for
    /// vanilla, or for cyclic on a non-cyclic graph.
    static WeightBank ones_for(const TannerGraph& graph, DecoderVariant variant, int t);

    DecoderVariant variant() const noexcept { return variant_; }
    int iterations() const noexcept { return t_; }
    /// Shared block size for the cyclic variant; 0 for ff.
    std::size_t u() const noexcept { return u_; }
    /// Per-variable degrees for ff; empty for cyclic.
    std::span<const std::size_t> degrees() const noexcept { return degrees_; }

    std::size_t layer_size() const noexcept { return layer_size_; }
    std::size_t output_size() const noexcept { return params_.size() - layer_size_ * static_cast<std::size_t>(t_); }
    std::size_t parameter_count() const noexcept { return params_.size(); }

    std::span<double> layer(int s) noexcept { return {params_.data() + layer_size_ * static_cast<std::size_t>(s), layer_size_}; }
    std::span<const double> layer(int s) const noexcept {
        return {params_.data() + layer_size_ * static_cast<std::size_t>(s), layer_size_};
    }
    std::span<double> output() noexcept { return std::span<double>(params_).subspan(layer_size_ * static_cast<std::size_t>(t_)); }
    std::span<const double> output() const noexcept {
        return std::span<const double>(params_).subspan(layer_size_ * static_cast<std::size_t>(t_));
    }
    std::span<double> params() noexcept { return params_; }
    std::span<const double> params() const noexcept { return params_; }

    /// Offset of variable j's block within a layer.
    std::size_t block_offset(std::size_t j) const noexcept { return u_ ? 0 : block_offsets_[j]; }
    /// Offset of variable j's first output weight.
    std::size_t output_offset(std::size_t j) const noexcept { return u_ ? 0 : output_offsets_[j]; }

    /// Shape agreement with a graph (same degrees, cyclic structure when required).
    bool matches(const TannerGraph& graph) const noexcept;
    /// Throws std::invalid_argument describing the mismatch.
    void require_match(const TannerGraph& graph) const;

    /// Same shape, every parameter set to `value`.
    WeightBank filled(double value) const;

    friend bool operator==(const WeightBank&, const WeightBank&) = default;

private:
    void build_offsets();

    DecoderVariant variant_ = DecoderVariant::cyclic;
    int t_ = 0;
    std::size_t u_ = 0;
    std::vector<std::size_t> degrees_;
    std::size_t layer_size_ = 0;
    std::vector<std::size_t> block_offsets_;
    std::vector<std::size_t> output_offsets_;
    std::vector<double> params_;
};

}  // namespace cedec
