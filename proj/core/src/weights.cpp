#include "cedec/weights.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cedec {

std::string_view to_string(DecoderVariant v) noexcept {
    switch (v) {
        case DecoderVariant::vanilla: return "vanilla";
        case DecoderVariant::ff: return "ff";
        case DecoderVariant::cyclic: return "cyclic";
    }
    return "?";
}

DecoderVariant parse_decoder_variant(std::string_view text) {
    if (text == "vanilla" || text == "bp") return DecoderVariant::vanilla;
    if (text == "ff") return DecoderVariant::ff;
    if (text == "cyclic") return DecoderVariant::cyclic;
    throw std::invalid_argument("unknown decoder variant '" + std::string(text) + "'");
}

WeightBank WeightBank::cyclic(std::size_t u, int t, double init) {
    if (u == 0 || t < 1) throw std::invalid_argument("WeightBank::cyclic: need u >= 1 and t >= 1");
    WeightBank bank;
    bank.variant_ = DecoderVariant::cyclic;
    bank.t_ = t;
    bank.u_ = u;
    bank.build_offsets();
    bank.params_.assign(bank.layer_size_ * static_cast<std::size_t>(t) + u, init);
    return bank;
}

WeightBank WeightBank::feed_forward(std::vector<std::size_t> degrees, int t, double init) {
    if (degrees.empty() || t < 1) throw std::invalid_argument("WeightBank::feed_forward: need degrees and t >= 1");
    if (std::find(degrees.begin(), degrees.end(), std::size_t{0}) != degrees.end())
        throw std::invalid_argument("WeightBank::feed_forward: zero-degree variable");
    WeightBank bank;
    bank.variant_ = DecoderVariant::ff;
    bank.t_ = t;
    bank.degrees_ = std::move(degrees);
    bank.build_offsets();
    bank.params_.assign(bank.layer_size_ * static_cast<std::size_t>(t) + bank.output_offsets_.back(), init);
    return bank;
}

WeightBank WeightBank::ones_for(const TannerGraph& graph, DecoderVariant variant, int t) {
    switch (variant) {
        case DecoderVariant::cyclic:
            if (!graph.is_cyclic())
                throw std::invalid_argument("cyclic weight sharing requires an n x n cyclic parity matrix");
            return cyclic(graph.column_weight(), t);
        case DecoderVariant::ff: {
            std::vector<std::size_t> deg(graph.n_vars());
            for (std::size_t j = 0; j < deg.size(); ++j) deg[j] = graph.var_degree(j);
            return feed_forward(std::move(deg), t);
        }
        case DecoderVariant::vanilla: break;
    }
    throw std::invalid_argument("vanilla BP has no weights");
}

void WeightBank::build_offsets() {
    if (u_) {
        layer_size_ = u_ * u_;
        return;
    }
    block_offsets_.assign(1, 0);
    output_offsets_.assign(1, 0);
    for (auto d : degrees_) {
        block_offsets_.push_back(block_offsets_.back() + d * d);
        output_offsets_.push_back(output_offsets_.back() + d);
    }
    layer_size_ = block_offsets_.back();
}

bool WeightBank::matches(const TannerGraph& graph) const noexcept {
    if (t_ < 1) return false;
    if (variant_ == DecoderVariant::cyclic) return graph.is_cyclic() && graph.column_weight() == u_;
    if (degrees_.size() != graph.n_vars()) return false;
    for (std::size_t j = 0; j < degrees_.size(); ++j)
        if (degrees_[j] != graph.var_degree(j)) return false;
    return true;
}

void WeightBank::require_match(const TannerGraph& graph) const {
    if (matches(graph)) return;
    if (variant_ == DecoderVariant::cyclic) {
        if (!graph.is_cyclic()) throw std::invalid_argument("weight shape mismatch: cyclic weights need a cyclic parity matrix");
        throw std::invalid_argument("weight shape mismatch: bank has u=" + std::to_string(u_) +
                                    ", graph has column weight " + std::to_string(graph.column_weight()));
    }
    throw std::invalid_argument("weight shape mismatch: ff bank degrees do not match the parity matrix");
}

WeightBank WeightBank::filled(double value) const {
    WeightBank out = *this;
    std::fill(out.params_.begin(), out.params_.end(), value);
    return out;
}

}  // namespace cedec
