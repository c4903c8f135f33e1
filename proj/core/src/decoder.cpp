#include "cedec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cedec {

double clip_llr(double l) noexcept { return std::clamp(l, -kLlrClip, kLlrClip); }

double variable_activation(double z) noexcept { return std::tanh(std::clamp(0.5 * z, -kTanhArgClamp, kTanhArgClamp)); }

double check_activation(double p) noexcept {
    return 2.0 * std::atanh(std::clamp(p, -1.0 + kProductEpsilon, 1.0 - kProductEpsilon));
}

namespace {

bool product_clipped(double p) noexcept { return p > 1.0 - kProductEpsilon || p < -1.0 + kProductEpsilon; }

void check_input_size(const TannerGraph& graph, std::span<const double> llr) {
    if (llr.size() != graph.n_vars())
        throw std::invalid_argument("decoder: expected " + std::to_string(graph.n_vars()) + " LLRs, got " +
                                    std::to_string(llr.size()));
}

std::vector<double> clipped(std::span<const double> llr) {
    std::vector<double> out(llr.size());
    std::transform(llr.begin(), llr.end(), out.begin(), clip_llr);
    return out;
}

/// Even layer: x(e) = 2 atanh(prod of the other incoming messages at the check),
/// using prefix/suffix products in canonical check order.
void check_layer(const TannerGraph& graph, std::span<const double> in, std::span<double> out,
                 std::vector<double>& prefix, std::vector<double>& suffix) {
    for (std::size_t i = 0; i < graph.n_checks(); ++i) {
        const auto es = graph.check_edges(i);
        const std::size_t d = es.size();
        prefix.resize(d + 1);
        suffix.resize(d + 1);
        prefix[0] = 1.0;
        for (std::size_t k = 0; k < d; ++k) prefix[k + 1] = prefix[k] * in[es[k]];
        suffix[d] = 1.0;
        for (std::size_t k = d; k-- > 0;) suffix[k] = suffix[k + 1] * in[es[k]];
        for (std::size_t k = 0; k < d; ++k) out[es[k]] = check_activation(prefix[k] * suffix[k + 1]);
    }
}

void check_layer_backward(const TannerGraph& graph, std::span<const double> in, std::span<const double> g_out,
                          std::span<double> g_in, std::vector<double>& prefix, std::vector<double>& suffix,
                          std::vector<double>& g_prefix, std::vector<double>& g_suffix) {
    std::fill(g_in.begin(), g_in.end(), 0.0);
    for (std::size_t i = 0; i < graph.n_checks(); ++i) {
        const auto es = graph.check_edges(i);
        const std::size_t d = es.size();
        prefix.resize(d + 1);
        suffix.resize(d + 1);
        g_prefix.assign(d + 1, 0.0);
        g_suffix.assign(d + 1, 0.0);
        prefix[0] = 1.0;
        for (std::size_t k = 0; k < d; ++k) prefix[k + 1] = prefix[k] * in[es[k]];
        suffix[d] = 1.0;
        for (std::size_t k = d; k-- > 0;) suffix[k] = suffix[k + 1] * in[es[k]];

        for (std::size_t k = 0; k < d; ++k) {
            const double p = prefix[k] * suffix[k + 1];
            if (product_clipped(p)) continue;
            const double gp = g_out[es[k]] * 2.0 / (1.0 - p * p);
            g_prefix[k] += gp * suffix[k + 1];
            g_suffix[k + 1] += gp * prefix[k];
        }
        for (std::size_t k = d; k-- > 0;) {
            g_in[es[k]] += g_prefix[k + 1] * prefix[k];
            g_prefix[k] += g_prefix[k + 1] * in[es[k]];
        }
        for (std::size_t k = 0; k < d; ++k) {
            g_in[es[k]] += g_suffix[k] * suffix[k + 1];
            g_suffix[k + 1] += g_suffix[k] * in[es[k]];
        }
    }
}

/// Odd layer of the weighted decoder. Sums start from the LLR term and visit
/// the other positions in canonical order.
void weighted_variable_layer(const TannerGraph& graph, std::span<const double> layer_weights,
                             const WeightBank& bank, std::span<const double> llr, std::span<const double> prev,
                             std::span<double> out) {
    for (std::size_t j = 0; j < graph.n_vars(); ++j) {
        const auto es = graph.var_edges(j);
        const std::size_t d = es.size();
        const double* W = layer_weights.data() + bank.block_offset(j);
        const double L = llr[j];
        for (std::size_t b = 0; b < d; ++b) {
            double z = W[b * d + b] * L;
            for (std::size_t bp = 0; bp < d; ++bp) {
                if (bp == b) continue;
                z += W[bp * d + b] * prev[es[bp]];
            }
            out[es[b]] = variable_activation(z);
        }
    }
}

}  // namespace

std::vector<double> bp_decode(const TannerGraph& graph, std::span<const double> llr_in, int t) {
    if (t < 1) throw std::invalid_argument("bp_decode: t must be >= 1");
    check_input_size(graph, llr_in);
    const auto llr = clipped(llr_in);
    const std::size_t E = graph.n_edges();
    std::vector<double> prev(E, 0.0), cur(E, 0.0), prefix, suffix;

    for (int it = 0; it < t; ++it) {
        for (std::size_t j = 0; j < graph.n_vars(); ++j) {
            const auto es = graph.var_edges(j);
            for (std::size_t b = 0; b < es.size(); ++b) {
                double z = llr[j];
                for (std::size_t bp = 0; bp < es.size(); ++bp) {
                    if (bp == b) continue;
                    z += prev[es[bp]];
                }
                cur[es[b]] = variable_activation(z);
            }
        }
        check_layer(graph, cur, prev, prefix, suffix);
    }

    std::vector<double> o(graph.n_vars());
    for (std::size_t j = 0; j < graph.n_vars(); ++j) {
        double acc = llr[j];
        for (auto e : graph.var_edges(j)) acc += prev[e];
        o[j] = acc;
    }
    return o;
}

std::vector<double> neural_bp_forward(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr_in,
                                      ForwardTrace& trace) {
    weights.require_match(graph);
    check_input_size(graph, llr_in);
    const int t = weights.iterations();
    const std::size_t E = graph.n_edges();

    trace.llr = clipped(llr_in);
    trace.layers.assign(static_cast<std::size_t>(2 * t + 1), std::vector<double>(E, 0.0));
    std::vector<double> prefix, suffix;
    for (int s = 1; s <= 2 * t; ++s) {
        const auto& prev = trace.layers[static_cast<std::size_t>(s - 1)];
        auto& cur = trace.layers[static_cast<std::size_t>(s)];
        if (s % 2 == 1)
            weighted_variable_layer(graph, weights.layer((s - 1) / 2), weights, trace.llr, prev, cur);
        else
            check_layer(graph, prev, cur, prefix, suffix);
    }

    const auto& last = trace.layers.back();
    const auto wout = weights.output();
    trace.output.assign(graph.n_vars(), 0.0);
    for (std::size_t j = 0; j < graph.n_vars(); ++j) {
        const auto es = graph.var_edges(j);
        const double* w = wout.data() + weights.output_offset(j);
        double acc = trace.llr[j];
        for (std::size_t b = 0; b < es.size(); ++b) acc += w[b] * last[es[b]];
        trace.output[j] = acc;
    }
    return trace.output;
}

std::vector<double> neural_bp_decode(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr) {
    ForwardTrace trace;
    return neural_bp_forward(graph, weights, llr, trace);
}

WeightBank neural_bp_backward(const TannerGraph& graph, const WeightBank& weights, const ForwardTrace& trace,
                              std::span<const double> output_gradient) {
    weights.require_match(graph);
    const int t = weights.iterations();
    if (trace.layers.size() != static_cast<std::size_t>(2 * t + 1) || output_gradient.size() != graph.n_vars())
        throw std::invalid_argument("neural_bp_backward: trace does not match the weight bank");

    const std::size_t E = graph.n_edges();
    WeightBank grad = weights.filled(0.0);
    std::vector<double> g_x(E, 0.0), g_prev(E, 0.0);

    {
        const auto& last = trace.layers.back();
        const auto wout = weights.output();
        auto g_wout = grad.output();
        for (std::size_t j = 0; j < graph.n_vars(); ++j) {
            const auto es = graph.var_edges(j);
            const std::size_t off = weights.output_offset(j);
            for (std::size_t b = 0; b < es.size(); ++b) {
                g_wout[off + b] += output_gradient[j] * last[es[b]];
                g_x[es[b]] += output_gradient[j] * wout[off + b];
            }
        }
    }

    std::vector<double> prefix, suffix, g_prefix, g_suffix;
    for (int s = 2 * t; s >= 1; --s) {
        const auto& prev = trace.layers[static_cast<std::size_t>(s - 1)];
        if (s % 2 == 0) {
            check_layer_backward(graph, prev, g_x, g_prev, prefix, suffix, g_prefix, g_suffix);
        } else {
            const auto& cur = trace.layers[static_cast<std::size_t>(s)];
            const auto W = weights.layer((s - 1) / 2);
            auto gW = grad.layer((s - 1) / 2);
            std::fill(g_prev.begin(), g_prev.end(), 0.0);
            for (std::size_t j = 0; j < graph.n_vars(); ++j) {
                const auto es = graph.var_edges(j);
                const std::size_t d = es.size();
                const std::size_t off = weights.block_offset(j);
                const double L = trace.llr[j];
                for (std::size_t b = 0; b < d; ++b) {
                    double z = W[off + b * d + b] * L;
                    for (std::size_t bp = 0; bp < d; ++bp)
                        if (bp != b) z += W[off + bp * d + b] * prev[es[bp]];
                    if (std::abs(0.5 * z) >= kTanhArgClamp) continue;
                    const double x = cur[es[b]];
                    const double gz = g_x[es[b]] * 0.5 * (1.0 - x * x);
                    gW[off + b * d + b] += gz * L;
                    for (std::size_t bp = 0; bp < d; ++bp) {
                        if (bp == b) continue;
                        gW[off + bp * d + b] += gz * prev[es[bp]];
                        g_prev[es[bp]] += gz * W[off + bp * d + b];
                    }
                }
            }
        }
        std::swap(g_x, g_prev);
    }
    return grad;
}

Bits hard_decision(std::span<const double> o) {
    Bits bits(o.size());
    std::transform(o.begin(), o.end(), bits.begin(), [](double v) { return static_cast<std::uint8_t>(v < 0.0); });
    return bits;
}

Decoder::Decoder(std::shared_ptr<const TannerGraph> graph, int t, std::optional<WeightBank> weights)
    : graph_(std::move(graph)), t_(t), weights_(std::move(weights)) {
    if (!graph_) throw std::invalid_argument("Decoder: null graph");
    if (t_ < 1) throw std::invalid_argument("Decoder: t must be >= 1");
    if (weights_) weights_->require_match(*graph_);
}

Decoder Decoder::vanilla(std::shared_ptr<const TannerGraph> graph, int t) { return Decoder(std::move(graph), t, std::nullopt); }

Decoder Decoder::neural(std::shared_ptr<const TannerGraph> graph, WeightBank weights) {
    const int t = weights.iterations();
    return Decoder(std::move(graph), t, std::move(weights));
}

std::vector<double> Decoder::operator()(std::span<const double> llr) const {
    return weights_ ? neural_bp_decode(*graph_, *weights_, llr) : bp_decode(*graph_, llr, t_);
}

std::vector<double> boost(const Decoder& decoder, std::span<const double> llr, int boosts) {
    if (boosts < 0) throw std::invalid_argument("boost: B must be >= 0");
    auto o = decoder(llr);
    for (int b = 0; b < boosts; ++b) o = decoder(o);
    return o;
}

std::vector<double> boost(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr, int boosts) {
    if (boosts < 0) throw std::invalid_argument("boost: B must be >= 0");
    auto o = neural_bp_decode(graph, weights, llr);
    for (int b = 0; b < boosts; ++b) o = neural_bp_decode(graph, weights, o);
    return o;
}

}  // namespace cedec
