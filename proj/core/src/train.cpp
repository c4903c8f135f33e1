#include "cedec/train.hpp"

#include "cedec/channel.hpp"
#include "cedec/parallel.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

namespace cedec {

namespace {

double softplus(double x) noexcept { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }
double sigmoid(double x) noexcept {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void require_same_size(std::span<const double> output, std::span<const std::uint8_t> target) {
    if (output.size() != target.size() || output.empty())
        throw std::invalid_argument("loss: output and target must have the same nonzero length");
}

}  // namespace

double bce_loss(std::span<const double> output, std::span<const std::uint8_t> target) {
    require_same_size(output, target);
    double acc = 0.0;
    for (std::size_t j = 0; j < output.size(); ++j) acc += softplus(target[j] ? output[j] : -output[j]);
    return acc / static_cast<double>(output.size());
}

std::vector<double> bce_loss_gradient(std::span<const double> output, std::span<const std::uint8_t> target) {
    require_same_size(output, target);
    const double inv_n = 1.0 / static_cast<double>(output.size());
    std::vector<double> g(output.size());
    for (std::size_t j = 0; j < output.size(); ++j)
        g[j] = (target[j] ? sigmoid(output[j]) : -sigmoid(-output[j])) * inv_n;
    return g;
}

LossGradient backward(const TannerGraph& graph, const WeightBank& weights, std::span<const double> llr,
                      std::span<const std::uint8_t> target) {
    ForwardTrace trace;
    const auto o = neural_bp_forward(graph, weights, llr, trace);
    LossGradient out;
    out.loss = bce_loss(o, target);
    out.gradient = neural_bp_backward(graph, weights, trace, bce_loss_gradient(o, target));
    return out;
}

Adam::Adam(std::size_t size, double step_size, double beta1, double beta2, double epsilon)
    : lr_(step_size), beta1_(beta1), beta2_(beta2), eps_(epsilon), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> gradient) {
    if (params.size() != m_.size() || gradient.size() != m_.size())
        throw std::invalid_argument("Adam::step: size mismatch");
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * gradient[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * gradient[i] * gradient[i];
        params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
    }
}

TrainResult train(const CyclicCode& code, const TannerGraph& graph, DecoderVariant variant, const TrainConfig& config,
                  const TrainProgress& progress) {
    if (variant == DecoderVariant::vanilla) throw std::invalid_argument("train: vanilla BP has no weights");
    if (config.batch_size() == 0) throw std::invalid_argument("train: empty batch");
    if (config.steps < 0) throw std::invalid_argument("train: negative step count");
    if (graph.n_vars() != code.n()) throw std::invalid_argument("train: graph does not belong to the code");

    TrainResult result{WeightBank::ones_for(graph, variant, config.iterations), {}};
    auto& bank = result.weights;
    Adam adam(bank.parameter_count(), config.step_size, config.beta1, config.beta2, config.adam_epsilon);

    const Bits zero(code.n(), 0);
    const std::size_t per_snr = config.samples_per_snr;
    const std::size_t n_snr = config.snr_grid_db.size();
    const double batch = static_cast<double>(config.batch_size());
    std::vector<double> sigmas(n_snr);
    for (std::size_t s = 0; s < n_snr; ++s) sigmas[s] = snr_to_sigma(config.snr_grid_db[s], code.rate());

    // One partial sum per SNR point, reduced in SNR order.
    std::vector<std::vector<double>> partial_grad(n_snr);
    std::vector<double> partial_loss(n_snr);
    std::vector<double> grad(bank.parameter_count());

    for (int step = 0; step < config.steps; ++step) {
        parallel_for(n_snr, [&](std::size_t s) {
            auto& g = partial_grad[s];
            g.assign(bank.parameter_count(), 0.0);
            partial_loss[s] = 0.0;
            std::vector<double> llr(code.n());
            for (std::size_t i = 0; i < per_snr; ++i) {
                RngStream rng(config.seed, (static_cast<std::uint64_t>(step) << 24) | (s * per_snr + i));
                sample_llr(zero, sigmas[s], rng, llr);
                auto lg = backward(graph, bank, llr, zero);
                partial_loss[s] += lg.loss;
                const auto p = lg.gradient.params();
                for (std::size_t k = 0; k < g.size(); ++k) g[k] += p[k];
            }
        });

        double loss = 0.0;
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t s = 0; s < n_snr; ++s) {
            loss += partial_loss[s];
            for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += partial_grad[s][k];
        }
        loss /= batch;
        for (auto& g : grad) g /= batch;

        bool finite = std::isfinite(loss);
        for (auto g : grad) finite = finite && std::isfinite(g);
        if (!finite)
            throw TrainingDiverged("training diverged at step " + std::to_string(step) + " (loss " +
                                   std::to_string(loss) + ")");

        result.loss_trace.push_back(loss);
        if (progress) progress(step, loss);
        adam.step(bank.params(), grad);
    }
    return result;
}

void write_loss_csv(std::ostream& os, std::span<const double> trace) {
    os << "step,loss\n";
    const auto old = os.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < trace.size(); ++i) os << i << ',' << trace[i] << '\n';
    os.precision(old);
}

}  // namespace cedec
