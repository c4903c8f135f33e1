#include "cedec/channel.hpp"
#include "cedec/codes.hpp"
#include "cedec/decoder.hpp"
#include "cedec/listdec.hpp"
#include "cedec/train.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <string>

using namespace cedec;

namespace {

const char* const kCodes[] = {"BCH(63,45)", "BCH(63,36)", "BCH(127,64)"};

std::vector<double> noisy_llr(const CyclicCode& code, double snr_db) {
    RngStream rng(7, 0);
    std::vector<double> llr(code.n());
    sample_llr(Bits(code.n(), 0), snr_to_sigma(snr_db, code.rate()), rng, llr);
    return llr;
}

void BM_VanillaStd(benchmark::State& state) {
    const auto code = CyclicCode::from_id(kCodes[state.range(0)]);
    const TannerGraph g(code.parity_matrix());
    const auto llr = noisy_llr(code, 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(bp_decode(g, llr, 5));
    state.SetLabel(code.id());
}

void BM_CyclicForward(benchmark::State& state) {
    const auto code = CyclicCode::from_id(kCodes[state.range(0)]);
    const TannerGraph g(code.cyclic_parity_matrix());
    const auto bank = WeightBank::ones_for(g, DecoderVariant::cyclic, 5);
    const auto llr = noisy_llr(code, 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(neural_bp_decode(g, bank, llr));
    state.SetLabel(code.id());
}

void BM_CyclicBackward(benchmark::State& state) {
    const auto code = CyclicCode::from_id(kCodes[state.range(0)]);
    const TannerGraph g(code.cyclic_parity_matrix());
    const auto bank = WeightBank::ones_for(g, DecoderVariant::cyclic, 5);
    const auto llr = noisy_llr(code, 4.0);
    const Bits zero(code.n(), 0);
    for (auto _ : state) benchmark::DoNotOptimize(backward(g, bank, llr, zero));
    state.SetLabel(code.id());
}

void BM_ListDecode(benchmark::State& state) {
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const auto perms = build_affine_set(GaloisField(code.m()));
    const auto graph = std::make_shared<const TannerGraph>(code.cyclic_parity_matrix());
    const auto dec = Decoder::vanilla(graph, 5);
    const LlrDecoder fn = [&](std::span<const double> l) { return dec(l); };
    const auto llr = noisy_llr(code, 5.0);
    const auto ell = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(list_decode(code, perms, llr, ell, fn));
}

void BM_ChannelSample(benchmark::State& state) {
    const auto code = CyclicCode::from_id("BCH(63,45)");
    const double sigma = snr_to_sigma(5.0, code.rate());
    const Bits zero(code.n(), 0);
    std::vector<double> llr(code.n());
    RngStream rng(1, 1);
    for (auto _ : state) {
        sample_llr(zero, sigma, rng, llr);
        benchmark::DoNotOptimize(llr.data());
    }
}

}  // namespace

BENCHMARK(BM_VanillaStd)->DenseRange(0, 2);
BENCHMARK(BM_CyclicForward)->DenseRange(0, 2);
BENCHMARK(BM_CyclicBackward)->DenseRange(0, 2);
BENCHMARK(BM_ListDecode)->Arg(1)->Arg(8)->Arg(64);
BENCHMARK(BM_ChannelSample);

BENCHMARK_MAIN();
