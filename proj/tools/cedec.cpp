// Command-line front end: construct, train, decode, bench, list-bench, ablation, plot.
//
// Every subcommand reads options from the command line and, with --config FILE,
// from an INI-style file whose [subcommand] section holds `option = value`
// lines. Command-line values win. Exit codes: 0 ok, 2 bad configuration,
// 3 missing or corrupt data.

#include "cedec/codes.hpp"
#include "cedec/harness.hpp"
#include "cedec/tanner.hpp"
#include "cedec/train.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cedec;
namespace fs = std::filesystem;

namespace {

struct EvalOptions {
    std::string code = "BCH(63,45)";
    std::string matrix = "std";
    int iterations = 5;
    int boosts = 0;
    std::size_t list_size = 1;
    std::vector<double> snr = {4, 5, 6};
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    std::uint64_t matrix_seed = 0;
    bool random_codewords = false;
    std::string failed_branch = "zero";
    bool no_time = false;
    std::string out;
    std::string svg;
    std::string metric = "ber";
};

struct TrainOptions {
    int steps = 2000;
    double step_size = 1e-3;
    std::size_t samples_per_snr = 20;
    std::vector<double> snr = {1, 2, 3, 4, 5, 6, 7, 8};
    std::uint64_t seed = 1;
};

void add_eval_options(CLI::App* cmd, EvalOptions& o, bool with_matrix = true) {
    cmd->add_option("--code", o.code, "Code id, e.g. BCH(63,45) or PRM(63,22)")->capture_default_str();
    if (with_matrix) cmd->add_option("--matrix", o.matrix, "Parity matrix: std, cyclic or random-extended")->capture_default_str();
    cmd->add_option("-t,--iterations", o.iterations, "BP iterations")->capture_default_str();
    cmd->add_option("-B,--boosts", o.boosts, "Extra decoder passes fed back as input")->capture_default_str();
    cmd->add_option("--snr", o.snr, "Eb/N0 grid in dB")->delimiter(',')->capture_default_str();
    cmd->add_option("--samples", o.samples, "Frames per SNR point")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Noise seed")->capture_default_str();
    cmd->add_option("--matrix-seed", o.matrix_seed, "Seed of the appended rows for random-extended")->capture_default_str();
    cmd->add_flag("--random-codewords", o.random_codewords, "Send random codewords instead of the zero word");
    cmd->add_option("--failed-branch", o.failed_branch, "List branches that fail the codeword check: zero or drop")
        ->capture_default_str();
    cmd->add_flag("--no-time", o.no_time, "Write 0 in the seconds column so reruns are byte-identical");
    cmd->add_option("-o,--out", o.out, "CSV output (stdout when empty)");
    cmd->add_option("--svg", o.svg, "Also write a log-scale plot");
    cmd->add_option("--metric", o.metric, "Plotted metric: ber or fer")->capture_default_str();
}

void add_train_options(CLI::App* cmd, TrainOptions& o) {
    cmd->add_option("--steps", o.steps, "Adam steps")->capture_default_str();
    cmd->add_option("--lr", o.step_size, "Adam step size")->capture_default_str();
    cmd->add_option("--samples-per-snr", o.samples_per_snr, "Batch entries per training SNR")->capture_default_str();
    cmd->add_option("--train-snr", o.snr, "Training SNR grid in dB")->delimiter(',')->capture_default_str();
    cmd->add_option("--train-seed", o.seed, "Training noise seed")->capture_default_str();
}

CurveMetric parse_metric(const std::string& s) {
    if (s == "ber") return CurveMetric::ber;
    if (s == "fer") return CurveMetric::fer;
    throw ConfigError("unknown metric '" + s + "' (expected ber or fer)");
}

FailedBranchPolicy parse_policy(const std::string& s) {
    if (s == "zero") return FailedBranchPolicy::zero;
    if (s == "drop") return FailedBranchPolicy::drop;
    throw ConfigError("unknown failed-branch policy '" + s + "' (expected zero or drop)");
}

ExperimentConfig to_config(const EvalOptions& o) {
    ExperimentConfig c;
    c.code_id = o.code;
    c.matrix = parse_matrix_kind(o.matrix);
    c.iterations = o.iterations;
    c.boosts = o.boosts;
    c.list_size = o.list_size;
    c.snr_grid_db = o.snr;
    c.samples = o.samples;
    c.seed = o.seed;
    c.matrix_seed = o.matrix_seed;
    c.random_codewords = o.random_codewords;
    c.failed_branch = parse_policy(o.failed_branch);
    c.record_time = !o.no_time;
    return c;
}

TrainConfig to_config(const TrainOptions& o, int iterations) {
    TrainConfig c;
    c.steps = o.steps;
    c.step_size = o.step_size;
    c.samples_per_snr = o.samples_per_snr;
    c.snr_grid_db = o.snr;
    c.seed = o.seed;
    c.iterations = iterations;
    if (c.steps < 0 || c.step_size <= 0 || c.samples_per_snr == 0 || c.snr_grid_db.empty() || iterations < 1)
        throw ConfigError("training needs steps >= 0, lr > 0, a nonempty batch and t >= 1");
    return c;
}

void emit(std::span<const ExperimentResult> results, const EvalOptions& o) {
    const auto metric = parse_metric(o.metric);
    if (o.out.empty()) {
        write_csv(std::cout, results);
        if (!o.svg.empty()) {
            std::ostringstream csv;
            write_csv(csv, results);
            std::istringstream in(csv.str());
            const auto rows = read_csv(in);
            std::ofstream svg(o.svg);
            if (!svg) throw DataError("cannot write " + o.svg);
            write_svg(svg, rows, metric);
        }
        return;
    }
    emit_curve(results, o.out, o.svg.empty() ? std::nullopt : std::optional<fs::path>(o.svg), metric);
}

TrainResult run_training(const CyclicCode& code, const TannerGraph& graph, DecoderVariant variant, const TrainConfig& cfg,
                         bool quiet) {
    const int every = std::max(1, cfg.steps / 20);
    return train(code, graph, variant, cfg, [&](int step, double loss) {
        if (!quiet && (step % every == 0 || step + 1 == cfg.steps))
            std::fprintf(stderr, "step %d/%d loss %.5f\n", step + 1, cfg.steps, loss);
    });
}

// construct -----------------------------------------------------------------

struct ConstructOptions {
    std::string code = "BCH(63,45)";
    std::string matrix = "cyclic";
    std::uint64_t matrix_seed = 0;
    int iterations = 5;
    std::string out;
    bool print = false;
};

void construct(const ConstructOptions& o) {
    const auto code = CyclicCode::from_id(o.code);
    const auto kind = parse_matrix_kind(o.matrix);
    const auto H = select_parity_matrix(code, kind, o.matrix_seed);
    const TannerGraph graph(H);
    std::printf("code      %s\n", code.id().c_str());
    std::printf("n k m     %zu %zu %d\n", code.n(), code.k(), code.m());
    std::printf("%s %d\n", code.family() == CodeFamily::bch ? "delta    " : "order r  ", code.design_parameter());
    std::printf("g(x)      %s\n", code.generator_polynomial().to_string().c_str());
    std::printf("h(x)      %s\n", code.parity_polynomial().to_string().c_str());
    std::printf("matrix    %s, %zu x %zu, %zu ones\n", std::string(to_string(kind)).c_str(), H.rows(), H.cols(),
                graph.n_edges());
    if (graph.is_cyclic()) {
        const auto u = graph.column_weight();
        std::printf("u         %zu (cyclic weights for t=%d: %zu)\n", u, o.iterations,
                    u * u * static_cast<std::size_t>(o.iterations) + u);
    }
    const auto ff = WeightBank::ones_for(graph, DecoderVariant::ff, o.iterations);
    std::printf("ff weights for t=%d: %zu\n", o.iterations, ff.parameter_count());

    if (o.print)
        for (std::size_t r = 0; r < H.rows(); ++r) std::printf("%s\n", H.row_string(r).c_str());
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw DataError("cannot write " + o.out);
        for (std::size_t r = 0; r < H.rows(); ++r) f << H.row_string(r) << '\n';
    }
}

// train ---------------------------------------------------------------------

struct TrainCommand {
    std::string code = "BCH(63,45)";
    std::string decoder = "cyclic";
    std::string matrix = "cyclic";
    std::uint64_t matrix_seed = 0;
    int iterations = 5;
    TrainOptions train;
    std::string out;
    std::string loss_csv;
    bool quiet = false;
};

void train_command(const TrainCommand& o) {
    const auto code = CyclicCode::from_id(o.code);
    const auto variant = parse_decoder_variant(o.decoder);
    const auto kind = parse_matrix_kind(o.matrix);
    if (variant == DecoderVariant::vanilla) throw ConfigError("vanilla BP has no weights to train");
    if (variant == DecoderVariant::cyclic && kind != MatrixKind::cyclic)
        throw ConfigError("the cyclic decoder needs --matrix cyclic");
    const TannerGraph graph(select_parity_matrix(code, kind, o.matrix_seed));
    const auto result = run_training(code, graph, variant, to_config(o.train, o.iterations), o.quiet);
    save_weights(o.out, {code.id(), kind, result.weights});
    if (!o.loss_csv.empty()) {
        std::ofstream f(o.loss_csv);
        if (!f) throw DataError("cannot write " + o.loss_csv);
        write_loss_csv(f, result.loss_trace);
    }
    std::fprintf(stderr, "wrote %s (%zu weights)\n", o.out.c_str(), result.weights.parameter_count());
}

// decode, list-bench ------------------------------------------------------------

struct DecodeCommand {
    EvalOptions eval;
    std::string decoder = "vanilla";
    std::string weights;
};

void decode_command(const DecodeCommand& o) {
    auto cfg = to_config(o.eval);
    cfg.decoder = parse_decoder_variant(o.decoder);
    cfg.weights_path = o.weights;
    const auto result = run_experiment(cfg);
    emit(std::span(&result, 1), o.eval);
}

struct ListCommand {
    EvalOptions eval;
    std::string decoder = "vanilla";
    std::string weights;
    std::vector<std::size_t> sizes = {1, 2, 4, 8};
};

void list_command(const ListCommand& o) {
    auto cfg = to_config(o.eval);
    cfg.decoder = parse_decoder_variant(o.decoder);
    std::optional<WeightFile> file;
    if (cfg.decoder != DecoderVariant::vanilla) {
        if (o.weights.empty()) throw ConfigError("--weights is required for a weighted decoder");
        const auto code = CyclicCode::from_id(cfg.code_id);
        file = load_weights_for(o.weights, code, TannerGraph(select_parity_matrix(code, cfg.matrix, cfg.matrix_seed)));
        if (file->weights.variant() != cfg.decoder) throw DataError("weight file variant does not match --decoder");
    }
    const auto results = run_list_experiment(cfg, o.sizes, file ? &file->weights : nullptr);
    emit(results, o.eval);
}

// bench ---------------------------------------------------------------------

struct BenchCommand {
    EvalOptions eval;
    std::vector<std::string> weights;
    std::vector<int> boosts = {0};
    bool skip_vanilla = false;
};

void bench_command(const BenchCommand& o) {
    const auto base = to_config(o.eval);
    const auto code = CyclicCode::from_id(base.code_id);
    std::vector<ExperimentResult> results;
    if (!o.skip_vanilla) {
        auto cfg = base;
        cfg.boosts = 0;
        results.push_back(run_experiment(cfg, nullptr));
    }
    for (const auto& path : o.weights) {
        const auto file = load_weights(path);
        if (file.code_id != code.id()) throw DataError(path + " holds weights for " + file.code_id + ", not " + code.id());
        for (int b : o.boosts) {
            auto cfg = base;
            cfg.decoder = file.weights.variant();
            cfg.matrix = file.matrix;
            cfg.boosts = b;
            results.push_back(run_experiment(cfg, &file.weights));
        }
    }
    emit(results, o.eval);
}

// ablation ------------------------------------------------------------------

struct AblationCommand {
    EvalOptions eval;
    TrainOptions train;
    std::string weights_dir;
    bool quiet = false;
};

void ablation_command(const AblationCommand& o) {
    const auto base = to_config(o.eval);
    const auto code = CyclicCode::from_id(base.code_id);
    const auto tcfg = to_config(o.train, base.iterations);
    std::vector<ExperimentResult> results;
    {
        auto cfg = base;
        cfg.matrix = MatrixKind::standard;
        results.push_back(run_experiment(cfg, nullptr));
    }
    const std::pair<DecoderVariant, MatrixKind> arms[] = {{DecoderVariant::ff, MatrixKind::standard},
                                                          {DecoderVariant::ff, MatrixKind::cyclic},
                                                          {DecoderVariant::cyclic, MatrixKind::cyclic}};
    for (const auto& [variant, kind] : arms) {
        const TannerGraph graph(select_parity_matrix(code, kind));
        std::optional<fs::path> path;
        if (!o.weights_dir.empty())
            path = fs::path(o.weights_dir) / (std::string(to_string(variant)) + "_" + std::string(to_string(kind)) + ".json");
        WeightBank bank;
        if (path && fs::exists(*path)) {
            bank = load_weights_for(*path, code, graph).weights;
        } else {
            if (!o.quiet) std::fprintf(stderr, "training %s on %s\n", std::string(to_string(variant)).c_str(),
                                       std::string(to_string(kind)).c_str());
            bank = run_training(code, graph, variant, tcfg, o.quiet).weights;
            if (path) {
                fs::create_directories(path->parent_path());
                save_weights(*path, {code.id(), kind, bank});
            }
        }
        auto cfg = base;
        cfg.decoder = variant;
        cfg.matrix = kind;
        results.push_back(run_experiment(cfg, &bank));
    }
    emit(results, o.eval);
}

// plot ----------------------------------------------------------------------

struct PlotCommand {
    std::vector<std::string> inputs;
    std::string out;
    std::string metric = "ber";
    std::string title;
};

void plot_command(const PlotCommand& o) {
    std::vector<CurveRow> rows;
    for (const auto& path : o.inputs) {
        std::ifstream f(path);
        if (!f) throw DataError("cannot read " + path);
        auto part = read_csv(f);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::ofstream svg(o.out);
    if (!svg) throw DataError("cannot write " + o.out);
    write_svg(svg, rows, parse_metric(o.metric), o.title);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclically equivariant neural BP decoders for BCH and punctured RM codes"};
    app.set_config("--config", "", "INI file with one [subcommand] section of option = value lines");
    app.fallthrough();
    app.require_subcommand(1);

    ConstructOptions construct_opts;
    auto* c = app.add_subcommand("construct", "Build a code and its parity matrix, print a summary");
    c->add_option("--code", construct_opts.code, "Code id")->capture_default_str();
    c->add_option("--matrix", construct_opts.matrix, "std, cyclic or random-extended")->capture_default_str();
    c->add_option("--matrix-seed", construct_opts.matrix_seed, "Seed for random-extended")->capture_default_str();
    c->add_option("-t,--iterations", construct_opts.iterations, "Iterations for the weight counts")->capture_default_str();
    c->add_option("-o,--out", construct_opts.out, "Write the matrix rows to this file");
    c->add_flag("--print", construct_opts.print, "Print the matrix rows");

    TrainCommand train_opts;
    auto* t = app.add_subcommand("train", "Train a weighted decoder and save its weights");
    t->add_option("--code", train_opts.code, "Code id")->capture_default_str();
    t->add_option("--decoder", train_opts.decoder, "ff or cyclic")->capture_default_str();
    t->add_option("--matrix", train_opts.matrix, "std, cyclic or random-extended")->capture_default_str();
    t->add_option("--matrix-seed", train_opts.matrix_seed, "Seed for random-extended")->capture_default_str();
    t->add_option("-t,--iterations", train_opts.iterations, "BP iterations")->capture_default_str();
    add_train_options(t, train_opts.train);
    t->add_option("-o,--out", train_opts.out, "Weight file")->required();
    t->add_option("--loss-csv", train_opts.loss_csv, "Write the per-step loss");
    t->add_flag("-q,--quiet", train_opts.quiet, "No progress output");

    DecodeCommand decode_opts;
    auto* d = app.add_subcommand("decode", "Monte-Carlo BER/FER of one decoder");
    add_eval_options(d, decode_opts.eval);
    d->add_option("--decoder", decode_opts.decoder, "vanilla, ff or cyclic")->capture_default_str();
    d->add_option("--weights", decode_opts.weights, "Weight file for ff and cyclic");
    d->add_option("--list-size", decode_opts.eval.list_size, "Permutation list size (1 = plain decoding)")
        ->capture_default_str();

    BenchCommand bench_opts;
    auto* b = app.add_subcommand("bench", "Vanilla BP and trained decoders on one code, one CSV");
    add_eval_options(b, bench_opts.eval);
    b->add_option("--weights", bench_opts.weights, "Weight files; decoder and matrix come from each file");
    b->add_option("--boost-grid", bench_opts.boosts, "Boost counts to run for each weight file")
        ->delimiter(',')
        ->capture_default_str();
    b->add_flag("--skip-vanilla", bench_opts.skip_vanilla, "Leave out the vanilla BP row");

    ListCommand list_opts;
    auto* l = app.add_subcommand("list-bench", "Permutation list decoding over several list sizes");
    add_eval_options(l, list_opts.eval);
    l->add_option("--decoder", list_opts.decoder, "vanilla, ff or cyclic")->capture_default_str();
    l->add_option("--weights", list_opts.weights, "Weight file for ff and cyclic");
    l->add_option("--list-size", list_opts.sizes, "List sizes, evaluated on shared noise")
        ->delimiter(',')
        ->capture_default_str();

    AblationCommand ablation_opts;
    ablation_opts.eval.code = "BCH(63,36)";
    auto* a = app.add_subcommand("ablation", "Vanilla, ff on std, ff on cyclic and cyclic decoders on one code");
    add_eval_options(a, ablation_opts.eval, false);
    add_train_options(a, ablation_opts.train);
    a->add_option("--weights-dir", ablation_opts.weights_dir, "Reuse or store the trained banks here");
    a->add_flag("-q,--quiet", ablation_opts.quiet, "No progress output");

    PlotCommand plot_opts;
    auto* p = app.add_subcommand("plot", "SVG from one or more result CSVs");
    p->add_option("inputs", plot_opts.inputs, "CSV files")->required();
    p->add_option("-o,--out", plot_opts.out, "SVG file")->required();
    p->add_option("--metric", plot_opts.metric, "ber or fer")->capture_default_str();
    p->add_option("--title", plot_opts.title, "Plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c->parsed()) construct(construct_opts);
        if (t->parsed()) train_command(train_opts);
        if (d->parsed()) decode_command(decode_opts);
        if (b->parsed()) bench_command(bench_opts);
        if (l->parsed()) list_command(list_opts);
        if (a->parsed()) ablation_command(ablation_opts);
        if (p->parsed()) plot_command(plot_opts);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
