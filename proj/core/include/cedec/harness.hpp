#pragma once

#include "cedec/codes.hpp"
#include "cedec/decoder.hpp"
#include "cedec/listdec.hpp"
#include "cedec/weights.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cedec {

/// Invalid experiment or CLI configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing, corrupt or mismatched data files (CLI exit code 3).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string code_id = "BCH(63,45)";
    DecoderVariant decoder = DecoderVariant::vanilla;
    MatrixKind matrix = MatrixKind::standard;
    int iterations = 5;
    int boosts = 0;
    std::size_t list_size = 1;
    std::vector<double> snr_grid_db = {4, 5, 6};
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    /// Seed of the appended rows for MatrixKind::random_extended.
    std::uint64_t matrix_seed = 0;
    std::string weights_path;
    /// Transmit uniformly random codewords instead of the all-zero word.
    bool random_codewords = false;
    FailedBranchPolicy failed_branch = FailedBranchPolicy::zero;
    /// When false the `seconds` column is written as 0 so reruns are byte-identical.
    bool record_time = true;

    /// Throws ConfigError.
    void validate() const;
};

struct SnrPoint {
    double snr_db = 0.0;
    std::size_t samples = 0;
    std::size_t n = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double seconds = 0.0;

    double ber() const noexcept;
    double fer() const noexcept;
};

struct ExperimentResult {
    std::string code_id;
    DecoderVariant decoder = DecoderVariant::vanilla;
    MatrixKind matrix = MatrixKind::standard;
    int iterations = 0;
    int boosts = 0;
    std::size_t list_size = 1;
    std::vector<SnrPoint> points;
};

/// Wilson score interval for `successes` out of `trials` (z = 1.96).
struct Interval {
    double lo;
    double hi;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Monte-Carlo BER/FER. Loads weights from config.weights_path for weighted
/// decoders. Deterministic for a fixed config.
ExperimentResult run_experiment(const ExperimentConfig& config);
/// Same, with an in-memory bank (ignored for vanilla).
ExperimentResult run_experiment(const ExperimentConfig& config, const WeightBank* weights);

/// List decoding at several list sizes on the same noise realizations. One
/// result per list size; list sizes must be in [1, n + 1].
std::vector<ExperimentResult> run_list_experiment(const ExperimentConfig& config, std::span<const std::size_t> list_sizes,
                                                  const WeightBank* weights);

/// Decoder over the matrix selected by `kind`, vanilla when `weights` is null.
Decoder make_decoder(const CyclicCode& code, MatrixKind kind, std::uint64_t matrix_seed, int iterations,
                     const WeightBank* weights);

inline constexpr const char* kCsvHeader =
    "code,decoder,matrix,t,B,ell,snr_db,samples,bit_errors,frame_errors,ber,fer,neg_ln_ber,neg_ln_fer,ci_lo,ci_hi,seconds";

/// Header plus one row per SNR point. The Wilson interval is on BER for
/// ell = 1 and on FER for list decoding.
void write_csv(std::ostream& os, std::span<const ExperimentResult> results);

/// One parsed CSV row.
struct CurveRow {
    std::string code, decoder, matrix;
    int t = 0, boosts = 0;
    std::size_t ell = 1;
    double snr_db = 0.0;
    std::size_t samples = 0;
    std::uint64_t bit_errors = 0, frame_errors = 0;
    double ber = 0.0, fer = 0.0;
};
/// Throws DataError on a malformed file.
std::vector<CurveRow> read_csv(std::istream& is);

enum class CurveMetric { ber, fer };

/// SVG of error rate versus SNR on a log-scale y axis, one series per
/// (code, decoder, matrix, t, B, ell).
void write_svg(std::ostream& os, std::span<const CurveRow> rows, CurveMetric metric, const std::string& title = {});

/// CSV always; SVG when svg_path is set.
void emit_curve(std::span<const ExperimentResult> results, const std::filesystem::path& csv_path,
                const std::optional<std::filesystem::path>& svg_path = std::nullopt,
                CurveMetric metric = CurveMetric::ber);

inline constexpr int kWeightFormatVersion = 1;

struct WeightFile {
    std::string code_id;
    MatrixKind matrix = MatrixKind::cyclic;
    WeightBank weights;
};

void save_weights(const std::filesystem::path& path, const WeightFile& file);
/// Throws DataError for unreadable files, version or shape problems.
WeightFile load_weights(const std::filesystem::path& path);
/// load_weights plus a check against the code and its parity matrix.
WeightFile load_weights_for(const std::filesystem::path& path, const CyclicCode& code, const TannerGraph& graph);

}  // namespace cedec
