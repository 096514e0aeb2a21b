#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "burnside/partitions.hpp"
#include "burnside/tables.hpp"

namespace burnside::diag {

enum class Variant { lumped, reflected, unlumped };

std::string_view variant_name(Variant v);
/// Accepts "lumped", "reflected", "unlumped"; throws InputError otherwise.
Variant parse_variant(std::string_view text);

struct RunConfig {
    std::uint64_t seed = 0;
    Variant variant = Variant::lumped;
    std::uint64_t burn_in = 0;
    std::uint64_t steps = 1;
    std::uint64_t replicas = 1;
    std::uint64_t thin = 1;

    /// Throws std::invalid_argument unless steps, replicas and thin are all positive.
    void validate() const;
};

/// Runs body(0..count-1) on up to `workers` threads (0 = hardware concurrency).
/// Each index is processed exactly once; results must be written to per-index slots.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

double median(std::vector<double> values);

struct VolumeResult {
    double observed_chi_square = 0;
    std::vector<double> estimates;  ///< one per replica, in replica order
    double median = 0;
};

enum class Tail {
    lower,  ///< chi-square(T') <= chi-square(T)
    upper,  ///< chi-square(T') >= chi-square(T)
};

/// Volume statistic V(T), the uniform-measure proportion of tables with the margins of T
/// on one side of chi-square(T). Per replica: start the table chain at T, discard
/// burn_in steps, then report the fraction of the next `steps` states in the tail.
/// Replica r uses seed derive_seed(cfg.seed, r). Supports the lumped and unlumped
/// variants. Chi-square ties count as in the tail, with a relative tolerance of 1e-9.
VolumeResult volume_estimate(const tables::ContingencyTable& table, const RunConfig& cfg, Tail tail = Tail::lower,
                             unsigned workers = 0);

enum class Feature { ones, parts };

std::string_view feature_name(Feature f);
/// Accepts "ones" and "parts"; throws InputError otherwise.
Feature parse_feature(std::string_view text);

/// x = (pi / sqrt(6n)) l a_l, limit law Exp(1). The default l = 1 counts ones.
double normalize_ones(std::uint64_t count, std::uint64_t n, std::uint64_t part_size = 1);
/// x = (pi / sqrt(6n)) parts - log(sqrt(6n) / pi), limit law Gumbel.
double normalize_parts(std::uint64_t parts, std::uint64_t n);
double exp_cdf(double x);
double gumbel_cdf(double x);
/// (sqrt(6n)/pi) log(sqrt(6n)/pi), the leading-order mean number of parts.
double asymptotic_num_parts(double n);

/// One-sample Kolmogorov-Smirnov distance between the sample and a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Features of num_samples independent partitions, each after steps_per_sample reflected
/// steps from 1^n. Sample i uses seed derive_seed(seed, i), so the output does not depend
/// on the worker count.
std::vector<partitions::PartitionFeatures> sample_features(std::uint64_t n, std::uint64_t num_samples,
                                                           std::uint64_t steps_per_sample, std::uint64_t seed,
                                                           unsigned workers = 0);

struct LimitLawResult {
    Feature feature = Feature::ones;
    std::vector<std::uint64_t> raw;
    std::vector<double> normalized;
    double ks = 0;
};

LimitLawResult limit_law_from_features(std::span<const partitions::PartitionFeatures> samples, std::uint64_t n,
                                       Feature feature);
/// For Feature::ones, `part_size` = l selects the count a_l of parts of size l.
LimitLawResult limit_law_check(std::uint64_t n, std::uint64_t num_samples, std::uint64_t steps_per_sample,
                               Feature feature, std::uint64_t seed, unsigned workers = 0,
                               std::uint64_t part_size = 1);

struct TracePoint {
    std::uint64_t step = 0;
    std::uint64_t largest_part = 0;
    std::uint64_t num_parts = 0;
};

/// Chain from 1^n for cfg.steps steps (lumped or reflected), recording step 0 and every
/// cfg.thin-th step. Uses cfg.seed directly.
std::vector<TracePoint> trace(std::uint64_t n, const RunConfig& cfg);

enum class BenchTarget { partitions_lumped, partitions_reflected, partitions_unlumped, tables_lumped, tables_unlumped };

std::string_view target_name(BenchTarget t);
/// Accepts "partitions-lumped", ..., "tables-unlumped"; throws InputError otherwise.
BenchTarget parse_target(std::string_view text);

struct BenchRecord {
    std::uint64_t n = 0;
    BenchTarget target = BenchTarget::partitions_lumped;
    double mean_step_ns = 0;
    std::uint64_t steps_timed = 0;
};

/// Times `steps` consecutive steps at each size with std::chrono::steady_clock
/// (nanosecond ticks on Linux). The steps are split into five consecutive blocks and the
/// median block mean is reported. Partition chains start from a partition reached by
/// untimed reflected steps from 1^n; the unlumped chain (in cycle form) starts from a
/// random permutation of that cycle type. For table targets each size is a scale factor applied to `base`
/// and the record holds the scaled sample size. Sizes must be strictly increasing and
/// steps positive (std::invalid_argument otherwise). Single-threaded.
std::vector<BenchRecord> bench(BenchTarget target, std::span<const std::uint64_t> sizes, std::uint64_t steps,
                               std::uint64_t seed, const tables::ContingencyTable& base = tables::hair_eye_table());

struct Autocorrelation {
    std::vector<double> coefficients;  ///< lags 1..max_lag
    bool degenerate = false;           ///< constant series; coefficients are all 1
};

/// Sample autocorrelation. Throws std::invalid_argument unless series.size() > max_lag.
Autocorrelation autocorrelation(std::span<const double> series, std::size_t max_lag);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

/// Ordinary least squares y = slope x + intercept. Needs two or more distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace burnside::diag
