#include "burnside/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <mutex>
#include <thread>

#include "burnside/errors.hpp"
#include "burnside/rng.hpp"

namespace burnside::diag {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr std::size_t kBenchBlocks = 5;
constexpr int kPartitionWarmup = 40;
constexpr int kUnlumpedWarmup = 3;
constexpr int kTableWarmup = 100;

constexpr std::array<std::pair<Variant, std::string_view>, 3> kVariants{{
    {Variant::lumped, "lumped"},
    {Variant::reflected, "reflected"},
    {Variant::unlumped, "unlumped"},
}};

constexpr std::array<std::pair<BenchTarget, std::string_view>, 5> kTargets{{
    {BenchTarget::partitions_lumped, "partitions-lumped"},
    {BenchTarget::partitions_reflected, "partitions-reflected"},
    {BenchTarget::partitions_unlumped, "partitions-unlumped"},
    {BenchTarget::tables_lumped, "tables-lumped"},
    {BenchTarget::tables_unlumped, "tables-unlumped"},
}};

template <class Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& names, Enum e) {
    for (const auto& [value, name] : names)
        if (value == e) return name;
    return "?";
}

template <class Enum, std::size_t N>
Enum parse_name(const std::array<std::pair<Enum, std::string_view>, N>& names, std::string_view text,
                const char* what) {
    for (const auto& [value, name] : names)
        if (name == text) return value;
    throw InputError(std::string("unknown ") + what + " '" + std::string(text) + "'");
}

double scale_of(std::uint64_t n) { return std::numbers::pi / std::sqrt(6.0 * static_cast<double>(n)); }

// Median of kBenchBlocks block means, in nanoseconds per step.
template <class Step>
double time_steps(std::uint64_t steps, Step&& step) {
    std::vector<double> block_means;
    std::uint64_t done = 0;
    for (std::size_t b = 0; b < kBenchBlocks; ++b) {
        const std::uint64_t count = steps * (b + 1) / kBenchBlocks - done;
        if (count == 0) continue;
        const auto start = std::chrono::steady_clock::now();
        for (std::uint64_t i = 0; i < count; ++i) step();
        const auto stop = std::chrono::steady_clock::now();
        block_means.push_back(std::chrono::duration<double, std::nano>(stop - start).count() /
                              static_cast<double>(count));
        done += count;
    }
    return std::max(median(std::move(block_means)), 1e-3);
}

}  // namespace

std::string_view variant_name(Variant v) { return name_of(kVariants, v); }
Variant parse_variant(std::string_view text) { return parse_name(kVariants, text, "variant"); }
std::string_view target_name(BenchTarget t) { return name_of(kTargets, t); }
BenchTarget parse_target(std::string_view text) { return parse_name(kTargets, text, "bench target"); }

std::string_view feature_name(Feature f) { return f == Feature::ones ? "ones" : "parts"; }

Feature parse_feature(std::string_view text) {
    if (text == "ones") return Feature::ones;
    if (text == "parts") return Feature::parts;
    throw InputError("unknown feature '" + std::string(text) + "'");
}

void RunConfig::validate() const {
    if (steps == 0) throw std::invalid_argument("run config: steps must be positive");
    if (replicas == 0) throw std::invalid_argument("run config: replicas must be positive");
    if (thin == 0) throw std::invalid_argument("run config: thin must be positive");
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    if (values.size() % 2) return values[mid];
    const double upper = values[mid];
    return (upper + *std::max_element(values.begin(), values.begin() + mid)) / 2;
}

VolumeResult volume_estimate(const tables::ContingencyTable& table, const RunConfig& cfg, Tail tail,
                             unsigned workers) {
    cfg.validate();
    if (cfg.variant == Variant::reflected) throw std::invalid_argument("volume_estimate: no reflected table chain");
    VolumeResult result;
    result.observed_chi_square = tables::chi_square(table);
    const double slack = kTieTolerance * std::max(1.0, result.observed_chi_square);
    const double observed = result.observed_chi_square;
    auto in_tail = [&](double chi2) { return tail == Tail::lower ? chi2 <= observed + slack : chi2 >= observed - slack; };
    result.estimates.assign(cfg.replicas, 0.0);

    parallel_for(cfg.replicas, workers, [&](std::size_t r) {
        RngStream rng(derive_seed(cfg.seed, r));
        std::uint64_t hits = 0;
        if (cfg.variant == Variant::lumped) {
            tables::ContingencyTable state = table;
            for (std::uint64_t i = 0; i < cfg.burn_in; ++i) state = tables::lumped_step(state, rng);
            for (std::uint64_t i = 0; i < cfg.steps; ++i) {
                state = tables::lumped_step(state, rng);
                hits += in_tail(tables::chi_square(state));
            }
        } else {
            const auto& lambda = table.row_margins();
            const auto& mu = table.col_margins();
            Permutation sigma = tables::representative_permutation(table);
            for (std::uint64_t i = 0; i < cfg.burn_in; ++i) sigma = tables::unlumped_step(sigma, lambda, mu, rng);
            for (std::uint64_t i = 0; i < cfg.steps; ++i) {
                sigma = tables::unlumped_step(sigma, lambda, mu, rng);
                hits += in_tail(tables::chi_square(tables::table_of_permutation(lambda, mu, sigma)));
            }
        }
        result.estimates[r] = static_cast<double>(hits) / static_cast<double>(cfg.steps);
    });
    result.median = median(result.estimates);
    return result;
}

double normalize_ones(std::uint64_t count, std::uint64_t n, std::uint64_t part_size) {
    return scale_of(n) * static_cast<double>(part_size) * static_cast<double>(count);
}

double normalize_parts(std::uint64_t parts, std::uint64_t n) {
    const double c = scale_of(n);
    return c * static_cast<double>(parts) + std::log(c);
}

double exp_cdf(double x) { return x <= 0 ? 0.0 : -std::expm1(-x); }
double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double asymptotic_num_parts(double n) {
    const double c = std::sqrt(6.0 * n) / std::numbers::pi;
    return c * std::log(c);
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double count = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / count, static_cast<double>(i + 1) / count - f});
    }
    return d;
}

namespace {

template <class T, class Extract>
std::vector<T> sample_reflected(std::uint64_t n, std::uint64_t num_samples, std::uint64_t steps_per_sample,
                                std::uint64_t seed, unsigned workers, Extract extract) {
    std::vector<T> out(num_samples);
    parallel_for(num_samples, workers, [&](std::size_t i) {
        RngStream rng(derive_seed(seed, i));
        partitions::Partition a = partitions::Partition::ones(n);
        for (std::uint64_t s = 0; s < steps_per_sample; ++s) a = partitions::reflected_step(a, rng);
        out[i] = extract(a);
    });
    return out;
}

LimitLawResult limit_law_from_raw(std::vector<std::uint64_t> raw, std::uint64_t n, Feature feature,
                                  std::uint64_t part_size) {
    LimitLawResult result;
    result.feature = feature;
    result.raw = std::move(raw);
    for (auto v : result.raw)
        result.normalized.push_back(feature == Feature::ones ? normalize_ones(v, n, part_size) : normalize_parts(v, n));
    result.ks = ks_statistic(result.normalized, feature == Feature::ones ? exp_cdf : gumbel_cdf);
    return result;
}

}  // namespace

std::vector<partitions::PartitionFeatures> sample_features(std::uint64_t n, std::uint64_t num_samples,
                                                           std::uint64_t steps_per_sample, std::uint64_t seed,
                                                           unsigned workers) {
    return sample_reflected<partitions::PartitionFeatures>(n, num_samples, steps_per_sample, seed, workers,
                                                           [](const partitions::Partition& a) { return features(a); });
}

LimitLawResult limit_law_from_features(std::span<const partitions::PartitionFeatures> samples, std::uint64_t n,
                                       Feature feature) {
    std::vector<std::uint64_t> raw;
    raw.reserve(samples.size());
    for (const auto& f : samples) raw.push_back(feature == Feature::ones ? f.ones : f.num_parts);
    return limit_law_from_raw(std::move(raw), n, feature, 1);
}

LimitLawResult limit_law_check(std::uint64_t n, std::uint64_t num_samples, std::uint64_t steps_per_sample,
                               Feature feature, std::uint64_t seed, unsigned workers, std::uint64_t part_size) {
    if (n == 0) throw std::invalid_argument("limit_law_check: n must be positive");
    if (part_size == 0) throw std::invalid_argument("limit_law_check: part size must be positive");
    if (feature == Feature::ones && part_size != 1) {
        auto raw = sample_reflected<std::uint64_t>(n, num_samples, steps_per_sample, seed, workers,
                                                   [part_size](const partitions::Partition& a) {
                                                       return a.multiplicity(part_size);
                                                   });
        return limit_law_from_raw(std::move(raw), n, feature, part_size);
    }
    const auto samples = sample_features(n, num_samples, steps_per_sample, seed, workers);
    return limit_law_from_features(samples, n, feature);
}

std::vector<TracePoint> trace(std::uint64_t n, const RunConfig& cfg) {
    cfg.validate();
    if (cfg.variant == Variant::unlumped) throw std::invalid_argument("trace: variant must be lumped or reflected");
    RngStream rng(cfg.seed);
    partitions::Partition a = partitions::Partition::ones(n);
    std::vector<TracePoint> out;
    out.push_back({0, a.largest_part(), a.num_parts()});
    for (std::uint64_t s = 1; s <= cfg.steps; ++s) {
        a = cfg.variant == Variant::lumped ? partitions::lumped_step(a, rng) : partitions::reflected_step(a, rng);
        if (s % cfg.thin == 0) out.push_back({s, a.largest_part(), a.num_parts()});
    }
    return out;
}

std::vector<BenchRecord> bench(BenchTarget target, std::span<const std::uint64_t> sizes, std::uint64_t steps,
                               std::uint64_t seed, const tables::ContingencyTable& base) {
    if (steps == 0) throw std::invalid_argument("bench: steps must be positive");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0) throw std::invalid_argument("bench: sizes must be positive");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("bench: sizes must increase");
    }
    std::vector<BenchRecord> out;
    for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
        const std::uint64_t size = sizes[idx];
        RngStream rng(derive_seed(seed, idx));
        BenchRecord rec{size, target, 0.0, steps};
        switch (target) {
            case BenchTarget::partitions_lumped:
            case BenchTarget::partitions_reflected: {
                partitions::Partition a = partitions::Partition::ones(size);
                for (int i = 0; i < kPartitionWarmup; ++i) a = partitions::reflected_step(a, rng);
                const bool lumped = target == BenchTarget::partitions_lumped;
                rec.mean_step_ns = time_steps(steps, [&] {
                    a = lumped ? partitions::lumped_step(a, rng) : partitions::reflected_step(a, rng);
                });
                break;
            }
            case BenchTarget::partitions_unlumped: {
                if (size > 100'000'000) throw ResourceLimitError("bench: unlumped partitions need n <= 10^8");
                partitions::Partition a = partitions::Partition::ones(size);
                for (int i = 0; i < kPartitionWarmup; ++i) a = partitions::reflected_step(a, rng);
                auto sigma = partitions::random_with_cycle_type(a, rng);
                partitions::CycleForm next;
                auto step = [&] {
                    partitions::unlumped_step(sigma, next, rng);
                    std::swap(sigma, next);
                };
                for (int i = 0; i < kUnlumpedWarmup; ++i) step();
                rec.mean_step_ns = time_steps(steps, step);
                break;
            }
            case BenchTarget::tables_lumped: {
                tables::ContingencyTable t = tables::scaled(base, size);
                rec.n = t.total();
                for (int i = 0; i < kTableWarmup; ++i) t = tables::lumped_step(t, rng);
                rec.mean_step_ns = time_steps(steps, [&] { t = tables::lumped_step(t, rng); });
                break;
            }
            case BenchTarget::tables_unlumped: {
                const tables::ContingencyTable t = tables::scaled(base, size);
                rec.n = t.total();
                if (rec.n > 100'000'000) throw ResourceLimitError("bench: unlumped tables need n <= 10^8");
                Permutation sigma = tables::representative_permutation(t);
                for (int i = 0; i < kUnlumpedWarmup; ++i)
                    sigma = tables::unlumped_step(sigma, t.row_margins(), t.col_margins(), rng);
                rec.mean_step_ns = time_steps(steps, [&] {
                    sigma = tables::unlumped_step(sigma, t.row_margins(), t.col_margins(), rng);
                });
                break;
            }
        }
        out.push_back(rec);
    }
    return out;
}

Autocorrelation autocorrelation(std::span<const double> series, std::size_t max_lag) {
    if (series.size() <= max_lag) throw std::invalid_argument("autocorrelation: series shorter than max_lag + 1");
    Autocorrelation out;
    const double count = static_cast<double>(series.size());
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / count;
    double c0 = 0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    if (c0 == 0) {
        out.degenerate = true;
        out.coefficients.assign(max_lag, 1.0);
        return out;
    }
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double c = 0;
        for (std::size_t t = 0; t + lag < series.size(); ++t) c += (series[t] - mean) * (series[t + lag] - mean);
        out.coefficients.push_back(c / c0);
    }
    return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need two or more points");
    const double count = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / count;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / count;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_line: x values are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
    return fit;
}

}  // namespace burnside::diag
