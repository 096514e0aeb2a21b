// Acceptance checks. Each run takes one criterion name, prints a single PASS or FAIL
// line with the measured values, and exits 0 on PASS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "burnside/binary_chain.hpp"
#include "burnside/diagnostics.hpp"
#include "burnside/oracle.hpp"
#include "burnside/partitions.hpp"
#include "burnside/tables.hpp"
#include "support/stats.hpp"

using namespace burnside;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void oracle_equivalence(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<oracle::ActionInstance> cases;
    for (std::size_t n = 1; n <= 5; ++n) cases.push_back(oracle::ActionInstance::conjugation(n));
    cases.push_back(oracle::ActionInstance::double_coset(tables::Composition({2, 2}), tables::Composition({2, 2})));
    cases.push_back(oracle::ActionInstance::double_coset(tables::Composition({2, 1}), tables::Composition({1, 2})));
    double asym = 0, rows = 0, rep = 0, balance = 0;
    for (const auto& a : cases) {
        const auto exact = oracle::exact_kernel(a);
        const auto lumped = oracle::lumped_kernel(a);
        asym = std::max(asym, lumped.kernel.max_asymmetry());
        rows = std::max({rows, lumped.kernel.max_row_sum_deviation(), exact.max_row_sum_deviation()});
        rep = std::max(rep, lumped.max_representative_deviation);
        balance = std::max(balance, oracle::detailed_balance_deviation(a, exact));
    }
    const double secs = seconds_since(start);
    o.detail << cases.size() << " actions; asymmetry " << num(asym) << ", row sums " << num(rows)
             << ", representative spread " << num(rep) << ", detailed balance " << num(balance) << " (tol 1e-12); "
             << num(secs) << " s";
    o.require(asym <= 1e-12 && rows <= 1e-12 && rep <= 1e-12 && balance <= 1e-12, "tolerance");
    o.require(secs < 60, "runtime < 60 s");
}

void mc_vs_oracle(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    constexpr int draws = 1'000'000;
    double min_p = 1;
    RngStream rng(kSeed);

    // The partition chain is the centraliser half step; its square is the Burnside kernel.
    const auto k5 = oracle::lumped_centralizer_kernel(oracle::ActionInstance::conjugation(5)).kernel;
    for (const auto& start_part : partitions::enumerate_partitions(5)) {
        const auto row = std::find(k5.labels().begin(), k5.labels().end(), start_part.to_string()) - k5.labels().begin();
        std::map<std::string, double> probs;
        for (std::size_t j = 0; j < k5.size(); ++j) probs[k5.labels()[j]] = k5(row, j);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < draws; ++i) ++counts[partitions::lumped_step(start_part, rng).to_string()];
        min_p = std::min(min_p, testing_support::chi_square_gof(counts, probs).p_value);
    }

    const tables::Composition two_two({2, 2});
    const auto kt = oracle::lumped_kernel(oracle::ActionInstance::double_coset(two_two, two_two)).kernel;
    for (std::size_t row = 0; row < kt.size(); ++row) {
        const auto t = tables::parse_table_json("{\"table\":" + kt.labels()[row] + "}");
        std::map<std::string, double> probs;
        for (std::size_t j = 0; j < kt.size(); ++j) probs[kt.labels()[j]] = kt(row, j);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < draws; ++i) ++counts[tables::lumped_step(t, rng).to_string()];
        min_p = std::min(min_p, testing_support::chi_square_gof(counts, probs).p_value);
    }
    const double secs = seconds_since(start);
    o.detail << "7 partitions of 5 and 3 tables at (2,2)/(2,2), 1e6 draws each; min chi-square p = " << num(min_p)
             << " (need > 1e-3); " << num(secs) << " s";
    o.require(min_p > 1e-3, "p-value");
    o.require(secs < 300, "runtime < 300 s");
}

diag::VolumeResult volume(const tables::ContingencyTable& t, std::uint64_t steps) {
    diag::RunConfig cfg;
    cfg.seed = kSeed;
    cfg.burn_in = 10'000;
    cfg.steps = steps;
    cfg.replicas = 5;
    return diag::volume_estimate(t, cfg);
}

std::string runs_text(const diag::VolumeResult& r) {
    std::string s;
    for (double e : r.estimates) s += (s.empty() ? "" : " ") + num(e);
    return s;
}

void volume_full(Outcome& o) {
    auto start = std::chrono::steady_clock::now();
    const auto t1 = volume(tables::hair_eye_table(), 2'000'000);
    const double secs1 = seconds_since(start);
    start = std::chrono::steady_clock::now();
    const auto t2 = volume(tables::children_income_table(), 2'000'000);
    const double secs2 = seconds_since(start);
    o.detail << "5 x 2e6 steps, 1e4 burn-in. hair-eye median " << num(t1.median) << " (runs " << runs_text(t1)
             << ", need [0.151, 0.156], " << num(secs1) << " s); children-income median " << num(t2.median) << " (runs "
             << runs_text(t2) << ", need [5e-6, 2e-5], " << num(secs2) << " s)";
    o.require(t1.median >= 0.151 && t1.median <= 0.156, "hair-eye");
    o.require(t2.median >= 5e-6 && t2.median <= 2e-5, "children-income");
}

void volume_light(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto t1 = volume(tables::hair_eye_table(), 200'000);
    o.detail << "hair-eye, 5 x 2e5 steps: median " << num(t1.median) << " (runs " << runs_text(t1)
             << ", need [0.14, 0.17]); " << num(seconds_since(start)) << " s";
    o.require(t1.median >= 0.14 && t1.median <= 0.17, "hair-eye");
}

void chi_square_value(Outcome& o) {
    const double v = tables::chi_square(tables::hair_eye_table());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    o.detail << "chi-square(hair-eye) = " << buf << " (need 138.29 +- 0.01)";
    o.require(std::abs(v - 138.29) <= 0.01, "value");
}

void limit_laws(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    constexpr std::uint64_t n = 1'000'000;
    const auto samples = diag::sample_features(n, 100'000, 20, kSeed);
    const double ks_ones = diag::limit_law_from_features(samples, n, diag::Feature::ones).ks;
    const double ks_parts = diag::limit_law_from_features(samples, n, diag::Feature::parts).ks;
    o.detail << "n = 1e6, 1e5 samples, 20 reflected steps: KS ones " << num(ks_ones) << " (need <= 0.02), KS parts "
             << num(ks_parts) << " (need <= 0.03); " << num(seconds_since(start)) << " s";
    o.require(ks_ones <= 0.02, "ones");
    o.require(ks_parts <= 0.03, "parts");
}

void tv_bounds(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto a = oracle::ActionInstance::binary(6);
    const auto k = oracle::exact_kernel(a);
    std::vector<double> dist(a.num_states(), 0.0), pi(a.num_states());
    dist[a.index_of(oracle::State(6, 0))] = 1.0;
    for (const auto& orbit : oracle::orbits(a))
        for (auto x : orbit) pi[x] = 1.0 / (7.0 * static_cast<double>(orbit.size()));
    double worst_low = INFINITY, worst_high = INFINITY;  // smallest ratio tv/lower and upper/tv
    for (std::size_t j = 1; j <= 12; ++j) {
        dist = k.advance(dist);
        if (j < 4) continue;
        const double tv = tv_distance(dist, pi);
        worst_low = std::min(worst_low, tv / binary::tv_lower_bound(j));
        worst_high = std::min(worst_high, binary::tv_upper_bound(j) / tv);
    }
    double lumped_margin = INFINITY;
    for (std::uint64_t n : {16u, 64u, 256u, 1024u}) {
        const auto tv = binary::tv_mixing_profile(n, 20);
        for (std::size_t j = 4; j <= 20; ++j) lumped_margin = std::min(lumped_margin, binary::tv_upper_bound(j) / tv[j - 1]);
    }
    const double secs = seconds_since(start);
    o.detail << "unlumped n=6, 4<=j<=12: min TV/lower " << num(worst_low) << ", min upper/TV " << num(worst_high)
             << "; lumped n in {16,64,256,1024}, 4<=j<=20: min upper/TV " << num(lumped_margin) << " (all need >= 1); "
             << num(secs) << " s";
    o.require(worst_low >= 1 && worst_high >= 1, "unlumped bounds");
    o.require(lumped_margin >= 1, "lumped bound");
    o.require(secs < 60, "runtime < 60 s");
}

double bench_fit(diag::BenchTarget target, const std::vector<std::uint64_t>& sizes, bool log_log,
                 const tables::ContingencyTable& base = tables::hair_eye_table()) {
    const auto records = diag::bench(target, sizes, 10'000, kSeed, base);
    std::vector<double> x, y;
    for (const auto& r : records) {
        x.push_back(std::log(static_cast<double>(r.n)));
        y.push_back(log_log ? std::log(r.mean_step_ns) : r.mean_step_ns);
    }
    const auto fit = diag::fit_line(x, y);
    return log_log ? fit.slope : fit.r2;
}

void complexity(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::uint64_t> big{10'000, 100'000, 1'000'000, 10'000'000, 100'000'000, 1'000'000'000};
    const std::vector<std::uint64_t> small{10'000, 100'000, 1'000'000, 10'000'000};
    std::vector<std::uint64_t> scales;
    for (std::uint64_t s = 1; s <= 10'000'000; s *= 10) scales.push_back(s);
    const double lumped = bench_fit(diag::BenchTarget::partitions_lumped, big, true);
    const double reflected = bench_fit(diag::BenchTarget::partitions_reflected, big, true);
    const double unlumped = bench_fit(diag::BenchTarget::partitions_unlumped, small, true);
    const double r2_t1 = bench_fit(diag::BenchTarget::tables_lumped, scales, false, tables::hair_eye_table());
    const double r2_t2 = bench_fit(diag::BenchTarget::tables_lumped, scales, false, tables::children_income_table());
    o.detail << "log-log slopes: lumped " << num(lumped) << ", reflected " << num(reflected)
             << " (need 0.5 +- 0.1), unlumped " << num(unlumped) << " (need 1.0 +- 0.1); tables linear-log R2: "
             << num(r2_t1) << ", " << num(r2_t2) << " (need >= 0.95); " << num(seconds_since(start)) << " s";
    o.require(std::abs(lumped - 0.5) <= 0.1 && std::abs(reflected - 0.5) <= 0.1, "lumped/reflected slope");
    o.require(std::abs(unlumped - 1.0) <= 0.1, "unlumped slope");
    o.require(r2_t1 >= 0.95 && r2_t2 >= 0.95, "tables R2");
}

void holding(Outcome& o) {
    RngStream rng(kSeed);
    constexpr int trials = 100'000;
    for (std::uint64_t n : {7u, 12u, 30u}) {
        const auto single = partitions::Partition::single_part(n);
        int stay = 0;
        for (int t = 0; t < trials; ++t) stay += partitions::lumped_step(single, rng) == single;
        const double p = static_cast<double>(testing_support::totient(n)) / static_cast<double>(n);
        const double z = (stay / static_cast<double>(trials) - p) / testing_support::binomial_sd(p, trials);
        o.detail << (n == 7 ? "" : "; ") << "n=" << n << ": " << num(stay / static_cast<double>(trials)) << " vs "
                 << num(p) << " (z " << num(z) << ")";
        o.require(std::abs(z) <= 3, "n=" + std::to_string(n));
    }
    o.detail << " (need |z| <= 3)";
}

void scale(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    constexpr std::uint64_t n = 10'000'000'000ULL;
    diag::RunConfig cfg;
    cfg.seed = kSeed;
    cfg.variant = diag::Variant::reflected;
    cfg.steps = 200;
    const auto points = diag::trace(n, cfg);
    const double secs = seconds_since(start);
    const double target = diag::asymptotic_num_parts(static_cast<double>(n));
    std::int64_t first = -1;
    double tail_mean = 0;
    for (const auto& p : points) {
        const double rel = std::abs(static_cast<double>(p.num_parts) - target) / target;
        if (first < 0 && p.step <= 50 && rel <= 0.05) first = static_cast<std::int64_t>(p.step);
        if (p.step > 50) tail_mean += static_cast<double>(p.num_parts) / 150.0;
    }
    o.detail << "n = 1e10, 200 reflected steps in " << num(secs) << " s (need < 600); num_parts within 5% of "
             << num(target) << " first at step " << first << " (need <= 50); mean over steps 51-200 "
             << num(tail_mean) << " (" << num(100 * (tail_mean - target) / target) << "%)";
    o.require(secs < 600, "runtime");
    o.require(first >= 0, "num_parts by step 50");
}

const std::map<std::string, std::function<void(Outcome&)>>& criteria() {
    static const std::map<std::string, std::function<void(Outcome&)>> table{
        {"oracle-equivalence", oracle_equivalence},
        {"mc-vs-oracle", mc_vs_oracle},
        {"volume", volume_full},
        {"volume-light", volume_light},
        {"chi-square", chi_square_value},
        {"limit-laws", limit_laws},
        {"tv-bounds", tv_bounds},
        {"complexity", complexity},
        {"holding", holding},
        {"scale", scale},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2 || !criteria().count(argv[1])) {
        std::cerr << "usage: burnside_acceptance <criterion>\ncriteria:";
        for (const auto& [name, _] : criteria()) std::cerr << ' ' << name;
        std::cerr << '\n';
        return 2;
    }
    Outcome o;
    try {
        criteria().at(argv[1])(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << argv[1] << ": " << o.detail.str() << std::endl;
    return o.pass ? 0 : 1;
}
