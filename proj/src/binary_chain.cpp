#include "burnside/binary_chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "burnside/errors.hpp"

namespace burnside::binary {

namespace {

constexpr std::uint64_t kMaxPmf = 1'000'000;
constexpr std::uint64_t kMaxKernel = 4096;
constexpr std::size_t kMaxSteps = 64;

// u_k = C(2k,k) / 4^k, by u_k = u_{k-1} (2k-1) / (2k). Every factor is below one, so
// nothing overflows and the relative error grows only linearly in k.
std::vector<long double> central_ratios(std::uint64_t m) {
    std::vector<long double> u(m + 1);
    u[0] = 1.0L;
    for (std::uint64_t k = 1; k <= m; ++k)
        u[k] = u[k - 1] * static_cast<long double>(2 * k - 1) / static_cast<long double>(2 * k);
    return u;
}

std::vector<long double> arcsine_from(const std::vector<long double>& u, std::uint64_t m) {
    std::vector<long double> p(m + 1);
    long double total = 0;
    for (std::uint64_t k = 0; k <= m; ++k) total += p[k] = u[k] * u[m - k];
    if (std::abs(total - 1.0L) > 1e-10L)
        throw ConsistencyError("arcsine_pmf: normalisation drifted by more than 1e-10");
    for (auto& x : p) x /= total;
    return p;
}

// Rows j = 0..n/2 of the kernel; row j and row n-j coincide. Each row is convolved in
// extended precision and then rounded once.
std::vector<std::vector<double>> half_kernel_rows(std::uint64_t n) {
    if (n > kMaxKernel) throw ResourceLimitError("binary kernel: n must be at most 4096");
    const auto u = central_ratios(n);
    std::vector<std::vector<double>> rows(n / 2 + 1);
    std::vector<long double> acc(n + 1);
    for (std::uint64_t j = 0; j <= n / 2; ++j) {
        const auto a = arcsine_from(u, j);
        const auto b = arcsine_from(u, n - j);
        std::fill(acc.begin(), acc.end(), 0.0L);
        for (std::uint64_t l = 0; l <= j; ++l)
            for (std::uint64_t m = 0; m <= n - j; ++m) acc[l + m] += a[l] * b[m];
        rows[j].assign(acc.begin(), acc.end());
    }
    return rows;
}

const std::vector<double>& row_of(const std::vector<std::vector<double>>& half, std::uint64_t n, std::uint64_t j) {
    return half[std::min(j, n - j)];
}

}  // namespace

std::vector<double> arcsine_pmf(std::uint64_t m) {
    if (m > kMaxPmf) throw ResourceLimitError("arcsine_pmf: m must be at most 10^6");
    const auto p = arcsine_from(central_ratios(m), m);
    return {p.begin(), p.end()};
}

WeightState lumped_binary_step(WeightState s, RngStream& rng) {
    if (s.j > s.n) throw std::invalid_argument("lumped_binary_step: weight exceeds n");
    return {s.n, arcsine_draw(s.j, rng) + arcsine_draw(s.n - s.j, rng)};
}

KernelMatrix exact_binary_kernel(std::uint64_t n) {
    const auto rows = half_kernel_rows(n);
    std::vector<std::string> labels;
    for (std::uint64_t k = 0; k <= n; ++k) labels.push_back(std::to_string(k));
    KernelMatrix kernel(std::move(labels));
    for (std::uint64_t j = 0; j <= n; ++j)
        for (std::uint64_t k = 0; k <= n; ++k) kernel(j, k) = row_of(rows, n, j)[k];
    return kernel;
}

std::vector<double> tv_mixing_profile(std::uint64_t n, std::size_t j_max) {
    if (j_max > kMaxSteps) throw ResourceLimitError("tv_mixing_profile: j_max must be at most 64");
    const auto rows = half_kernel_rows(n);
    const long double uniform = 1.0L / static_cast<long double>(n + 1);
    std::vector<long double> dist(n + 1, 0.0L), next(n + 1);
    dist[0] = 1.0L;
    std::vector<double> out;
    for (std::size_t step = 1; step <= j_max; ++step) {
        std::fill(next.begin(), next.end(), 0.0L);
        for (std::uint64_t j = 0; j <= n; ++j) {
            if (dist[j] == 0.0L) continue;
            const auto& row = row_of(rows, n, j);
            for (std::uint64_t k = 0; k <= n; ++k) next[k] += dist[j] * row[k];
        }
        dist.swap(next);
        long double tv = 0;
        for (auto p : dist) tv += std::abs(p - uniform);
        out.push_back(static_cast<double>(tv / 2));
    }
    return out;
}

double tv_lower_bound(std::size_t j) { return 0.25 * std::pow(0.25, static_cast<double>(j)); }
double tv_upper_bound(std::size_t j) { return 4.0 * std::pow(0.25, static_cast<double>(j)); }

}  // namespace burnside::binary
