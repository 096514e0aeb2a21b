#include "burnside/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace burnside {

KernelMatrix::KernelMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), probs_(labels_.size() * labels_.size(), 0.0) {}

double KernelMatrix::max_row_sum_deviation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        auto r = row(i);
        worst = std::max(worst, std::abs(std::accumulate(r.begin(), r.end(), 0.0) - 1.0));
    }
    return worst;
}

double KernelMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
}

double KernelMatrix::min_entry() const {
    if (probs_.empty()) return 0.0;
    return *std::min_element(probs_.begin(), probs_.end());
}

std::vector<double> KernelMatrix::advance(std::span<const double> dist) const {
    if (dist.size() != size()) throw std::invalid_argument("KernelMatrix::advance: length mismatch");
    std::vector<double> out(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) {
        const double w = dist[i];
        if (w == 0.0) continue;
        auto r = row(i);
        for (std::size_t j = 0; j < size(); ++j) out[j] += w * r[j];
    }
    return out;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: support length mismatch");
    const double sp = std::accumulate(p.begin(), p.end(), 0.0);
    const double sq = std::accumulate(q.begin(), q.end(), 0.0);
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
        throw std::invalid_argument("tv_distance: inputs must be probability vectors");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
    return total / 2.0;
}

std::vector<double> tv_profile(const KernelMatrix& kernel, std::span<const double> start,
                               std::span<const double> target, std::size_t steps) {
    std::vector<double> dist(start.begin(), start.end());
    std::vector<double> out;
    out.reserve(steps);
    for (std::size_t j = 1; j <= steps; ++j) {
        dist = kernel.advance(dist);
        out.push_back(tv_distance(dist, target));
    }
    return out;
}

}  // namespace burnside
