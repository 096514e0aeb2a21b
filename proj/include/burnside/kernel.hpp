#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace burnside {

/// Dense row-stochastic transition matrix over labelled states (or orbits).
class KernelMatrix {
public:
    KernelMatrix() = default;
    /// Zero matrix over `labels`; callers fill it and then check invariants.
    explicit KernelMatrix(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    double operator()(std::size_t i, std::size_t j) const { return probs_[i * size() + j]; }
    double& operator()(std::size_t i, std::size_t j) { return probs_[i * size() + j]; }
    std::span<const double> row(std::size_t i) const { return {probs_.data() + i * size(), size()}; }

    double max_row_sum_deviation() const;
    /// max |P(i,j) - P(j,i)|
    double max_asymmetry() const;
    double min_entry() const;

    /// Distribution after one step: dist * P.
    std::vector<double> advance(std::span<const double> dist) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

/// Half the L1 distance. Throws std::invalid_argument on length mismatch or when either
/// input is not normalised to within 1e-9.
double tv_distance(std::span<const double> p, std::span<const double> q);

/// TV distance to `target` after j = 1..steps applications of `kernel` from `start`.
std::vector<double> tv_profile(const KernelMatrix& kernel, std::span<const double> start,
                               std::span<const double> target, std::size_t steps);

}  // namespace burnside
