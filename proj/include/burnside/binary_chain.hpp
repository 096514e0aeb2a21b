#pragma once

#include <cstdint>
#include <vector>

#include "burnside/kernel.hpp"
#include "burnside/rng.hpp"

namespace burnside::binary {

// The lumped chain for S_n permuting the coordinates of binary n-tuples. Orbits are the
// Hamming weights 0..n, and from weight j the next weight is the sum of independent
// discrete arcsine draws on {0..j} and {0..n-j}.

struct WeightState {
    std::uint64_t n = 0;
    std::uint64_t j = 0;  ///< j <= n

    friend bool operator==(const WeightState&, const WeightState&) = default;
};

/// alpha^m_k = C(2k,k) C(2m-2k,m-k) / 4^m for k = 0..m, m <= 10^6.
std::vector<double> arcsine_pmf(std::uint64_t m);

/// Throws std::invalid_argument when j > n.
WeightState lumped_binary_step(WeightState s, RngStream& rng);

/// Rows are the convolutions alpha^j * alpha^(n-j). n <= 4096.
KernelMatrix exact_binary_kernel(std::uint64_t n);

/// TV distance to uniform on {0..n} after j = 1..j_max steps from weight 0.
/// n <= 4096, j_max <= 64. Powers are accumulated in extended precision.
std::vector<double> tv_mixing_profile(std::uint64_t n, std::size_t j_max);

/// (1/4)(1/4)^j and 4(1/4)^j.
double tv_lower_bound(std::size_t j);
double tv_upper_bound(std::size_t j);

}  // namespace burnside::binary
