#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace burnside {

/// 64-bit mixing function (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for replica `index` of a run seeded with `base`.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return mix64(base ^ index);
}

/// Seedable single-owner random stream.
///
/// Satisfies UniformRandomBitGenerator so standard distributions can draw from it.
/// Bounded integer draws go through `below`, which is exact (no modulo bias).
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed = 0) : seed_(seed), engine_(mix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on {0, ..., bound - 1}; bound must be positive. Lemire's rejection method.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Positive parts summing to `total`.
struct PartsDraw {
    std::vector<std::uint64_t> parts;
    std::uint64_t total = 0;
};

/// Uniform integer on [lo, hi]. Throws std::invalid_argument when lo > hi.
std::int64_t uniform_int(std::int64_t lo, std::int64_t hi, RngStream& rng);

/// Discrete stick breaking of n: lambda_1 uniform on {1..n}, lambda_2 uniform on
/// {1..n - lambda_1}, ... until nothing remains. The multiset of parts has the law of
/// the cycle lengths of a uniform permutation of n points.
PartsDraw stick_break(std::uint64_t n, RngStream& rng);

/// Allocation-free stick breaking: calls `on_part(length)` for every part.
template <class OnPart>
void for_each_stick_part(std::uint64_t n, RngStream& rng, OnPart&& on_part) {
    while (n > 0) {
        const std::uint64_t part = rng.below(n) + 1;
        on_part(part);
        n -= part;
    }
}

struct GcdDivisor {
    std::uint64_t d = 1;  ///< gcd(l, U) for U uniform on {1..l}
    std::uint64_t k = 1;  ///< l / d
};

/// P(d) = phi(l/d) / l. Throws std::invalid_argument for l == 0.
GcdDivisor gcd_divisor(std::uint64_t l, RngStream& rng);

/// Discrete arcsine draw on {0..n}: Beta-Binomial(n, 1/2, 1/2).
std::uint64_t arcsine_draw(std::uint64_t n, RngStream& rng);

/// In-place uniform Fisher-Yates shuffle.
template <class T>
void shuffle_in_place(std::span<T> items, RngStream& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

/// Uniformly random ordering of `items`.
template <class T>
std::vector<T> multiset_shuffle(std::vector<T> items, RngStream& rng) {
    shuffle_in_place(std::span<T>(items), rng);
    return items;
}

}  // namespace burnside
