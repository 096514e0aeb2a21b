#include "burnside/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace burnside {

std::uint64_t RngStream::below(std::uint64_t bound) {
    using u128 = unsigned __int128;
    u128 m = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<u128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t uniform_int(std::int64_t lo, std::int64_t hi, RngStream& rng) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range (lo > hi)");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    const std::uint64_t offset = span == std::numeric_limits<std::uint64_t>::max() ? rng() : rng.below(span + 1);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

PartsDraw stick_break(std::uint64_t n, RngStream& rng) {
    PartsDraw draw;
    draw.total = n;
    for_each_stick_part(n, rng, [&](std::uint64_t part) { draw.parts.push_back(part); });
    return draw;
}

GcdDivisor gcd_divisor(std::uint64_t l, RngStream& rng) {
    if (l == 0) throw std::invalid_argument("gcd_divisor: l must be positive");
    const std::uint64_t u = rng.below(l) + 1;
    const std::uint64_t d = std::gcd(l, u);
    return {d, l / d};
}

std::uint64_t arcsine_draw(std::uint64_t n, RngStream& rng) {
    if (n == 0) return 0;
    // Beta(1/2, 1/2) is the law of sin^2(pi U / 2).
    const double s = std::sin(std::numbers::pi * rng.uniform01() / 2.0);
    const double p = s * s;
    std::binomial_distribution<std::uint64_t> binomial(n, p);
    return binomial(rng);
}

}  // namespace burnside
