#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace burnside {

class RngStream;

/// Bijection on {0, ..., n-1}, stored as its image array.
///
/// Products follow function composition: (a * b)(i) == a(b(i)).
class Permutation {
public:
    using value_type = std::uint32_t;

    Permutation() = default;
    /// Identity on n points.
    explicit Permutation(std::size_t n);
    /// Throws std::invalid_argument unless `images` is a bijection on {0..n-1}.
    explicit Permutation(std::vector<value_type> images);

    /// Skips the bijection check; for internal builders that construct valid maps.
    static Permutation from_images_unchecked(std::vector<value_type> images);
    static Permutation uniform(std::size_t n, RngStream& rng);

    std::size_t size() const noexcept { return images_.size(); }
    value_type operator[](std::size_t i) const { return images_[i]; }
    std::span<const value_type> images() const noexcept { return images_; }

    Permutation inverse() const;
    bool is_identity() const noexcept;
    /// Cycles in order of their smallest element, each starting at that element.
    std::vector<std::vector<value_type>> cycles() const;
    /// One-line notation, 1-based, e.g. "[2 1 3]".
    std::string to_string() const;

    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<value_type> images_;
};

}  // namespace burnside
