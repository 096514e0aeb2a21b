#include "burnside/permutation.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "burnside/rng.hpp"

namespace burnside {

Permutation::Permutation(std::size_t n) : images_(n) {
    if (n > std::numeric_limits<value_type>::max())
        throw std::invalid_argument("Permutation: size exceeds 32-bit index range");
    std::iota(images_.begin(), images_.end(), value_type{0});
}

Permutation::Permutation(std::vector<value_type> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (value_type v : images_) {
        if (v >= images_.size() || seen[v])
            throw std::invalid_argument("Permutation: image array is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::from_images_unchecked(std::vector<value_type> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
}

Permutation Permutation::uniform(std::size_t n, RngStream& rng) {
    Permutation p(n);
    shuffle_in_place(std::span<value_type>(p.images_), rng);
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<value_type> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<value_type>(i);
    return from_images_unchecked(std::move(inv));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

std::vector<std::vector<Permutation::value_type>> Permutation::cycles() const {
    std::vector<std::vector<value_type>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
        if (seen[start]) continue;
        auto& cycle = out.emplace_back();
        for (auto i = static_cast<value_type>(start); !seen[i]; i = images_[i]) {
            seen[i] = true;
            cycle.push_back(i);
        }
    }
    return out;
}

std::string Permutation::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < images_.size(); ++i) os << (i ? " " : "") << images_[i] + 1;
    os << ']';
    return os.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Permutation product: size mismatch");
    std::vector<Permutation::value_type> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.images_[b.images_[i]];
    return Permutation::from_images_unchecked(std::move(out));
}

}  // namespace burnside
