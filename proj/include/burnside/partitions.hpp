#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "burnside/permutation.hpp"
#include "burnside/rng.hpp"

namespace burnside::partitions {

/// `multiplicity` parts of size `size`.
struct PartCount {
    std::uint64_t size = 0;
    std::uint64_t multiplicity = 0;
    friend bool operator==(const PartCount&, const PartCount&) = default;
};

/// Integer partition in exponential notation 1^{a_1} 2^{a_2} ... : a sparse map from
/// part size to multiplicity, ordered by part size, holding only non-zero multiplicities.
///
/// Storage is proportional to the number of distinct part sizes, which is at most
/// 2*sqrt(n); chain steps never touch a length-n array.
class Partition {
public:
    /// The empty partition of 0.
    Partition() = default;

    /// Throws std::invalid_argument on zero sizes, zero multiplicities, repeated sizes or
    /// an overflowing total. Input order is irrelevant.
    static Partition from_counts(std::vector<PartCount> counts);
    /// From a list of part sizes (any order, repeats allowed, zeros rejected).
    static Partition from_parts(std::span<const std::uint64_t> parts);
    /// 1^n
    static Partition ones(std::uint64_t n);
    /// The partition with the single part n (empty for n == 0).
    static Partition single_part(std::uint64_t n);
    /// Inverse of to_string(): "1^1*2^2*3^1"; the empty string is the partition of 0.
    /// Throws InputError on malformed text.
    static Partition parse(std::string_view text);
    /// `counts` must already be sorted by size with no repeats and no zeros, summing to n.
    static Partition from_sorted_counts_unchecked(std::uint64_t n, std::vector<PartCount> counts);

    std::uint64_t n() const noexcept { return n_; }
    std::span<const PartCount> counts() const noexcept { return counts_; }
    std::size_t num_keys() const noexcept { return counts_.size(); }
    std::uint64_t multiplicity(std::uint64_t size) const;
    std::uint64_t num_parts() const noexcept;
    std::uint64_t largest_part() const noexcept { return counts_.empty() ? 0 : counts_.back().size; }

    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::uint64_t n_ = 0;
    std::vector<PartCount> counts_;
};

/// Cycle type of a permutation.
Partition cycle_type(const Permutation& sigma);

/// One step of the lumped Burnside chain on partitions of n.
///
/// For each part size l with a_l > 0 the a_l parts are broken into stick-breaking
/// lengths lambda_j; each lambda_j contributes d copies of lambda_j * l / d where
/// d = gcd(l, U), U uniform on {1..l}. This is the cycle type of a uniform element of
/// the centraliser of any permutation with cycle type `a`. Stationary law: uniform on
/// partitions of n.
Partition lumped_step(const Partition& a, RngStream& rng);

/// Conjugate partition (reflected Young diagram). O(k log k) for k distinct part sizes.
Partition transpose(const Partition& a);

/// lumped_step(transpose(a)).
Partition reflected_step(const Partition& a, RngStream& rng);

/// Uniform element of the centraliser C(sigma): the l-cycles of sigma are permuted
/// uniformly among themselves and each is rotated by an independent uniform shift.
/// O(n) time and memory.
Permutation sample_centralizer(const Permutation& sigma, RngStream& rng);

/// One step of the unlumped chain for S_n acting on itself by conjugation.
inline Permutation unlumped_step(const Permutation& sigma, RngStream& rng) { return sample_centralizer(sigma, rng); }

/// A permutation in cycle notation: each cycle listed in cycle order (x, sigma(x),
/// sigma^2(x), ...), cycles concatenated in no particular order.
///
/// The unlumped chain runs on this form. A step reads every cycle it needs as a
/// contiguous run and writes its output sequentially, so the O(n) step does not chase
/// pointers through a length-n image array.
class CycleForm {
public:
    using value_type = Permutation::value_type;

    CycleForm() = default;
    static CycleForm from_permutation(const Permutation& sigma);
    /// From a cycle listing. Throws std::invalid_argument unless `elements` is a
    /// permutation of {0..n-1} and `offsets` runs from 0 to n in strictly increasing steps.
    static CycleForm from_cycles(std::vector<value_type> elements, std::vector<std::size_t> offsets);

    static CycleForm from_cycles_unchecked(std::vector<value_type> elements, std::vector<std::size_t> offsets);

    Permutation to_permutation() const;
    std::size_t size() const noexcept { return elements_.size(); }
    std::size_t num_cycles() const noexcept { return offsets_.size() - 1; }
    std::span<const value_type> cycle(std::size_t c) const {
        return {elements_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
    }
    Partition cycle_type() const;

private:
    friend void unlumped_step(const CycleForm& sigma, CycleForm& out, RngStream& rng);

    std::vector<value_type> elements_;
    std::vector<std::size_t> offsets_{0};
};

/// Uniform permutation among those with cycle type `a` (n < 2^32).
CycleForm random_with_cycle_type(const Partition& a, RngStream& rng);

/// Uniform element of the centraliser of `sigma`, in cycle form: the same law as
/// sample_centralizer.
CycleForm unlumped_step(const CycleForm& sigma, RngStream& rng);
/// As above, writing into `out` (which must not alias `sigma`) and reusing its storage.
void unlumped_step(const CycleForm& sigma, CycleForm& out, RngStream& rng);

struct PartitionFeatures {
    std::uint64_t num_parts = 0;
    std::uint64_t largest_part = 0;
    std::uint64_t ones = 0;
};

PartitionFeatures features(const Partition& a);

/// Every partition of n in reverse lexicographic order of the part list (n <= 60).
std::vector<Partition> enumerate_partitions(std::uint64_t n);

}  // namespace burnside::partitions
