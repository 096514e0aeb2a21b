#include "burnside/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "burnside/errors.hpp"

namespace burnside::partitions {

namespace {

bool checked_add(std::uint64_t& acc, std::uint64_t size, std::uint64_t mult) {
    unsigned __int128 total = static_cast<unsigned __int128>(size) * mult + acc;
    if (total > std::numeric_limits<std::uint64_t>::max()) return false;
    acc = static_cast<std::uint64_t>(total);
    return true;
}

// Sorts (size, count) contributions and merges equal sizes.
std::vector<PartCount> merge_contributions(std::vector<PartCount>& raw) {
    std::sort(raw.begin(), raw.end(), [](const PartCount& x, const PartCount& y) { return x.size < y.size; });
    std::vector<PartCount> out;
    out.reserve(raw.size());
    for (const PartCount& pc : raw) {
        if (!out.empty() && out.back().size == pc.size)
            out.back().multiplicity += pc.multiplicity;
        else
            out.push_back(pc);
    }
    return out;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw InputError("partition: expected a positive integer, got '" + std::string(text) + "'");
    return value;
}

}  // namespace

Partition Partition::from_counts(std::vector<PartCount> counts) {
    std::sort(counts.begin(), counts.end(), [](const PartCount& x, const PartCount& y) { return x.size < y.size; });
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].size == 0 || counts[i].multiplicity == 0)
            throw std::invalid_argument("Partition: part sizes and multiplicities must be positive");
        if (i > 0 && counts[i].size == counts[i - 1].size)
            throw std::invalid_argument("Partition: repeated part size");
        if (!checked_add(n, counts[i].size, counts[i].multiplicity))
            throw std::invalid_argument("Partition: total overflows 64 bits");
    }
    return from_sorted_counts_unchecked(n, std::move(counts));
}

Partition Partition::from_sorted_counts_unchecked(std::uint64_t n, std::vector<PartCount> counts) {
    Partition p;
    p.n_ = n;
    p.counts_ = std::move(counts);
    return p;
}

Partition Partition::from_parts(std::span<const std::uint64_t> parts) {
    std::vector<PartCount> raw;
    raw.reserve(parts.size());
    for (std::uint64_t part : parts) {
        if (part == 0) throw std::invalid_argument("Partition: zero part");
        raw.push_back({part, 1});
    }
    return from_counts(merge_contributions(raw));
}

Partition Partition::ones(std::uint64_t n) {
    if (n == 0) return {};
    return from_sorted_counts_unchecked(n, {{1, n}});
}

Partition Partition::single_part(std::uint64_t n) {
    if (n == 0) return {};
    return from_sorted_counts_unchecked(n, {{n, 1}});
}

Partition Partition::parse(std::string_view text) {
    std::vector<PartCount> counts;
    if (text.empty()) return {};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('*', pos), text.size());
        const std::string_view factor = text.substr(pos, end - pos);
        const std::size_t caret = factor.find('^');
        if (caret == std::string_view::npos) throw InputError("partition: factor '" + std::string(factor) + "' lacks '^'");
        counts.push_back({parse_u64(factor.substr(0, caret)), parse_u64(factor.substr(caret + 1))});
        pos = end + 1;
    }
    try {
        return from_counts(std::move(counts));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

std::uint64_t Partition::multiplicity(std::uint64_t size) const {
    auto it = std::lower_bound(counts_.begin(), counts_.end(), size,
                               [](const PartCount& pc, std::uint64_t s) { return pc.size < s; });
    return it != counts_.end() && it->size == size ? it->multiplicity : 0;
}

std::uint64_t Partition::num_parts() const noexcept {
    std::uint64_t total = 0;
    for (const PartCount& pc : counts_) total += pc.multiplicity;
    return total;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        os << (i ? "*" : "") << counts_[i].size << '^' << counts_[i].multiplicity;
    return os.str();
}

Partition cycle_type(const Permutation& sigma) {
    std::vector<std::uint8_t> seen(sigma.size(), 0);
    std::vector<PartCount> raw;
    for (std::size_t start = 0; start < sigma.size(); ++start) {
        if (seen[start]) continue;
        std::uint64_t length = 0;
        for (std::size_t i = start; !seen[i]; i = sigma[i]) {
            seen[i] = 1;
            ++length;
        }
        raw.push_back({length, 1});
    }
    return Partition::from_sorted_counts_unchecked(sigma.size(), merge_contributions(raw));
}

Partition lumped_step(const Partition& a, RngStream& rng) {
    thread_local std::vector<PartCount> raw;
    raw.clear();
    for (const auto& [l, mult] : a.counts()) {
        if (l == 1) {
            for_each_stick_part(mult, rng, [&](std::uint64_t lambda) { raw.push_back({lambda, 1}); });
            continue;
        }
        for_each_stick_part(mult, rng, [&](std::uint64_t lambda) {
            const GcdDivisor g = gcd_divisor(l, rng);
            raw.push_back({lambda * g.k, g.d});
        });
    }
    return Partition::from_sorted_counts_unchecked(a.n(), merge_contributions(raw));
}

Partition transpose(const Partition& a) {
    const auto counts = a.counts();
    std::vector<PartCount> out;
    out.reserve(counts.size());
    std::uint64_t rows = 0;
    for (std::size_t i = counts.size(); i-- > 0;) {
        rows += counts[i].multiplicity;
        const std::uint64_t next = i > 0 ? counts[i - 1].size : 0;
        out.push_back({rows, counts[i].size - next});
    }
    return Partition::from_sorted_counts_unchecked(a.n(), std::move(out));
}

Partition reflected_step(const Partition& a, RngStream& rng) { return lumped_step(transpose(a), rng); }

Permutation sample_centralizer(const Permutation& sigma, RngStream& rng) {
    using value_type = Permutation::value_type;
    struct Cycle {
        std::size_t offset;
        std::size_t length;
    };
    const std::size_t n = sigma.size();

    // Elements listed cycle by cycle; each cycle starts at its smallest element.
    std::vector<value_type> order;
    order.reserve(n);
    std::vector<Cycle> cycles;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        const std::size_t offset = order.size();
        for (std::size_t i = start; !seen[i]; i = sigma[i]) {
            seen[i] = 1;
            order.push_back(static_cast<value_type>(i));
        }
        cycles.push_back({offset, order.size() - offset});
    }
    std::stable_sort(cycles.begin(), cycles.end(), [](const Cycle& x, const Cycle& y) { return x.length < y.length; });

    std::vector<value_type> tau(n);
    std::vector<std::size_t> target;
    for (std::size_t begin = 0; begin < cycles.size();) {
        const std::size_t l = cycles[begin].length;
        std::size_t end = begin;
        while (end < cycles.size() && cycles[end].length == l) ++end;

        // Block permutation of the l-cycles, then an independent rotation per cycle.
        target.resize(end - begin);
        std::iota(target.begin(), target.end(), begin);
        shuffle_in_place(std::span<std::size_t>(target), rng);
        for (std::size_t c = begin; c < end; ++c) {
            const value_type* src = order.data() + cycles[c].offset;
            const value_type* dst = order.data() + cycles[target[c - begin]].offset;
            const std::size_t shift = l == 1 ? 0 : rng.below(l);
            for (std::size_t r = 0; r < l - shift; ++r) tau[src[r]] = dst[r + shift];
            for (std::size_t r = l - shift; r < l; ++r) tau[src[r]] = dst[r + shift - l];
        }
        begin = end;
    }
    return Permutation::from_images_unchecked(std::move(tau));
}

CycleForm CycleForm::from_permutation(const Permutation& sigma) {
    CycleForm out;
    out.elements_.reserve(sigma.size());
    std::vector<std::uint8_t> seen(sigma.size(), 0);
    for (std::size_t start = 0; start < sigma.size(); ++start) {
        if (seen[start]) continue;
        for (std::size_t i = start; !seen[i]; i = sigma[i]) {
            seen[i] = 1;
            out.elements_.push_back(static_cast<value_type>(i));
        }
        out.offsets_.push_back(out.elements_.size());
    }
    return out;
}

CycleForm CycleForm::from_cycles(std::vector<value_type> elements, std::vector<std::size_t> offsets) {
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != elements.size())
        throw std::invalid_argument("CycleForm: offsets must run from 0 to n");
    for (std::size_t c = 1; c < offsets.size(); ++c)
        if (offsets[c] <= offsets[c - 1]) throw std::invalid_argument("CycleForm: empty cycle");
    std::vector<std::uint8_t> seen(elements.size(), 0);
    for (auto e : elements) {
        if (e >= elements.size() || seen[e]) throw std::invalid_argument("CycleForm: not a permutation");
        seen[e] = 1;
    }
    return from_cycles_unchecked(std::move(elements), std::move(offsets));
}

CycleForm CycleForm::from_cycles_unchecked(std::vector<value_type> elements, std::vector<std::size_t> offsets) {
    CycleForm out;
    out.elements_ = std::move(elements);
    out.offsets_ = std::move(offsets);
    return out;
}

Permutation CycleForm::to_permutation() const {
    std::vector<value_type> images(size());
    for (std::size_t c = 0; c < num_cycles(); ++c) {
        const auto cyc = cycle(c);
        for (std::size_t r = 0; r + 1 < cyc.size(); ++r) images[cyc[r]] = cyc[r + 1];
        images[cyc.back()] = cyc.front();
    }
    return Permutation::from_images_unchecked(std::move(images));
}

Partition CycleForm::cycle_type() const {
    std::vector<PartCount> raw;
    raw.reserve(num_cycles());
    for (std::size_t c = 0; c < num_cycles(); ++c) raw.push_back({offsets_[c + 1] - offsets_[c], 1});
    return Partition::from_sorted_counts_unchecked(size(), merge_contributions(raw));
}

CycleForm random_with_cycle_type(const Partition& a, RngStream& rng) {
    if (a.n() > std::numeric_limits<CycleForm::value_type>::max())
        throw std::invalid_argument("random_with_cycle_type: n must be below 2^32");
    std::vector<CycleForm::value_type> elements(a.n());
    std::iota(elements.begin(), elements.end(), 0u);
    shuffle_in_place(std::span<CycleForm::value_type>(elements), rng);
    std::vector<std::size_t> offsets{0};
    for (const auto& [l, mult] : a.counts())
        for (std::uint64_t c = 0; c < mult; ++c) offsets.push_back(offsets.back() + l);
    return CycleForm::from_cycles_unchecked(std::move(elements), std::move(offsets));
}

CycleForm unlumped_step(const CycleForm& sigma, RngStream& rng) {
    CycleForm out;
    unlumped_step(sigma, out, rng);
    return out;
}

void unlumped_step(const CycleForm& sigma, CycleForm& out, RngStream& rng) {
    using value_type = CycleForm::value_type;
    const std::size_t num_cycles = sigma.num_cycles();
    std::vector<std::uint32_t> ids(num_cycles);
    std::iota(ids.begin(), ids.end(), 0u);
    std::stable_sort(ids.begin(), ids.end(), [&](std::uint32_t x, std::uint32_t y) {
        return sigma.cycle(x).size() < sigma.cycle(y).size();
    });

    auto& elements = out.elements_;
    auto& offsets = out.offsets_;
    elements.clear();
    elements.reserve(sigma.size());
    offsets.assign(1, 0);
    std::vector<std::uint32_t> image;
    std::vector<std::uint64_t> shift;
    std::vector<std::uint8_t> visited;
    std::vector<const value_type*> base;
    for (std::size_t begin = 0; begin < num_cycles;) {
        const std::size_t l = sigma.cycle(ids[begin]).size();
        std::size_t end = begin;
        while (end < num_cycles && sigma.cycle(ids[end]).size() == l) ++end;
        const std::size_t a = end - begin;

        // tau maps position p of cycle i to position p + shift[i] of cycle image[i].
        image.resize(a);
        std::iota(image.begin(), image.end(), 0u);
        shuffle_in_place(std::span<std::uint32_t>(image), rng);
        shift.resize(a);
        for (auto& s : shift) s = l == 1 ? 0 : rng.below(l);

        // Each cycle of the block permutation, of length m and total shift s, yields
        // gcd(l, s) cycles of tau, each of length m * l / gcd(l, s).
        base.resize(a);
        for (std::size_t i = 0; i < a; ++i) base[i] = sigma.cycle(ids[begin + i]).data();
        visited.assign(a, 0);
        for (std::size_t i0 = 0; i0 < a; ++i0) {
            if (visited[i0]) continue;
            std::size_t m = 0;
            std::uint64_t total = 0;
            for (std::size_t i = i0; !visited[i]; i = image[i]) {
                visited[i] = 1;
                ++m;
                total = (total + shift[i]) % l;
            }
            const std::uint64_t d = std::gcd<std::uint64_t>(l, total);
            const std::uint64_t length = m * (l / d);
            for (std::uint64_t p = 0; p < d; ++p) {
                std::size_t i = i0;
                std::uint64_t pos = p;
                for (std::uint64_t t = 0; t < length; ++t) {
                    elements.push_back(base[i][pos]);
                    pos += shift[i];
                    if (pos >= l) pos -= l;
                    i = image[i];
                }
                offsets.push_back(elements.size());
            }
        }
        begin = end;
    }
}

PartitionFeatures features(const Partition& a) {
    return {a.num_parts(), a.largest_part(), a.multiplicity(1)};
}

std::vector<Partition> enumerate_partitions(std::uint64_t n) {
    if (n > 60) throw ResourceLimitError("enumerate_partitions: n must be at most 60");
    std::vector<Partition> out;
    std::vector<std::uint64_t> parts;
    auto recurse = [&](auto&& self, std::uint64_t remaining, std::uint64_t max_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition::from_parts(parts));
            return;
        }
        for (std::uint64_t p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    recurse(recurse, n, n);
    return out;
}

}  // namespace burnside::partitions
