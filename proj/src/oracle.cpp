#include "burnside/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "burnside/errors.hpp"
#include "burnside/partitions.hpp"

namespace burnside::oracle {

namespace {

constexpr std::size_t kMaxActions = 100'000'000;
constexpr std::size_t kMaxKernelStates = 4096;

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation::value_type> w(n);
    std::iota(w.begin(), w.end(), 0u);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images_unchecked(w));
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

// Young subgroup of the consecutive blocks of `c`, in lexicographic order.
std::vector<Permutation> young_subgroup(const tables::Composition& c) {
    const auto block = c.block_of_points();
    std::vector<Permutation> out;
    for (Permutation& p : all_permutations(c.total())) {
        bool keeps = true;
        for (std::size_t i = 0; i < p.size() && keeps; ++i) keeps = block[p[i]] == block[i];
        if (keeps) out.push_back(std::move(p));
    }
    return out;
}

Permutation embed_pair(const Permutation& h, const Permutation& k) {
    const std::size_t n = h.size();
    std::vector<Permutation::value_type> w(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = h[i];
        w[n + i] = static_cast<Permutation::value_type>(k[i] + n);
    }
    return Permutation::from_images_unchecked(std::move(w));
}

std::pair<Permutation, Permutation> split_pair(const Permutation& g) {
    const std::size_t n = g.size() / 2;
    std::vector<Permutation::value_type> h(n), k(n);
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = g[i];
        k[i] = static_cast<Permutation::value_type>(g[n + i] - n);
    }
    return {Permutation::from_images_unchecked(std::move(h)), Permutation::from_images_unchecked(std::move(k))};
}

std::size_t lehmer_rank(const State& w) {
    const std::size_t n = w.size();
    std::size_t rank = 0;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] >= n || seen[w[i]]) throw std::out_of_range("state is not a permutation of the right size");
        seen[w[i]] = true;
        std::size_t smaller_later = 0;
        for (std::size_t j = i + 1; j < n; ++j) smaller_later += w[j] < w[i];
        rank = rank * (n - i) + smaller_later;
    }
    return rank;
}

void adjacent_transpositions(const tables::Composition& blocks, std::size_t offset, std::size_t width,
                             std::vector<Permutation>& out) {
    std::size_t start = 0;
    for (std::uint64_t len : blocks.parts()) {
        for (std::size_t i = start; i + 1 < start + len; ++i) {
            Permutation id(width);
            std::vector<Permutation::value_type> w(id.images().begin(), id.images().end());
            std::swap(w[offset + i], w[offset + i + 1]);
            out.push_back(Permutation::from_images_unchecked(std::move(w)));
        }
        start += len;
    }
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void check_action_budget(std::size_t states, std::size_t group) {
    if (static_cast<unsigned __int128>(states) * group > kMaxActions)
        throw ResourceLimitError("oracle: |X| * |G| exceeds 10^8");
}

}  // namespace

ActionInstance ActionInstance::conjugation(std::size_t n) {
    if (n == 0 || n > 6) throw ResourceLimitError("oracle: conjugation action supports 1 <= n <= 6");
    ActionInstance a;
    a.kind_ = ActionKind::conjugation;
    a.n_ = n;
    a.group_ = all_permutations(n);
    for (const Permutation& p : a.group_) a.states_.emplace_back(p.images().begin(), p.images().end());
    a.build_fixed_sets();
    return a;
}

ActionInstance ActionInstance::binary(std::size_t n) {
    if (n == 0 || n > 8) throw ResourceLimitError("oracle: binary action supports 1 <= n <= 8");
    ActionInstance a;
    a.kind_ = ActionKind::binary;
    a.n_ = n;
    a.group_ = all_permutations(n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        State s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> (n - 1 - i)) & 1u;
        a.states_.push_back(std::move(s));
    }
    a.build_fixed_sets();
    return a;
}

ActionInstance ActionInstance::double_coset(const tables::Composition& lambda, const tables::Composition& mu) {
    const std::size_t n = lambda.total();
    if (mu.total() != n) throw std::invalid_argument("oracle: compositions of different totals");
    if (n == 0 || n > 8 || lambda.size() > 4 || mu.size() > 4)
        throw ResourceLimitError("oracle: double-coset action supports 1 <= n <= 8 and at most 4 blocks");
    std::uint64_t h_order = 1, k_order = 1;
    for (auto p : lambda.parts()) h_order *= factorial(p);
    for (auto p : mu.parts()) k_order *= factorial(p);
    check_action_budget(factorial(n), h_order * k_order);

    ActionInstance a;
    a.kind_ = ActionKind::double_coset;
    a.n_ = n;
    a.lambda_ = lambda;
    a.mu_ = mu;
    for (const Permutation& p : all_permutations(n)) a.states_.emplace_back(p.images().begin(), p.images().end());
    const auto hs = young_subgroup(lambda);
    const auto ks = young_subgroup(mu);
    for (const Permutation& h : hs)
        for (const Permutation& k : ks) a.group_.push_back(embed_pair(h, k));
    std::sort(a.group_.begin(), a.group_.end());
    a.build_fixed_sets();
    return a;
}

void ActionInstance::build_fixed_sets() {
    check_action_budget(states_.size(), group_.size());
    fixed_.assign(group_.size(), {});
    stabilizers_.assign(states_.size(), {});
    for (std::size_t g = 0; g < group_.size(); ++g) {
        for (std::size_t x = 0; x < states_.size(); ++x) {
            if (act(states_[x], group_[g]) == states_[x]) {
                fixed_[g].push_back(static_cast<std::uint32_t>(x));
                stabilizers_[x].push_back(static_cast<std::uint32_t>(g));
            }
        }
    }
}

std::size_t ActionInstance::index_of(const State& s) const {
    if (s.size() != n_) throw std::out_of_range("state has the wrong length");
    if (kind_ == ActionKind::binary) {
        std::size_t idx = 0;
        for (auto bit : s) {
            if (bit > 1) throw std::out_of_range("binary state entries must be 0 or 1");
            idx = idx * 2 + bit;
        }
        return idx;
    }
    return lehmer_rank(s);
}

std::size_t ActionInstance::element_index(const Permutation& g) const {
    auto it = std::lower_bound(group_.begin(), group_.end(), g);
    if (it == group_.end() || *it != g) throw std::out_of_range("permutation is not an element of the group");
    return static_cast<std::size_t>(it - group_.begin());
}

State ActionInstance::act(const State& s, const Permutation& g) const {
    State out(n_);
    switch (kind_) {
        case ActionKind::binary:
            for (std::size_t i = 0; i < n_; ++i) out[i] = s[g[i]];
            break;
        case ActionKind::conjugation: {
            // tau^{-1} sigma tau, i.e. i -> tau^{-1}(sigma(tau(i)))
            State inv(n_);
            for (std::size_t i = 0; i < n_; ++i) inv[g[i]] = static_cast<std::uint32_t>(i);
            for (std::size_t i = 0; i < n_; ++i) out[i] = inv[s[g[i]]];
            break;
        }
        case ActionKind::double_coset: {
            // h^{-1} s k, i.e. i -> h^{-1}(s(k(i)))
            State h_inv(n_);
            for (std::size_t i = 0; i < n_; ++i) h_inv[g[i]] = static_cast<std::uint32_t>(i);
            for (std::size_t i = 0; i < n_; ++i) out[i] = h_inv[s[g[n_ + i] - n_]];
            break;
        }
    }
    return out;
}

std::vector<Permutation> ActionInstance::generators() const {
    std::vector<Permutation> gens;
    if (kind_ == ActionKind::double_coset) {
        adjacent_transpositions(lambda_, 0, 2 * n_, gens);
        adjacent_transpositions(mu_, n_, 2 * n_, gens);
    } else {
        adjacent_transpositions(tables::Composition({n_}), 0, n_, gens);
    }
    return gens;
}

std::string ActionInstance::orbit_label(std::size_t x) const {
    const State& s = states_.at(x);
    switch (kind_) {
        case ActionKind::binary:
            return std::to_string(std::accumulate(s.begin(), s.end(), std::size_t{0}));
        case ActionKind::conjugation:
            return partitions::cycle_type(Permutation::from_images_unchecked(s)).to_string();
        case ActionKind::double_coset:
            return tables::table_of_permutation(lambda_, mu_, Permutation::from_images_unchecked(s)).to_string();
    }
    return {};
}

std::string ActionInstance::state_label(std::size_t x) const {
    const State& s = states_.at(x);
    if (kind_ == ActionKind::binary) {
        std::string out;
        for (auto bit : s) out += static_cast<char>('0' + bit);
        return out;
    }
    return Permutation::from_images_unchecked(s).to_string();
}

std::vector<std::vector<std::size_t>> orbits(const ActionInstance& a) {
    if (a.num_states() > 1'000'000) throw ResourceLimitError("orbits: more than 10^6 states");
    UnionFind uf(a.num_states());
    for (const Permutation& gen : a.generators())
        for (std::size_t x = 0; x < a.num_states(); ++x) uf.unite(x, a.index_of(a.act(a.state(x), gen)));
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> slot(a.num_states(), SIZE_MAX);
    for (std::size_t x = 0; x < a.num_states(); ++x) {
        const std::size_t root = uf.find(x);
        if (slot[root] == SIZE_MAX) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].push_back(x);
    }
    return out;
}

std::vector<std::size_t> stabilizer(const ActionInstance& a, std::size_t x) {
    const auto& s = a.stabilizer_of(x);
    return {s.begin(), s.end()};
}

std::vector<std::size_t> fixed_set(const ActionInstance& a, std::size_t g) {
    const auto& f = a.fixed_points(g);
    return {f.begin(), f.end()};
}

KernelMatrix exact_kernel(const ActionInstance& a) {
    if (a.num_states() > kMaxKernelStates) throw ResourceLimitError("exact_kernel: more than 4096 states");
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < a.num_states(); ++x) labels.push_back(a.state_label(x));
    KernelMatrix kernel(std::move(labels));
    for (std::size_t g = 0; g < a.group_order(); ++g) {
        const auto& fixed = a.fixed_points(g);
        const double uniform_fixed = 1.0 / static_cast<double>(fixed.size());
        for (auto x : fixed) {
            const double mass = uniform_fixed / static_cast<double>(a.stabilizer_of(x).size());
            for (auto y : fixed) kernel(x, y) += mass;
        }
    }
    return kernel;
}

namespace {

LumpedKernel lump(const ActionInstance& a, const KernelMatrix& full) {
    const auto orbs = orbits(a);
    std::vector<std::size_t> orbit_of(a.num_states());
    std::vector<std::string> labels;
    for (std::size_t o = 0; o < orbs.size(); ++o) {
        labels.push_back(a.orbit_label(orbs[o].front()));
        for (auto x : orbs[o]) orbit_of[x] = o;
    }
    LumpedKernel out{KernelMatrix(std::move(labels)), 0.0};
    std::vector<double> row(orbs.size());
    for (std::size_t o = 0; o < orbs.size(); ++o) {
        for (std::size_t r = 0; r < orbs[o].size(); ++r) {
            std::fill(row.begin(), row.end(), 0.0);
            const auto p = full.row(orbs[o][r]);
            for (std::size_t z = 0; z < p.size(); ++z) row[orbit_of[z]] += p[z];
            for (std::size_t t = 0; t < orbs.size(); ++t) {
                if (r == 0)
                    out.kernel(o, t) = row[t];
                else
                    out.max_representative_deviation =
                        std::max(out.max_representative_deviation, std::abs(row[t] - out.kernel(o, t)));
            }
        }
    }
    return out;
}

}  // namespace

LumpedKernel lumped_kernel(const ActionInstance& a) { return lump(a, exact_kernel(a)); }

KernelMatrix centralizer_kernel(const ActionInstance& a) {
    if (a.kind() != ActionKind::conjugation)
        throw std::invalid_argument("centralizer_kernel: conjugation instances only");
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < a.num_states(); ++x) labels.push_back(a.state_label(x));
    KernelMatrix kernel(std::move(labels));
    for (std::size_t x = 0; x < a.num_states(); ++x) {
        const auto& stab = a.stabilizer_of(x);
        for (auto g : stab) {
            const auto images = a.element(g).images();
            kernel(x, a.index_of(State(images.begin(), images.end()))) += 1.0 / static_cast<double>(stab.size());
        }
    }
    return kernel;
}

LumpedKernel lumped_centralizer_kernel(const ActionInstance& a) { return lump(a, centralizer_kernel(a)); }

std::uint64_t burnside_orbit_count(const ActionInstance& a) {
    unsigned __int128 fixed_total = 0;
    for (std::size_t g = 0; g < a.group_order(); ++g) fixed_total += a.fixed_points(g).size();
    if (fixed_total % a.group_order() != 0)
        throw ConsistencyError("burnside_orbit_count: average number of fixed points is not an integer");
    return static_cast<std::uint64_t>(fixed_total / a.group_order());
}

std::uint64_t double_coset_size(const tables::Composition& lambda, const tables::Composition& mu,
                                const Permutation& sigma) {
    if (lambda.total() != mu.total()) throw std::invalid_argument("double_coset_size: totals differ");
    if (lambda.total() > 20) throw ResourceLimitError("double_coset_size: n must be at most 20");
    const auto table = tables::table_of_permutation(lambda, mu, sigma);
    unsigned __int128 numerator = 1;
    for (auto p : lambda.parts()) numerator *= factorial(p);
    for (auto p : mu.parts()) numerator *= factorial(p);
    unsigned __int128 denominator = 1;
    for (auto t : table.entries().data()) denominator *= factorial(t);
    return static_cast<std::uint64_t>(numerator / denominator);
}

bool action_axioms_hold(const ActionInstance& a) {
    const Permutation& id = a.element(a.identity_index());
    for (std::size_t x = 0; x < a.num_states(); ++x)
        if (a.act(a.state(x), id) != a.state(x)) return false;
    // Compatibility for all g and all h in G when affordable; otherwise for h over a
    // generating set, which implies the general case by induction on word length.
    std::vector<Permutation> hs;
    if (a.num_states() * a.group_order() * a.group_order() <= 20'000'000)
        for (std::size_t h = 0; h < a.group_order(); ++h) hs.push_back(a.element(h));
    else
        hs = a.generators();
    for (std::size_t x = 0; x < a.num_states(); ++x) {
        for (std::size_t g = 0; g < a.group_order(); ++g) {
            const State xg = a.act(a.state(x), a.element(g));
            for (const Permutation& h : hs)
                if (a.act(xg, h) != a.act(a.state(x), a.element(g) * h)) return false;
        }
    }
    return true;
}

bool orbit_stabilizer_holds(const ActionInstance& a) {
    for (const auto& orbit : orbits(a))
        for (auto x : orbit)
            if (orbit.size() * a.stabilizer_of(x).size() != a.group_order()) return false;
    return true;
}

bool conjugate_stabilizer_check(const ActionInstance& a) {
    // Over all s when affordable; otherwise over generators, which covers every s by
    // induction once the action axioms hold.
    std::size_t stabiliser_total = 0;
    for (std::size_t x = 0; x < a.num_states(); ++x) stabiliser_total += a.stabilizer_of(x).size();
    std::vector<Permutation> ss;
    if (a.group_order() * stabiliser_total <= 20'000'000)
        for (std::size_t g = 0; g < a.group_order(); ++g) ss.push_back(a.element(g));
    else
        ss = a.generators();

    std::vector<std::uint32_t> expected;
    for (const Permutation& sp : ss) {
        const Permutation s_inv = sp.inverse();
        const std::size_t s = a.element_index(sp);
        for (std::size_t x = 0; x < a.num_states(); ++x) {
            expected.clear();
            for (auto g : a.stabilizer_of(x))
                expected.push_back(static_cast<std::uint32_t>(a.element_index(s_inv * a.element(g) * sp)));
            std::sort(expected.begin(), expected.end());
            if (expected != a.stabilizer_of(a.act(x, s))) return false;
        }
        for (std::size_t h = 0; h < a.group_order(); ++h) {
            expected.clear();
            for (auto x : a.fixed_points(h)) expected.push_back(static_cast<std::uint32_t>(a.act(x, s)));
            std::sort(expected.begin(), expected.end());
            if (expected != a.fixed_points(a.element_index(s_inv * a.element(h) * sp))) return false;
        }
    }
    return true;
}

bool double_coset_lemma_check(const ActionInstance& a) {
    if (a.kind() != ActionKind::double_coset)
        throw std::invalid_argument("double_coset_lemma_check: needs a double-coset instance");
    const std::size_t n = a.degree();
    const auto hs = young_subgroup(a.lambda());
    const auto ks = young_subgroup(a.mu());
    const auto all = all_permutations(n);

    for (std::size_t x = 0; x < a.num_states(); ++x) {
        const Permutation s = Permutation::from_images_unchecked(a.state(x));
        const Permutation s_inv = s.inverse();
        const auto& stab = a.stabilizer_of(x);
        // (h,k) fixes s iff k = s^{-1} h s
        for (std::size_t g = 0; g < a.group_order(); ++g) {
            const auto [h, k] = split_pair(a.element(g));
            const bool fixes = std::binary_search(stab.begin(), stab.end(), static_cast<std::uint32_t>(g));
            if (fixes != (k == s_inv * h * s)) return false;
        }
        // G_s = {(h, s^{-1} h s) : h in H cap s K s^{-1}}
        std::vector<std::uint32_t> expected;
        for (const Permutation& h : hs) {
            const Permutation k = s_inv * h * s;
            if (std::binary_search(ks.begin(), ks.end(), k))
                expected.push_back(static_cast<std::uint32_t>(a.element_index(embed_pair(h, k))));
        }
        std::sort(expected.begin(), expected.end());
        if (expected != stab) return false;
    }
    // Non-empty fixed sets are right cosets C_G(h) s.
    for (std::size_t g = 0; g < a.group_order(); ++g) {
        const auto& fixed = a.fixed_points(g);
        if (fixed.empty()) continue;
        const Permutation h = split_pair(a.element(g)).first;
        const Permutation s0 = Permutation::from_images_unchecked(a.state(fixed.front()));
        std::vector<std::uint32_t> coset;
        for (const Permutation& c : all)
            if (c * h == h * c) {
                const Permutation t = c * s0;
                coset.push_back(static_cast<std::uint32_t>(a.index_of(State(t.images().begin(), t.images().end()))));
            }
        std::sort(coset.begin(), coset.end());
        if (coset != fixed) return false;
    }
    return true;
}

double detailed_balance_deviation(const ActionInstance& a, const KernelMatrix& exact) {
    const auto orbs = orbits(a);
    std::vector<double> pi(a.num_states());
    const double z = static_cast<double>(orbs.size());
    for (const auto& orbit : orbs)
        for (auto x : orbit) pi[x] = 1.0 / (z * static_cast<double>(orbit.size()));
    double worst = 0.0;
    for (std::size_t x = 0; x < a.num_states(); ++x)
        for (std::size_t y = x + 1; y < a.num_states(); ++y)
            worst = std::max(worst, std::abs(pi[x] * exact(x, y) - pi[y] * exact(y, x)));
    return worst;
}

}  // namespace burnside::oracle
