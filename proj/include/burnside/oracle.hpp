#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "burnside/kernel.hpp"
#include "burnside/permutation.hpp"
#include "burnside/tables.hpp"

namespace burnside::oracle {

// Brute-force ground truth for the Burnside process at desk scale. Everything here
// enumerates the full state space and group, so instances are capped:
// conjugation n <= 6, binary n <= 8, double cosets n <= 8 with at most 4 blocks per
// margin, and |X| * |G| <= 10^8.

enum class ActionKind { conjugation, binary, double_coset };

/// A state is a word: a 0/1 tuple for the binary action, a permutation image array otherwise.
using State = std::vector<std::uint32_t>;

/// A finite group acting on a finite set, with both enumerated in lexicographic order.
///
/// Group elements are permutations. For the double-coset action the pair (h, k) in
/// S_lambda x S_mu is stored as one permutation of 2n points: h on {0..n-1} and k
/// shifted onto {n..2n-1}, so products of pairs are products of these permutations.
///
/// Right actions, with products composing as functions ((gh)(i) = g(h(i))):
///   binary:       (x^g)_i = x_{g(i)}
///   conjugation:  sigma^tau = tau^{-1} sigma tau
///   double coset: s^{(h,k)} = h^{-1} s k
///
/// Fixed sets and stabilisers are computed at construction; a built instance is
/// immutable and can be shared across threads.
class ActionInstance {
public:
    static ActionInstance conjugation(std::size_t n);
    static ActionInstance binary(std::size_t n);
    static ActionInstance double_coset(const tables::Composition& lambda, const tables::Composition& mu);

    ActionKind kind() const noexcept { return kind_; }
    std::size_t degree() const noexcept { return n_; }
    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t group_order() const noexcept { return group_.size(); }
    const State& state(std::size_t x) const { return states_.at(x); }
    const Permutation& element(std::size_t g) const { return group_.at(g); }
    const tables::Composition& lambda() const noexcept { return lambda_; }
    const tables::Composition& mu() const noexcept { return mu_; }

    /// Index of a state; throws std::out_of_range if it is not in X.
    std::size_t index_of(const State& s) const;
    /// Index of a group element; throws std::out_of_range if it is not in G.
    std::size_t element_index(const Permutation& g) const;
    std::size_t identity_index() const { return element_index(Permutation(group_.front().size())); }

    State act(const State& s, const Permutation& g) const;
    std::size_t act(std::size_t x, std::size_t g) const { return index_of(act(states_[x], group_[g])); }

    /// Generators of G (adjacent transpositions of each symmetric factor).
    std::vector<Permutation> generators() const;

    /// Text used to label the orbit of x: a partition for conjugation, the weight for
    /// binary tuples, the table f(s) for double cosets.
    std::string orbit_label(std::size_t x) const;
    std::string state_label(std::size_t x) const;

    /// X^g as sorted state indices.
    const std::vector<std::uint32_t>& fixed_points(std::size_t g) const { return fixed_.at(g); }
    /// G_x as sorted element indices.
    const std::vector<std::uint32_t>& stabilizer_of(std::size_t x) const { return stabilizers_.at(x); }

private:
    ActionInstance() = default;
    void build_fixed_sets();

    ActionKind kind_ = ActionKind::conjugation;
    std::size_t n_ = 0;
    tables::Composition lambda_;
    tables::Composition mu_;
    std::vector<State> states_;
    std::vector<Permutation> group_;
    std::vector<std::vector<std::uint32_t>> fixed_;
    std::vector<std::vector<std::uint32_t>> stabilizers_;
};

/// Orbits as sorted state-index lists, ordered by smallest member. Union-find over generators.
std::vector<std::vector<std::size_t>> orbits(const ActionInstance& a);

/// G_x as element indices.
std::vector<std::size_t> stabilizer(const ActionInstance& a, std::size_t x);

/// X^g as state indices.
std::vector<std::size_t> fixed_set(const ActionInstance& a, std::size_t g);

/// P(x, y) = (1/|G_x|) sum_{g in G_x cap G_y} 1/|X^g| over all states.
/// Throws ResourceLimitError above 4096 states.
KernelMatrix exact_kernel(const ActionInstance& a);

struct LumpedKernel {
    KernelMatrix kernel;                      ///< built from the first state of each orbit
    double max_representative_deviation = 0;  ///< worst disagreement over all other representatives
};

/// Pbar(O_x, O_y) = sum_{z in O_y} P(x, z), labelled by orbit_label.
LumpedKernel lumped_kernel(const ActionInstance& a);

/// Conjugation only, where X = G = S_n: the half step x -> g uniform in G_x = C(x), read
/// as a move on states. exact_kernel is its square. The partition chain runs this half step.
KernelMatrix centralizer_kernel(const ActionInstance& a);
LumpedKernel lumped_centralizer_kernel(const ActionInstance& a);

/// (1/|G|) sum_g |X^g| accumulated exactly. Throws ConsistencyError if not integral.
std::uint64_t burnside_orbit_count(const ActionInstance& a);

/// |S_lambda sigma S_mu| = |S_lambda| |S_mu| / prod_ij f(sigma)_ij!. n <= 20.
std::uint64_t double_coset_size(const tables::Composition& lambda, const tables::Composition& mu,
                                const Permutation& sigma);

using tables::table_of_permutation;

/// x^Id = x and (x^g)^h = x^{gh} for every state and every pair of elements. Large
/// instances take h over the generators, which implies the general case.
bool action_axioms_hold(const ActionInstance& a);

/// |G| = |O_x| |G_x| for every state.
bool orbit_stabilizer_holds(const ActionInstance& a);

/// For all x, s: G_{x^s} = s^{-1} G_x s, and for all h, s: X^{s^{-1} h s} = {x^s : x in X^h}.
/// Large instances check s over the generators, which suffices given the action axioms.
bool conjugate_stabilizer_check(const ActionInstance& a);

/// The double-coset characterisation (double-coset instances only):
/// (h,k) fixes s iff k = s^{-1} h s; G_s is in bijection with H cap sKs^{-1} via
/// h -> (h, s^{-1} h s); a non-empty fixed set of (h,k) equals C_G(h) s.
bool double_coset_lemma_check(const ActionInstance& a);

/// max over x,y of |pi(x)P(x,y) - pi(y)P(y,x)| with pi(x) = 1/(Z |O_x|).
double detailed_balance_deviation(const ActionInstance& a, const KernelMatrix& exact);

}  // namespace burnside::oracle
