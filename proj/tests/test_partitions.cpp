#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "burnside/errors.hpp"
#include "burnside/oracle.hpp"
#include "burnside/partitions.hpp"
#include "support/stats.hpp"

using namespace burnside;
using namespace burnside::partitions;
using testing_support::chi_square_gof;

namespace {

bool valid(const Partition& a) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.counts().size(); ++i) {
        const auto& pc = a.counts()[i];
        if (pc.size == 0 || pc.multiplicity == 0) return false;
        if (i > 0 && a.counts()[i - 1].size >= pc.size) return false;
        total += pc.size * pc.multiplicity;
    }
    return total == a.n() && static_cast<double>(a.num_keys()) <= 2 * std::sqrt(static_cast<double>(a.n())) + 1e-9;
}

// Oracle rows of the lumped centraliser half step on partitions of 5, keyed by partition text.
std::map<std::string, std::map<std::string, double>> lumped_rows_of_5() {
    const auto a = oracle::ActionInstance::conjugation(5);
    const auto k = oracle::lumped_centralizer_kernel(a).kernel;
    std::map<std::string, std::map<std::string, double>> rows;
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = 0; j < k.size(); ++j) rows[k.labels()[i]][k.labels()[j]] = k(i, j);
    return rows;
}

}  // namespace

TEST_CASE("text form round trips and rejects malformed input") {
    const auto a = Partition::parse("1^1*2^2*3^1");
    CHECK(a.n() == 8);
    CHECK(a.to_string() == "1^1*2^2*3^1");
    CHECK(Partition::parse("3^1*1^1*2^2") == a);
    CHECK(Partition::parse("").n() == 0);
    for (const char* bad : {"1^", "^2", "a^1", "0^2", "2^0", "1^1*1^2", "1^1*", "12", "1^1**2^1", "-1^2"})
        CHECK_THROWS_AS(Partition::parse(bad), InputError);
}

TEST_CASE("construction validates counts") {
    CHECK_THROWS_AS(Partition::from_counts({{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_counts({{2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_counts({{2, 1}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_counts({{UINT64_MAX, 2}}), std::invalid_argument);
    const auto a = Partition::from_parts(std::vector<std::uint64_t>{3, 1, 3, 2});
    CHECK(a.to_string() == "1^1*2^1*3^2");
    CHECK(a.multiplicity(3) == 2);
    CHECK(a.multiplicity(4) == 0);
}

TEST_CASE("features") {
    const auto a = Partition::parse("1^1*2^2*3^1");
    const auto f = features(a);
    CHECK(f.num_parts == 4);
    CHECK(f.largest_part == 3);
    CHECK(f.ones == 1);
    const auto g = features(Partition::ones(9));
    CHECK(g.num_parts == 9);
    CHECK(g.largest_part == 1);
    CHECK(g.ones == 9);
}

TEST_CASE("enumeration gives p(n)") {
    CHECK(enumerate_partitions(0).size() == 1);
    CHECK(enumerate_partitions(5).size() == 7);
    CHECK(enumerate_partitions(10).size() == 42);
    CHECK(enumerate_partitions(20).size() == 627);
    CHECK_THROWS_AS(enumerate_partitions(61), ResourceLimitError);
    for (const auto& a : enumerate_partitions(12)) CHECK(valid(a));
}

TEST_CASE("transpose") {
    CHECK(transpose(Partition::parse("1^1*3^1*4^1")) == Partition::parse("1^1*2^2*3^1"));
    CHECK(transpose(Partition::ones(7)) == Partition::single_part(7));
    CHECK(transpose(Partition()) == Partition());
    for (const auto& a : enumerate_partitions(9)) {
        CHECK(transpose(transpose(a)) == a);
        CHECK(features(a).num_parts == features(transpose(a)).largest_part);
    }
    RngStream rng(11);
    auto a = Partition::ones(1'000'000);
    for (int i = 0; i < 10'000; ++i) {
        a = reflected_step(a, rng);
        REQUIRE(transpose(transpose(a)) == a);
        REQUIRE(features(a).num_parts == transpose(a).largest_part());
    }
}

TEST_CASE("lumped step trivial cases") {
    RngStream rng(12);
    CHECK(lumped_step(Partition::ones(1), rng) == Partition::ones(1));
    CHECK(lumped_step(Partition(), rng) == Partition());
    CHECK(reflected_step(Partition(), rng) == Partition());
}

TEST_CASE("every step yields a valid partition with the feature invariants") {
    RngStream rng(13);
    for (std::uint64_t n : {2u, 17u, 1000u, 123457u}) {
        auto a = Partition::ones(n);
        for (int i = 0; i < 200; ++i) {
            a = i % 2 ? lumped_step(a, rng) : reflected_step(a, rng);
            REQUIRE(valid(a));
            const auto f = features(a);
            REQUIRE(f.largest_part * f.num_parts >= n);
            REQUIRE(f.ones <= f.num_parts);
        }
    }
}

TEST_CASE("from 1^n the lumped step has the cycle-type law of a uniform permutation") {
    // Law from enumerating S_6.
    std::map<std::string, double> probs;
    std::vector<Permutation::value_type> w(6);
    std::iota(w.begin(), w.end(), 0u);
    do probs[cycle_type(Permutation(w)).to_string()] += 1.0 / 720;
    while (std::next_permutation(w.begin(), w.end()));
    RngStream rng(14);
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 300000; ++i) ++counts[lumped_step(Partition::ones(6), rng).to_string()];
    CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("from a single part the step is b_{n/d} = d with probability phi(n/d)/n") {
    RngStream rng(15);
    for (std::uint64_t n : {12u, 30u}) {
        std::map<std::string, double> probs;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0)
                probs[Partition::from_counts({{n / d, d}}).to_string()] =
                    static_cast<double>(testing_support::totient(n / d)) / static_cast<double>(n);
        std::map<std::string, std::uint64_t> counts;
        for (int i = 0; i < 200000; ++i) ++counts[lumped_step(Partition::single_part(n), rng).to_string()];
        CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
    }
}

TEST_CASE("one-step laws match the brute-force lumped kernel on partitions of 5") {
    const auto rows = lumped_rows_of_5();
    REQUIRE(rows.size() == 7);
    RngStream rng(16);
    for (const auto& start : enumerate_partitions(5)) {
        const auto& row = rows.at(start.to_string());
        std::map<std::string, std::uint64_t> lumped_counts, reflected_counts;
        for (int i = 0; i < 100000; ++i) {
            ++lumped_counts[lumped_step(start, rng).to_string()];
            ++reflected_counts[reflected_step(start, rng).to_string()];
        }
        CHECK_MESSAGE(chi_square_gof(lumped_counts, row).p_value > 1e-3, start.to_string());
        // Q = Pi P: the reflected row of a is the lumped row of transpose(a).
        CHECK_MESSAGE(chi_square_gof(reflected_counts, rows.at(transpose(start).to_string())).p_value > 1e-3,
                      start.to_string());
    }
}

TEST_CASE("reflected step is transpose then lumped step, draw for draw") {
    RngStream q(17), p(17);
    auto a = Partition::ones(5000), b = a;
    for (int i = 0; i < 100; ++i) {
        a = reflected_step(a, q);
        b = lumped_step(transpose(b), p);
        REQUIRE(a == b);
    }
    RngStream r1(18), r2(18);
    CHECK(reflected_step(Partition::ones(36), r1) == lumped_step(Partition::single_part(36), r2));
}

TEST_CASE("holding probability at a single part is phi(n)/n") {
    RngStream rng(19);
    for (std::uint64_t n : {7u, 12u, 30u}) {
        const double p = static_cast<double>(testing_support::totient(n)) / static_cast<double>(n);
        const int trials = 100000;
        int held = 0;
        for (int i = 0; i < trials; ++i) held += lumped_step(Partition::single_part(n), rng) == Partition::single_part(n);
        CHECK(std::abs(held / double(trials) - p) <= 3 * testing_support::binomial_sd(p, trials));
    }
}

TEST_CASE("lumped chain is uniform on partitions after 50 steps") {
    for (std::uint64_t n = 5; n <= 10; ++n) {
        const auto all = enumerate_partitions(n);
        std::map<std::string, double> probs;
        for (const auto& a : all) probs[a.to_string()] = 1.0 / static_cast<double>(all.size());
        std::map<std::string, std::uint64_t> counts;
        for (std::uint64_t s = 0; s < 100000; ++s) {
            RngStream rng(derive_seed(20 + n, s));
            auto a = Partition::ones(n);
            for (int i = 0; i < 50; ++i) a = lumped_step(a, rng);
            ++counts[a.to_string()];
        }
        CHECK_MESSAGE(chi_square_gof(counts, probs).p_value > 1e-3, "n=" << n);
    }
}

TEST_CASE("centraliser samples commute with sigma") {
    RngStream rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const auto sigma = Permutation::uniform(40, rng);
        const auto tau = sample_centralizer(sigma, rng);
        REQUIRE(tau * sigma == sigma * tau);
    }
    const Permutation id(5);
    CHECK(unlumped_step(Permutation(0), rng).size() == 0);
    CHECK(sample_centralizer(id, rng).size() == 5);
}

TEST_CASE("the centraliser of the identity is everything") {
    RngStream rng(22);
    std::map<std::string, std::uint64_t> counts;
    std::map<std::string, double> probs;
    std::vector<Permutation::value_type> w{0, 1, 2, 3};
    do probs[Permutation(w).to_string()] = 1.0 / 24;
    while (std::next_permutation(w.begin(), w.end()));
    for (int i = 0; i < 240000; ++i) ++counts[sample_centralizer(Permutation(4), rng).to_string()];
    CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("the centraliser of an n-cycle is its cyclic group") {
    RngStream rng(23);
    const Permutation sigma(std::vector<Permutation::value_type>{3, 5, 4, 2, 1, 0});  // a 6-cycle
    REQUIRE(cycle_type(sigma) == Partition::single_part(6));
    std::map<std::string, double> probs;
    Permutation power(6);
    for (int k = 0; k < 6; ++k) {
        probs[power.to_string()] = 1.0 / 6;
        power = power * sigma;
    }
    std::map<std::string, std::uint64_t> counts;
    for (int i = 0; i < 120000; ++i) ++counts[sample_centralizer(sigma, rng).to_string()];
    CHECK(chi_square_gof(counts, probs).p_value > 1e-3);
}

TEST_CASE("cycle-type law of centraliser samples matches the enumerated centraliser (n=5)") {
    const auto a = oracle::ActionInstance::conjugation(5);
    RngStream rng(24);
    for (const auto& orbit : oracle::orbits(a)) {
        const auto sigma = Permutation(a.state(orbit.front()));
        std::map<std::string, double> probs;
        const auto& stab = a.stabilizer_of(orbit.front());
        for (auto g : stab) probs[cycle_type(a.element(g)).to_string()] += 1.0 / static_cast<double>(stab.size());
        std::map<std::string, std::uint64_t> flat, cyc;
        const auto form = CycleForm::from_permutation(sigma);
        for (int i = 0; i < 60000; ++i) {
            ++flat[cycle_type(sample_centralizer(sigma, rng)).to_string()];
            ++cyc[unlumped_step(form, rng).cycle_type().to_string()];
        }
        CHECK_MESSAGE(chi_square_gof(flat, probs).p_value > 1e-3, sigma.to_string());
        CHECK_MESSAGE(chi_square_gof(cyc, probs).p_value > 1e-3, sigma.to_string());
    }
}

TEST_CASE("cycle form") {
    RngStream rng(25);
    const auto sigma = Permutation::uniform(1000, rng);
    const auto form = CycleForm::from_permutation(sigma);
    CHECK(form.to_permutation() == sigma);
    CHECK(form.cycle_type() == cycle_type(sigma));
    CHECK_THROWS_AS(CycleForm::from_cycles({0, 1, 1}, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(CycleForm::from_cycles({0, 1, 2}, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(CycleForm::from_cycles({0, 1, 2}, {0, 0, 3}), std::invalid_argument);
    CHECK(CycleForm::from_cycles({2, 0, 1}, {0, 2, 3}).to_permutation() ==
          Permutation(std::vector<Permutation::value_type>{2, 1, 0}));

    auto state = form;
    CycleForm next;
    for (int i = 0; i < 30; ++i) {
        unlumped_step(state, next, rng);
        const auto s = state.to_permutation();
        const auto t = next.to_permutation();
        REQUIRE(s * t == t * s);
        std::swap(state, next);
    }

    const auto a = Partition::parse("1^3*2^2*7^1*40^4");
    const auto r = random_with_cycle_type(a, rng);
    CHECK(r.cycle_type() == a);
    CHECK(r.size() == a.n());
}
