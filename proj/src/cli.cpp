#include "burnside/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "burnside/binary_chain.hpp"
#include "burnside/diagnostics.hpp"
#include "burnside/errors.hpp"
#include "burnside/oracle.hpp"
#include "burnside/partitions.hpp"
#include "burnside/tables.hpp"

namespace burnside::cli {

namespace {

constexpr std::uint64_t kMaxPartitionN = 1'000'000'000'000'000'000ULL;
constexpr std::uint64_t kMaxUnlumpedN = 100'000'000;
constexpr std::uint64_t kMaxSamples = 100'000'000;

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Where CSV rows go: the --out file, or the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw InputError("cannot open output file " + path);
        stream_ = file_.get();
    }
    std::ostream& operator*() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) throw InputError("failed writing output");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

tables::ContingencyTable load_table(const std::string& spec) {
    if (spec == "hair-eye") return tables::hair_eye_table();
    if (spec == "children-income") return tables::children_income_table();
    return tables::load_table_json(spec);
}

struct Options {
    std::uint64_t n = 0;
    std::string variant;
    std::uint64_t steps = 0;
    std::uint64_t burnin = 0;
    std::uint64_t samples = 1;
    std::uint64_t runs = 5;
    unsigned replicas = 1;
    std::uint64_t seed = 0;
    std::uint64_t thin = 1;
    std::string out;
    std::string table;
    std::string feature = "ones";
    std::uint64_t part_size = 1;
    std::string suite = "all";
    std::uint64_t max_n = 5;
    std::vector<std::uint64_t> sizes;
    std::string target;
    bool trace = false;
    bool entries = false;
    bool upper_tail = false;
};

struct Context {
    const Options& opt;
    std::ostream& out;
    std::ostream& err;

    std::ostream& summary() { return opt.out.empty() ? err : out; }
};

int sample_partitions(Context& ctx) {
    const Options& o = ctx.opt;
    const diag::Variant variant = diag::parse_variant(o.variant);
    if (o.n > kMaxPartitionN) throw ResourceLimitError("--n must be at most 10^18");
    if (variant == diag::Variant::unlumped && o.n > kMaxUnlumpedN)
        throw ResourceLimitError("unlumped partitions need --n at most 10^8");
    if (o.samples > kMaxSamples) throw ResourceLimitError("--samples must be at most 10^8");

    Sink sink(o.out, ctx.out);
    if (o.trace) {
        if (variant == diag::Variant::unlumped) throw InputError("--trace needs the lumped or reflected variant");
        diag::RunConfig cfg{o.seed, variant, 0, o.steps, 1, o.thin};
        const auto points = diag::trace(o.n, cfg);
        *sink << "step,largest_part,num_parts\n";
        for (const auto& p : points) *sink << p.step << ',' << p.largest_part << ',' << p.num_parts << '\n';
        sink.finish();
        ctx.summary() << "sample-partitions: traced " << o.steps << " " << diag::variant_name(variant)
                      << " steps at n=" << o.n << ", final num_parts=" << points.back().num_parts << '\n';
        return ok;
    }

    std::vector<partitions::PartitionFeatures> feats(o.samples);
    diag::parallel_for(o.samples, o.replicas, [&](std::size_t i) {
        RngStream rng(derive_seed(o.seed, i));
        if (variant == diag::Variant::unlumped) {
            auto sigma = partitions::CycleForm::from_permutation(Permutation(o.n));
            partitions::CycleForm next;
            for (std::uint64_t s = 0; s < o.steps; ++s) {
                partitions::unlumped_step(sigma, next, rng);
                std::swap(sigma, next);
            }
            feats[i] = partitions::features(sigma.cycle_type());
            return;
        }
        auto a = partitions::Partition::ones(o.n);
        for (std::uint64_t s = 0; s < o.steps; ++s)
            a = variant == diag::Variant::lumped ? partitions::lumped_step(a, rng) : partitions::reflected_step(a, rng);
        feats[i] = partitions::features(a);
    });
    *sink << "sample,num_parts,largest_part,ones\n";
    for (std::size_t i = 0; i < feats.size(); ++i)
        *sink << i << ',' << feats[i].num_parts << ',' << feats[i].largest_part << ',' << feats[i].ones << '\n';
    sink.finish();
    ctx.summary() << "sample-partitions: " << o.samples << " samples, " << o.steps << " "
                  << diag::variant_name(variant) << " steps each at n=" << o.n << '\n';
    return ok;
}

int sample_tables(Context& ctx) {
    const Options& o = ctx.opt;
    const diag::Variant variant = diag::parse_variant(o.variant);
    if (variant == diag::Variant::reflected) throw InputError("tables support the lumped and unlumped variants");
    const auto start = load_table(o.table);
    if (variant == diag::Variant::unlumped && start.total() > kMaxUnlumpedN)
        throw ResourceLimitError("unlumped tables need sample size at most 10^8");

    Sink sink(o.out, ctx.out);
    *sink << (o.entries ? "step,chisq,entries\n" : "step,chisq\n");
    RngStream rng(o.seed);
    const auto& lambda = start.row_margins();
    const auto& mu = start.col_margins();
    tables::ContingencyTable state = start;
    Permutation sigma;
    if (variant == diag::Variant::unlumped) sigma = tables::representative_permutation(start);
    auto advance = [&] {
        if (variant == diag::Variant::lumped) {
            state = tables::lumped_step(state, rng);
        } else {
            sigma = tables::unlumped_step(sigma, lambda, mu, rng);
            state = tables::table_of_permutation(lambda, mu, sigma);
        }
    };
    for (std::uint64_t i = 0; i < o.burnin; ++i) advance();
    for (std::uint64_t s = 1; s <= o.steps; ++s) {
        advance();
        if (s % o.thin) continue;
        *sink << s << ',' << fmt(tables::chi_square(state));
        if (o.entries) {
            *sink << ',';
            const auto data = state.entries().data();
            for (std::size_t k = 0; k < data.size(); ++k) *sink << (k ? " " : "") << data[k];
        }
        *sink << '\n';
    }
    sink.finish();
    ctx.summary() << "sample-tables: " << o.steps << " " << diag::variant_name(variant) << " steps from a "
                  << start.rows() << "x" << start.cols() << " table with n=" << start.total() << '\n';
    return ok;
}

int volume_test(Context& ctx) {
    const Options& o = ctx.opt;
    const diag::Variant variant = diag::parse_variant(o.variant);
    if (variant == diag::Variant::reflected) throw InputError("tables support the lumped and unlumped variants");
    const auto table = load_table(o.table);
    if (variant == diag::Variant::unlumped && table.total() > kMaxUnlumpedN)
        throw ResourceLimitError("unlumped tables need sample size at most 10^8");
    diag::RunConfig cfg{o.seed, variant, o.burnin, o.steps, o.runs, 1};
    const auto tail = o.upper_tail ? diag::Tail::upper : diag::Tail::lower;
    const auto result = diag::volume_estimate(table, cfg, tail, o.replicas);

    Sink sink(o.out, ctx.out);
    *sink << "run,estimate\n";
    for (std::size_t r = 0; r < result.estimates.size(); ++r) *sink << r << ',' << fmt(result.estimates[r]) << '\n';
    *sink << "median," << fmt(result.median) << '\n';
    sink.finish();
    ctx.summary() << "volume-test: chisq=" << fmt(result.observed_chi_square) << " median=" << fmt(result.median)
                  << " over " << o.runs << " runs of " << o.steps << " steps\n";
    return ok;
}

int limit_law(Context& ctx) {
    const Options& o = ctx.opt;
    const diag::Feature feature = diag::parse_feature(o.feature);
    if (o.n > kMaxPartitionN) throw ResourceLimitError("--n must be at most 10^18");
    if (o.samples > kMaxSamples) throw ResourceLimitError("--samples must be at most 10^8");
    const auto result = diag::limit_law_check(o.n, o.samples, o.steps, feature, o.seed, o.replicas, o.part_size);

    Sink sink(o.out, ctx.out);
    *sink << "sample,raw,normalized\n";
    for (std::size_t i = 0; i < result.raw.size(); ++i)
        *sink << i << ',' << result.raw[i] << ',' << fmt(result.normalized[i]) << '\n';
    sink.finish();
    ctx.summary() << "limit-law: feature=" << diag::feature_name(feature);
    if (feature == diag::Feature::ones && o.part_size != 1) ctx.summary() << " part-size=" << o.part_size;
    ctx.summary() << " n=" << o.n << " samples=" << o.samples
                  << " ks=" << fmt(result.ks) << '\n';
    return ok;
}

// ---- oracle-verify -------------------------------------------------------

struct Report {
    std::vector<std::string> lines;
    std::size_t passed = 0;
    std::size_t total = 0;

    void check(const std::string& what, bool pass, const std::string& detail = {}) {
        ++total;
        passed += pass;
        lines.push_back(std::string(pass ? "PASS " : "FAIL ") + what + (detail.empty() ? "" : " (" + detail + ")"));
    }
};

std::string sci(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

std::string composition_text(const tables::Composition& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

std::vector<tables::Composition> compositions_of(std::uint64_t n) {
    std::vector<tables::Composition> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        std::vector<std::uint64_t> parts{1};
        for (std::uint64_t i = 0; i + 1 < n; ++i) {
            if (mask >> i & 1)
                parts.push_back(1);
            else
                ++parts.back();
        }
        out.emplace_back(std::move(parts));
    }
    return out;
}

// Checks shared by every action: group-action laws and the Burnside kernel.
void verify_common(Report& r, const std::string& name, const oracle::ActionInstance& a,
                   std::uint64_t expected_orbits) {
    r.check(name + " action-axioms", oracle::action_axioms_hold(a));
    r.check(name + " orbit-stabilizer", oracle::orbit_stabilizer_holds(a));
    r.check(name + " conjugate-stabilizers", oracle::conjugate_stabilizer_check(a));
    const auto orbs = oracle::orbits(a);
    const std::uint64_t counted = oracle::burnside_orbit_count(a);
    r.check(name + " burnside-count", counted == expected_orbits && orbs.size() == expected_orbits,
            std::to_string(counted) + " orbits");
    bool labels_agree = true;
    std::map<std::string, int> label_seen;
    for (const auto& orbit : orbs) {
        const std::string label = a.orbit_label(orbit.front());
        labels_agree &= ++label_seen[label] == 1;
        for (auto x : orbit) labels_agree &= a.orbit_label(x) == label;
    }
    r.check(name + " orbit-labels", labels_agree);
    if (a.num_states() > 4096) return;
    const auto exact = oracle::exact_kernel(a);
    r.check(name + " kernel-rows", exact.max_row_sum_deviation() <= 1e-12, sci(exact.max_row_sum_deviation()));
    const double balance = oracle::detailed_balance_deviation(a, exact);
    r.check(name + " detailed-balance", balance <= 1e-12, sci(balance));
    const auto lumped = oracle::lumped_kernel(a);
    r.check(name + " lumped-rows", lumped.kernel.max_row_sum_deviation() <= 1e-12,
            sci(lumped.kernel.max_row_sum_deviation()));
    r.check(name + " lumped-symmetric", lumped.kernel.max_asymmetry() <= 1e-12, sci(lumped.kernel.max_asymmetry()));
    r.check(name + " lumped-representative-free", lumped.max_representative_deviation <= 1e-12,
            sci(lumped.max_representative_deviation));
}

void verify_conjugation(Report& r, std::uint64_t max_n) {
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(max_n, 6); ++n) {
        const auto a = oracle::ActionInstance::conjugation(n);
        const std::string name = "conjugation n=" + std::to_string(n);
        verify_common(r, name, a, partitions::enumerate_partitions(n).size());
        const auto half = oracle::lumped_centralizer_kernel(a);
        r.check(name + " half-step-symmetric", half.kernel.max_asymmetry() <= 1e-12, sci(half.kernel.max_asymmetry()));
        r.check(name + " half-step-representative-free", half.max_representative_deviation <= 1e-12,
                sci(half.max_representative_deviation));
    }
}

void verify_binary(Report& r, std::uint64_t max_n) {
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(max_n, 8); ++n) {
        const std::string name = "binary n=" + std::to_string(n);
        const auto a = oracle::ActionInstance::binary(n);
        verify_common(r, name, a, n + 1);
        const auto lumped = oracle::lumped_kernel(a).kernel;
        const auto exact = binary::exact_binary_kernel(n);
        double worst = 0;
        for (std::size_t i = 0; i < lumped.size(); ++i)
            for (std::size_t j = 0; j < lumped.size(); ++j) {
                const auto wi = std::stoul(lumped.labels()[i]);
                const auto wj = std::stoul(lumped.labels()[j]);
                worst = std::max(worst, std::abs(lumped(i, j) - exact(wi, wj)));
            }
        r.check(name + " arcsine-kernel", worst <= 1e-10, sci(worst));
    }
}

void verify_double_cosets(Report& r, std::uint64_t max_n) {
    std::vector<std::pair<tables::Composition, tables::Composition>> cases;
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(max_n, 4); ++n)
        for (const auto& lambda : compositions_of(n))
            for (const auto& mu : compositions_of(n)) cases.emplace_back(lambda, mu);
    const std::vector<std::pair<tables::Composition, tables::Composition>> larger{
        {tables::Composition({3, 2}), tables::Composition({2, 2, 1})},
        {tables::Composition({3, 3}), tables::Composition({2, 2, 2})},
        {tables::Composition({3, 2, 2}), tables::Composition({2, 2, 2, 1})},
        {tables::Composition({2, 2, 2, 2}), tables::Composition({2, 2, 2, 2})},
    };
    for (const auto& c : larger)
        if (c.first.total() <= std::min<std::uint64_t>(max_n, 8)) cases.push_back(c);

    for (const auto& [lambda, mu] : cases) {
        const std::string name = "double-coset " + composition_text(lambda) + "/" + composition_text(mu);
        const auto a = oracle::ActionInstance::double_coset(lambda, mu);
        const auto num_tables = tables::enumerate_tables(lambda.parts(), mu.parts()).size();
        verify_common(r, name, a, num_tables);
        r.check(name + " coset-lemma", oracle::double_coset_lemma_check(a));
        bool sizes_agree = true;
        for (const auto& orbit : oracle::orbits(a)) {
            const auto s = Permutation::from_images_unchecked(a.state(orbit.front()));
            sizes_agree &= oracle::double_coset_size(lambda, mu, s) == orbit.size();
        }
        r.check(name + " coset-sizes", sizes_agree);
    }
}

int oracle_verify(Context& ctx) {
    const Options& o = ctx.opt;
    if (o.max_n == 0) throw InputError("--max-n must be positive");
    if (o.max_n > 8) throw ResourceLimitError("--max-n must be at most 8");
    Report report;
    const bool all = o.suite == "all";
    if (!all && o.suite != "conjugation" && o.suite != "binary" && o.suite != "double-coset")
        throw InputError("unknown suite '" + o.suite + "' (all, conjugation, binary, double-coset)");
    if (all || o.suite == "conjugation") verify_conjugation(report, o.max_n);
    if (all || o.suite == "binary") verify_binary(report, o.max_n);
    if (all || o.suite == "double-coset") verify_double_cosets(report, o.max_n);

    Sink sink(o.out, ctx.out);
    for (const auto& line : report.lines) *sink << line << '\n';
    sink.finish();
    ctx.summary() << "oracle-verify: " << report.passed << "/" << report.total << " checks passed\n";
    return report.passed == report.total ? ok : verification_failed;
}

int bench(Context& ctx) {
    const Options& o = ctx.opt;
    const diag::BenchTarget target = diag::parse_target(o.target);
    if (o.sizes.empty()) throw InputError("--sizes is required");
    const auto base = o.table.empty() ? tables::hair_eye_table() : load_table(o.table);
    const bool tables_target =
        target == diag::BenchTarget::tables_lumped || target == diag::BenchTarget::tables_unlumped;
    for (auto s : o.sizes) {
        if (!tables_target && s > kMaxPartitionN) throw ResourceLimitError("partition sizes must be at most 10^18");
        if (target == diag::BenchTarget::partitions_unlumped && s > kMaxUnlumpedN)
            throw ResourceLimitError("unlumped partition sizes must be at most 10^8");
        if (target == diag::BenchTarget::tables_unlumped && s * base.total() > kMaxUnlumpedN)
            throw ResourceLimitError("unlumped table sizes must be at most 10^8");
        if (target == diag::BenchTarget::tables_lumped && s > kMaxPartitionN / base.total())
            throw ResourceLimitError("scaled table total must be at most 10^18");
    }
    const auto records = diag::bench(target, o.sizes, o.steps, o.seed, base);

    Sink sink(o.out, ctx.out);
    *sink << "n,variant,mean_step_ns\n";
    std::vector<double> x, y;
    for (const auto& rec : records) {
        *sink << rec.n << ',' << diag::target_name(rec.target) << ',' << fmt(rec.mean_step_ns) << '\n';
        x.push_back(std::log(static_cast<double>(rec.n)));
        y.push_back(tables_target ? rec.mean_step_ns : std::log(rec.mean_step_ns));
    }
    sink.finish();
    auto& s = ctx.summary();
    s << "bench: " << diag::target_name(target) << " " << records.size() << " sizes x " << o.steps << " steps";
    if (records.size() >= 2) {
        const auto fit = diag::fit_line(x, y);
        s << (tables_target ? ", linear-log r2=" : ", log-log slope=") << fmt(tables_target ? fit.r2 : fit.slope);
    }
    s << '\n';
    return ok;
}

int tv_profile(Context& ctx) {
    const Options& o = ctx.opt;
    const diag::Variant variant = diag::parse_variant(o.variant);
    std::vector<double> tv;
    if (variant == diag::Variant::lumped) {
        if (o.n > 4096) throw ResourceLimitError("--n must be at most 4096");
        if (o.steps > 64) throw ResourceLimitError("--steps must be at most 64");
        tv = binary::tv_mixing_profile(o.n, o.steps);
    } else if (variant == diag::Variant::unlumped) {
        if (o.n > 8) throw ResourceLimitError("the unlumped binary chain needs --n at most 8");
        if (o.steps > 64) throw ResourceLimitError("--steps must be at most 64");
        const auto a = oracle::ActionInstance::binary(o.n);
        const auto kernel = oracle::exact_kernel(a);
        std::vector<double> start(a.num_states(), 0.0), pi(a.num_states());
        start[0] = 1.0;
        const auto orbs = oracle::orbits(a);
        for (const auto& orbit : orbs)
            for (auto x : orbit) pi[x] = 1.0 / static_cast<double>(orbs.size() * orbit.size());
        tv = tv_profile(kernel, start, pi, o.steps);
    } else {
        throw InputError("tv-profile supports the lumped and unlumped variants");
    }
    Sink sink(o.out, ctx.out);
    *sink << "j,tv\n";
    for (std::size_t j = 0; j < tv.size(); ++j) *sink << j + 1 << ',' << fmt(tv[j]) << '\n';
    sink.finish();
    ctx.summary() << "tv-profile: " << diag::variant_name(variant) << " binary chain n=" << o.n << ", tv(j="
                  << tv.size() << ")=" << fmt(tv.empty() ? 1.0 : tv.back()) << '\n';
    return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Burnside process samplers for integer partitions and contingency tables"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (default: stdout)"); };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Random seed")->required(); };
    auto add_workers = [&](CLI::App* sub) {
        sub->add_option("--replicas", o.replicas, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* sp = app.add_subcommand("sample-partitions", "Run partition chains from 1^n and write their features");
    sp->add_option("--n", o.n, "Integer to partition")->required()->check(CLI::PositiveNumber);
    sp->add_option("--variant", o.variant, "lumped | reflected | unlumped (default reflected)");
    sp->add_option("--steps", o.steps, "Steps per sample")->required();
    sp->add_option("--samples", o.samples, "Independent samples")->check(CLI::PositiveNumber);
    sp->add_option("--thin", o.thin, "With --trace, record every k-th step")->check(CLI::PositiveNumber);
    sp->add_flag("--trace", o.trace, "Write step,largest_part,num_parts for one chain instead");
    add_seed(sp);
    add_workers(sp);
    add_out(sp);

    auto* st = app.add_subcommand("sample-tables", "Run a table chain and write chi-square per step");
    st->add_option("--table", o.table, "JSON table file, or hair-eye / children-income")->required();
    st->add_option("--variant", o.variant, "lumped | unlumped (default lumped)");
    st->add_option("--steps", o.steps, "Recorded steps")->required()->check(CLI::PositiveNumber);
    st->add_option("--burnin", o.burnin, "Discarded steps");
    st->add_option("--thin", o.thin, "Record every k-th step")->check(CLI::PositiveNumber);
    st->add_flag("--entries", o.entries, "Also write the table entries (row-major, space separated)");
    add_seed(st);
    add_out(st);

    auto* vt = app.add_subcommand("volume-test", "Estimate the volume statistic V(T)");
    vt->add_option("--table", o.table, "JSON table file, or hair-eye / children-income")->required();
    vt->add_option("--variant", o.variant, "lumped | unlumped (default lumped)");
    vt->add_option("--steps", o.steps, "Steps per run")->required()->check(CLI::PositiveNumber);
    vt->add_option("--burnin", o.burnin, "Discarded steps per run");
    vt->add_option("--runs", o.runs, "Independent runs")->check(CLI::PositiveNumber);
    vt->add_flag("--upper-tail", o.upper_tail, "Count chi-square >= observed instead of <= observed");
    add_seed(vt);
    add_workers(vt);
    add_out(vt);

    auto* ll = app.add_subcommand("limit-law", "Compare a normalised partition feature with its limit law");
    ll->add_option("--n", o.n, "Integer to partition")->required()->check(CLI::PositiveNumber);
    ll->add_option("--samples", o.samples, "Independent samples")->required()->check(CLI::PositiveNumber);
    ll->add_option("--steps", o.steps, "Reflected steps per sample")->default_val(20);
    ll->add_option("--feature", o.feature, "ones | parts")->default_val("ones");
    ll->add_option("--part-size", o.part_size, "With --feature ones, count parts of this size instead of ones")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    add_seed(ll);
    add_workers(ll);
    add_out(ll);

    auto* ov = app.add_subcommand("oracle-verify", "Check group-action invariants by brute force");
    ov->add_option("--suite", o.suite, "all | conjugation | binary | double-coset")->default_val("all");
    ov->add_option("--max-n", o.max_n, "Largest degree to enumerate (at most 8)")->default_val(5);
    add_out(ov);

    auto* bn = app.add_subcommand("bench", "Time chain steps across problem sizes");
    bn->add_option("--target", o.target,
                   "partitions-lumped | partitions-reflected | partitions-unlumped | tables-lumped | tables-unlumped")
        ->required();
    bn->add_option("--sizes", o.sizes, "Sizes a,b,c (scale factors for tables)")->delimiter(',')->required();
    bn->add_option("--steps", o.steps, "Timed steps per size")->required()->check(CLI::PositiveNumber);
    bn->add_option("--table", o.table, "Base table for table targets (default hair-eye)");
    add_seed(bn);
    add_out(bn);

    auto* tv = app.add_subcommand("tv-profile", "Exact TV distance of the binary chain from the all-zeros state");
    tv->add_option("--n", o.n, "Tuple length")->required();
    tv->add_option("--steps", o.steps, "Largest j (at most 64)")->default_val(20);
    tv->add_option("--variant", o.variant, "lumped | unlumped (default lumped)");
    add_out(tv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }

    // Shared option variables, so per-subcommand defaults are filled in after parsing.
    if (o.variant.empty()) o.variant = sp->parsed() ? "reflected" : "lumped";
    Context ctx{o, out, err};
    try {
        if (sp->parsed()) return sample_partitions(ctx);
        if (st->parsed()) return sample_tables(ctx);
        if (vt->parsed()) return volume_test(ctx);
        if (ll->parsed()) return limit_law(ctx);
        if (ov->parsed()) return oracle_verify(ctx);
        if (bn->parsed()) return bench(ctx);
        if (tv->parsed()) return tv_profile(ctx);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return input_error;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return resource_limit;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

}  // namespace burnside::cli
