// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "mbe/cli.hpp"
#include "mbe/errors.hpp"
#include "mbe/fixtures.hpp"
#include "mbe/homology.hpp"
#include "mbe/io.hpp"
#include "mbe/morse.hpp"
#include "mbe/oracle.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace {

using namespace mbe;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 1;
constexpr int kTrials = 200;
const ComplexShape kShape{8, 20, 3};

int failures = 0;

void verdict(const char* id, bool pass, const std::string& detail)
{
    std::cout << (pass ? "PASS " : "FAIL ") << id << " " << detail << "\n";
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<long long> as_integers(const std::vector<InequalityRow>& rows, bool lhs)
{
    std::vector<long long> out;
    for (const InequalityRow& r : rows) out.push_back(to_integer(lhs ? r.lhs : r.rhs));
    return out;
}

bool rows_are(const std::vector<InequalityRow>& rows, std::vector<long long> lhs, std::vector<long long> rhs)
{
    return as_integers(rows, true) == lhs && as_integers(rows, false) == rhs;
}

std::string join(const std::vector<InequalityRow>& rows)
{
    std::ostringstream s;
    for (const InequalityRow& r : rows) s << "(" << r.lhs << " <= " << r.rhs << ")";
    return s.str();
}

bool same(const RationalMatrix& a, const RationalMatrix& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || (a.array() == b.array()).all());
}

bool same_rows(const PowerReport& a, const PowerReport& b)
{
    auto eq = [](const std::vector<InequalityRow>& x, const std::vector<InequalityRow>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].lhs != y[i].lhs || x[i].rhs != y[i].rhs) return false;
        }
        return true;
    };
    return eq(a.strong, b.strong) && eq(a.weak, b.weak);
}

struct Generated {
    std::vector<RandomInstance> instances;
    int failures = 0;
};

// The same instances the property check draws.
const Generated& generated()
{
    static const Generated g = [] {
        Generated out;
        for (int trial = 0; trial < kTrials; ++trial) {
            try {
                out.instances.push_back(random_instance(derive_seed(kSeed, static_cast<std::uint64_t>(trial)), kShape));
            } catch (const GeneratorFailure&) {
                ++out.failures;
            }
        }
        return out;
    }();
    return g;
}

void table_1()
{
    const auto start = Clock::now();
    const Instance inst = example_s2();
    const std::vector<int> powers{1};
    const auto g = inequality_report(inst.complex, *inst.function, *inst.map, powers).powers.at(0);
    const auto id = inequality_report(inst.complex, *inst.function,
                                      SimplicialSelfMap::identity(inst.complex.vertex_count()), powers)
                        .powers.at(0);
    const double elapsed = seconds_since(start);
    const bool pass = rows_are(g.strong, {1, -1, 1}, {1, 0, 1}) && g.equality_at_top() &&
                      rows_are(id.strong, {1, 0, 0}, {2, 1, 0}) && id.equality_at_top() && elapsed < 1.0;
    std::ostringstream d;
    d << "strong rows: g " << join(g.strong) << ", identity " << join(id.strong) << ", " << elapsed << " s";
    verdict("AC1", pass, d.str());
}

void table_2()
{
    const Instance inst = example_s2();
    const std::vector<int> powers{1};
    const auto g = inequality_report(inst.complex, *inst.function, *inst.map, powers).powers.at(0);
    const auto id = inequality_report(inst.complex, *inst.function,
                                      SimplicialSelfMap::identity(inst.complex.vertex_count()), powers)
                        .powers.at(0);
    const bool pass = rows_are(g.weak, {1, 0, 0}, {1, 1, 1}) && rows_are(id.weak, {1, 1, 0}, {2, 3, 1});
    verdict("AC2", pass, "weak rows: g " + join(g.weak) + ", identity " + join(id.weak));
}

void local_traces_of_example()
{
    const Instance inst = example_s2();
    const auto table = local_trace_table(inst.complex, *inst.function, *inst.map, 1);
    // Entry i+1 of per_level is the pair (K_{i+1}, K_i); entry 0 is (K_0, empty).
    const std::vector<std::size_t> expected_level{0, 3, 6};
    bool pass = table.size() == 3;
    std::ostringstream d;
    d << "local traces";
    for (std::size_t k = 0; pass && k < table.size(); ++k) {
        d << " " << table[k].total;
        pass = table[k].total == 1;
        for (std::size_t i = 0; i < table[k].per_level.size(); ++i) {
            const Rational want = i == expected_level[k] ? 1 : 0;
            pass = pass && table[k].per_level[i] == want;
        }
    }
    d << ", non-zero summands at (K_0,empty) (K_3,K_2) (K_6,K_5)";
    verdict("AC3", pass, d.str());
}

void lefschetz_localization()
{
    const Instance inst = example_s2();
    bool pass = true;
    std::ostringstream d;
    d << "Lefschetz numbers";
    for (int l = 1; l <= 5; ++l) {
        const Localization loc = localization_identity(inst.complex, *inst.function, *inst.map, l);
        const std::vector<int> powers{l};
        const auto report = inequality_report(inst.complex, *inst.function, *inst.map, powers);
        d << " " << loc.lefschetz;
        pass = pass && loc.lefschetz == 1 && loc.equal() && report.powers.at(0).equality_at_top();
    }
    d << " for l = 1..5, each equal to the local sum";
    verdict("AC4", pass, d.str());
}

void property_suite()
{
    const auto start = Clock::now();
    const TheoremCheckSummary s = exhaustive_theorem_check(kShape.max_simplices, kTrials, kSeed);
    const double elapsed = seconds_since(start);
    const bool pass = s.instances == kTrials && s.theorem_violations == 0 && s.lemma_triples >= 500 &&
                      s.lemma_violations == 0 && elapsed < 60.0;
    std::ostringstream d;
    d << s.instances << " instances, " << s.theorem_violations << " theorem violations, " << s.lemma_violations
      << " lemma violations in " << s.lemma_triples << " triples (" << s.lemma_strict << " strict), " << elapsed
      << " s";
    verdict("AC5", pass, d.str());
    for (const std::string& dump : s.fixtures) std::cerr << dump << "\n";
}

void oracle_equivalence()
{
    int pairs = 0;
    int mismatches = 0;
    for (const RandomInstance& inst : generated().instances) {
        const Filtration filtration(inst.complex, *inst.function);
        for (int i = -1; i < filtration.max_level(); ++i) {
            ++pairs;
            if (relative_homology(filtration.at(i + 1), filtration.at(i)).betti_numbers() !=
                naive_betti(filtration.at(i + 1), filtration.at(i))) {
                ++mismatches;
            }
        }
    }

    // Pairs with no map or function behind them: random top, random bottom inside it.
    int free_pairs = 0;
    int free_mismatches = 0;
    int top_dimension = 0;
    std::mt19937_64 rng(derive_seed(kSeed, 1000));
    const ComplexShape shape{7, 30, 3};
    for (int t = 0; t < 50; ++t) {
        const OrderedComplex k = random_complex(rng, shape);
        std::vector<std::size_t> top_seed;
        std::vector<std::size_t> bottom_seed;
        std::bernoulli_distribution coin(0.5);
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (coin(rng)) top_seed.push_back(i);
        }
        const Subcomplex top = closure_of_indices(k, top_seed);
        for (std::size_t i : top.indices()) {
            if (std::bernoulli_distribution(0.25)(rng)) bottom_seed.push_back(i);
        }
        const Subcomplex bottom = closure_of_indices(k, bottom_seed);
        top_dimension = std::max(top_dimension, top.dimension());
        ++free_pairs;
        if (relative_homology(top, bottom).betti_numbers() != naive_betti(top, bottom)) ++free_mismatches;
    }
    std::ostringstream d;
    d << mismatches << " mismatches in " << pairs << " filtration pairs, " << free_mismatches << " in "
      << free_pairs << " free pairs (max dimension " << top_dimension << ")";
    verdict("AC6", mismatches == 0 && free_mismatches == 0 && pairs > 0 && free_pairs == 50, d.str());
}

void stabilization_and_functoriality()
{
    int instances = 0;
    int chain_failures = 0;
    int homology_failures = 0;
    int row_failures = 0;
    for (const RandomInstance& inst : generated().instances) {
        ++instances;
        const OrderedComplex& k = inst.complex;
        const SimplicialSelfMap& g = inst.map;
        const int n = stabilization_exponent(g);
        const RelativeChainComplex chains(Subcomplex::full(k), Subcomplex::empty(k));

        // g_#^{N+1} = g_#^N, with g^0 the identity.
        const auto before = chain_map(n == 0 ? SimplicialSelfMap::identity(k.vertex_count()) : power(g, n), chains);
        const auto after = chain_map(power(g, n + 1), chains);
        const auto single = chain_map(g, chains);
        for (std::size_t d = 0; d < before.size(); ++d) {
            if (!same(before[d], after[d]) || !same(after[d], matrix_power(single[d], n + 1))) ++chain_failures;
        }

        const Filtration filtration(k, *inst.function);
        std::vector<RelativeHomology> pairs{relative_homology(Subcomplex::full(k), Subcomplex::empty(k))};
        for (int i = -1; i < filtration.max_level(); ++i) {
            pairs.push_back(relative_homology(filtration.at(i + 1), filtration.at(i)));
        }
        for (const RelativeHomology& h : pairs) {
            for (int deg = 0; deg <= h.max_degree(); ++deg) {
                const RationalMatrix base = induced_map(g, h, deg).matrix;
                for (int l = 2; l <= n + 2; ++l) {
                    if (!same(induced_map(power(g, l), h, deg).matrix, matrix_power(base, l))) ++homology_failures;
                }
            }
        }

        const std::vector<int> powers{n + 1, n + 2, n + 3};
        const auto report = inequality_report(k, *inst.function, g, powers);
        for (std::size_t i = 1; i < report.powers.size(); ++i) {
            if (!same_rows(report.powers[0], report.powers[i])) ++row_failures;
        }
    }
    std::ostringstream d;
    d << instances << " instances: " << chain_failures << " chain-level, " << homology_failures
      << " homology-power, " << row_failures << " row-constancy failures";
    verdict("AC7", instances == kTrials && chain_failures + homology_failures + row_failures == 0, d.str());
}

void validator_corpus()
{
    const std::regex header(R"(# (expect-exit|expect|expect-yes-no): (.*))");
    int files = 0;
    int rejected = 0;
    std::vector<std::string> missed;
    for (const auto& entry : fs::directory_iterator(fs::path(MBE_FIXTURE_DIR) / "negative")) {
        ++files;
        std::ifstream in(entry.path());
        std::string line;
        std::vector<std::string> diagnostics;
        std::vector<std::string> flags;
        std::smatch m;
        while (std::getline(in, line) && std::regex_match(line, m, header)) {
            if (m[1] == "expect") diagnostics.push_back(m[2]);
            if (m[1] == "expect-yes-no") flags.push_back(m[2]);
        }
        const std::string path = entry.path().string();
        const char* argv[] = {"mbe", "validate", path.c_str()};
        std::ostringstream out;
        std::ostringstream err;
        bool ok = cli_main(3, argv, out, err) == kExitValidation && !diagnostics.empty();
        for (const std::string& d : diagnostics) ok = ok && err.str().find(d) != std::string::npos;
        for (const std::string& f : flags) ok = ok && out.str().find(f) != std::string::npos;
        if (ok) {
            ++rejected;
        } else {
            missed.push_back(entry.path().filename().string());
        }
    }
    const Instance inst = example_s2();
    const bool example_ok = check_hypotheses(inst.complex, *inst.function, *inst.map).ok();
    std::ostringstream d;
    d << rejected << " of " << files << " negative fixtures rejected with the targeted diagnostic; example "
      << (example_ok ? "passes" : "fails") << " all validators";
    for (const std::string& name : missed) d << "; missed " << name;
    verdict("AC8", files >= 10 && rejected == files && example_ok, d.str());
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, void (*)()>> criteria{
        {"AC1", table_1},
        {"AC2", table_2},
        {"AC3", local_traces_of_example},
        {"AC4", lefschetz_localization},
        {"AC5", property_suite},
        {"AC6", oracle_equivalence},
        {"AC7", stabilization_and_functoriality},
        {"AC8", validator_corpus},
    };
    for (const auto& [id, run] : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            verdict(id, false, std::string("threw: ") + e.what());
        }
    }
    return failures == 0 ? 0 : 1;
}
