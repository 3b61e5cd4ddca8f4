#include "mbe/cli.hpp"

#include "mbe/errors.hpp"
#include "mbe/fixtures.hpp"
#include "mbe/homology.hpp"
#include "mbe/io.hpp"
#include "mbe/morse.hpp"
#include "mbe/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mbe {

namespace {

struct Options {
    std::string file;
    bool pairs = false;
    int power = 1;
    std::string powers;
    std::string format = "text";
    bool identity = false;
    bool exploratory = false;
    std::string top;
    std::string middle;
    std::string bottom;
    std::optional<int> degree;
    int trials = 200;
    std::uint64_t seed = 1;
};

class Session {
public:
    Session(const Options& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {}

    int validate()
    {
        const Instance& inst = load();
        const MorseBottFunction& f = function();
        const SimplicialSelfMap g = map();
        const HypothesisReport h = check_hypotheses(inst.complex, f, g);
        auto yes = [](bool b) { return b ? "yes" : "no"; };
        out_ << "order-preserving: " << yes(h.map.order_preserving()) << "; simplicial: " << yes(h.map.simplicial())
             << "; compatible: " << yes(h.compatibility.ok() && h.map.length_ok)
             << "; Forman-Morse-Bott: " << yes(h.classification.is_forman_morse_bott()) << "\n";
        if (auto n = try_stabilization_exponent(g)) out_ << "stabilization exponent N = " << *n << "\n";
        out_ << "globally monotone on vertices: " << yes(h.map.globally_monotone) << " (informational)\n";
        out_ << "f monotone on faces: " << yes(h.function_monotone) << " (informational)\n";
        for (const LevelClassification& level : h.classification.levels) {
            out_ << describe(level, inst.complex) << "\n";
        }
        for (const std::string& m : h.messages(inst.complex)) err_ << m << "\n";
        return h.ok() ? kExitOk : kExitValidation;
    }

    int homology()
    {
        const Instance& inst = load();
        const OrderedComplex& k = inst.complex;
        out_ << "H_*(K): " << betti_string(relative_homology(Subcomplex::full(k), Subcomplex::empty(k))) << "\n";
        if (opts_.pairs) {
            const Filtration filtration(k, function());
            for (int i = -1; i < filtration.max_level(); ++i) {
                out_ << pair_name(i) << ": "
                     << betti_string(relative_homology(filtration.at(i + 1), filtration.at(i))) << "\n";
            }
        }
        return kExitOk;
    }

    int traces_cmd()
    {
        const Instance& inst = load();
        const SimplicialSelfMap g = map();
        require_valid_map(g);
        const auto table = local_trace_table(inst.complex, function(), g, opts_.power);
        for (const LocalTrace& t : table) {
            out_ << "local " << t.degree << "-trace of g^" << t.power << " = " << to_integer(t.total) << "\n";
            for (std::size_t i = 0; i < t.per_level.size(); ++i) {
                if (t.per_level[i] == 0) continue;
                out_ << "  " << pair_name(static_cast<int>(i) - 1) << ": " << to_integer(t.per_level[i]) << "\n";
            }
        }
        return kExitOk;
    }

    int inequalities()
    {
        const Instance& inst = load();
        const ReportFormat format = parse_report_format(opts_.format);
        const std::vector<int> powers =
            opts_.powers.empty() ? std::vector<int>{opts_.power} : parse_power_list(opts_.powers);
        const InequalityReport report =
            inequality_report(inst.complex, function(), map(), powers, ReportOptions{opts_.exploratory});
        if (!report.validated) err_ << "warning: f is not Forman-Morse-Bott; report is unvalidated\n";
        out_ << render_report(report, format);
        return kExitOk;
    }

    int lefschetz()
    {
        const Instance& inst = load();
        const SimplicialSelfMap g = map();
        require_valid_map(g);
        out_ << "Lefschetz number of g^" << opts_.power << " = "
             << to_integer(lefschetz_number(g, inst.complex, opts_.power)) << "\n";
        if (inst.function) {
            const Localization loc = localization_identity(inst.complex, *inst.function, g, opts_.power);
            out_ << "alternating sum of local traces = " << to_integer(loc.local_sum) << "\n";
        }
        return kExitOk;
    }

    int lemma()
    {
        const Instance& inst = load();
        const OrderedComplex& k = inst.complex;
        const SimplicialSelfMap g = map();
        require_valid_map(g);
        const Subcomplex top = opts_.top.empty() ? Subcomplex::full(k) : parse_subcomplex(k, opts_.top);
        const Subcomplex middle = parse_subcomplex(k, opts_.middle);
        const Subcomplex bottom = parse_subcomplex(k, opts_.bottom);
        std::vector<LemmaCheck> checks;
        if (opts_.degree) {
            checks.push_back(verify_lemma_triple(top, middle, bottom, g, *opts_.degree));
        } else {
            checks = verify_lemma_triple_all(top, middle, bottom, g);
        }
        bool ok = true;
        for (const LemmaCheck& c : checks) {
            out_ << "j=" << c.j << ": " << to_integer(c.lhs) << " ≤ " << to_integer(c.rhs);
            if (c.equality_required) out_ << " (equality required)";
            out_ << "; trace on the image of the connecting map = " << to_integer(c.restricted_trace) << "\n";
            ok = ok && c.holds();
        }
        if (!ok) throw InvariantBreach("triple trace inequality violated");
        return kExitOk;
    }

    int selftest()
    {
        const auto start = std::chrono::steady_clock::now();
        bool ok = golden();
        const TheoremCheckSummary s = exhaustive_theorem_check(20, opts_.trials, opts_.seed);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out_ << "random instances: " << s.instances << " of " << s.trials << " trials (" << s.generator_failures
             << " generator failures)\n";
        out_ << "theorem violations: " << s.theorem_violations << " in " << s.reports << " reports\n";
        out_ << "lemma violations: " << s.lemma_violations << " in " << s.lemma_triples << " triples ("
             << s.lemma_strict << " strict somewhere)\n";
        out_ << "oracle mismatches: " << s.oracle_mismatches << " in " << s.oracle_pairs << " pairs\n";
        out_ << "elapsed: " << seconds << " s\n";
        for (const std::string& dump : s.fixtures) err_ << dump << "\n";
        ok = ok && s.clean();
        out_ << (ok ? "selftest passed" : "selftest FAILED") << "\n";
        return ok ? kExitOk : kExitInvariant;
    }

private:
    const Instance& load()
    {
        std::ifstream in(opts_.file, std::ios::binary);
        if (!in) throw UsageError("cannot read '" + opts_.file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            ParsedInstance parsed = parse_instance(buffer.str());
            for (const std::string& w : parsed.warnings) err_ << opts_.file << ": warning: " << w << "\n";
            instance_.emplace(std::move(parsed.instance));
        } catch (const ParseError& e) {
            throw UsageError(opts_.file + ":" + e.what());
        }
        return *instance_;
    }

    const MorseBottFunction& function() const
    {
        if (!instance_->function) throw UsageError(opts_.file + ": no f block; this command needs a function");
        return *instance_->function;
    }

    SimplicialSelfMap map() const
    {
        if (opts_.identity || !instance_->map) {
            if (!opts_.identity) err_ << "note: no map block; using the identity\n";
            return SimplicialSelfMap::identity(instance_->complex.vertex_count());
        }
        return *instance_->map;
    }

    void require_valid_map(const SimplicialSelfMap& g) const
    {
        const MapValidation v = validate_self_map(instance_->complex, g);
        if (v.ok()) return;
        std::string msg = "map fails validation:";
        for (const std::string& m : v.messages) msg += "\n  " + m;
        throw ValidationFailure(msg);
    }

    static std::string pair_name(int level)
    {
        if (level < 0) return "(K_0, empty)";
        return "(K_" + std::to_string(level + 1) + ", K_" + std::to_string(level) + ")";
    }

    static std::string betti_string(const RelativeHomology& h)
    {
        std::string s;
        for (int b : h.betti_numbers()) s += (s.empty() ? "" : " ") + std::to_string(b);
        return s;
    }

    bool golden()
    {
        const Instance inst = example_s2();
        const OrderedComplex& k = inst.complex;
        const MorseBottFunction& f = *inst.function;
        const SimplicialSelfMap& g = *inst.map;
        const std::vector<int> one{1};
        auto rows = [](const std::vector<InequalityRow>& r) {
            std::vector<std::pair<long long, long long>> out;
            for (const auto& row : r) out.emplace_back(to_integer(row.lhs), to_integer(row.rhs));
            return out;
        };
        using Rows = std::vector<std::pair<long long, long long>>;
        const PowerReport pg = inequality_report(k, f, g, one).powers.front();
        const PowerReport pid =
            inequality_report(k, f, SimplicialSelfMap::identity(k.vertex_count()), one).powers.front();

        bool ok = true;
        auto check = [&](const char* what, bool pass) {
            out_ << (pass ? "ok   " : "FAIL ") << what << "\n";
            ok = ok && pass;
        };
        check("example: hypotheses", check_hypotheses(k, f, g).ok());
        check("example: strong rows for g", rows(pg.strong) == Rows{{1, 1}, {-1, 0}, {1, 1}});
        check("example: strong rows for the identity", rows(pid.strong) == Rows{{1, 2}, {0, 1}, {0, 0}});
        check("example: weak rows for g", rows(pg.weak) == Rows{{1, 1}, {0, 1}, {0, 1}});
        check("example: weak rows for the identity", rows(pid.weak) == Rows{{1, 2}, {1, 3}, {0, 1}});
        bool lefschetz_ok = true;
        for (int l = 1; l <= 5; ++l) {
            const Localization loc = localization_identity(k, f, g, l);
            lefschetz_ok = lefschetz_ok && loc.lefschetz == 1 && loc.equal();
        }
        check("example: Lefschetz number 1 for l = 1..5", lefschetz_ok);
        return ok;
    }

    const Options& opts_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<Instance> instance_;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options opts;
    CLI::App app{"Morse-Bott inequalities for simplicial endomorphisms", "mbe"};
    app.require_subcommand(1);

    auto file_arg = [&](CLI::App* sub) {
        sub->add_option("file", opts.file, "instance file (.mbe)")->required();
    };
    auto* validate = app.add_subcommand("validate", "check every hypothesis of the inequalities");
    file_arg(validate);
    auto* homology = app.add_subcommand("homology", "Betti numbers of K, or of the filtration pairs");
    file_arg(homology);
    homology->add_flag("--pairs", opts.pairs, "also list (K_{i+1}, K_i) for every level");
    auto* traces = app.add_subcommand("traces", "local k-traces with their per-level breakdown");
    file_arg(traces);
    traces->add_option("--power", opts.power, "power l of g")->check(CLI::PositiveNumber);
    auto* inequalities = app.add_subcommand("inequalities", "strong and weak inequalities");
    file_arg(inequalities);
    inequalities->add_option("--power", opts.power, "power l of g")->check(CLI::PositiveNumber);
    inequalities->add_option("--powers", opts.powers, "list of powers: 3, 1..5 or 1,2,4");
    inequalities->add_option("--format", opts.format, "text, csv or json");
    inequalities->add_flag("--identity", opts.identity, "use the identity instead of the map block");
    inequalities->add_flag("--exploratory", opts.exploratory, "report even if f is not Forman-Morse-Bott");
    auto* lefschetz = app.add_subcommand("lefschetz", "Lefschetz number of g^l and its localization");
    file_arg(lefschetz);
    lefschetz->add_option("--power", opts.power, "power l of g")->check(CLI::PositiveNumber);
    auto* lemma = app.add_subcommand("lemma", "triple trace inequality for J <= L <= K");
    file_arg(lemma);
    lemma->add_option("--L", opts.middle, "simplices generating L, e.g. \"[v0,v1] v2\"")->required();
    lemma->add_option("--J", opts.bottom, "simplices generating J (may be empty)")->required();
    lemma->add_option("--K", opts.top, "simplices generating K (default: everything)");
    lemma->add_option("--j", opts.degree, "single degree j")->check(CLI::NonNegativeNumber);
    auto* selftest = app.add_subcommand("selftest", "reference example and random theorem checks");
    selftest->add_option("--trials", opts.trials, "random instances")->check(CLI::NonNegativeNumber);
    selftest->add_option("--seed", opts.seed, "seed of the random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Session session(opts, out, err);
    try {
        if (validate->parsed()) return session.validate();
        if (homology->parsed()) return session.homology();
        if (traces->parsed()) return session.traces_cmd();
        if (inequalities->parsed()) return session.inequalities();
        if (lefschetz->parsed()) return session.lefschetz();
        if (lemma->parsed()) return session.lemma();
        if (selftest->parsed()) return session.selftest();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationFailure& e) {
        err << "validation failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}

}  // namespace mbe
