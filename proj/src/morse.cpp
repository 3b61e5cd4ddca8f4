#include "mbe/morse.hpp"

#include "mbe/errors.hpp"
#include "mbe/linalg.hpp"

#include <algorithm>
#include <map>

namespace mbe {

namespace {

Rational alternating_partial_sum(std::span<const Rational> values, int j)
{
    Rational sum = 0;
    for (int k = 0; k <= j && k < static_cast<int>(values.size()); ++k) {
        if ((j - k) % 2 == 0) {
            sum += values[static_cast<std::size_t>(k)];
        } else {
            sum -= values[static_cast<std::size_t>(k)];
        }
    }
    return sum;
}

std::string join_betti(const std::vector<int>& betti)
{
    std::string out = "(";
    for (std::size_t k = 0; k < betti.size(); ++k) out += (k ? "," : "") + std::to_string(betti[k]);
    return out + ")";
}

std::string level_name(int level)
{
    if (level < 0) return "(K_0, empty)";
    return "(K_" + std::to_string(level + 1) + ", K_" + std::to_string(level) + ")";
}

// Relative homology of K and of every consecutive sublevel pair; shared by
// all powers of g since none of it depends on the map.
struct TraceEngine {
    TraceEngine(const OrderedComplex& complex, const MorseBottFunction& f)
        : filtration(complex, f),
          global(relative_homology(Subcomplex::full(complex), Subcomplex::empty(complex)))
    {
        for (int i = -1; i < filtration.max_level(); ++i) {
            levels.push_back(relative_homology(filtration.at(i + 1), filtration.at(i)));
        }
    }

    Filtration filtration;
    RelativeHomology global;
    std::vector<RelativeHomology> levels;  // entry i+1 is (K_{i+1}, K_i)

    std::vector<LocalTrace> local(const SimplicialSelfMap& gl, int l) const
    {
        const int n = global.max_degree();
        std::vector<LocalTrace> out(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) {
            out[static_cast<std::size_t>(k)].degree = k;
            out[static_cast<std::size_t>(k)].power = l;
            out[static_cast<std::size_t>(k)].total = 0;
        }
        for (const RelativeHomology& h : levels) {
            const auto t = traces(gl, h);
            for (int k = 0; k <= n; ++k) {
                LocalTrace& entry = out[static_cast<std::size_t>(k)];
                entry.per_level.push_back(t[static_cast<std::size_t>(k)]);
                entry.total += t[static_cast<std::size_t>(k)];
            }
        }
        return out;
    }
};

void require_compatible(const OrderedComplex& complex, const MorseBottFunction& f, const SimplicialSelfMap& g)
{
    const auto compat = check_compatibility(complex, f, g);
    if (!compat.ok()) {
        std::string list;
        for (const Simplex& s : compat.violations) list += " " + complex.format(s);
        throw InvalidInput("f(g(s)) <= f(s) fails on:" + list);
    }
}

PowerReport evaluate_power(const TraceEngine& engine, const SimplicialSelfMap& g, int l)
{
    const SimplicialSelfMap gl = power(g, l);
    PowerReport out;
    out.power = l;
    out.global_traces = traces(gl, engine.global);
    out.local = engine.local(gl, l);

    std::vector<Rational> local_totals;
    for (const LocalTrace& t : out.local) local_totals.push_back(t.total);
    const int n = engine.global.max_degree();
    for (int j = 0; j <= n; ++j) {
        out.strong.push_back({j, alternating_partial_sum(out.global_traces, j),
                              alternating_partial_sum(local_totals, j)});
        out.weak.push_back({j, out.global_traces[static_cast<std::size_t>(j)],
                            local_totals[static_cast<std::size_t>(j)]});
    }
    return out;
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

}  // namespace

// ---------------------------------------------------------------------------

std::string describe(const LevelClassification& level, const OrderedComplex& complex)
{
    std::string added;
    for (const Simplex& s : level.added) added += (added.empty() ? "" : " ") + complex.format(s);
    std::string out = "level " + level_name(level.level) + ": ";
    switch (level.kind) {
    case LevelCase::Empty:
        return out + "no new simplices";
    case LevelCase::CriticalSimplex:
        out += "critical simplex (2a)";
        break;
    case LevelCase::PeriodicOrbit:
        out += std::string("periodic orbit (2b ") +
               (level.subcase == OrbitSubcase::I ? "i" : level.subcase == OrbitSubcase::II ? "ii" : "iii") + ")";
        break;
    case LevelCase::GradientPair:
        out += "gradient pair (2c)";
        break;
    case LevelCase::Invalid:
        return out + level.diagnostic + " [adds " + added + "; relative Betti " + join_betti(level.betti) + "]";
    }
    return out + ", p=" + std::to_string(*level.p) + ", adds " + added + ", relative Betti " + join_betti(level.betti);
}

LevelClassification classify_level(const Subcomplex& upper, const Subcomplex& lower, int level)
{
    LevelClassification out;
    out.level = level;
    const OrderedComplex& complex = upper.parent();
    for (std::size_t idx : upper.indices()) {
        if (!lower.contains(idx)) out.added.push_back(complex.simplex(idx));
    }
    const RelativeHomology h = relative_homology(upper, lower);
    out.betti = h.betti_numbers();
    if (out.added.empty()) return out;

    int dmin = out.added.front().dimension();
    int dmax = dmin;
    for (const Simplex& s : out.added) {
        dmin = std::min(dmin, s.dimension());
        dmax = std::max(dmax, s.dimension());
    }
    auto fail = [&](std::string why) {
        out.kind = LevelCase::Invalid;
        out.diagnostic = std::move(why);
        return out;
    };
    if (dmax - dmin > 1) {
        return fail("new simplices have dimensions " + std::to_string(dmin) + " to " + std::to_string(dmax) +
                    "; a level may only add simplices of two consecutive dimensions p, p+1");
    }
    const int p = dmin;
    out.p = p;
    for (int k = 0; k < static_cast<int>(out.betti.size()); ++k) {
        if (k != p && k != p + 1 && out.betti[static_cast<std::size_t>(k)] != 0) {
            return fail("condition (1) fails: H_" + std::to_string(k) + " is non-zero outside degrees p, p+1");
        }
    }
    const int bp = h.betti(p);
    const int bq = h.betti(p + 1);

    if (dmin == dmax) {
        if (out.added.size() != 1) {
            return fail("adds " + std::to_string(out.added.size()) + " simplices, all of dimension " +
                        std::to_string(p) + "; case (2a) needs a unique simplex");
        }
        if (bp != 1 || bq != 0) {
            return fail("case (2a) needs H_p = Q and H_{p+1} = 0");
        }
        out.kind = LevelCase::CriticalSimplex;
        return out;
    }

    if (out.added.size() == 2 && bp == 0 && bq == 0) {
        out.kind = LevelCase::GradientPair;
        return out;
    }
    out.kind = LevelCase::PeriodicOrbit;
    if (bp == 0 && bq == 1) {
        out.subcase = OrbitSubcase::I;
    } else if (bp == 1 && bq == 0) {
        out.subcase = OrbitSubcase::II;
    } else if (bp == 1 && bq == 1) {
        out.subcase = OrbitSubcase::III;
    } else {
        out.p.reset();
        return fail("relative homology (H_p, H_{p+1}) = (" + std::to_string(bp) + ", " + std::to_string(bq) +
                    ") with p=" + std::to_string(p) + " matches none of (2b i), (2b ii), (2b iii), (2c)");
    }
    return out;
}

bool FunctionClassification::is_forman_morse_bott() const
{
    return std::all_of(levels.begin(), levels.end(),
                       [](const LevelClassification& l) { return l.level < 0 || l.valid(); });
}

std::vector<std::string> FunctionClassification::diagnostics(const OrderedComplex& complex) const
{
    std::vector<std::string> out;
    for (const auto& l : levels) {
        if (l.valid()) continue;
        out.push_back((l.level < 0 ? "note (bottom level, not required): " : "not Forman-Morse-Bott: ") +
                      describe(l, complex));
    }
    return out;
}

FunctionClassification classify_levels(const OrderedComplex& complex, const MorseBottFunction& f)
{
    const Filtration filtration(complex, f);
    FunctionClassification out;
    for (int i = -1; i < filtration.max_level(); ++i) {
        out.levels.push_back(classify_level(filtration.at(i + 1), filtration.at(i), i));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<LocalTrace> local_trace_table(const OrderedComplex& complex, const MorseBottFunction& f,
                                          const SimplicialSelfMap& g, int l)
{
    require_compatible(complex, f, g);
    const TraceEngine engine(complex, f);
    return engine.local(power(g, l), l);
}

LocalTrace local_traces(const OrderedComplex& complex, const MorseBottFunction& f, const SimplicialSelfMap& g,
                        int l, int k)
{
    auto table = local_trace_table(complex, f, g, l);
    if (k < 0 || k >= static_cast<int>(table.size())) {
        LocalTrace empty;
        empty.degree = k;
        empty.power = l;
        empty.total = 0;
        empty.per_level.assign(table.empty() ? 0 : table.front().per_level.size(), Rational(0));
        return empty;
    }
    return table[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------

std::vector<LemmaCheck> verify_lemma_triple_all(const Subcomplex& top, const Subcomplex& middle,
                                                const Subcomplex& bottom, const SimplicialSelfMap& g)
{
    if (!middle.is_subset_of(top) || !bottom.is_subset_of(middle)) {
        throw InvalidInput("lemma triple needs J <= L <= K");
    }
    const RelativeHomology kj = relative_homology(top, bottom);
    const RelativeHomology kl = relative_homology(top, middle);
    const RelativeHomology lj = relative_homology(middle, bottom);
    const auto t_kj = traces(g, kj);  // chain_map rejects non-invariant members
    const auto t_kl = traces(g, kl);
    const auto t_lj = traces(g, lj);
    const auto maps_lj = chain_map(g, lj.chains());

    const int n = top.parent().dimension();
    std::vector<LemmaCheck> out;
    for (int j = 0; j <= n; ++j) {
        LemmaCheck c;
        c.j = j;
        c.lhs = alternating_partial_sum(t_kj, j);
        c.rhs = alternating_partial_sum(t_kl, j) + alternating_partial_sum(t_lj, j);
        c.equality_required = j >= n;

        // T = H_j(g)_(L,J) restricted to the image of the connecting map.
        const RationalMatrix eta = connecting_map(kl, lj, j);
        const RationalMatrix image = image_basis(eta);
        const RationalMatrix t = induced_map(maps_lj, lj, j).matrix;
        c.restricted_trace = 0;
        for (Eigen::Index col = 0; col < image.cols(); ++col) {
            auto coeffs = solve_in_span(image, t * image.col(col));
            if (!coeffs) throw InvariantBreach("image of the connecting map is not invariant under the induced map");
            c.restricted_trace += (*coeffs)(col);
        }
        out.push_back(std::move(c));
    }
    return out;
}

LemmaCheck verify_lemma_triple(const Subcomplex& top, const Subcomplex& middle, const Subcomplex& bottom,
                               const SimplicialSelfMap& g, int j)
{
    const auto all = verify_lemma_triple_all(top, middle, bottom, g);
    if (j < 0) throw InvalidInput("lemma degree must be non-negative");
    if (j < static_cast<int>(all.size())) return all[static_cast<std::size_t>(j)];
    // Above the dimension every trace vanishes and the sums keep alternating.
    LemmaCheck c = all.back();
    if ((j - c.j) % 2 != 0) {
        c.lhs = -c.lhs;
        c.rhs = -c.rhs;
    }
    c.j = j;
    c.restricted_trace = 0;
    c.equality_required = true;
    return c;
}

// ---------------------------------------------------------------------------

bool PowerReport::all_hold() const
{
    return std::all_of(strong.begin(), strong.end(), [](const auto& r) { return r.holds(); }) &&
           std::all_of(weak.begin(), weak.end(), [](const auto& r) { return r.holds(); }) && equality_at_top();
}

bool InequalityReport::all_hold() const
{
    return std::all_of(powers.begin(), powers.end(), [](const auto& p) { return p.all_hold(); });
}

HypothesisReport check_hypotheses(const OrderedComplex& complex, const MorseBottFunction& f,
                                  const SimplicialSelfMap& g)
{
    HypothesisReport out;
    out.map = validate_self_map(complex, g);
    if (out.map.length_ok) out.compatibility = check_compatibility(complex, f, g);
    out.classification = classify_levels(complex, f);
    out.function_monotone = is_monotone_on_faces(complex, f);
    return out;
}

std::vector<std::string> HypothesisReport::messages(const OrderedComplex& complex) const
{
    std::vector<std::string> out = map.messages;
    for (const Simplex& s : compatibility.violations) {
        out.push_back("incompatible: f(g(" + complex.format(s) + ")) > f(" + complex.format(s) + ")");
    }
    for (std::string& d : classification.diagnostics(complex)) out.push_back(std::move(d));
    return out;
}

InequalityReport inequality_report(const OrderedComplex& complex, const MorseBottFunction& f,
                                   const SimplicialSelfMap& g, std::span<const int> powers, ReportOptions options)
{
    for (int l : powers) {
        if (l < 1) throw InvalidInput("map power must be at least 1, got " + std::to_string(l));
    }
    const HypothesisReport hyp = check_hypotheses(complex, f, g);
    if (!hyp.map.ok() || !hyp.compatibility.ok() ||
        (!options.exploratory && !hyp.classification.is_forman_morse_bott())) {
        std::string msg = "hypotheses not satisfied:";
        for (const auto& m : hyp.messages(complex)) msg += "\n  " + m;
        throw ValidationFailure(msg);
    }

    InequalityReport report;
    report.dimension = complex.dimension();
    report.identity_map = g.is_identity();
    report.validated = hyp.classification.is_forman_morse_bott();
    report.stabilization = stabilization_exponent(g);

    const TraceEngine engine(complex, f);
    std::optional<PowerReport> stable;
    for (int l : powers) {
        PowerReport r = evaluate_power(engine, g, l);
        // Without the Forman-Morse-Bott property nothing is guaranteed, so an
        // exploratory report shows failing rows instead of raising.
        if (!report.validated) {
            report.powers.push_back(std::move(r));
            continue;
        }
        for (const auto& row : r.strong) {
            if (!row.holds()) {
                throw InvariantBreach("strong inequality fails at l=" + std::to_string(l) + ", j=" +
                                      std::to_string(row.j) + ": " + to_string(row.lhs) + " > " +
                                      to_string(row.rhs));
            }
        }
        for (const auto& row : r.weak) {
            if (!row.holds()) {
                throw InvariantBreach("weak inequality fails at l=" + std::to_string(l) + ", j=" +
                                      std::to_string(row.j));
            }
        }
        if (!r.equality_at_top()) {
            throw InvariantBreach("no equality at j = n for l=" + std::to_string(l));
        }
        if (l > report.stabilization) {
            if (!stable) stable = evaluate_power(engine, g, report.stabilization + 1);
            if (!same_rows(*stable, r)) {
                throw InvariantBreach("report rows change with l beyond the stabilization exponent");
            }
        }
        report.powers.push_back(std::move(r));
    }
    return report;
}

Localization localization_identity(const OrderedComplex& complex, const MorseBottFunction& f,
                                   const SimplicialSelfMap& g, int l)
{
    const auto local = local_trace_table(complex, f, g, l);
    Localization out;
    out.lefschetz = lefschetz_number(g, complex, l);
    out.local_sum = 0;
    for (const LocalTrace& t : local) {
        if (t.degree % 2 == 0) {
            out.local_sum += t.total;
        } else {
            out.local_sum -= t.total;
        }
    }
    if (!out.equal()) {
        throw InvariantBreach("Lefschetz number " + to_string(out.lefschetz) +
                              " differs from the alternating sum of local traces " + to_string(out.local_sum));
    }
    return out;
}

}  // namespace mbe
