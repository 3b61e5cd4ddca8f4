#pragma once

// Forman-Morse-Bott functions, local k-traces, the triple trace inequality
// and the strong/weak Morse-Bott inequalities for an endomorphism.

#include "mbe/complex.hpp"
#include "mbe/homology.hpp"
#include "mbe/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mbe {

enum class LevelCase {
    Empty,            // K_{i+1} == K_i
    CriticalSimplex,  // (2a)
    PeriodicOrbit,    // (2b)
    GradientPair,     // (2c)
    Invalid,
};

enum class OrbitSubcase {
    None,
    I,    // H_p = 0, H_{p+1} = Q
    II,   // H_p = Q, H_{p+1} = 0
    III,  // H_p = Q, H_{p+1} = Q
};

/// The step from K_i to K_{i+1}. `level` is i, so level -1 is (K_0, empty).
struct LevelClassification {
    int level = -1;
    LevelCase kind = LevelCase::Empty;
    OrbitSubcase subcase = OrbitSubcase::None;
    std::optional<int> p;
    std::vector<Simplex> added;
    std::vector<int> betti;  // dim H_k(K_{i+1}, K_i), k = 0..dim K
    std::string diagnostic;  // set iff kind == Invalid

    bool valid() const { return kind != LevelCase::Invalid; }
};

std::string describe(const LevelClassification& level, const OrderedComplex& complex);

struct FunctionClassification {
    std::vector<LevelClassification> levels;  // level -1 .. m-1

    /// Every level i >= 0 classifies. The bottom level (K_0, empty) is
    /// classified and reported but does not decide the verdict.
    bool is_forman_morse_bott() const;
    std::vector<std::string> diagnostics(const OrderedComplex& complex) const;
};

LevelClassification classify_level(const Subcomplex& upper, const Subcomplex& lower, int level);
FunctionClassification classify_levels(const OrderedComplex& complex, const MorseBottFunction& f);

struct LocalTrace {
    int degree = 0;
    int power = 1;
    Rational total;
    std::vector<Rational> per_level;  // entry i+1 is Tr H_k(g^l) on (K_{i+1}, K_i)
};

/// Local k-traces of g^l for k = 0..dim K. Requires f(g(s)) <= f(s) for all
/// s (otherwise InvalidInput); does not require f to be Forman-Morse-Bott.
std::vector<LocalTrace> local_trace_table(const OrderedComplex& complex, const MorseBottFunction& f,
                                          const SimplicialSelfMap& g, int l);
LocalTrace local_traces(const OrderedComplex& complex, const MorseBottFunction& f, const SimplicialSelfMap& g,
                        int l, int k);

/// One degree of the triple inequality for J in L in K (all g-invariant):
///   sum_{k<=j} (-1)^{j-k} Tr H_k(g)_(K,J)
///     <= sum_{k<=j} (-1)^{j-k} [Tr H_k(g)_(K,L) + Tr H_k(g)_(L,J)].
struct LemmaCheck {
    int j = 0;
    Rational lhs;
    Rational rhs;
    /// Trace of H_j(g)_(L,J) restricted to the image of the connecting map
    /// H_{j+1}(K,L) -> H_j(L,J), computed directly.
    Rational restricted_trace;
    bool equality_required = false;  // j >= dim of the parent complex

    bool holds() const
    {
        return lhs <= rhs && (!equality_required || lhs == rhs) && rhs - lhs == restricted_trace &&
               restricted_trace >= 0;
    }
};

/// Throws InvalidInput unless bottom <= middle <= top are nested and g-invariant.
LemmaCheck verify_lemma_triple(const Subcomplex& top, const Subcomplex& middle, const Subcomplex& bottom,
                               const SimplicialSelfMap& g, int j);
std::vector<LemmaCheck> verify_lemma_triple_all(const Subcomplex& top, const Subcomplex& middle,
                                                const Subcomplex& bottom, const SimplicialSelfMap& g);

struct InequalityRow {
    int j = 0;
    Rational lhs;
    Rational rhs;

    bool holds() const { return lhs <= rhs; }
    bool equal() const { return lhs == rhs; }
};

struct PowerReport {
    int power = 1;
    std::vector<Rational> global_traces;  // Tr H_k(g^l), k = 0..n
    std::vector<LocalTrace> local;        // local k-traces of g^l
    std::vector<InequalityRow> strong;    // j = 0..n
    std::vector<InequalityRow> weak;      // j = 0..n

    bool equality_at_top() const { return !strong.empty() && strong.back().equal(); }
    bool all_hold() const;
};

struct InequalityReport {
    int dimension = 0;
    bool identity_map = false;
    bool validated = true;  // false: f is not Forman-Morse-Bott (exploratory mode)
    int stabilization = 0;
    std::vector<PowerReport> powers;

    bool all_hold() const;
};

struct ReportOptions {
    bool exploratory = false;  // compute even when f is not Forman-Morse-Bott
};

/// Validates every hypothesis (throws ValidationFailure listing what failed)
/// then evaluates both families of inequalities for each requested power.
/// A violated inequality, a missing equality at j = n, or rows that vary
/// with l beyond the stabilization exponent throw InvariantBreach, except
/// in an exploratory report on an unvalidated function, which shows the
/// rows as computed.
InequalityReport inequality_report(const OrderedComplex& complex, const MorseBottFunction& f,
                                   const SimplicialSelfMap& g, std::span<const int> powers,
                                   ReportOptions options = {});

struct Localization {
    Rational lefschetz;    // sum (-1)^k Tr H_k(g^l)
    Rational local_sum;    // sum (-1)^k local k-trace of g^l
    bool equal() const { return lefschetz == local_sum; }
};

Localization localization_identity(const OrderedComplex& complex, const MorseBottFunction& f,
                                   const SimplicialSelfMap& g, int l);

/// Every hypothesis of the inequalities, checked without throwing.
struct HypothesisReport {
    MapValidation map;
    CompatibilityReport compatibility;
    FunctionClassification classification;
    bool function_monotone = true;  // informational

    bool ok() const { return map.ok() && compatibility.ok() && classification.is_forman_morse_bott(); }
    std::vector<std::string> messages(const OrderedComplex& complex) const;
};

HypothesisReport check_hypotheses(const OrderedComplex& complex, const MorseBottFunction& f,
                                  const SimplicialSelfMap& g);

}  // namespace mbe
