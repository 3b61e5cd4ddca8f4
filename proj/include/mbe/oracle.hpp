#pragma once

// Brute-force reference computations and seeded random instance generators
// used by the differential and property tests.

#include "mbe/complex.hpp"
#include "mbe/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbe {

/// A generator ran out of its rejection budget.
class GeneratorFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Betti numbers of (top, bottom) for degrees 0..dim(parent), computed from
/// freshly enumerated integer boundary matrices with fraction-free
/// elimination. Shares no code with RelativeHomology.
std::vector<int> naive_betti(const Subcomplex& top, const Subcomplex& bottom);

/// Rank as the size of the largest non-vanishing minor (Laplace expansion).
/// Exponential; meant for matrices up to about 6x6.
int rank_by_minors(const RationalMatrix& m);

struct RandomInstance {
    OrderedComplex complex;
    SimplicialSelfMap map;
    std::optional<MorseBottFunction> function;
    std::uint64_t seed = 0;
};

struct ComplexShape {
    std::size_t max_vertices = 8;
    std::size_t max_simplices = 20;
    int max_dimension = 3;
};

/// Clique complex of a random graph with randomly pruned maximal faces.
OrderedComplex random_complex(std::mt19937_64& rng, const ComplexShape& shape = {});

/// Uniform over globally monotone vertex maps, rejection-sampled for
/// simpliciality. Throws GeneratorFailure after `budget` rejections.
SimplicialSelfMap random_order_preserving_map(const OrderedComplex& complex, std::uint64_t seed,
                                              int budget = 5000);

/// Random simplicial map that preserves the order on every simplex and
/// stabilizes, but need not be monotone on the whole vertex order. Each
/// vertex is fixed with probability 1/2, otherwise sent anywhere; rejection
/// sampled. Throws GeneratorFailure after `budget` rejections.
SimplicialSelfMap random_simplexwise_order_preserving_map(const OrderedComplex& complex, std::uint64_t seed,
                                                          int budget = 2000);

/// A Forman-Morse-Bott function with f(g(s)) <= f(s). Starts from a random
/// linear extension of the face and image relations (one simplex per
/// level, so every level is a critical simplex), then merges adjacent
/// levels at random while every level still classifies.
MorseBottFunction random_compatible_function(const OrderedComplex& complex, const SimplicialSelfMap& g,
                                             std::uint64_t seed, int merge_attempts = 40);

RandomInstance random_instance(std::uint64_t seed, const ComplexShape& shape = {});

/// Smallest g-invariant subcomplex containing a random seed set.
Subcomplex random_invariant_subcomplex(const OrderedComplex& complex, const SimplicialSelfMap& g,
                                       std::mt19937_64& rng, double density = 0.2);

struct TheoremCheckSummary {
    int trials = 0;
    int instances = 0;
    int generator_failures = 0;
    int reports = 0;
    int theorem_violations = 0;  // inequality, weak/strong relation or j = n equality
    int lemma_triples = 0;
    int lemma_violations = 0;
    int lemma_strict = 0;  // triples with a strict inequality in some degree
    int oracle_pairs = 0;
    int oracle_mismatches = 0;
    std::vector<std::string> fixtures;  // replayable dumps of failing instances

    bool clean() const { return theorem_violations == 0 && lemma_violations == 0 && oracle_mismatches == 0; }
};

/// Full pipeline on `trials` generated instances: inequality reports for
/// powers 1..3, Betti oracle agreement on every filtration pair, and
/// `triples_per_instance` random invariant triples for the lemma.
TheoremCheckSummary exhaustive_theorem_check(std::size_t max_simplices, int trials, std::uint64_t seed,
                                             int triples_per_instance = 3);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mbe
