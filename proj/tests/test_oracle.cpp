#include "mbe/morse.hpp"
#include "mbe/oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace mbe {
namespace {

using test::sub;

TEST(NaiveBetti, SmallExamples)
{
    const OrderedComplex hollow = test::triangle(false);
    EXPECT_EQ(naive_betti(Subcomplex::full(hollow), Subcomplex::empty(hollow)), (std::vector<int>{1, 1}));
    const OrderedComplex solid = test::triangle(true);
    EXPECT_EQ(naive_betti(Subcomplex::full(solid), sub(solid, "[v0,v1] [v0,v2] [v1,v2]")),
              (std::vector<int>{0, 0, 1}));
    const Subcomplex x = sub(solid, "[v0,v1] v2");
    EXPECT_EQ(naive_betti(x, x), (std::vector<int>{0, 0, 0}));
}

TEST(NaiveBetti, AgreesOnHandFreeRandomPairs)
{
    std::mt19937_64 rng(77);
    int pairs = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const OrderedComplex k = random_complex(rng);
        std::bernoulli_distribution take(0.3);
        std::vector<std::size_t> top_seed;
        std::vector<std::size_t> bottom_seed;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (take(rng)) top_seed.push_back(i);
        }
        const Subcomplex top = top_seed.empty() ? Subcomplex::full(k) : closure_of_indices(k, top_seed);
        for (std::size_t i : top.indices()) {
            if (take(rng)) bottom_seed.push_back(i);
        }
        const Subcomplex bottom = closure_of_indices(k, bottom_seed);
        EXPECT_EQ(relative_homology(top, bottom).betti_numbers(), naive_betti(top, bottom));
        ++pairs;
    }
    EXPECT_EQ(pairs, 50);
}

TEST(RankByMinors, Examples)
{
    EXPECT_EQ(rank_by_minors(RationalMatrix::Identity(3, 3)), 3);
    EXPECT_EQ(rank_by_minors(RationalMatrix::Zero(4, 2)), 0);
    RationalMatrix m(2, 2);
    m << 1, 2, 2, 4;
    EXPECT_EQ(rank_by_minors(m), 1);
}

TEST(Generators, AreDeterministic)
{
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        const RandomInstance a = random_instance(seed);
        const RandomInstance b = random_instance(seed);
        EXPECT_EQ(a.complex, b.complex);
        EXPECT_EQ(a.map, b.map);
        EXPECT_EQ(a.function, b.function);
    }
    const OrderedComplex& k = test::example_complex();
    EXPECT_EQ(random_order_preserving_map(k, 5), random_order_preserving_map(k, 5));
}

TEST(Generators, RespectTheShape)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const RandomInstance inst = random_instance(seed);
        EXPECT_LE(inst.complex.size(), 20u);
        EXPECT_LE(inst.complex.vertex_count(), 8u);
        EXPECT_LE(inst.complex.dimension(), 3);
    }
}

TEST(Generators, OutputsSatisfyEveryHypothesis)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const RandomInstance inst = random_instance(seed);
        const HypothesisReport h = check_hypotheses(inst.complex, *inst.function, inst.map);
        EXPECT_TRUE(h.ok()) << "seed " << seed;
    }
}

// All self-maps of the path v0 - v1 - v2, filtered by the validator.
// Ten maps are monotone; 002 and 022 send an edge onto [v0,v2], which is
// not in the path, leaving eight.
TEST(Generators, PathComplexMaps)
{
    const OrderedComplex path = OrderedComplex::generated_by(3, {Simplex({0, 1}), Simplex({1, 2})});
    std::set<std::vector<VertexId>> monotone;
    std::set<std::vector<VertexId>> valid;
    for (VertexId a = 0; a < 3; ++a) {
        for (VertexId b = 0; b < 3; ++b) {
            for (VertexId c = 0; c < 3; ++c) {
                const SimplicialSelfMap g({a, b, c});
                if (is_globally_monotone(g)) monotone.insert(g.vertex_image());
                if (validate_self_map(path, g).ok()) valid.insert(g.vertex_image());
            }
        }
    }
    EXPECT_EQ(monotone.size(), 10u);
    EXPECT_EQ(valid.size(), 8u);
    EXPECT_TRUE(valid.contains({0, 0, 0}));  // constant
    EXPECT_TRUE(valid.contains({0, 0, 1}));  // shift toward v0
    EXPECT_FALSE(valid.contains({0, 0, 2}));

    std::set<std::vector<VertexId>> seen;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        seen.insert(random_order_preserving_map(path, seed).vertex_image());
        seen.insert(random_simplexwise_order_preserving_map(path, seed).vertex_image());
    }
    EXPECT_EQ(seen, valid);
}

TEST(Generators, CompatibleFunctionForACollapseOnAStar)
{
    // Star with centre v0; every leaf is pushed onto the centre.
    const OrderedComplex star =
        OrderedComplex::generated_by(4, {Simplex({0, 1}), Simplex({0, 2}), Simplex({0, 3})});
    const SimplicialSelfMap collapse({0, 0, 0, 0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const MorseBottFunction f = random_compatible_function(star, collapse, seed);
        EXPECT_TRUE(check_hypotheses(star, f, collapse).ok());
    }
}

// The property suite is only as good as the instances it sees.
TEST(Generators, CoverEveryKindOfLevelAndMap)
{
    int identity = 0;
    int not_globally_monotone = 0;
    std::map<LevelCase, int> kinds;
    std::map<OrbitSubcase, int> subcases;
    int non_monotone_f = 0;
    int dim2 = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const RandomInstance inst = random_instance(seed);
        identity += inst.map.is_identity();
        not_globally_monotone += !is_globally_monotone(inst.map);
        non_monotone_f += !is_monotone_on_faces(inst.complex, *inst.function);
        dim2 += inst.complex.dimension() >= 2;
        for (const auto& level : classify_levels(inst.complex, *inst.function).levels) {
            if (level.level < 0) continue;
            ++kinds[level.kind];
            if (level.kind == LevelCase::PeriodicOrbit) ++subcases[level.subcase];
        }
    }
    std::cout << "identity maps " << identity << ", not globally monotone " << not_globally_monotone
              << ", f not monotone on faces " << non_monotone_f << ", dimension >= 2 " << dim2 << "\n"
              << "levels: 2a " << kinds[LevelCase::CriticalSimplex] << ", 2b " << kinds[LevelCase::PeriodicOrbit]
              << " (i " << subcases[OrbitSubcase::I] << ", ii " << subcases[OrbitSubcase::II] << ", iii "
              << subcases[OrbitSubcase::III] << "), 2c " << kinds[LevelCase::GradientPair] << "\n";
    EXPECT_GE(identity, 20);
    EXPECT_GE(not_globally_monotone, 20);
    EXPECT_GE(non_monotone_f, 10);
    EXPECT_GE(dim2, 40);
    EXPECT_GE(kinds[LevelCase::GradientPair], 50);
    EXPECT_GE(kinds[LevelCase::PeriodicOrbit], 20);
    EXPECT_EQ(kinds[LevelCase::Invalid], 0);
}

TEST(TheoremCheck, ZeroTrialsGiveAnEmptySummary)
{
    const TheoremCheckSummary s = exhaustive_theorem_check(20, 0, 1);
    EXPECT_EQ(s.trials, 0);
    EXPECT_EQ(s.instances, 0);
    EXPECT_TRUE(s.clean());
}

TEST(TheoremCheck, SmallRunIsClean)
{
    const TheoremCheckSummary s = exhaustive_theorem_check(12, 40, 2024);
    EXPECT_TRUE(s.clean());
    EXPECT_EQ(s.instances + s.generator_failures, 40);
    EXPECT_EQ(s.reports, s.instances);
}

TEST(TheoremCheck, DumpedInstancesReplay)
{
    const RandomInstance inst = random_instance(31);
    const Instance as_file{inst.complex, inst.map, inst.function};
    const ParsedInstance replay = parse_instance(render_instance(as_file));
    EXPECT_TRUE(replay.warnings.empty());
    EXPECT_EQ(replay.instance, as_file);
    const std::vector<int> powers{1, 2};
    const auto a = inequality_report(inst.complex, *inst.function, inst.map, powers);
    const auto b = inequality_report(replay.instance.complex, *replay.instance.function, *replay.instance.map, powers);
    EXPECT_EQ(render_report(a, ReportFormat::Csv), render_report(b, ReportFormat::Csv));
}

TEST(DeriveSeed, SpreadsStreams)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(7, s));
    EXPECT_EQ(seen.size(), 100u);
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

}  // namespace
}  // namespace mbe
