#include "mbe/oracle.hpp"

#include "mbe/errors.hpp"
#include "mbe/homology.hpp"
#include "mbe/io.hpp"
#include "mbe/morse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mbe {

namespace {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Bareiss elimination; columns right to left, pivot rows searched bottom up.
int bareiss_rank(IntMatrix a, std::size_t cols)
{
    const std::size_t rows = a.size();
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t step = 0; step < cols && rank < rows; ++step) {
        const std::size_t col = cols - 1 - step;
        std::size_t pivot = rows;
        for (std::size_t r = rows; r-- > rank;) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const BigInt p = a[rank][col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const BigInt factor = a[r][col];
            for (std::size_t c = 0; c < cols; ++c) {
                BigInt num = p * a[r][c] - factor * a[rank][c];
                if (num % prev != 0) throw InvariantBreach("Bareiss division is not exact");
                a[r][c] = num / prev;
            }
        }
        prev = p;
        ++rank;
    }
    return static_cast<int>(rank);
}

Rational determinant(const RationalMatrix& m)
{
    const Eigen::Index n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Rational det = 0;
    for (Eigen::Index c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        RationalMatrix minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index mc = 0;
            for (Eigen::Index cc = 0; cc < n; ++cc) {
                if (cc != c) minor(r - 1, mc++) = m(r, cc);
            }
        }
        const Rational term = m(0, c) * determinant(minor);
        det += (c % 2 == 0) ? term : Rational(-term);
    }
    return det;
}

// Calls `visit` with each k-subset of {0..n-1}; stops when it returns true.
bool any_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& visit)
{
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (visit(idx)) return true;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

void collect_cliques(const std::vector<std::vector<bool>>& adj, std::vector<VertexId>& current, VertexId next,
                     int max_size, std::vector<Simplex>& out)
{
    if (!current.empty()) out.emplace_back(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (VertexId v = next; v < adj.size(); ++v) {
        bool ok = true;
        for (VertexId u : current) ok = ok && adj[u][v];
        if (!ok) continue;
        current.push_back(v);
        collect_cliques(adj, current, v + 1, max_size, out);
        current.pop_back();
    }
}

std::size_t level_size(const std::vector<int>& values, int level)
{
    return static_cast<std::size_t>(std::count(values.begin(), values.end(), level));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    // splitmix64
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<int> naive_betti(const Subcomplex& top, const Subcomplex& bottom)
{
    const OrderedComplex& k = top.parent();
    const int n = k.dimension();
    std::vector<std::map<std::vector<VertexId>, std::size_t>> cells(static_cast<std::size_t>(n + 2));
    for (const Simplex& s : k.simplices()) {
        if (!top.contains(s) || bottom.contains(s)) continue;
        std::vector<VertexId> key(s.vertices().begin(), s.vertices().end());
        auto& bucket = cells[static_cast<std::size_t>(s.dimension())];
        bucket.emplace(key, bucket.size());
    }

    // rank of d_d : C_d -> C_{d-1}
    auto boundary_rank = [&](int d) {
        if (d <= 0 || d > n) return 0;
        const auto& rows = cells[static_cast<std::size_t>(d - 1)];
        const auto& cols = cells[static_cast<std::size_t>(d)];
        if (rows.empty() || cols.empty()) return 0;
        IntMatrix m(rows.size(), std::vector<BigInt>(cols.size(), BigInt(0)));
        for (const auto& [verts, c] : cols) {
            for (std::size_t drop = 0; drop < verts.size(); ++drop) {
                std::vector<VertexId> face = verts;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
                auto it = rows.find(face);
                if (it != rows.end()) m[it->second][c] = (drop % 2 == 0) ? 1 : -1;
            }
        }
        return bareiss_rank(std::move(m), cols.size());
    };

    std::vector<int> betti;
    for (int d = 0; d <= n; ++d) {
        const int chains = static_cast<int>(cells[static_cast<std::size_t>(d)].size());
        betti.push_back(chains - boundary_rank(d) - boundary_rank(d + 1));
    }
    return betti;
}

int rank_by_minors(const RationalMatrix& m)
{
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    for (int r = std::min(rows, cols); r > 0; --r) {
        const bool found = any_subset(rows, r, [&](const std::vector<int>& rsel) {
            return any_subset(cols, r, [&](const std::vector<int>& csel) {
                RationalMatrix sub(r, r);
                for (int i = 0; i < r; ++i) {
                    for (int j = 0; j < r; ++j) sub(i, j) = m(rsel[static_cast<std::size_t>(i)], csel[static_cast<std::size_t>(j)]);
                }
                return determinant(sub) != 0;
            });
        });
        if (found) return r;
    }
    return 0;
}

// ---------------------------------------------------------------------------

OrderedComplex random_complex(std::mt19937_64& rng, const ComplexShape& shape)
{
    const std::size_t cap = std::max<std::size_t>(1, std::min(shape.max_vertices, shape.max_simplices));
    // Mostly three or more vertices; a few degenerate complexes keep the edge cases covered.
    const std::size_t low = std::bernoulli_distribution(0.1)(rng) ? 1 : std::min<std::size_t>(3, cap);
    const auto n = std::uniform_int_distribution<std::size_t>(low, cap)(rng);
    const double p = std::uniform_real_distribution<double>(0.25, 0.85)(rng);
    std::bernoulli_distribution edge(p);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) adj[u][v] = adj[v][u] = edge(rng);
    }

    std::vector<Simplex> cliques;
    std::vector<VertexId> current;
    collect_cliques(adj, current, 0, shape.max_dimension + 1, cliques);
    std::set<Simplex> simplices(cliques.begin(), cliques.end());

    auto maximal = [&]() {
        std::vector<Simplex> out;
        for (const Simplex& s : simplices) {
            if (s.dimension() == 0) continue;
            bool is_max = true;
            for (const Simplex& t : simplices) {
                if (t.dimension() == s.dimension() + 1 && s.is_face_of(t)) {
                    is_max = false;
                    break;
                }
            }
            if (is_max) out.push_back(s);
        }
        return out;
    };
    int extra_prunes = std::uniform_int_distribution<int>(0, 3)(rng);
    while (simplices.size() > shape.max_simplices || extra_prunes-- > 0) {
        const auto candidates = maximal();
        if (candidates.empty()) break;
        simplices.erase(candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)]);
    }
    return OrderedComplex::generated_by(n, std::vector<Simplex>(simplices.begin(), simplices.end()));
}

SimplicialSelfMap random_order_preserving_map(const OrderedComplex& complex, std::uint64_t seed, int budget)
{
    std::mt19937_64 rng(seed);
    const std::size_t n = complex.vertex_count();
    if (n == 0) throw InvalidInput("cannot map an empty complex");
    std::vector<std::size_t> slots(2 * n - 1);
    for (int attempt = 0; attempt < budget; ++attempt) {
        // Non-decreasing sequences in [0, n) <-> n-subsets of [0, 2n-1).
        std::iota(slots.begin(), slots.end(), 0);
        std::shuffle(slots.begin(), slots.end(), rng);
        std::vector<std::size_t> chosen(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(n));
        std::sort(chosen.begin(), chosen.end());
        std::vector<VertexId> image(n);
        for (std::size_t i = 0; i < n; ++i) image[i] = static_cast<VertexId>(chosen[i] - i);

        SimplicialSelfMap g(std::move(image));
        if (validate_self_map(complex, g).simplicial()) return g;
    }
    throw GeneratorFailure("no simplicial monotone map found within " + std::to_string(budget) + " attempts");
}

SimplicialSelfMap random_simplexwise_order_preserving_map(const OrderedComplex& complex, std::uint64_t seed,
                                                          int budget)
{
    std::mt19937_64 rng(seed);
    const std::size_t n = complex.vertex_count();
    std::bernoulli_distribution fixed(0.5);
    std::uniform_int_distribution<VertexId> any(0, static_cast<VertexId>(n - 1));
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<VertexId> image(n);
        for (VertexId v = 0; v < n; ++v) image[v] = fixed(rng) ? v : any(rng);
        SimplicialSelfMap g(std::move(image));
        if (!g.is_identity() && validate_self_map(complex, g).ok()) return g;
    }
    throw GeneratorFailure("no simplexwise order-preserving map found within " + std::to_string(budget) +
                           " attempts");
}

MorseBottFunction random_compatible_function(const OrderedComplex& complex, const SimplicialSelfMap& g,
                                             std::uint64_t seed, int merge_attempts)
{
    std::mt19937_64 rng(seed);
    const std::size_t count = complex.size();

    // Linear extension of: face before coface, g(s) before s.
    std::vector<std::vector<std::size_t>> after(count);
    std::vector<int> indegree(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        for (const Simplex& f : complex.simplex(i).facets()) {
            after[*complex.index_of(f)].push_back(i);
            ++indegree[i];
        }
        auto img = complex.index_of(g.image(complex.simplex(i)));
        if (!img) throw InvalidInput("map is not simplicial");
        if (*img != i) {
            after[*img].push_back(i);
            ++indegree[i];
        }
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < count; ++i) {
        if (indegree[i] == 0) ready.push_back(i);
    }
    std::vector<int> values(count, -1);
    int next = 0;
    while (!ready.empty()) {
        const auto pick = std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng);
        const std::size_t s = ready[pick];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
        values[s] = next++;
        for (std::size_t t : after[s]) {
            if (--indegree[t] == 0) ready.push_back(t);
        }
    }
    if (next != static_cast<int>(count)) throw GeneratorFailure("face and image relations contain a cycle");

    for (int attempt = 0; attempt < merge_attempts; ++attempt) {
        const int m = *std::max_element(values.begin(), values.end());
        if (m == 0) break;
        const int t = std::uniform_int_distribution<int>(0, m - 1)(rng);
        // Keep some gradient pairs intact instead of absorbing them into larger levels.
        if (level_size(values, t) == 2 || level_size(values, t + 1) == 2) {
            if (std::bernoulli_distribution(0.7)(rng)) continue;
        }
        std::vector<int> merged = values;
        for (int& v : merged) {
            if (v > t) --v;
        }
        const MorseBottFunction candidate(complex, merged);
        const Filtration filtration(complex, candidate);
        if (classify_level(filtration.at(t), filtration.at(t - 1), t - 1).valid()) values = std::move(merged);
    }

    // Raise a face whose entry level is already fixed by a coface; the
    // filtration is unchanged but f stops being monotone on faces.
    const int m = *std::max_element(values.begin(), values.end());
    for (int attempt = 0; attempt < 3; ++attempt) {
        const auto s = std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
        int lowest_coface = -1;
        for (std::size_t c = 0; c < count; ++c) {
            if (complex.simplex(c).dimension() == complex.simplex(s).dimension() + 1 &&
                complex.simplex(s).is_face_of(complex.simplex(c))) {
                lowest_coface = lowest_coface < 0 ? values[c] : std::min(lowest_coface, values[c]);
            }
        }
        if (lowest_coface < 0 || values[s] != lowest_coface || lowest_coface == m) continue;
        std::vector<int> raised = values;
        raised[s] = std::uniform_int_distribution<int>(lowest_coface + 1, m)(rng);
        const MorseBottFunction candidate(complex, raised);
        if (check_compatibility(complex, candidate, g).ok()) values = std::move(raised);
    }
    return MorseBottFunction(complex, values);
}

RandomInstance random_instance(std::uint64_t seed, const ComplexShape& shape)
{
    std::mt19937_64 rng(seed);
    OrderedComplex complex = random_complex(rng, shape);
    const double kind = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::optional<SimplicialSelfMap> g;
    if (kind < 0.2) {
        g = SimplicialSelfMap::identity(complex.vertex_count());
    } else if (kind < 0.6) {
        try {
            g = random_simplexwise_order_preserving_map(complex, derive_seed(seed, 4));
        } catch (const GeneratorFailure&) {
        }
    }
    if (!g) g = random_order_preserving_map(complex, derive_seed(seed, 1));
    MorseBottFunction f = random_compatible_function(complex, *g, derive_seed(seed, 2));
    return RandomInstance{std::move(complex), std::move(*g), std::move(f), seed};
}

Subcomplex random_invariant_subcomplex(const OrderedComplex& complex, const SimplicialSelfMap& g,
                                       std::mt19937_64& rng, double density)
{
    std::bernoulli_distribution take(density);
    std::vector<std::size_t> seed;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        if (take(rng)) seed.push_back(i);
    }
    return invariant_hull(g, closure_of_indices(complex, seed));
}

// ---------------------------------------------------------------------------

TheoremCheckSummary exhaustive_theorem_check(std::size_t max_simplices, int trials, std::uint64_t seed,
                                             int triples_per_instance)
{
    TheoremCheckSummary summary;
    const ComplexShape shape{8, max_simplices, 3};
    for (int trial = 0; trial < trials; ++trial) {
        ++summary.trials;
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(trial));
        std::optional<RandomInstance> inst;
        try {
            inst = random_instance(s, shape);
        } catch (const GeneratorFailure&) {
            ++summary.generator_failures;
            continue;
        }
        ++summary.instances;
        const OrderedComplex& k = inst->complex;
        const SimplicialSelfMap& g = inst->map;
        const MorseBottFunction& f = *inst->function;

        bool failed = false;
        try {
            const std::vector<int> powers{1, 2, 3};
            const InequalityReport report = inequality_report(k, f, g, powers);
            ++summary.reports;
            for (const PowerReport& p : report.powers) {
                for (std::size_t j = 0; j < p.weak.size(); ++j) {
                    const Rational prev_lhs = j == 0 ? Rational(0) : p.strong[j - 1].lhs;
                    const Rational prev_rhs = j == 0 ? Rational(0) : p.strong[j - 1].rhs;
                    if (p.weak[j].lhs != p.strong[j].lhs + prev_lhs || p.weak[j].rhs != p.strong[j].rhs + prev_rhs) {
                        failed = true;
                    }
                }
                if (!p.all_hold()) failed = true;
            }
            if (!localization_identity(k, f, g, 1).equal()) failed = true;
        } catch (const std::exception&) {
            failed = true;
        }
        if (failed) ++summary.theorem_violations;

        const Filtration filtration(k, f);
        for (int i = -1; i < filtration.max_level(); ++i) {
            ++summary.oracle_pairs;
            const auto fast = relative_homology(filtration.at(i + 1), filtration.at(i)).betti_numbers();
            if (fast != naive_betti(filtration.at(i + 1), filtration.at(i))) {
                ++summary.oracle_mismatches;
                failed = true;
            }
        }

        std::mt19937_64 rng(derive_seed(s, 3));
        // Each member is the invariant hull of the previous one plus a random seed set.
        auto grow = [&](const Subcomplex& base, double density) {
            std::vector<std::size_t> seeds = base.indices();
            for (std::size_t i : random_invariant_subcomplex(k, g, rng, density).indices()) seeds.push_back(i);
            return invariant_hull(g, closure_of_indices(k, seeds));
        };
        for (int t = 0; t < triples_per_instance; ++t) {
            const Subcomplex bottom = random_invariant_subcomplex(k, g, rng, 0.15);
            const Subcomplex middle = grow(bottom, 0.3);
            const Subcomplex top = std::bernoulli_distribution(0.5)(rng) ? Subcomplex::full(k) : grow(middle, 0.3);
            ++summary.lemma_triples;
            try {
                bool strict = false;
                for (const LemmaCheck& c : verify_lemma_triple_all(top, middle, bottom, g)) {
                    strict = strict || c.lhs < c.rhs;
                    if (!c.holds()) {
                        ++summary.lemma_violations;
                        failed = true;
                        break;
                    }
                }
                summary.lemma_strict += strict;
            } catch (const std::exception&) {
                ++summary.lemma_violations;
                failed = true;
            }
        }

        if (failed) {
            Instance dump{k, g, f};
            summary.fixtures.push_back("# seed " + std::to_string(s) + "\n" + render_instance(dump));
        }
    }
    return summary;
}

}  // namespace mbe
