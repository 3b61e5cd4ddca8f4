#include "mbe/homology.hpp"

#include "mbe/errors.hpp"

#include <algorithm>

namespace mbe {

namespace {

// Sign of the permutation sorting `values` (all distinct).
int sorting_sign(std::vector<VertexId> values)
{
    int sign = 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (values[i] > values[j]) sign = -sign;
        }
    }
    return sign;
}

}  // namespace

RelativeChainComplex::RelativeChainComplex(const Subcomplex& top, const Subcomplex& bottom)
    : top_(top), bottom_(bottom)
{
    if (&top.parent() != &bottom.parent()) throw InvalidInput("pair members belong to different complexes");
    if (!bottom.is_subset_of(top)) throw InvalidInput("pair (L, J) requires J to be a subcomplex of L");

    const OrderedComplex& k = top.parent();
    const int n = k.dimension();
    basis_.resize(static_cast<std::size_t>(n + 1));
    position_.resize(static_cast<std::size_t>(n + 1));
    for (int d = 0; d <= n; ++d) {
        for (std::size_t idx : k.indices_of_dimension(d)) {
            if (top.contains(idx) && !bottom.contains(idx)) {
                const auto du = static_cast<std::size_t>(d);
                position_[du].emplace(idx, static_cast<Eigen::Index>(basis_[du].size()));
                basis_[du].push_back(idx);
            }
        }
    }

    boundary_.resize(static_cast<std::size_t>(n + 2));
    boundary_[0] = RationalMatrix::Zero(0, chain_rank(0));
    for (int d = 1; d <= n + 1; ++d) {
        RationalMatrix m = RationalMatrix::Zero(chain_rank(d - 1), chain_rank(d));
        const auto cols = basis(d);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto facets = k.simplex(cols[c]).facets();
            for (std::size_t i = 0; i < facets.size(); ++i) {
                auto row = position(d - 1, *k.index_of(facets[i]));
                if (row) m(*row, static_cast<Eigen::Index>(c)) = (i % 2 == 0) ? 1 : -1;
            }
        }
        boundary_[static_cast<std::size_t>(d)] = std::move(m);
    }
}

std::span<const std::size_t> RelativeChainComplex::basis(int k) const
{
    if (k < 0 || k > max_degree()) return {};
    return basis_[static_cast<std::size_t>(k)];
}

std::optional<Eigen::Index> RelativeChainComplex::position(int k, std::size_t simplex_index) const
{
    if (k < 0 || k > max_degree()) return std::nullopt;
    const auto& pos = position_[static_cast<std::size_t>(k)];
    auto it = pos.find(simplex_index);
    if (it == pos.end()) return std::nullopt;
    return it->second;
}

std::vector<RationalMatrix> chain_map(const SimplicialSelfMap& g, const RelativeChainComplex& chains)
{
    const OrderedComplex& k = chains.complex();
    if (auto escape = find_escape(g, chains.top())) {
        throw InvalidInput("map is not invariant on L: " + k.format(*escape) + " is sent to " +
                           k.format(g.image(*escape)));
    }
    if (auto escape = find_escape(g, chains.bottom())) {
        throw InvalidInput("map is not invariant on J: " + k.format(*escape) + " is sent to " +
                           k.format(g.image(*escape)));
    }

    std::vector<RationalMatrix> out;
    for (int d = 0; d <= chains.max_degree(); ++d) {
        RationalMatrix m = RationalMatrix::Zero(chains.chain_rank(d), chains.chain_rank(d));
        const auto cols = chains.basis(d);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Simplex& s = k.simplex(cols[c]);
            std::vector<VertexId> images;
            for (VertexId v : s.vertices()) images.push_back(g(v));
            const Simplex target = Simplex::spanned_by(images);
            if (target.dimension() != d) continue;  // dimension drops
            auto row = chains.position(d, *k.index_of(target));
            if (!row) continue;  // image lies in J
            m(*row, static_cast<Eigen::Index>(c)) = sorting_sign(std::move(images));
        }
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------

RelativeHomology::RelativeHomology(RelativeChainComplex chains, PivotOrder order) : chains_(std::move(chains))
{
    for (int k = 0; k <= chains_.max_degree(); ++k) {
        HomologyBasis b;
        b.boundaries = image_basis(chains_.boundary(k + 1), order);
        const RationalMatrix cycles = kernel_basis(chains_.boundary(k), order);

        RationalMatrix span = b.boundaries;
        std::vector<Eigen::Index> chosen;
        for (Eigen::Index c = 0; c < cycles.cols(); ++c) {
            if (solve_in_span(span, cycles.col(c))) continue;
            span.conservativeResize(Eigen::NoChange, span.cols() + 1);
            span.col(span.cols() - 1) = cycles.col(c);
            chosen.push_back(c);
        }
        b.representatives.resize(cycles.rows(), static_cast<Eigen::Index>(chosen.size()));
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            b.representatives.col(static_cast<Eigen::Index>(i)) = cycles.col(chosen[i]);
        }
        if (b.boundaries.cols() + b.representatives.cols() != cycles.cols()) {
            throw InvariantBreach("boundaries are not contained in cycles");
        }
        bases_.push_back(std::move(b));
    }
}

int RelativeHomology::betti(int k) const
{
    if (k < 0 || k > max_degree()) return 0;
    return basis(k).betti();
}

std::vector<int> RelativeHomology::betti_numbers() const
{
    std::vector<int> out;
    for (const auto& b : bases_) out.push_back(b.betti());
    return out;
}

RationalVector RelativeHomology::coordinates(int k, const RationalVector& cycle) const
{
    const RationalMatrix& d = chains_.boundary(k);
    if (!is_zero(d * cycle)) throw InvariantBreach("degree " + std::to_string(k) + " chain is not a cycle");

    const HomologyBasis& b = basis(k);
    const RationalMatrix full = hconcat(b.boundaries, b.representatives);
    auto coeffs = solve_in_span(full, cycle);
    if (!coeffs) throw InvariantBreach("cycle not expressible in the homology basis of degree " + std::to_string(k));
    return coeffs->tail(b.representatives.cols());
}

RelativeHomology RelativeHomology::with_representatives(int k, RationalMatrix representatives) const
{
    RelativeHomology out = *this;
    HomologyBasis& b = out.bases_.at(static_cast<std::size_t>(k));
    if (representatives.rows() != b.representatives.rows() || representatives.cols() != b.representatives.cols()) {
        throw InvalidInput("replacement representatives have the wrong shape");
    }
    if (!is_zero(chains_.boundary(k) * representatives)) throw InvalidInput("replacement representatives are not cycles");
    const RationalMatrix full = hconcat(b.boundaries, representatives);
    if (rank(full) != full.cols()) throw InvalidInput("replacement representatives are dependent modulo boundaries");
    b.representatives = std::move(representatives);
    return out;
}

RelativeHomology relative_homology(const Subcomplex& top, const Subcomplex& bottom, PivotOrder order)
{
    return RelativeHomology(RelativeChainComplex(top, bottom), order);
}

// ---------------------------------------------------------------------------

InducedHomologyMap induced_map(const std::vector<RationalMatrix>& chain_maps, const RelativeHomology& homology,
                               int k)
{
    InducedHomologyMap out;
    out.degree = k;
    const int b = homology.betti(k);
    out.matrix = RationalMatrix::Zero(b, b);
    if (b == 0) return out;
    const HomologyBasis& basis = homology.basis(k);
    const RationalMatrix& gk = chain_maps.at(static_cast<std::size_t>(k));
    for (Eigen::Index c = 0; c < b; ++c) {
        const RationalVector image = gk * basis.representatives.col(c);
        out.matrix.col(c) = homology.coordinates(k, image);
    }
    return out;
}

InducedHomologyMap induced_map(const SimplicialSelfMap& g, const RelativeHomology& homology, int k)
{
    return induced_map(chain_map(g, homology.chains()), homology, k);
}

Rational trace(const InducedHomologyMap& map)
{
    Rational t = 0;
    for (Eigen::Index i = 0; i < map.matrix.rows(); ++i) t += map.matrix(i, i);
    if (!is_integer(t)) {
        throw InvariantBreach("non-integer trace " + to_string(t) + " in degree " + std::to_string(map.degree));
    }
    return t;
}

std::vector<Rational> traces(const SimplicialSelfMap& g, const RelativeHomology& homology)
{
    const auto maps = chain_map(g, homology.chains());
    std::vector<Rational> out;
    for (int k = 0; k <= homology.max_degree(); ++k) out.push_back(trace(induced_map(maps, homology, k)));
    return out;
}

Rational lefschetz_number(const SimplicialSelfMap& g, const OrderedComplex& complex, int l)
{
    const auto h = relative_homology(Subcomplex::full(complex), Subcomplex::empty(complex));
    const auto t = traces(power(g, l), h);
    Rational sum = 0;
    for (std::size_t k = 0; k < t.size(); ++k) sum += (k % 2 == 0) ? t[k] : Rational(-t[k]);
    return sum;
}

bool verify_chain_functoriality(const SimplicialSelfMap& g, const Subcomplex& top, const Subcomplex& bottom, int l)
{
    const RelativeChainComplex chains(top, bottom);
    const auto base = chain_map(g, chains);
    const auto powered = chain_map(power(g, l), chains);
    const int n = stabilization_exponent(g);
    for (std::size_t k = 0; k < base.size(); ++k) {
        if (powered[k] != matrix_power(base[k], l)) return false;
        if (matrix_power(base[k], n + 1) != matrix_power(base[k], n)) return false;
    }
    return true;
}

RationalMatrix connecting_map(const RelativeHomology& outer, const RelativeHomology& inner, int j)
{
    const RelativeChainComplex& kl = outer.chains();
    const RelativeChainComplex& lj = inner.chains();
    if (!(kl.bottom() == lj.top())) throw InvalidInput("connecting map needs pairs (K,L) and (L,J)");

    const OrderedComplex& k = kl.complex();
    const int count = outer.betti(j + 1);
    RationalMatrix out = RationalMatrix::Zero(inner.betti(j), count);
    if (count == 0 || inner.betti(j) == 0) return out;
    const RationalMatrix& reps = outer.basis(j + 1).representatives;

    const auto cols = kl.basis(j + 1);
    for (Eigen::Index r = 0; r < count; ++r) {
        RationalVector image = RationalVector::Zero(lj.chain_rank(j));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const Rational& coeff = reps(static_cast<Eigen::Index>(c), r);
            if (coeff == 0) continue;
            const auto facets = k.simplex(cols[c]).facets();
            for (std::size_t i = 0; i < facets.size(); ++i) {
                auto row = lj.position(j, *k.index_of(facets[i]));
                if (!row) continue;
                if (i % 2 == 0) {
                    image(*row) += coeff;
                } else {
                    image(*row) -= coeff;
                }
            }
        }
        out.col(r) = inner.coordinates(j, image);
    }
    return out;
}

}  // namespace mbe
