#pragma once

// Relative simplicial chains and homology over the rationals, and the maps
// a simplicial self-map induces on them.

#include "mbe/complex.hpp"
#include "mbe/linalg.hpp"
#include "mbe/rational.hpp"

#include <unordered_map>
#include <vector>

namespace mbe {

/// C_*(L, J): chains on the simplices of L that are not in J, in canonical
/// simplex order. Degrees run over 0..dim(K) of the common parent K.
class RelativeChainComplex {
public:
    /// Throws InvalidInput unless J is a subcomplex of L in the same parent.
    RelativeChainComplex(const Subcomplex& top, const Subcomplex& bottom);

    const OrderedComplex& complex() const { return top_.parent(); }
    const Subcomplex& top() const { return top_; }
    const Subcomplex& bottom() const { return bottom_; }
    int max_degree() const { return static_cast<int>(basis_.size()) - 1; }

    /// Parent simplex indices spanning C_k (empty outside 0..max_degree()).
    std::span<const std::size_t> basis(int k) const;
    Eigen::Index chain_rank(int k) const { return static_cast<Eigen::Index>(basis(k).size()); }
    std::optional<Eigen::Index> position(int k, std::size_t simplex_index) const;

    /// Matrix of d_k : C_k -> C_{k-1}, for k in 0..max_degree()+1. Faces in
    /// J are dropped; the sign of face i is (-1)^i.
    const RationalMatrix& boundary(int k) const { return boundary_.at(static_cast<std::size_t>(k)); }

private:
    Subcomplex top_;
    Subcomplex bottom_;
    std::vector<std::vector<std::size_t>> basis_;
    std::vector<std::unordered_map<std::size_t, Eigen::Index>> position_;
    std::vector<RationalMatrix> boundary_;
};

/// Matrices of g_# : C_k(L,J) -> C_k(L,J) for k in 0..max_degree(). A
/// simplex goes to its ordered image simplex when the image vertices are
/// pairwise distinct and the image is not in J, and to 0 otherwise.
/// Throws InvalidInput naming the simplex when g(L) is not in L or g(J) is
/// not in J.
std::vector<RationalMatrix> chain_map(const SimplicialSelfMap& g, const RelativeChainComplex& chains);

struct HomologyBasis {
    RationalMatrix boundaries;       // columns span B_k = im d_{k+1}
    RationalMatrix representatives;  // cycles completing B_k to a basis of Z_k

    int betti() const { return static_cast<int>(representatives.cols()); }
};

class RelativeHomology {
public:
    explicit RelativeHomology(RelativeChainComplex chains, PivotOrder order = PivotOrder::Forward);

    const RelativeChainComplex& chains() const { return chains_; }
    int max_degree() const { return chains_.max_degree(); }
    const HomologyBasis& basis(int k) const { return bases_.at(static_cast<std::size_t>(k)); }
    int betti(int k) const;
    std::vector<int> betti_numbers() const;

    /// Coordinates of the class of `cycle` in the representative basis.
    /// Throws InvariantBreach when `cycle` is not a cycle.
    RationalVector coordinates(int k, const RationalVector& cycle) const;

    /// Copy with other representatives in degree k. Throws InvalidInput
    /// unless they are cycles whose classes form a basis.
    RelativeHomology with_representatives(int k, RationalMatrix representatives) const;

private:
    RelativeChainComplex chains_;
    std::vector<HomologyBasis> bases_;
};

RelativeHomology relative_homology(const Subcomplex& top, const Subcomplex& bottom,
                                   PivotOrder order = PivotOrder::Forward);

struct InducedHomologyMap {
    int degree = 0;
    RationalMatrix matrix;  // columns: images of the representatives
};

/// H_k(g) on H_k(L,J) in the representative basis of `homology`.
InducedHomologyMap induced_map(const SimplicialSelfMap& g, const RelativeHomology& homology, int k);
InducedHomologyMap induced_map(const std::vector<RationalMatrix>& chain_maps, const RelativeHomology& homology,
                               int k);

/// Exact trace. Throws InvariantBreach if the trace is not an integer.
Rational trace(const InducedHomologyMap& map);

/// Tr H_k(g)_{(L,J)} for k in 0..max_degree().
std::vector<Rational> traces(const SimplicialSelfMap& g, const RelativeHomology& homology);

/// Sum over k of (-1)^k Tr H_k(g^l) on H_*(K).
Rational lefschetz_number(const SimplicialSelfMap& g, const OrderedComplex& complex, int l = 1);

/// Chain-level functoriality: chain_map(g^l) equals chain_map(g)^l in every
/// degree, and chain_map(g)^{N+1} equals chain_map(g)^N for the
/// stabilization exponent N.
bool verify_chain_functoriality(const SimplicialSelfMap& g, const Subcomplex& top, const Subcomplex& bottom,
                                int l);

/// Connecting homomorphism H_{j+1}(K,L) -> H_j(L,J) in the representative
/// bases of `outer` (the pair (K,L)) and `inner` (the pair (L,J)).
RationalMatrix connecting_map(const RelativeHomology& outer, const RelativeHomology& inner, int j);

}  // namespace mbe
