#pragma once

// Ordered simplicial complexes, subcomplexes, sublevel filtrations and
// simplicial self-maps.
//
// The vertex order is the VertexId order: vertex i precedes vertex j iff
// i < j. A Simplex always stores its vertices strictly increasing, so the
// orientation of every simplex is the one induced by the order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mbe {

using VertexId = std::uint32_t;

class Simplex {
public:
    Simplex() = default;

    /// Throws InvalidInput unless `vertices` is non-empty and strictly increasing.
    explicit Simplex(std::vector<VertexId> vertices);

    /// Sorts and removes duplicates; the result may have lower dimension
    /// than the input length suggests.
    static Simplex spanned_by(std::vector<VertexId> vertices);

    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    std::span<const VertexId> vertices() const { return vertices_; }
    VertexId operator[](std::size_t i) const { return vertices_[i]; }
    std::size_t size() const { return vertices_.size(); }

    /// Codimension-one faces; face i omits vertex i and carries sign (-1)^i
    /// in the boundary.
    std::vector<Simplex> facets() const;

    /// Every non-empty face including the simplex itself.
    std::vector<Simplex> all_faces() const;

    bool is_face_of(const Simplex& other) const;

    /// Canonical order: by dimension, then lexicographic in the vertex order.
    friend auto operator<=>(const Simplex& a, const Simplex& b)
    {
        if (auto c = a.vertices_.size() <=> b.vertices_.size(); c != 0) return c;
        return a.vertices_ <=> b.vertices_;
    }
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<VertexId> vertices_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

class OrderedComplex {
public:
    /// Builds the complex generated by `seeds` on `vertex_count` vertices.
    /// Every vertex becomes a 0-simplex and every face of a seed is added.
    /// Throws InvalidInput for vertex_count == 0 or out-of-range vertices.
    static OrderedComplex generated_by(std::size_t vertex_count, const std::vector<Simplex>& seeds,
                                       std::vector<std::string> vertex_names = {});

    std::size_t vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t size() const { return simplices_.size(); }

    /// All simplices in canonical order; the position is the simplex index.
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const Simplex& simplex(std::size_t index) const { return simplices_[index]; }
    /// Indices of the simplices of dimension `k` (empty when out of range).
    std::span<const std::size_t> indices_of_dimension(int k) const;

    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    const std::string& vertex_name(VertexId v) const { return names_[v]; }
    const std::vector<std::string>& vertex_names() const { return names_; }
    std::string format(const Simplex& s) const;

    friend bool operator==(const OrderedComplex& a, const OrderedComplex& b)
    {
        return a.vertex_count_ == b.vertex_count_ && a.simplices_ == b.simplices_ && a.names_ == b.names_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Simplex> simplices_;
    std::vector<std::vector<std::size_t>> by_dim_;
    std::unordered_map<Simplex, std::size_t, SimplexHash> index_;
    std::vector<std::string> names_;
};

/// A face-closed set of simplices of a parent complex, stored as a
/// membership mask over the parent's simplex indices. The parent must
/// outlive the subcomplex.
class Subcomplex {
public:
    static Subcomplex empty(const OrderedComplex& parent);
    static Subcomplex full(const OrderedComplex& parent);

    const OrderedComplex& parent() const { return *parent_; }
    bool contains(std::size_t index) const { return member_[index]; }
    bool contains(const Simplex& s) const;
    std::size_t size() const { return count_; }
    bool is_empty() const { return count_ == 0; }
    int dimension() const;
    std::vector<std::size_t> indices() const;
    std::vector<Simplex> simplices() const;

    bool is_subset_of(const Subcomplex& other) const;
    bool is_face_closed() const;

    friend bool operator==(const Subcomplex& a, const Subcomplex& b)
    {
        return a.parent_ == b.parent_ && a.member_ == b.member_;
    }

private:
    friend Subcomplex closure(const OrderedComplex&, std::span<const Simplex>);
    friend Subcomplex closure_of_indices(const OrderedComplex&, std::span<const std::size_t>);
    Subcomplex(const OrderedComplex& parent, std::vector<bool> member);

    const OrderedComplex* parent_ = nullptr;
    std::vector<bool> member_;
    std::size_t count_ = 0;
};

/// Smallest subcomplex containing `seed`. Throws InvalidInput naming the
/// first seed simplex that is not in `parent`.
Subcomplex closure(const OrderedComplex& parent, std::span<const Simplex> seed);
Subcomplex closure_of_indices(const OrderedComplex& parent, std::span<const std::size_t> seed);

class MorseBottFunction {
public:
    /// Throws InvalidInput when some simplex of `complex` has no value
    /// (all missing simplices are listed) or when a value is negative.
    MorseBottFunction(const OrderedComplex& complex, const std::map<Simplex, int>& values);
    MorseBottFunction(const OrderedComplex& complex, std::vector<int> values_by_index);

    int operator()(std::size_t index) const { return values_[index]; }
    int max_value() const { return max_; }
    const std::vector<int>& values() const { return values_; }

    friend bool operator==(const MorseBottFunction&, const MorseBottFunction&) = default;

private:
    static std::vector<int> values_from_map(const OrderedComplex& complex, const std::map<Simplex, int>& values);

    std::vector<int> values_;
    int max_ = 0;
};

/// Informational: f(face) <= f(coface) for every face relation.
bool is_monotone_on_faces(const OrderedComplex& complex, const MorseBottFunction& f);

/// Sublevel complexes K_{-1} = empty, K_0, ..., K_m = K.
class Filtration {
public:
    Filtration(const OrderedComplex& complex, const MorseBottFunction& f);

    int max_level() const { return static_cast<int>(levels_.size()) - 2; }
    /// K_i for i in [-1, max_level()].
    const Subcomplex& at(int i) const { return levels_.at(static_cast<std::size_t>(i + 1)); }
    const std::vector<Subcomplex>& levels() const { return levels_; }

private:
    std::vector<Subcomplex> levels_;
};

Filtration sublevel_filtration(const OrderedComplex& complex, const MorseBottFunction& f);

class SimplicialSelfMap {
public:
    explicit SimplicialSelfMap(std::vector<VertexId> vertex_image);
    static SimplicialSelfMap identity(std::size_t vertex_count);

    std::size_t vertex_count() const { return image_.size(); }
    VertexId operator()(VertexId v) const { return image_[v]; }
    const std::vector<VertexId>& vertex_image() const { return image_; }

    /// Simplex spanned by the image vertices (dimension may drop).
    Simplex image(const Simplex& s) const;

    /// this after `inner`: v -> this(inner(v)).
    SimplicialSelfMap after(const SimplicialSelfMap& inner) const;

    bool is_identity() const;

    friend bool operator==(const SimplicialSelfMap&, const SimplicialSelfMap&) = default;

private:
    std::vector<VertexId> image_;
};

/// l-fold composite. Throws InvalidInput for l < 1.
SimplicialSelfMap power(const SimplicialSelfMap& g, int l);

/// Least N >= 0 with g^{N+1} == g^N on vertices, or nullopt when the
/// vertex dynamics never stabilize (some vertex lies on a cycle of length > 1).
std::optional<int> try_stabilization_exponent(const SimplicialSelfMap& g);

/// As above; throws InvariantBreach when the dynamics do not stabilize.
int stabilization_exponent(const SimplicialSelfMap& g);

bool is_globally_monotone(const SimplicialSelfMap& g);

struct MapValidation {
    bool length_ok = true;
    std::vector<Simplex> non_simplicial;                       // image not a simplex of K
    std::vector<std::pair<VertexId, VertexId>> order_violations;  // u < v in a common simplex, g(u) > g(v)
    bool stabilizes = true;
    bool globally_monotone = true;  // informational
    std::vector<std::string> messages;

    bool simplicial() const { return length_ok && non_simplicial.empty(); }
    bool order_preserving() const { return length_ok && order_violations.empty() && stabilizes; }
    bool ok() const { return simplicial() && order_preserving(); }
};

/// Checks simpliciality and order preservation. Order preservation means
/// g(u) <= g(v) whenever u < v span a common simplex, and the vertex
/// dynamics stabilize. Never throws.
MapValidation validate_self_map(const OrderedComplex& complex, const SimplicialSelfMap& g);

/// First simplex of `sub` whose image leaves `sub`.
std::optional<Simplex> find_escape(const SimplicialSelfMap& g, const Subcomplex& sub);
bool check_invariance(const SimplicialSelfMap& g, const Subcomplex& sub);

/// Smallest g-invariant subcomplex containing `sub`.
Subcomplex invariant_hull(const SimplicialSelfMap& g, const Subcomplex& sub);

struct CompatibilityReport {
    std::vector<Simplex> violations;  // f(g(s)) > f(s)
    bool ok() const { return violations.empty(); }
};

/// Simplices whose image is not a simplex are skipped; they are a
/// simpliciality failure, not a compatibility one.
CompatibilityReport check_compatibility(const OrderedComplex& complex, const MorseBottFunction& f,
                                        const SimplicialSelfMap& g);

}  // namespace mbe
