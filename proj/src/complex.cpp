#include "mbe/complex.hpp"

#include "mbe/errors.hpp"

#include <algorithm>
#include <set>

namespace mbe {

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty()) throw InvalidInput("a simplex needs at least one vertex");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i - 1] >= vertices_[i]) {
            throw InvalidInput("simplex vertices must be strictly increasing in the vertex order");
        }
    }
}

Simplex Simplex::spanned_by(std::vector<VertexId> vertices)
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return Simplex(std::move(vertices));
}

std::vector<Simplex> Simplex::facets() const
{
    std::vector<Simplex> out;
    if (vertices_.size() < 2) return out;
    out.reserve(vertices_.size());
    for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
        std::vector<VertexId> face;
        face.reserve(vertices_.size() - 1);
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i != skip) face.push_back(vertices_[i]);
        }
        Simplex f;
        f.vertices_ = std::move(face);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Simplex> Simplex::all_faces() const
{
    std::vector<Simplex> out;
    const std::size_t n = vertices_.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) f.vertices_.push_back(vertices_[i]);
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Simplex::is_face_of(const Simplex& other) const
{
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (VertexId v : s.vertices()) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// ---------------------------------------------------------------------------

OrderedComplex OrderedComplex::generated_by(std::size_t vertex_count, const std::vector<Simplex>& seeds,
                                            std::vector<std::string> vertex_names)
{
    if (vertex_count == 0) throw InvalidInput("an ordered complex needs at least one vertex");
    if (!vertex_names.empty() && vertex_names.size() != vertex_count) {
        throw InvalidInput("vertex name count does not match vertex count");
    }

    std::set<Simplex> all;
    for (VertexId v = 0; v < vertex_count; ++v) all.insert(Simplex({v}));
    for (const Simplex& s : seeds) {
        if (s.size() == 0) throw InvalidInput("empty simplex in seed list");
        if (s.vertices().back() >= vertex_count) {
            throw InvalidInput("simplex refers to vertex " + std::to_string(s.vertices().back()) +
                               " but the complex has " + std::to_string(vertex_count) + " vertices");
        }
        for (Simplex& f : s.all_faces()) all.insert(std::move(f));
    }

    OrderedComplex k;
    k.vertex_count_ = vertex_count;
    k.simplices_.assign(all.begin(), all.end());
    for (std::size_t i = 0; i < k.simplices_.size(); ++i) {
        const auto d = static_cast<std::size_t>(k.simplices_[i].dimension());
        if (k.by_dim_.size() <= d) k.by_dim_.resize(d + 1);
        k.by_dim_[d].push_back(i);
        k.index_.emplace(k.simplices_[i], i);
    }
    if (vertex_names.empty()) {
        for (std::size_t v = 0; v < vertex_count; ++v) vertex_names.push_back("v" + std::to_string(v));
    }
    k.names_ = std::move(vertex_names);
    return k;
}

std::span<const std::size_t> OrderedComplex::indices_of_dimension(int k) const
{
    if (k < 0 || k >= static_cast<int>(by_dim_.size())) return {};
    return by_dim_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> OrderedComplex::index_of(const Simplex& s) const
{
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string OrderedComplex::format(const Simplex& s) const
{
    if (s.size() == 1) return s[0] < names_.size() ? names_[s[0]] : "#" + std::to_string(s[0]);
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s[i] < names_.size() ? names_[s[i]] : "#" + std::to_string(s[i]);
    }
    return out + "]";
}

// ---------------------------------------------------------------------------

Subcomplex::Subcomplex(const OrderedComplex& parent, std::vector<bool> member)
    : parent_(&parent), member_(std::move(member)),
      count_(static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true)))
{
}

Subcomplex Subcomplex::empty(const OrderedComplex& parent)
{
    return Subcomplex(parent, std::vector<bool>(parent.size(), false));
}

Subcomplex Subcomplex::full(const OrderedComplex& parent)
{
    return Subcomplex(parent, std::vector<bool>(parent.size(), true));
}

bool Subcomplex::contains(const Simplex& s) const
{
    auto idx = parent_->index_of(s);
    return idx && member_[*idx];
}

int Subcomplex::dimension() const
{
    int d = -1;
    for (std::size_t i = 0; i < member_.size(); ++i) {
        if (member_[i]) d = std::max(d, parent_->simplex(i).dimension());
    }
    return d;
}

std::vector<std::size_t> Subcomplex::indices() const
{
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < member_.size(); ++i) {
        if (member_[i]) out.push_back(i);
    }
    return out;
}

std::vector<Simplex> Subcomplex::simplices() const
{
    std::vector<Simplex> out;
    for (std::size_t i : indices()) out.push_back(parent_->simplex(i));
    return out;
}

bool Subcomplex::is_subset_of(const Subcomplex& other) const
{
    if (parent_ != other.parent_) return false;
    for (std::size_t i = 0; i < member_.size(); ++i) {
        if (member_[i] && !other.member_[i]) return false;
    }
    return true;
}

bool Subcomplex::is_face_closed() const
{
    for (std::size_t i : indices()) {
        for (const Simplex& f : parent_->simplex(i).facets()) {
            if (!contains(f)) return false;
        }
    }
    return true;
}

Subcomplex closure_of_indices(const OrderedComplex& parent, std::span<const std::size_t> seed)
{
    std::vector<bool> member(parent.size(), false);
    for (std::size_t idx : seed) {
        if (idx >= parent.size()) throw InvalidInput("simplex index out of range");
        if (member[idx]) continue;
        for (const Simplex& f : parent.simplex(idx).all_faces()) member[*parent.index_of(f)] = true;
    }
    return Subcomplex(parent, std::move(member));
}

Subcomplex closure(const OrderedComplex& parent, std::span<const Simplex> seed)
{
    std::vector<std::size_t> indices;
    indices.reserve(seed.size());
    for (const Simplex& s : seed) {
        auto idx = parent.index_of(s);
        if (!idx) throw InvalidInput("simplex " + parent.format(s) + " is not in the complex");
        indices.push_back(*idx);
    }
    return closure_of_indices(parent, indices);
}

// ---------------------------------------------------------------------------

std::vector<int> MorseBottFunction::values_from_map(const OrderedComplex& complex,
                                                  const std::map<Simplex, int>& values)
{
    std::vector<int> out(complex.size(), 0);
    for (const auto& [s, value] : values) {
        auto idx = complex.index_of(s);
        if (!idx) throw InvalidInput("function defined on " + complex.format(s) + ", which is not in the complex");
        out[*idx] = value;
    }
    std::string missing;
    for (const Simplex& s : complex.simplices()) {
        if (!values.contains(s)) missing += (missing.empty() ? "" : " ") + complex.format(s);
    }
    if (!missing.empty()) throw InvalidInput("function is not defined on: " + missing);
    return out;
}

MorseBottFunction::MorseBottFunction(const OrderedComplex& complex, const std::map<Simplex, int>& values)
    : MorseBottFunction(complex, values_from_map(complex, values))
{
}

MorseBottFunction::MorseBottFunction(const OrderedComplex& complex, std::vector<int> values_by_index)
    : values_(std::move(values_by_index))
{
    if (values_.size() != complex.size()) {
        throw InvalidInput("function has " + std::to_string(values_.size()) + " values for " +
                           std::to_string(complex.size()) + " simplices");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0) {
            throw InvalidInput("negative function value " + std::to_string(values_[i]) + " on " +
                               complex.format(complex.simplex(i)));
        }
        max_ = std::max(max_, values_[i]);
    }
}

bool is_monotone_on_faces(const OrderedComplex& complex, const MorseBottFunction& f)
{
    for (std::size_t i = 0; i < complex.size(); ++i) {
        for (const Simplex& face : complex.simplex(i).facets()) {
            if (f(*complex.index_of(face)) > f(i)) return false;
        }
    }
    return true;
}

Filtration::Filtration(const OrderedComplex& complex, const MorseBottFunction& f)
{
    if (f.values().size() != complex.size()) throw InvalidInput("function does not match the complex");
    levels_.push_back(Subcomplex::empty(complex));
    for (int i = 0; i <= f.max_value(); ++i) {
        std::vector<std::size_t> seed;
        for (std::size_t s = 0; s < complex.size(); ++s) {
            if (f(s) <= i) seed.push_back(s);
        }
        levels_.push_back(closure_of_indices(complex, seed));
    }
}

Filtration sublevel_filtration(const OrderedComplex& complex, const MorseBottFunction& f)
{
    return Filtration(complex, f);
}

// ---------------------------------------------------------------------------

SimplicialSelfMap::SimplicialSelfMap(std::vector<VertexId> vertex_image) : image_(std::move(vertex_image))
{
    for (VertexId v : image_) {
        if (v >= image_.size()) throw InvalidInput("map sends a vertex outside the vertex set");
    }
}

SimplicialSelfMap SimplicialSelfMap::identity(std::size_t vertex_count)
{
    std::vector<VertexId> image(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) image[v] = static_cast<VertexId>(v);
    return SimplicialSelfMap(std::move(image));
}

Simplex SimplicialSelfMap::image(const Simplex& s) const
{
    std::vector<VertexId> out;
    out.reserve(s.size());
    for (VertexId v : s.vertices()) out.push_back(image_.at(v));
    return Simplex::spanned_by(std::move(out));
}

SimplicialSelfMap SimplicialSelfMap::after(const SimplicialSelfMap& inner) const
{
    std::vector<VertexId> out(inner.image_.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = image_.at(inner.image_[v]);
    return SimplicialSelfMap(std::move(out));
}

bool SimplicialSelfMap::is_identity() const
{
    for (std::size_t v = 0; v < image_.size(); ++v) {
        if (image_[v] != v) return false;
    }
    return true;
}

SimplicialSelfMap power(const SimplicialSelfMap& g, int l)
{
    if (l < 1) throw InvalidInput("map power must be at least 1, got " + std::to_string(l));
    SimplicialSelfMap out = g;
    for (int i = 1; i < l; ++i) out = g.after(out);
    return out;
}

std::optional<int> try_stabilization_exponent(const SimplicialSelfMap& g)
{
    const std::size_t n = g.vertex_count();
    SimplicialSelfMap current = SimplicialSelfMap::identity(n);  // g^N
    for (std::size_t steps = 0; steps <= n; ++steps) {
        SimplicialSelfMap next = g.after(current);
        if (next == current) return static_cast<int>(steps);
        current = std::move(next);
    }
    return std::nullopt;
}

int stabilization_exponent(const SimplicialSelfMap& g)
{
    auto n = try_stabilization_exponent(g);
    if (!n) throw InvariantBreach("vertex dynamics of the map do not stabilize");
    return *n;
}

bool is_globally_monotone(const SimplicialSelfMap& g)
{
    for (std::size_t v = 1; v < g.vertex_count(); ++v) {
        if (g(static_cast<VertexId>(v - 1)) > g(static_cast<VertexId>(v))) return false;
    }
    return true;
}

MapValidation validate_self_map(const OrderedComplex& complex, const SimplicialSelfMap& g)
{
    MapValidation out;
    if (g.vertex_count() != complex.vertex_count()) {
        out.length_ok = false;
        out.messages.push_back("map defines " + std::to_string(g.vertex_count()) + " images for " +
                               std::to_string(complex.vertex_count()) + " vertices");
        return out;
    }
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Simplex& s : complex.simplices()) {
        if (!complex.contains(g.image(s))) {
            out.non_simplicial.push_back(s);
            out.messages.push_back("not simplicial: image of " + complex.format(s) + " is " +
                                   complex.format(g.image(s)) + ", which is not a simplex");
        }
        for (std::size_t a = 0; a < s.size(); ++a) {
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                if (g(s[a]) > g(s[b]) && seen.emplace(s[a], s[b]).second) {
                    out.order_violations.emplace_back(s[a], s[b]);
                    out.messages.push_back("order violation at (" + complex.vertex_name(s[a]) + "," +
                                           complex.vertex_name(s[b]) + "): " + complex.vertex_name(s[a]) +
                                           " < " + complex.vertex_name(s[b]) + " but " +
                                           complex.vertex_name(g(s[a])) + " > " + complex.vertex_name(g(s[b])));
                }
            }
        }
    }
    if (!try_stabilization_exponent(g)) {
        out.stabilizes = false;
        out.messages.push_back("order violation: vertex orbits do not stabilize (g^{N+1} != g^N for every N)");
    }
    out.globally_monotone = is_globally_monotone(g);
    return out;
}

std::optional<Simplex> find_escape(const SimplicialSelfMap& g, const Subcomplex& sub)
{
    for (std::size_t i : sub.indices()) {
        const Simplex& s = sub.parent().simplex(i);
        if (!sub.contains(g.image(s))) return s;
    }
    return std::nullopt;
}

bool check_invariance(const SimplicialSelfMap& g, const Subcomplex& sub) { return !find_escape(g, sub); }

Subcomplex invariant_hull(const SimplicialSelfMap& g, const Subcomplex& sub)
{
    const OrderedComplex& k = sub.parent();
    std::vector<std::size_t> seed = sub.indices();
    std::vector<bool> in(k.size(), false);
    for (std::size_t i : seed) in[i] = true;
    for (std::size_t pos = 0; pos < seed.size(); ++pos) {
        auto img = k.index_of(g.image(k.simplex(seed[pos])));
        if (!img) throw InvalidInput("map is not simplicial on " + k.format(k.simplex(seed[pos])));
        if (!in[*img]) {
            in[*img] = true;
            seed.push_back(*img);
        }
    }
    return closure_of_indices(k, seed);
}

CompatibilityReport check_compatibility(const OrderedComplex& complex, const MorseBottFunction& f,
                                        const SimplicialSelfMap& g)
{
    CompatibilityReport out;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        auto img = complex.index_of(g.image(complex.simplex(i)));
        if (!img) continue;  // not simplicial; validate_self_map reports it
        if (f(*img) > f(i)) out.violations.push_back(complex.simplex(i));
    }
    return out;
}

}  // namespace mbe
