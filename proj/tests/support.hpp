#pragma once

#include "mbe/errors.hpp"
#include "mbe/fixtures.hpp"
#include "mbe/io.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace mbe::test {

// The reference instance, parsed once and kept alive for the whole run so
// subcomplexes may point into it.
inline const Instance& example()
{
    static const Instance instance = example_s2();
    return instance;
}

inline const OrderedComplex& example_complex() { return example().complex; }
inline const SimplicialSelfMap& example_map() { return *example().map; }
inline const MorseBottFunction& example_function() { return *example().function; }

inline VertexId vertex(const OrderedComplex& k, const std::string& name)
{
    for (VertexId v = 0; v < k.vertex_count(); ++v) {
        if (k.vertex_name(v) == name) return v;
    }
    throw std::invalid_argument("no vertex " + name);
}

inline Simplex simplex(const OrderedComplex& k, std::initializer_list<const char*> names)
{
    std::vector<VertexId> ids;
    for (const char* n : names) ids.push_back(vertex(k, n));
    return Simplex::spanned_by(ids);
}

inline Subcomplex sub(const OrderedComplex& k, const std::string& specs) { return parse_subcomplex(k, specs); }

// Two-argument Rational constructors do not mean numerator/denominator.
inline Rational frac(long long num, long long den) { return Rational(num) / Rational(den); }

inline std::vector<long long> integers(const std::vector<Rational>& values)
{
    std::vector<long long> out;
    for (const Rational& q : values) out.push_back(to_integer(q));
    return out;
}

// Triangle on three vertices, solid or hollow.
inline OrderedComplex triangle(bool solid)
{
    if (solid) return OrderedComplex::generated_by(3, {Simplex({0, 1, 2})});
    return OrderedComplex::generated_by(3, {Simplex({0, 1}), Simplex({0, 2}), Simplex({1, 2})});
}

}  // namespace mbe::test
