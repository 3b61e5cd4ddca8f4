#include "mbe/rational.hpp"

#include "mbe/errors.hpp"

#include <limits>

namespace mbe {

bool is_integer(const Rational& q) { return denominator(q) == 1; }

long long to_integer(const Rational& q)
{
    if (!is_integer(q)) {
        throw InvariantBreach("expected an integer, got " + to_string(q));
    }
    const BigInt n = numerator(q);
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min()) {
        throw InvariantBreach("integer out of range: " + n.str());
    }
    return n.convert_to<long long>();
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace mbe
