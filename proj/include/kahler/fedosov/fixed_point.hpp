#pragma once

#include <string>

#include "../error.hpp"
#include "../weyl/element.hpp"

namespace kahler::fedosov {

using weyl::element;

// Iterates x -> map(x) modulo total degree > K until stationary. The map must
// determine degree d of its output from degrees < d of its input; this is
// probed on every step by feeding the input truncated at K-1 and requiring an
// output exact to degree K. K+2 applications suffice from any start.
template <class Map>
element fixed_point(Map &&map, const element &start, int K)
{
    element x = start.truncated(K);
    for (int it = 0; it <= K + 1; ++it) {
        element y = map(x.truncated(K - 1));
        if (y.trunc() < K) {
            throw contract_violation("fixed point map does not raise the total degree (output exact to degree " +
                                     std::to_string(y.trunc()) + ", need " + std::to_string(K) + ")");
        }
        y = y.truncated(K);
        if (x.trunc() >= K && y == x) {
            return y;
        }
        x = y;
    }
    throw contract_violation("fixed point iteration not stationary after " + std::to_string(K + 2) + " steps");
}

// Builds the fixed point degree by degree: step d only needs the input exact
// to degree d-1. `known` is the degree up to which the fixed point vanishes.
template <class Map>
element staged_fixed_point(Map &&map, int n, int known, int K)
{
    element x(n, known);
    for (int d = known + 1; d <= K; ++d) {
        element y = map(x.truncated(d - 1));
        if (y.trunc() < d) {
            throw contract_violation("fixed point map does not raise the total degree");
        }
        x = y.truncated(d);
    }
    return x;
}

} // namespace kahler::fedosov
