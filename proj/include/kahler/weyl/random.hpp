#pragma once

#include "../chart/chart.hpp"
#include "../sampling.hpp"
#include "element.hpp"

namespace kahler::weyl {

// Random element with `terms` generators of total degree <= max_deg, at most
// max_asym antisymmetric factors and coefficients polynomial or
// polynomial / (first factor-base entry).
inline element random_element(const chart::chart &ch, sample_stream &rng, int terms, int max_deg, int max_asym = 2)
{
    int n = ch.dimension();
    element e(n);
    for (int t = 0; t < terms; ++t) {
        key k;
        int deg = rng.uniform(0, max_deg);
        int nu = rng.uniform(0, deg / 2);
        k.nu = static_cast<std::uint8_t>(nu);
        for (int j = 0; j < deg - 2 * nu; ++j) {
            k = k.add_count(rng.uniform(0, 2 * n - 1), 1);
        }
        int na = rng.uniform(0, max_asym);
        for (int j = 0; j < na; ++j) {
            k.asym = static_cast<form_mask>(k.asym | (1u << rng.uniform(0, 2 * n - 1)));
        }
        expr::chart_expr c(rng.polynomial(n, rng.uniform(1, 2), 1));
        if (!ch.factor_base().empty() && rng.uniform(0, 1) == 1) {
            c = c / expr::chart_expr(ch.factor_base()[0]);
        }
        e.add(k, c);
    }
    return e;
}

} // namespace kahler::weyl
