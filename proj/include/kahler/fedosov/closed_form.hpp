#pragma once

#include <utility>
#include <vector>

#include "data.hpp"

namespace kahler::fedosov {

// Exponential formulas on a chart with constant metric:
//   wick:     f * g = sum_l (1/l!) (2nu/i)^l  g^{k1 l1}..g^{kl ll} Z_k.. f Zbar_l.. g
//   antiwick: f * g = sum_l (1/l!) (-2nu/i)^l g^{k1 l1}..g^{kl ll} Zbar_l.. f Z_k.. g
inline nu_series closed_form_flat(const chart::chart &ch, const chart_expr &f, const chart_expr &g,
                                  product_kind kind, int N)
{
    if (!ch.is_flat_constant()) {
        throw validation_error("closed form needs a chart with constant metric");
    }
    if (kind == product_kind::weyl) {
        throw validation_error("closed form is available for wick and antiwick only");
    }
    int n = ch.dimension();
    bool wick = kind == product_kind::wick;
    gaussian_rational step = wick ? gaussian_rational(0, -2) : gaussian_rational(0, 2);
    nu_series out(N);
    std::vector<std::pair<chart_expr, chart_expr>> level{{f, g}};
    gaussian_rational coeff(1);
    for (int l = 0; l <= N && !level.empty(); ++l) {
        for (const auto &[a, b] : level) {
            out[l] += (a * b).scaled(coeff);
        }
        std::vector<std::pair<chart_expr, chart_expr>> next;
        for (const auto &[a, b] : level) {
            for (int k = 0; k < n; ++k) {
                for (int m = 0; m < n; ++m) {
                    const chart_expr &h = ch.ginv(k, m);
                    if (h.is_zero()) {
                        continue;
                    }
                    chart_expr da = a.derivative(wick ? k : n + m);
                    chart_expr db = b.derivative(wick ? n + m : k);
                    if (da.is_zero() || db.is_zero()) {
                        continue;
                    }
                    next.emplace_back(da * h, db);
                }
            }
        }
        level = std::move(next);
        coeff = coeff * step * gaussian_rational(mpq_class(1, l + 1));
    }
    return out;
}

} // namespace kahler::fedosov
