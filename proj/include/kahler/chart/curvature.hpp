#pragma once

#include <vector>

#include "../weyl/element.hpp"
#include "connection.hpp"

namespace kahler::chart {

struct curvature_data {
    // R = sum X_{p lbar i jbar} dz^p v dzb^l (x) dz^i ^ dzb^j
    weyl::element curvature_element;
    // rho = -(i/2) R_{i jbar} dz^i ^ dzb^j
    form ricci_form;
    // R_{i jbar}, row-major
    std::vector<chart_expr> ricci_tensor;
};

// X_{p lbar i jbar} = (i/2) sum_m g_{m lbar} Zbar_j Gamma^m_{ip}; this sign makes
// nabla^2 = -(1/nu) ad(R) and Delta_fib R = 1 (x) rho.
inline curvature_data curvature(const chart &c, const connection_data &conn)
{
    int n = c.dimension();
    curvature_data out;
    out.curvature_element = weyl::element(n);
    chart_expr half_i(gaussian_rational(0, mpq_class(1, 2)));
    // dG[(m, i, p, j)] = Zbar_j Gamma^m_{ip}
    auto idx = [n](int m, int i, int p, int j) { return ((m * n + i) * n + p) * n + j; };
    std::vector<chart_expr> dG(static_cast<std::size_t>(n * n * n * n));
    for (int m = 0; m < n; ++m) {
        for (int i = 0; i < n; ++i) {
            for (int p = 0; p < n; ++p) {
                for (int j = 0; j < n; ++j) {
                    dG[idx(m, i, p, j)] = c.reduce(conn.gamma(m, i, p).derivative(n + j));
                }
            }
        }
    }
    for (int p = 0; p < n; ++p) {
        for (int l = 0; l < n; ++l) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    chart_expr x;
                    for (int m = 0; m < n; ++m) {
                        x += c.g(m, l) * dG[idx(m, i, p, j)];
                    }
                    if (x.is_zero()) {
                        continue;
                    }
                    weyl::key k;
                    k = k.add_count(p, 1).add_count(n + l, 1);
                    k.asym = static_cast<form_mask>((1u << i) | (1u << (n + j)));
                    out.curvature_element.add(k, c.reduce(half_i * x));
                }
            }
        }
    }
    out.ricci_form = form(n);
    out.ricci_tensor.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // Ricci contraction of R^m_{p i jbar} = -Zbar_j Gamma^m_{ip} over m = i-slot.
            chart_expr ric;
            for (int m = 0; m < n; ++m) {
                ric -= dG[idx(m, m, i, j)];
            }
            ric = c.reduce(ric);
            out.ricci_tensor[i * n + j] = ric;
            out.ricci_form.add(static_cast<form_mask>((1u << i) | (1u << (n + j))), -(half_i * ric));
        }
    }
    return out;
}

inline chart_expr determinant(std::vector<chart_expr> m, int n)
{
    if (n == 1) {
        return m[0];
    }
    chart_expr det;
    for (int col = 0; col < n; ++col) {
        if (m[col].is_zero()) {
            continue;
        }
        std::vector<chart_expr> minor;
        for (int r = 1; r < n; ++r) {
            for (int k = 0; k < n; ++k) {
                if (k != col) {
                    minor.push_back(m[r * n + k]);
                }
            }
        }
        chart_expr term = m[col] * determinant(std::move(minor), n - 1);
        det = col % 2 ? det - term : det + term;
    }
    return det;
}

// Ricci form through R_{i jbar} = -Zbar_j (Z_i det g / det g).
inline form ricci_form_from_determinant(const chart &c)
{
    int n = c.dimension();
    std::vector<chart_expr> g;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            g.push_back(c.g(k, l));
        }
    }
    chart_expr det = c.reduce(determinant(g, n));
    form rho(n);
    chart_expr half_i(gaussian_rational(0, mpq_class(1, 2)));
    for (int i = 0; i < n; ++i) {
        chart_expr logd = c.reduce(det.derivative(i) / det);
        for (int j = 0; j < n; ++j) {
            chart_expr ric = -c.reduce(logd.derivative(n + j));
            rho.add(static_cast<form_mask>((1u << i) | (1u << (n + j))), -(half_i * ric));
        }
    }
    return rho;
}

} // namespace kahler::chart
