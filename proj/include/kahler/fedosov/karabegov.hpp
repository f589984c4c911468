#pragma once

#include <string>
#include <vector>

#include "checks.hpp"

namespace kahler::fedosov {

struct karabegov_result {
    // omega + Omega
    form_series closed_form;
    // Assembled from the potentials u_k (Wick) or v_l (anti-Wick).
    form_series extracted;
    // u_k (resp. v_l) as nu-series up to order N.
    std::vector<nu_series> potentials;
    report checks;
};

namespace detail {

inline form_mask mixed_mask(int n, int k, int l) { return static_cast<form_mask>((1u << k) | (1u << (n + l))); }

// Solution of Zbar_l u_k = w(k, l) for all l (slots n..2n-1) or of
// Z_k v_l = w(k, l) for all k (slots 0..n-1), by radial integration in the
// differentiated variables. Requires polynomial coefficients.
inline std::vector<chart_expr> integrate_closed(const chart::chart &ch, const form &w, bool wick)
{
    int n = ch.dimension();
    std::vector<chart_expr> out(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        polynomial acc;
        for (int b = 0; b < n; ++b) {
            chart_expr c = wick ? w.coefficient(mixed_mask(n, a, b)) : w.coefficient(mixed_mask(n, b, a));
            if (c.is_zero()) {
                continue;
            }
            if (!c.is_polynomial()) {
                throw domain_error("Omega potential needs polynomial coefficients or a multiple of omega");
            }
            int var = wick ? n + b : b;
            for (const auto &t : c.numerator().terms()) {
                unsigned deg = 0;
                for (int j = 0; j < n; ++j) {
                    deg += t.m.exponent(wick ? n + j : j);
                }
                monomial m = t.m.with(var, t.m.exponent(var) + 1);
                acc = acc + polynomial::from_term(n, m, t.c * gaussian_rational(mpq_class(1, deg + 1)));
            }
        }
        out[static_cast<std::size_t>(a)] = chart_expr(acc);
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            chart_expr want = wick ? w.coefficient(mixed_mask(n, a, b)) : w.coefficient(mixed_mask(n, b, a));
            chart_expr got = out[static_cast<std::size_t>(a)].derivative(wick ? n + b : b);
            if (!(ch.reduce(got - want).is_zero())) {
                throw domain_error("Omega is not closed in the integrated variables");
            }
        }
    }
    return out;
}

} // namespace detail

// K(*) for Wick-type data (from u_k with u_k * z^l - z^l * u_k = -nu delta and
// f * u_k = f u_k + nu Z_k f) or Kbar(*) for anti-Wick data (from v_l with
// v_l * zb^k - zb^k * v_l = -nu delta and f * v_l = f v_l + nu Zbar_l f).
// Both must equal omega + Omega.
inline karabegov_result karabegov_form(const fedosov_data &d, int N, const std::vector<chart_expr> &pool)
{
    if (d.kind() == product_kind::weyl) {
        throw validation_error("the Karabegov form is defined for wick and antiwick products");
    }
    const auto &ch = d.ch();
    if (!ch.has_potential()) {
        throw validation_error("chart '" + ch.name() + "' has no potential_gradient");
    }
    if (!detail::all_type_11(d.omega()) || !weyl::pi_z(d.r()).is_zero() || !weyl::pi_zbar(d.r()).is_zero()) {
        throw validation_error("data does not satisfy the Wick-type structural conditions");
    }
    detail::require_order(d, N);
    int n = d.dimension();
    bool wick = d.kind() == product_kind::wick;

    // Order-0 potentials u0_k or v0_l = conj(u0_l).
    std::vector<chart_expr> base = ch.potential_gradient();
    if (!wick) {
        for (auto &e : base) {
            e = e.conjugate();
        }
    }

    // Split Omega_i into c * omega + explicit part when it comes from the chart.
    std::map<int, std::pair<gaussian_rational, form>> split;
    if (chart::series_equal(d.omega(), ch.omega_series())) {
        for (const auto &e : ch.omega_entries()) {
            auto &slot = split.try_emplace(e.nu_power, gaussian_rational(0), form(n)).first->second;
            if (e.omega_multiple) {
                slot.first += *e.omega_multiple;
            }
            slot.second = slot.second + e.explicit_part;
        }
    } else {
        for (const auto &[p, f] : d.omega()) {
            split.emplace(p, std::make_pair(gaussian_rational(0), f));
        }
    }

    karabegov_result res;
    res.potentials.assign(static_cast<std::size_t>(n), nu_series(N));
    for (int a = 0; a < n; ++a) {
        res.potentials[static_cast<std::size_t>(a)][0] = base[static_cast<std::size_t>(a)];
    }
    for (const auto &[p, part] : split) {
        if (p > N) {
            continue;
        }
        std::vector<chart_expr> plus(static_cast<std::size_t>(n));
        if (!part.second.is_zero()) {
            // Zbar_l u_k = w_{k lbar}; Z_k v_l = -w_{k lbar}
            plus = detail::integrate_closed(ch, wick ? part.second : part.second.scaled(chart_expr(-1)), wick);
        }
        for (int a = 0; a < n; ++a) {
            auto i = static_cast<std::size_t>(a);
            res.potentials[i][p] = ch.reduce(plus[i] + base[i].scaled(part.first));
        }
    }

    for (const auto &[p, f] : d.omega()) {
        if (p <= N) {
            res.closed_form.emplace(p, f);
        }
    }
    res.closed_form = chart::add(res.closed_form, {{0, ch.omega()}});

    // K = sum Zbar_l u_k dz^k ^ dzb^l; Kbar = -sum Z_k v_l dz^k ^ dzb^l
    for (int p = 0; p <= N; ++p) {
        form k_form(n);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const chart_expr &u = res.potentials[static_cast<std::size_t>(a)][p];
                if (wick) {
                    k_form.add(detail::mixed_mask(n, a, b), ch.reduce(u.derivative(n + b)));
                } else {
                    k_form.add(detail::mixed_mask(n, b, a), ch.reduce(-u.derivative(b)));
                }
            }
        }
        if (!k_form.is_zero()) {
            res.extracted.emplace(p, k_form);
        }
    }

    res.checks.title = wick ? "karabegov" : "karabegov_antiwick";
    std::string bad;
    for (int p = 0; p <= N && bad.empty(); ++p) {
        auto get = [p, n](const form_series &s) {
            auto it = s.find(p);
            return it == s.end() ? form(n) : it->second;
        };
        form diff = get(res.extracted) - get(res.closed_form);
        if (!diff.is_zero()) {
            bad = "nu^" + std::to_string(p) + ": extracted - (omega + Omega) = " + diff.to_string();
        }
    }
    res.checks.add(wick ? "K = omega + Omega" : "Kbar = omega + Omega", bad.empty(), evidence::exact, bad);

    std::string fail;
    for (int a = 0; a < n && fail.empty(); ++a) {
        const nu_series &u = res.potentials[static_cast<std::size_t>(a)];
        for (int b = 0; b < n && fail.empty(); ++b) {
            nu_series x = nu_series::constant(ch.coordinate(wick ? b : n + b), N);
            nu_series got = star(d, u, x, N) - star(d, x, u, N);
            nu_series want(N);
            if (a == b && N >= 1) {
                want[1] = chart_expr(-1);
            }
            if (!(got == want)) {
                fail = "k = " + std::to_string(a + 1) + ", l = " + std::to_string(b + 1) + "; " +
                       detail::mismatch(got, want, n);
            }
        }
    }
    res.checks.add(wick ? "u_k * z^l - z^l * u_k = -nu delta" : "v_l * zb^k - zb^k * v_l = -nu delta", fail.empty(),
                   evidence::behavioral, fail);

    fail.clear();
    for (int a = 0; a < n && fail.empty(); ++a) {
        const nu_series &u = res.potentials[static_cast<std::size_t>(a)];
        for (const auto &f : pool) {
            nu_series got = star(d, nu_series::constant(f, N), u, N);
            nu_series want(N);
            for (int p = 0; p <= N; ++p) {
                want[p] = ch.reduce(f * u[p]);
            }
            if (N >= 1) {
                want[1] = ch.reduce(want[1] + f.derivative(wick ? a : n + a));
            }
            if (!(got == want)) {
                fail = "f = " + detail::label(f, n) + ", index " + std::to_string(a + 1) + "; " +
                       detail::mismatch(got, want, n);
                break;
            }
        }
    }
    res.checks.add(wick ? "f * u_k = f u_k + nu Z_k f" : "f * v_l = f v_l + nu Zbar_l f", fail.empty(),
                   evidence::behavioral, fail);
    return res;
}

} // namespace kahler::fedosov
