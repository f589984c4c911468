#pragma once

#include <map>
#include <string>
#include <vector>

#include "data.hpp"

namespace kahler::fedosov {

namespace detail {

inline element asym_symbol(int n, int slot)
{
    element e(n);
    weyl::key k;
    k.asym = static_cast<form_mask>(1u << slot);
    e.add(k, chart_expr(1));
    return e;
}

// Extends the jets T_alpha, with tau(f) = sum_alpha T_alpha d^alpha f, to
// total degree `degree`. Caller holds the cache lock.
inline void extend_jets(const fedosov_data &d, caches &c, int degree)
{
    int n = d.dimension();
    if (degree > d.K() - 1) {
        throw validation_error("Taylor series requested to degree " + std::to_string(degree) +
                               " but r is only known to degree " + std::to_string(d.K()));
    }
    if (c.jet_degree < 0) {
        c.jets[monomial{}] = {element::scalar(n, chart_expr(1))};
        c.jet_degree = 0;
    }
    std::vector<element> r_parts;
    for (int j = 0; j <= degree + 1; ++j) {
        r_parts.push_back(d.r().homogeneous(j).with_trunc(weyl::exact));
    }
    std::vector<element> dx;
    for (int s = 0; s < 2 * n; ++s) {
        dx.push_back(asym_symbol(n, s));
    }
    while (c.jet_degree < degree) {
        int k = c.jet_degree;
        // every alpha with |alpha| <= k+1
        std::map<monomial, element> fresh;
        auto piece = [&](const monomial &a, int j) -> const element * {
            auto it = c.jets.find(a);
            if (it == c.jets.end() || static_cast<int>(it->second.size()) <= j) {
                return nullptr;
            }
            return &it->second[static_cast<std::size_t>(j)];
        };
        std::vector<monomial> targets;
        for (const auto &[a, parts] : c.jets) {
            targets.push_back(a);
            for (int s = 0; s < 2 * n; ++s) {
                targets.push_back(a * monomial::variable(s, 1));
            }
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (const auto &a : targets) {
            element src(n);
            if (const element *t = piece(a, k)) {
                src += weyl::nabla(*t, d.conn());
            }
            for (int s = 0; s < 2 * n; ++s) {
                if (a.exponent(s) == 0) {
                    continue;
                }
                if (const element *t = piece(a / monomial::variable(s, 1), k)) {
                    src += weyl::mu(dx[static_cast<std::size_t>(s)], *t);
                }
            }
            for (int l = 0; l <= k; ++l) {
                const element *t = piece(a, k - l);
                if (t == nullptr || r_parts[static_cast<std::size_t>(l + 2)].is_zero() || t->is_zero()) {
                    continue;
                }
                src -= weyl::ad_over_nu(r_parts[static_cast<std::size_t>(l + 2)], *t, d.kind(), d.ch());
            }
            fresh.emplace(a, weyl::delta_inv(src));
        }
        for (auto &[a, e] : fresh) {
            auto &parts = c.jets[a];
            parts.resize(static_cast<std::size_t>(k + 1), element(n));
            parts.push_back(std::move(e));
        }
        c.jet_degree = k + 1;
    }
}

// d^alpha f with memoisation along the first nonzero slot.
class derivative_table {
public:
    derivative_table(const chart::chart &ch, chart_expr f) : ch_(ch) { memo_.emplace(monomial{}, std::move(f)); }

    const chart_expr &operator()(const monomial &a)
    {
        auto it = memo_.find(a);
        if (it != memo_.end()) {
            return it->second;
        }
        int s = 0;
        while (a.exponent(s) == 0) {
            ++s;
        }
        chart_expr v = (*this)(a / monomial::variable(s, 1));
        v = v.is_zero() ? v : ch_.reduce(v.derivative(s));
        return memo_.emplace(a, std::move(v)).first->second;
    }

private:
    const chart::chart &ch_;
    std::map<monomial, chart_expr> memo_;
};

} // namespace detail

// Jets T_alpha summed over degrees <= degree, for all alpha.
inline std::map<monomial, element> taylor_jets(const fedosov_data &d, int degree)
{
    auto &c = d.cache();
    std::lock_guard lock(c.m);
    if (c.jet_degree < degree) {
        detail::extend_jets(d, c, degree);
    }
    std::map<monomial, element> out;
    for (const auto &[a, parts] : c.jets) {
        element e(d.dimension(), degree);
        for (int j = 0; j <= degree && j < static_cast<int>(parts.size()); ++j) {
            e += parts[static_cast<std::size_t>(j)];
        }
        if (!e.is_zero()) {
            out.emplace(a, e.with_trunc(degree));
        }
    }
    return out;
}

// Fedosov-Taylor series of f up to total degree `degree` (default K-1).
inline element tau(const fedosov_data &d, const chart_expr &f, int degree = -1)
{
    if (degree < 0) {
        degree = d.K() - 1;
    }
    std::string key = std::to_string(degree) + "|" + f.to_string(d.dimension());
    {
        std::lock_guard lock(d.cache().m);
        auto it = d.cache().tau.find(key);
        if (it != d.cache().tau.end()) {
            return it->second;
        }
    }
    detail::derivative_table df(d.ch(), f);
    element out(d.dimension(), degree);
    for (const auto &[a, t] : taylor_jets(d, degree)) {
        const chart_expr &fa = df(a);
        if (!fa.is_zero()) {
            out += t.scaled(fa);
        }
    }
    std::lock_guard lock(d.cache().m);
    return d.cache().tau.emplace(key, out).first->second;
}

// Direct recursion tau^{(k+1)} = delta^{-1}(nabla tau^{(k)} - (1/nu) sum_l ad(r^{(l+2)}) tau^{(k-l)}).
inline element tau_recursive(const fedosov_data &d, const chart_expr &f, int degree = -1)
{
    if (degree < 0) {
        degree = d.K() - 1;
    }
    int n = d.dimension();
    std::vector<element> parts{element::scalar(n, f)};
    for (int k = 0; k < degree; ++k) {
        element src = weyl::nabla(parts[static_cast<std::size_t>(k)], d.conn());
        for (int l = 0; l <= k; ++l) {
            element rl = d.r().homogeneous(l + 2).with_trunc(weyl::exact);
            if (!rl.is_zero()) {
                src -= weyl::ad_over_nu(rl, parts[static_cast<std::size_t>(k - l)], d.kind(), d.ch());
            }
        }
        parts.push_back(weyl::delta_inv(src));
    }
    element out(n, degree);
    for (const auto &p : parts) {
        out += p;
    }
    return out.with_trunc(degree);
}

// tau(f) as the fixed point of x -> f + delta^{-1}(nabla x - (1/nu) ad(r) x), to degree K-1.
inline element tau_fixed_point(const fedosov_data &d, const chart_expr &f)
{
    element base = element::scalar(d.dimension(), f);
    auto map = [&](const element &x) {
        return base + weyl::delta_inv(weyl::nabla(x, d.conn()) - weyl::ad_over_nu(d.r(), x, d.kind(), d.ch()));
    };
    return fixed_point(map, base, d.K() - 1);
}

namespace detail {

inline void require_order(const fedosov_data &d, int N)
{
    if (N < 0) {
        throw validation_error("order must be non-negative");
    }
    if (d.K() < 2 * N + 2) {
        throw validation_error("truncation " + std::to_string(d.K()) + " is insufficient for order " +
                               std::to_string(N) + " (need at least " + std::to_string(2 * N + 2) + ")");
    }
}

using star_table = std::map<monomial, std::vector<std::pair<monomial, std::vector<chart_expr>>>>;

// C_r^{alpha beta} = nu^r coefficient of sigma(T_alpha o T_beta).
inline const star_table &table(const fedosov_data &d, int N)
{
    {
        std::lock_guard lock(d.cache().m);
        auto it = d.cache().tables.find(N);
        if (it != d.cache().tables.end()) {
            return it->second;
        }
    }
    auto jets = taylor_jets(d, 2 * N);
    weyl::product_options o;
    o.sigma_only = true;
    o.cap = 2 * N;
    star_table t;
    for (const auto &[a, ta] : jets) {
        for (const auto &[b, tb] : jets) {
            if (static_cast<int>(a.degree() + b.degree()) > 2 * N) {
                continue;
            }
            element p = weyl::circ(ta, tb, d.kind(), d.ch(), o);
            if (p.is_zero()) {
                continue;
            }
            std::vector<chart_expr> cr(static_cast<std::size_t>(N + 1));
            for (const auto &[k, c] : p.terms()) {
                cr[k.nu] = d.ch().reduce(c);
            }
            t[a].emplace_back(b, std::move(cr));
        }
    }
    std::lock_guard lock(d.cache().m);
    return d.cache().tables.emplace(N, std::move(t)).first->second;
}

} // namespace detail

// f * g = sum_{r<=N} nu^r C_r(f, g).
inline nu_series star(const fedosov_data &d, const chart_expr &f, const chart_expr &g, int N)
{
    detail::require_order(d, N);
    const auto &t = detail::table(d, N);
    detail::derivative_table df(d.ch(), f);
    detail::derivative_table dg(d.ch(), g);
    nu_series out(N);
    for (const auto &[a, row] : t) {
        const chart_expr &fa = df(a);
        if (fa.is_zero()) {
            continue;
        }
        for (const auto &[b, cr] : row) {
            const chart_expr &gb = dg(b);
            if (gb.is_zero()) {
                continue;
            }
            chart_expr prod = fa * gb;
            for (int r = 0; r <= N; ++r) {
                if (!cr[static_cast<std::size_t>(r)].is_zero()) {
                    out[r] += cr[static_cast<std::size_t>(r)] * prod;
                }
            }
        }
    }
    for (int r = 0; r <= N; ++r) {
        out[r] = d.ch().reduce(out[r]);
    }
    return out;
}

// Bilinear extension to nu-series arguments.
inline nu_series star(const fedosov_data &d, const nu_series &f, const nu_series &g, int N)
{
    nu_series out(N);
    for (int i = 0; i <= N && i <= f.order(); ++i) {
        if (f[i].is_zero()) {
            continue;
        }
        for (int j = 0; i + j <= N && j <= g.order(); ++j) {
            if (g[j].is_zero()) {
                continue;
            }
            nu_series p = star(d, f[i], g[j], N - i - j);
            for (int r = 0; r <= p.order(); ++r) {
                out[i + j + r] += p[r];
            }
        }
    }
    for (int r = 0; r <= N; ++r) {
        out[r] = d.ch().reduce(out[r]);
    }
    return out;
}

// sigma(tau(f) o tau(g)) from the full Taylor series.
inline nu_series star_direct(const fedosov_data &d, const chart_expr &f, const chart_expr &g, int N)
{
    detail::require_order(d, N);
    weyl::product_options o;
    o.sigma_only = true;
    o.cap = 2 * N;
    element p = weyl::circ(tau_recursive(d, f, 2 * N), tau_recursive(d, g, 2 * N), d.kind(), d.ch(), o);
    nu_series out(N);
    for (const auto &[k, c] : p.terms()) {
        out[k.nu] = d.ch().reduce(c);
    }
    return out;
}

// Projection of tau(f) onto pure holomorphic (side z) or antiholomorphic
// (side zbar) symbols, as the fixed point of
//   x -> f + delta_p^{-1}(nabla_p x - pi_p((1/nu) ad(r) x)).
// Valid when pi_p r = 0 and the kind is wick or antiwick.
inline element pi_tau_fast(const fedosov_data &d, const chart_expr &f, weyl::part side)
{
    if (d.kind() == product_kind::weyl) {
        throw validation_error("projected Taylor series needs a Wick or anti-Wick product");
    }
    auto proj = [side](const element &a) { return side == weyl::part::z ? weyl::pi_z(a) : weyl::pi_zbar(a); };
    if (!proj(d.r()).is_zero()) {
        throw validation_error(std::string("precondition violated: ") +
                               (side == weyl::part::z ? "pi_z" : "pi_zbar") + " r is nonzero");
    }
    element base = element::scalar(d.dimension(), f);
    auto map = [&](const element &x) {
        element src = weyl::nabla(x, d.conn(), side) - proj(weyl::ad_over_nu(d.r(), x, d.kind(), d.ch()));
        return base + weyl::delta_inv(src, side);
    };
    return fixed_point(map, base, d.K() - 1);
}

inline element pi_z_tau_fast(const fedosov_data &d, const chart_expr &f)
{
    return pi_tau_fast(d, f, weyl::part::z);
}
inline element pi_zbar_tau_fast(const fedosov_data &d, const chart_expr &f)
{
    return pi_tau_fast(d, f, weyl::part::zbar);
}

// f * g = sigma(pi_z tau(f) o pi_zbar tau(g)) for Wick type, mirrored for anti-Wick.
inline nu_series star_projected(const fedosov_data &d, const chart_expr &f, const chart_expr &g, int N)
{
    detail::require_order(d, N);
    bool wick = d.kind() == product_kind::wick;
    element a = pi_tau_fast(d, f, wick ? weyl::part::z : weyl::part::zbar).truncated(2 * N);
    element b = pi_tau_fast(d, g, wick ? weyl::part::zbar : weyl::part::z).truncated(2 * N);
    weyl::product_options o;
    o.sigma_only = true;
    o.cap = 2 * N;
    element p = weyl::circ(a, b, d.kind(), d.ch(), o);
    nu_series out(N);
    for (const auto &[k, c] : p.terms()) {
        out[k.nu] = d.ch().reduce(c);
    }
    return out;
}

} // namespace kahler::fedosov
