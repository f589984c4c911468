#pragma once

#include <string>

#include "../chart/connection.hpp"
#include "products.hpp"

namespace kahler::weyl {

// Which symbol slots an operator acts on.
enum class part { all, z, zbar };

namespace detail {

inline bool in_part(int n, int s, part p)
{
    switch (p) {
    case part::all:
        return s < 2 * n;
    case part::z:
        return s < n;
    case part::zbar:
        return s >= n && s < 2 * n;
    }
    return false;
}

inline int bits_below(form_mask m, int s) { return std::popcount(static_cast<unsigned>(m & ((1u << s) - 1))); }

inline int shifted_trunc(int t, int d)
{
    if (t >= exact) {
        return exact;
    }
    return t + d;
}

inline form_mask holo_mask(int n) { return static_cast<form_mask>((1u << n) - 1); }

inline int holo_sym(const key &k, int n)
{
    int d = 0;
    for (int s = 0; s < n; ++s) {
        d += k.count(s);
    }
    return d;
}

} // namespace detail

// delta = sum_s (1 (x) dx^s) i_s(d_s), restricted to the slots of `which`.
inline element delta(const element &a, part which = part::all)
{
    int n = a.dimension();
    element r(n, detail::shifted_trunc(a.trunc(), -1));
    for (const auto &[k, c] : a.terms()) {
        for (int s = 0; s < 2 * n; ++s) {
            int cnt = k.count(s);
            form_mask bit = static_cast<form_mask>(1u << s);
            if (cnt == 0 || (k.asym & bit) || !detail::in_part(n, s, which)) {
                continue;
            }
            key q = k.with_count(s, cnt - 1);
            q.asym = static_cast<form_mask>(k.asym | bit);
            r.add(q, c.scaled(gaussian_rational(static_cast<long>(cnt * wedge_sign(bit, k.asym)))));
        }
    }
    return r;
}

// delta* = sum_s (dx^s (x) 1) i_a(d_s).
inline element delta_star(const element &a, part which = part::all)
{
    int n = a.dimension();
    element r(n, detail::shifted_trunc(a.trunc(), 1));
    for (const auto &[k, c] : a.terms()) {
        for (int s = 0; s < 2 * n; ++s) {
            form_mask bit = static_cast<form_mask>(1u << s);
            if (!(k.asym & bit) || !detail::in_part(n, s, which)) {
                continue;
            }
            key q = k.add_count(s, 1);
            q.asym = static_cast<form_mask>(k.asym & ~bit);
            r.add(q, detail::bits_below(k.asym, s) % 2 ? -c : c);
        }
    }
    return r;
}

// delta^{-1}: delta* divided by the (sym + asym) degree counted on `which`
// slots; terms where that count vanishes are annihilated.
inline element delta_inv(const element &a, part which = part::all)
{
    int n = a.dimension();
    element r(n, detail::shifted_trunc(a.trunc(), 1));
    for (const auto &[k, c] : a.terms()) {
        int w = 0;
        for (int s = 0; s < 2 * n; ++s) {
            if (detail::in_part(n, s, which)) {
                w += k.count(s) + ((k.asym >> s) & 1u);
            }
        }
        if (w == 0) {
            continue;
        }
        for (int s = 0; s < 2 * n; ++s) {
            form_mask bit = static_cast<form_mask>(1u << s);
            if (!(k.asym & bit) || !detail::in_part(n, s, which)) {
                continue;
            }
            key q = k.add_count(s, 1);
            q.asym = static_cast<form_mask>(k.asym & ~bit);
            int sign = detail::bits_below(k.asym, s) % 2 ? -1 : 1;
            r.add(q, c.scaled(gaussian_rational(mpq_class(sign, w))));
        }
    }
    return r;
}

inline element delta_z(const element &a) { return delta(a, part::z); }
inline element delta_zbar(const element &a) { return delta(a, part::zbar); }
inline element delta_z_inv(const element &a) { return delta_inv(a, part::z); }
inline element delta_zbar_inv(const element &a) { return delta_inv(a, part::zbar); }

// Part of symmetric and antisymmetric degree zero.
inline element sigma(const element &a)
{
    return a.filtered([](const key &k) { return k.sym == 0 && k.asym == 0; });
}

// Projection selectors acting on symbol types only.
struct selector {
    enum class type { pi_z, pi_zbar, pi_s, pi_a, pi_sz, pi_szbar, pi_az, pi_azbar } t;
    int p = 0;
    int q = 0;

    static selector z() { return {type::pi_z}; }
    static selector zbar() { return {type::pi_zbar}; }
    static selector s(int p, int q) { return {type::pi_s, p, q}; }
    static selector a(int p, int q) { return {type::pi_a, p, q}; }
    static selector sz() { return {type::pi_sz}; }
    static selector szbar() { return {type::pi_szbar}; }
    static selector az() { return {type::pi_az}; }
    static selector azbar() { return {type::pi_azbar}; }
};

inline element project(const element &a, selector sel)
{
    int n = a.dimension();
    form_mask holo = detail::holo_mask(n);
    return a.filtered([&](const key &k) {
        int hs = detail::holo_sym(k, n);
        int as = k.deg_s() - hs;
        int ha = std::popcount(static_cast<unsigned>(k.asym & holo));
        int aa = k.deg_a() - ha;
        switch (sel.t) {
        case selector::type::pi_z:
            return as == 0 && aa == 0;
        case selector::type::pi_zbar:
            return hs == 0 && ha == 0;
        case selector::type::pi_s:
            return hs == sel.p && as == sel.q;
        case selector::type::pi_a:
            return ha == sel.p && aa == sel.q;
        case selector::type::pi_sz:
            return as == 0;
        case selector::type::pi_szbar:
            return hs == 0;
        case selector::type::pi_az:
            return aa == 0;
        case selector::type::pi_azbar:
            return ha == 0;
        }
        return false;
    });
}

inline element pi_z(const element &a) { return project(a, selector::z()); }
inline element pi_zbar(const element &a) { return project(a, selector::zbar()); }

// Covariant exterior derivative (1 (x) dx^d) nabla_{d} summed over the
// directions in `which`. nabla_{Z_k} acts on holomorphic symbols by
// dz^m -> -Gamma^m_{kj} dz^j, nabla_{Zbar_k} on antiholomorphic ones by the
// conjugate components, both as derivations, plus Z_k on coefficients.
inline element nabla(const element &a, const chart::connection_data &conn, part which = part::all)
{
    int n = a.dimension();
    element r(n, a.trunc());
    auto emit = [&](int d, const key &k, const chart_expr &c) {
        form_mask bit = static_cast<form_mask>(1u << d);
        if ((k.asym & bit) || c.is_zero()) {
            return;
        }
        key q = k;
        q.asym = static_cast<form_mask>(k.asym | bit);
        r.add(q, wedge_sign(bit, k.asym) < 0 ? -c : c);
    };
    for (const auto &[k, c] : a.terms()) {
        for (int d = 0; d < 2 * n; ++d) {
            if (!detail::in_part(n, d, which)) {
                continue;
            }
            emit(d, k, c.derivative(d));
            if (conn.is_flat()) {
                continue;
            }
            bool holo = d < n;
            int kk = holo ? d : d - n;
            int lo = holo ? 0 : n;
            auto gam = [&](int m, int j) -> const chart_expr & {
                return holo ? conn.gamma(m, kk, j) : conn.gamma_bar(m, kk, j);
            };
            for (int s = lo; s < lo + n; ++s) {
                int cnt = k.count(s);
                bool in_asym = (k.asym >> s) & 1u;
                if (cnt == 0 && !in_asym) {
                    continue;
                }
                for (int t = lo; t < lo + n; ++t) {
                    const chart_expr &G = gam(s - lo, t - lo);
                    if (G.is_zero()) {
                        continue;
                    }
                    chart_expr gc = -(G * c);
                    if (cnt > 0) {
                        key q = s == t ? k : k.add_count(s, -1).add_count(t, 1);
                        emit(d, q, gc.scaled(gaussian_rational(static_cast<long>(cnt))));
                    }
                    if (in_asym) {
                        if (s == t) {
                            emit(d, k, gc);
                            continue;
                        }
                        form_mask tb = static_cast<form_mask>(1u << t);
                        if (k.asym & tb) {
                            continue;
                        }
                        form_mask rest = static_cast<form_mask>(k.asym & ~(1u << s));
                        int sign = (detail::bits_below(k.asym, s) % 2 ? -1 : 1) * wedge_sign(tb, rest);
                        key q = k;
                        q.asym = static_cast<form_mask>(rest | tb);
                        emit(d, q, sign < 0 ? -gc : gc);
                    }
                }
            }
        }
    }
    return r;
}

inline element nabla_z(const element &a, const chart::connection_data &conn) { return nabla(a, conn, part::z); }
inline element nabla_zbar(const element &a, const chart::connection_data &conn)
{
    return nabla(a, conn, part::zbar);
}

// Delta_fib = g^{k lbar} i_s(Z_k) i_s(Zbar_l); lowers deg_s by 2.
inline element delta_fib(const element &a, const chart::chart &ch)
{
    int n = ch.dimension();
    element r(n, a.trunc());
    for (const auto &[k, c] : a.terms()) {
        for (int p = 0; p < n; ++p) {
            for (int l = 0; l < n; ++l) {
                int ca = k.count(p);
                int cb = k.count(n + l);
                if (ca == 0 || cb == 0 || ch.ginv(p, l).is_zero()) {
                    continue;
                }
                key q = k.add_count(p, -1).add_count(n + l, -1);
                r.add(q, (c * ch.ginv(p, l)).scaled(gaussian_rational(static_cast<long>(ca * cb))));
            }
        }
    }
    return r;
}

enum class direction { forward, inverse };

// S = exp((nu/i) Delta_fib), inverse exp(-(nu/i) Delta_fib).
inline element fib_equiv_S(const element &a, const chart::chart &ch, direction dir = direction::forward)
{
    // (nu/i) = -i nu
    gaussian_rational step = dir == direction::forward ? gaussian_rational(0, -1) : gaussian_rational(0, 1);
    element result = a;
    element power = a;
    for (int j = 1;; ++j) {
        power = delta_fib(power, ch).times_nu(1).with_trunc(a.trunc()).scaled(step * gaussian_rational(mpq_class(1, j)));
        if (power.is_zero()) {
            break;
        }
        result += power;
    }
    return result;
}

// P = (-1)^{deg_nu}
inline element parity_P(const element &a)
{
    element r(a.dimension(), a.trunc());
    for (const auto &[k, c] : a.terms()) {
        r.add(k, k.nu % 2 ? -c : c);
    }
    return r;
}

// C: coefficient conjugation, dz <-> dzb on both factors, nu -> -nu.
inline element conj_C(const element &a)
{
    int n = a.dimension();
    element r(n, a.trunc());
    for (const auto &[k, c] : a.terms()) {
        key q;
        q.nu = k.nu;
        for (int s = 0; s < 2 * n; ++s) {
            q = q.with_count(s < n ? s + n : s - n, k.count(s));
        }
        int sign = k.nu % 2 ? -1 : 1;
        form_mask out = 0;
        for (int s = 0; s < 2 * n; ++s) {
            if (k.asym & (1u << s)) {
                form_mask bit = static_cast<form_mask>(1u << (s < n ? s + n : s - n));
                sign *= wedge_sign(out, bit);
                out |= bit;
            }
        }
        q.asym = out;
        chart_expr cc = c.conjugate();
        r.add(q, sign < 0 ? -cc : cc);
    }
    return r;
}

} // namespace kahler::weyl
