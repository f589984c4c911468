#pragma once

#include <set>
#include <string>
#include <vector>

#include "report.hpp"
#include "taylor.hpp"

namespace kahler::fedosov {

namespace detail {

inline std::string first_term(const element &e)
{
    element one(e.dimension());
    if (!e.is_zero()) {
        one.add(e.terms().begin()->first, e.terms().begin()->second);
    }
    return one.to_string();
}

inline std::string mismatch(const nu_series &got, const nu_series &want, int n)
{
    int r = first_difference(got, want);
    if (r < 0) {
        return {};
    }
    return "order " + std::to_string(r) + ": got " + got[r].to_string(n) + ", expected " + want[r].to_string(n);
}

inline std::string label(const chart_expr &f, int n) { return f.to_string(n); }

inline bool all_type_11(const form_series &omega)
{
    for (const auto &[p, f] : omega) {
        if (!f.has_type(1, 1)) {
            return false;
        }
    }
    return true;
}

} // namespace detail

// Functions depending only on the coordinates of one type.
struct wick_witnesses {
    std::vector<chart_expr> holomorphic;
    std::vector<chart_expr> antiholomorphic;
    std::vector<chart_expr> partners;
};

// 1, x, x^2, x^3 for every holomorphic (resp. antiholomorphic) coordinate x.
inline wick_witnesses standard_witnesses(const chart::chart &ch, std::vector<chart_expr> partners)
{
    wick_witnesses w;
    int n = ch.dimension();
    w.holomorphic.push_back(chart_expr(1));
    w.antiholomorphic.push_back(chart_expr(1));
    for (int k = 0; k < n; ++k) {
        for (int p = 1; p <= 3; ++p) {
            w.holomorphic.push_back(ch.coordinate(k).pow(p));
            w.antiholomorphic.push_back(ch.coordinate(n + k).pow(p));
        }
    }
    w.partners = std::move(partners);
    return w;
}

// Structural conditions (pi_z r = pi_zbar r = 0, pi_z s = pi_zbar s = 0,
// Omega of type (1,1)) and the behavioral separation of variables on witnesses.
inline report wick_type_check(const fedosov_data &d, int N, const wick_witnesses &w)
{
    report rep;
    rep.title = d.kind() == product_kind::antiwick ? "antiwick_type" : "wick_type";
    int n = d.dimension();
    auto structural = [&](const std::string &name, const element &e) {
        rep.add(name, e.is_zero(), evidence::structural, detail::first_term(e));
    };
    structural("pi_z r = 0", weyl::pi_z(d.r()));
    structural("pi_zbar r = 0", weyl::pi_zbar(d.r()));
    structural("pi_z s = 0", weyl::pi_z(d.s()));
    structural("pi_zbar s = 0", weyl::pi_zbar(d.s()));
    std::string bad;
    for (const auto &[p, f] : d.omega()) {
        if (!f.has_type(1, 1) && bad.empty()) {
            bad = "nu^" + std::to_string(p) + ": " + f.to_string();
        }
    }
    rep.add("Omega of type (1,1)", bad.empty(), evidence::structural, bad);

    bool wick = d.kind() != product_kind::antiwick;
    const auto &left = wick ? w.antiholomorphic : w.holomorphic;
    const auto &right = wick ? w.holomorphic : w.antiholomorphic;
    auto behavioral = [&](const std::string &name, const std::vector<chart_expr> &hs, bool h_left) {
        std::string fail;
        for (const auto &h : hs) {
            for (const auto &g : w.partners) {
                nu_series got = h_left ? star(d, h, g, N) : star(d, g, h, N);
                nu_series want = nu_series::constant(d.ch().reduce(h * g), N);
                if (!(got == want)) {
                    fail = (h_left ? "h = " + detail::label(h, n) + ", g = " + detail::label(g, n)
                                   : "f = " + detail::label(g, n) + ", h = " + detail::label(h, n)) +
                           "; " + detail::mismatch(got, want, n);
                    break;
                }
            }
            if (!fail.empty()) {
                break;
            }
        }
        rep.add(name, fail.empty(), evidence::behavioral, fail);
    };
    behavioral(wick ? "antiholomorphic h: h * g = hg" : "holomorphic h: h * g = hg", left, true);
    behavioral(wick ? "holomorphic h: f * h = fh" : "antiholomorphic h: f * h = fh", right, false);
    return rep;
}

// C(Omega) = Omega and C(f * g) = C(g) * C(f), where C conjugates and sends nu to -nu.
inline report hermitian_check(const fedosov_data &d, int N, const std::vector<chart_expr> &samples)
{
    report rep;
    rep.title = "hermitian";
    int n = d.dimension();
    std::string bad;
    for (const auto &[p, f] : d.omega()) {
        form c = f.conjugate();
        if (p % 2) {
            c = c.scaled(chart_expr(-1));
        }
        if (!(c == f) && bad.empty()) {
            bad = "nu^" + std::to_string(p) + ": C(Omega) - Omega = " + (c - f).to_string();
        }
    }
    rep.add("C(Omega) = Omega", bad.empty(), evidence::structural, bad);
    std::string fail;
    for (std::size_t i = 0; i < samples.size() && fail.empty(); ++i) {
        for (std::size_t j = 0; j < samples.size() && fail.empty(); ++j) {
            const auto &f = samples[i];
            const auto &g = samples[j];
            nu_series lhs = conj_C(star(d, f, g, N));
            nu_series rhs = star(d, g.conjugate(), f.conjugate(), N);
            if (!(lhs == rhs)) {
                fail = "f = " + detail::label(f, n) + ", g = " + detail::label(g, n) + "; " +
                       detail::mismatch(lhs, rhs, n);
            }
        }
    }
    rep.add("C(f * g) = C(g) * C(f)", fail.empty(), evidence::behavioral, fail);
    bool a = rep.checks[0].pass;
    bool b = rep.checks[1].pass;
    rep.add("criteria agree", a == b, evidence::behavioral,
            std::string("C(Omega) = Omega is ") + (a ? "true" : "false") + ", product criterion is " +
                (b ? "true" : "false"));
    return rep;
}

// The operator f -> C_r(f, g) has order <= r iff every (r+1)-fold nested
// commutator with multiplication operators vanishes. Same in the second slot.
inline report vey_order_check(const fedosov_data &d, int r_max, const std::vector<chart_expr> &pool,
                              std::size_t fixed = 2)
{
    report rep;
    rep.title = "vey";
    int n = d.dimension();
    auto coefficient = [&](const chart_expr &f, const chart_expr &g, int r) { return star(d, f, g, r_max)[r]; };
    // [..[[L, m_h1], m_h2].., m_hk](f) = sum_S (-1)^{k-|S|} prod_{j not in S} h_j L(prod_{j in S} h_j f)
    auto nested = [&](const std::vector<chart_expr> &hs, const chart_expr &f, auto &&L) {
        std::size_t k = hs.size();
        chart_expr acc;
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            chart_expr inner = f;
            chart_expr outer(1);
            for (std::size_t j = 0; j < k; ++j) {
                if (mask & (std::size_t{1} << j)) {
                    inner = inner * hs[j];
                } else {
                    outer = outer * hs[j];
                }
            }
            chart_expr term = outer * L(d.ch().reduce(inner));
            acc += ((k - static_cast<std::size_t>(std::popcount(mask))) % 2) ? -term : term;
        }
        return d.ch().reduce(acc);
    };
    for (int r = 0; r <= r_max; ++r) {
        std::string fail;
        for (std::size_t gi = 0; gi < std::min(fixed, pool.size()) && fail.empty(); ++gi) {
            const chart_expr &g = pool[gi];
            for (std::size_t fi = 0; fi < std::min(fixed, pool.size()) && fail.empty(); ++fi) {
                const chart_expr &f = pool[(gi + fi + 1) % pool.size()];
                std::vector<chart_expr> hs;
                for (int j = 0; j <= r; ++j) {
                    hs.push_back(pool[(gi + 2 * fi + j + 2) % pool.size()]);
                }
                auto first = [&](const chart_expr &x) { return coefficient(x, g, r); };
                auto second = [&](const chart_expr &x) { return coefficient(g, x, r); };
                chart_expr a = nested(hs, f, first);
                chart_expr b = nested(hs, f, second);
                if (!a.is_zero()) {
                    fail = "first slot, g = " + detail::label(g, n) + ", f = " + detail::label(f, n) +
                           ": commutator " + a.to_string(n);
                } else if (!b.is_zero()) {
                    fail = "second slot, g = " + detail::label(g, n) + ", f = " + detail::label(f, n) +
                           ": commutator " + b.to_string(n);
                }
            }
        }
        rep.add("C_" + std::to_string(r) + " has order <= (" + std::to_string(r) + "," + std::to_string(r) + ")",
                fail.empty(), evidence::behavioral, fail);
    }
    return rep;
}

// f *_K g = gf + sum_{l>=1} (i lambda)^l C_l(g, f), returned as a series in lambda.
inline nu_series separation_product(const fedosov_data &d, const chart_expr &f, const chart_expr &g, int N)
{
    nu_series s = star(d, g, f, N);
    gaussian_rational p(1);
    for (int l = 0; l <= N; ++l) {
        s[l] = s[l].scaled(p);
        p = p * gaussian_rational::i();
    }
    return s;
}

// Holomorphic functions multiply pointwise from the left, antiholomorphic
// ones from the right.
inline report separation_check(const fedosov_data &d, int N, const wick_witnesses &w)
{
    report rep;
    rep.title = "separation";
    int n = d.dimension();
    auto run = [&](const std::string &name, const std::vector<chart_expr> &hs, bool h_left) {
        std::string fail;
        for (const auto &h : hs) {
            for (const auto &g : w.partners) {
                nu_series got = h_left ? separation_product(d, h, g, N) : separation_product(d, g, h, N);
                nu_series want = nu_series::constant(d.ch().reduce(h * g), N);
                if (!(got == want) && fail.empty()) {
                    fail = "h = " + detail::label(h, n) + ", g = " + detail::label(g, n) + "; " +
                           detail::mismatch(got, want, n);
                }
            }
        }
        rep.add(name, fail.empty(), evidence::behavioral, fail);
    };
    run("holomorphic h: h *_K g = hg", w.holomorphic, true);
    run("antiholomorphic h: f *_K h = fh", w.antiholomorphic, false);
    return rep;
}

// Generic consistency of a construction: r equation, D^2 = 0, uniqueness of
// r, Taylor series, unit, first-order bracket and associativity on samples.
inline report fedosov_properties(const fedosov_data &d, int N, const std::vector<chart_expr> &samples,
                                 int triples)
{
    report rep;
    rep.title = "fedosov";
    int n = d.dimension();
    int K = d.K();

    element seeded = d.solve_r_from(weyl::delta_inv(d.curvature_element()));
    element zero_seed = d.solve_r_from(element(n));
    rep.add("r unique from seeds 0 and delta^{-1} R", seeded == d.r() && zero_seed == d.r(), evidence::exact,
            detail::first_term(seeded - d.r()));

    // D^2 on the generators dx^I (x) dx^J of symmetric degree <= K-2 with
    // coefficients 1, z, zb; D is nu-linear, so nu powers add nothing.
    std::string fail;
    std::vector<chart_expr> coeffs{chart_expr(1), d.ch().coordinate(0), d.ch().coordinate(n)};
    std::set<weyl::key> keys{weyl::key{}};
    std::vector<weyl::key> layer{weyl::key{}};
    for (int deg = 1; deg <= K - 2; ++deg) {
        std::vector<weyl::key> next;
        for (const auto &k : layer) {
            for (int s = 0; s < 2 * n; ++s) {
                weyl::key up = k.add_count(s, 1);
                if (keys.insert(up).second) {
                    next.push_back(up);
                }
            }
        }
        layer = std::move(next);
    }
    for (const auto &base : keys) {
        for (unsigned mask = 0; mask < (1u << (2 * n)) && fail.empty(); ++mask) {
            weyl::key k = base;
            k.asym = static_cast<form_mask>(mask);
            for (const auto &c : coeffs) {
                element e(n);
                e.add(k, c);
                element dd = d.D(d.D(e));
                if (dd.trunc() < K - 2) {
                    fail = "insufficient truncation for D^2";
                } else if (!dd.truncated(K - 2).is_zero()) {
                    fail = "D^2(" + e.to_string() + ") = " + detail::first_term(dd.truncated(K - 2));
                }
                if (!fail.empty()) {
                    break;
                }
            }
        }
        if (!fail.empty()) {
            break;
        }
    }
    rep.add("D^2 = 0 on generators to degree K-2", fail.empty(), evidence::exact, fail);

    fail.clear();
    for (const auto &f : samples) {
        element t = tau(d, f);
        element D = d.D(t).truncated(K - 2);
        if (!(weyl::sigma(t) == element::scalar(n, f))) {
            fail = "sigma(tau(f)) != f for f = " + detail::label(f, n);
        } else if (!D.is_zero()) {
            fail = "D tau(f) != 0 for f = " + detail::label(f, n) + ": " + detail::first_term(D);
        } else if (!(t == tau_recursive(d, f))) {
            fail = "jet and recursive Taylor series differ for f = " + detail::label(f, n);
        }
        if (!fail.empty()) {
            break;
        }
    }
    rep.add("sigma(tau f) = f and D tau(f) = 0", fail.empty(), evidence::exact, fail);

    fail.clear();
    for (const auto &f : samples) {
        for (const auto &g : samples) {
            nu_series p = star(d, f, g, N);
            nu_series q = star(d, g, f, N);
            if (!(p[0] == d.ch().reduce(f * g))) {
                fail = "C_0(f, g) != fg";
            } else if (N >= 1 && !(d.ch().reduce(p[1] - q[1]) == d.ch().reduce(d.ch().poisson_bracket(f, g)))) {
                fail = "C_1(f,g) - C_1(g,f) != {f,g} for f = " + detail::label(f, n) + ", g = " + detail::label(g, n);
            } else if (!(star(d, f, chart_expr(1), N) == nu_series::constant(f, N))) {
                fail = "f * 1 != f for f = " + detail::label(f, n);
            }
            if (!fail.empty()) {
                break;
            }
        }
        if (!fail.empty()) {
            break;
        }
    }
    rep.add("C_0 = fg, C_1 antisymmetric part = Poisson bracket, unit", fail.empty(), evidence::behavioral, fail);

    fail.clear();
    std::size_t m = samples.size();
    for (int t = 0; t < triples && m > 0 && fail.empty(); ++t) {
        const auto &f = samples[static_cast<std::size_t>(t) % m];
        const auto &g = samples[static_cast<std::size_t>(3 * t + 1) % m];
        const auto &h = samples[static_cast<std::size_t>(7 * t + 2) % m];
        nu_series lhs = star(d, star(d, f, g, N), nu_series::constant(h, N), N);
        nu_series rhs = star(d, nu_series::constant(f, N), star(d, g, h, N), N);
        if (!(lhs == rhs)) {
            fail = "f = " + detail::label(f, n) + ", g = " + detail::label(g, n) + ", h = " + detail::label(h, n) +
                   "; " + detail::mismatch(lhs, rhs, n);
        }
    }
    rep.add("associativity", fail.empty(), evidence::behavioral, fail);
    return rep;
}

} // namespace kahler::fedosov
