#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "../sampling.hpp"
#include "equivalence.hpp"
#include "karabegov.hpp"

namespace kahler::fedosov {

struct suite_options {
    // Guaranteed nu-order of star products.
    int N = 2;
    // Total-degree truncation; 0 selects 2N + 2.
    int K = 0;
    std::uint64_t seed = 1;
    // Random elements per operator identity and their maximal total degree.
    int elements = 20;
    int max_degree = 6;
    // Random polynomials for behavioral checks and associativity triples.
    int pool = 6;
    int triples = 10;

    int truncation() const { return K > 0 ? K : 2 * N + 2; }
};

inline const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names{"algebra",   "geometry", "fedosov", "wick",
                                                "karabegov", "hermitian", "parity", "equivalence"};
    return names;
}

namespace detail {

// FNV-1a, so stream indices do not depend on the standard library.
inline std::uint64_t name_hash(const std::string &s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 1099511628211ULL;
    }
    return h;
}

// Runs `identity` on `count` seeded random elements; records the first failure.
inline void identity_check(report &rep, const std::string &name, const chart::chart &ch, std::uint64_t seed,
                           int count, int max_degree, int max_asym,
                           const std::function<element(const element &)> &residual)
{
    sample_stream rng(seed, name_hash(name));
    std::string fail;
    for (int t = 0; t < count && fail.empty(); ++t) {
        element a = weyl::random_element(ch, rng, 4, max_degree, max_asym);
        element res = residual(a);
        if (!res.is_zero()) {
            fail = "sample " + std::to_string(t) + ": residual " + first_term(res);
        }
    }
    rep.add(name, fail.empty(), evidence::exact, fail);
}

inline std::vector<chart_expr> pool(const chart::chart &ch, const suite_options &o)
{
    std::vector<chart_expr> out;
    int n = ch.dimension();
    for (int s = 0; s < 2 * n; ++s) {
        out.push_back(ch.coordinate(s));
    }
    for (auto &p : random_pool(n, o.seed, o.pool, 2, n == 1 ? 3 : 2)) {
        out.push_back(p);
    }
    return out;
}

inline std::vector<chart_expr> partners(const chart::chart &ch, const suite_options &o)
{
    int n = ch.dimension();
    std::vector<chart_expr> out{ch.coordinate(0), ch.coordinate(n), ch.reduce(ch.coordinate(0) * ch.coordinate(n))};
    if (n > 1) {
        out.push_back(ch.coordinate(1));
        out.push_back(ch.coordinate(n + 1));
    }
    for (auto &p : random_pool(n, o.seed ^ 0x5eed, 2, 2, 2)) {
        out.push_back(p);
    }
    return out;
}

inline form_series one_form(const chart::chart &ch, int p, const chart_expr &c, int slot)
{
    form b(ch.dimension());
    b.add(static_cast<form_mask>(1u << slot), c);
    return {{p, b}};
}

inline void require_type(const fedosov_data &d, const std::string &suite)
{
    if (d.kind() == product_kind::weyl) {
        throw validation_error("suite '" + suite + "' needs --product wick or antiwick");
    }
}

} // namespace detail

// Operator identities of the fibrewise algebra on random elements.
inline report algebra_suite(const chart::chart &ch, const suite_options &o)
{
    using namespace weyl;
    report rep;
    rep.title = "algebra";
    int c = o.elements;
    int m = o.max_degree;
    auto check = [&](const std::string &name, int max_asym, const std::function<element(const element &)> &f) {
        detail::identity_check(rep, name, ch, o.seed, c, m, max_asym, f);
    };
    check("delta^2 = 0", 3, [](const element &a) { return delta(delta(a)); });
    check("delta*^2 = 0", 3, [](const element &a) { return delta_star(delta_star(a)); });
    check("delta delta^{-1} + delta^{-1} delta + sigma = id", 3,
          [](const element &a) { return delta(delta_inv(a)) + delta_inv(delta(a)) + sigma(a) - a; });
    check("delta delta* + delta* delta = (deg_s + deg_a) id", 3, [](const element &a) {
        element weighted(a.dimension());
        for (const auto &[k, x] : a.terms()) {
            weighted.add(k, x.scaled(gaussian_rational(static_cast<long>(k.deg_s() + k.deg_a()))));
        }
        return delta(delta_star(a)) + delta_star(delta(a)) - weighted;
    });
    check("delta = delta_z + delta_zbar", 3, [](const element &a) { return delta(a) - delta_z(a) - delta_zbar(a); });
    check("delta_z^2 = delta_zbar^2 = [delta_z, delta_zbar] = 0", 3, [](const element &a) {
        return delta_z(delta_z(a)) + delta_zbar(delta_zbar(a)).scaled(gaussian_rational(2)) +
               (delta_z(delta_zbar(a)) + delta_zbar(delta_z(a))).scaled(gaussian_rational(3));
    });
    check("delta_z delta_z^{-1} + delta_z^{-1} delta_z + pi_zbar = id", 3,
          [](const element &a) { return delta_z_inv(delta_z(a)) + delta_z(delta_z_inv(a)) + pi_zbar(a) - a; });
    check("delta_zbar delta_zbar^{-1} + delta_zbar^{-1} delta_zbar + pi_z = id", 3, [](const element &a) {
        return delta_zbar_inv(delta_zbar(a)) + delta_zbar(delta_zbar_inv(a)) + pi_z(a) - a;
    });
    check("pi_z pi_zbar = sigma", 3, [](const element &a) { return pi_z(pi_zbar(a)) - sigma(a); });

    // Product identities on pairs and triples of smaller elements.
    sample_stream rng(o.seed, 0x70726f64);
    int small = std::min(m, 4);
    for (auto kind : {product_kind::weyl, product_kind::wick, product_kind::antiwick}) {
        std::string tag = std::string(" (") + to_string(kind) + ")";
        std::string der;
        std::string assoc;
        std::string fib;
        for (int t = 0; t < c; ++t) {
            element a = random_element(ch, rng, 3, small);
            element b = random_element(ch, rng, 3, small);
            element e = random_element(ch, rng, 2, 3);
            element lhs = delta(circ(a, b, kind, ch));
            element rhs = circ(delta(a), b, kind, ch) + circ(grade_involution(a), delta(b), kind, ch);
            if (!(lhs == rhs) && der.empty()) {
                der = "sample " + std::to_string(t) + ": residual " + detail::first_term(lhs - rhs);
            }
            element l3 = circ(circ(a, b, kind, ch), e, kind, ch);
            element r3 = circ(a, circ(b, e, kind, ch), kind, ch);
            if (!(l3 == r3) && assoc.empty()) {
                assoc = "sample " + std::to_string(t) + ": residual " + detail::first_term(l3 - r3);
            }
            if (kind != product_kind::weyl) {
                auto to = kind == product_kind::wick ? direction::forward : direction::inverse;
                auto back = kind == product_kind::wick ? direction::inverse : direction::forward;
                element x = fib_equiv_S(circ(fib_equiv_S(a, ch, to), fib_equiv_S(b, ch, to), kind, ch), ch, back);
                element y = circ(a, b, product_kind::weyl, ch);
                if (!(x == y) && fib.empty()) {
                    fib = "sample " + std::to_string(t) + ": residual " + detail::first_term(x - y);
                }
            }
        }
        rep.add("delta is a super-derivation of circ" + tag, der.empty(), evidence::exact, der);
        rep.add("circ is associative" + tag, assoc.empty(), evidence::exact, assoc);
        if (kind != product_kind::weyl) {
            rep.add("S intertwines circ" + tag + " with circ (weyl)", fib.empty(), evidence::exact, fib);
        }
    }
    return rep;
}

// Connection and curvature identities.
inline report geometry_suite(const geometry &geo, const suite_options &o)
{
    using namespace weyl;
    report rep;
    rep.title = "geometry";
    const auto &ch = geo.ch;
    const auto &conn = geo.conn;
    const auto &R = geo.curv.curvature_element;
    int n = ch.dimension();

    std::string sym;
    std::string compat;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            for (int m = 0; m < n; ++m) {
                if (!(conn.gamma(m, k, l) == conn.gamma(m, l, k)) && sym.empty()) {
                    sym = "Gamma[" + std::to_string(m + 1) + "," + std::to_string(k + 1) + "," +
                          std::to_string(l + 1) + "]";
                }
            }
            for (int j = 0; j < n; ++j) {
                chart_expr rhs;
                for (int m = 0; m < n; ++m) {
                    rhs += conn.gamma(m, k, l) * ch.g(m, j);
                }
                chart_expr diff = ch.reduce(ch.g(l, j).derivative(k) - rhs);
                if (!diff.is_zero() && compat.empty()) {
                    compat = "Z_" + std::to_string(k + 1) + " g_{" + std::to_string(l + 1) + std::to_string(j + 1) +
                             "}: " + diff.to_string(n);
                }
            }
        }
    }
    rep.add("Gamma symmetric", sym.empty(), evidence::exact, sym);
    rep.add("nabla g = 0", compat.empty(), evidence::exact, compat);
    rep.add("delta R = 0", delta(R).is_zero(), evidence::exact, detail::first_term(delta(R)));
    rep.add("nabla R = 0", nabla(R, conn).is_zero(), evidence::exact, detail::first_term(nabla(R, conn)));
    element ricci = element::from_form(geo.curv.ricci_form);
    element fib = delta_fib(R, ch);
    rep.add("Delta_fib R = 1 (x) rho", fib == ricci, evidence::exact, detail::first_term(fib - ricci));
    form det = chart::ricci_form_from_determinant(ch);
    rep.add("rho = -i d dbar log det g", det == geo.curv.ricci_form, evidence::exact,
            (det - geo.curv.ricci_form).to_string());
    rep.add("d rho = 0", geo.curv.ricci_form.d().is_zero(), evidence::exact, geo.curv.ricci_form.d().to_string());

    auto check = [&](const std::string &name, const std::function<element(const element &)> &f) {
        detail::identity_check(rep, name, ch, o.seed, o.elements, o.max_degree, 1, f);
    };
    check("delta nabla + nabla delta = 0",
          [&](const element &a) { return delta(nabla(a, conn)) + nabla(delta(a), conn); });
    for (auto kind : {product_kind::weyl, product_kind::wick, product_kind::antiwick}) {
        check(std::string("nabla^2 = -(1/nu) ad(R) (") + to_string(kind) + ")",
              [&, kind](const element &a) { return nabla(nabla(a, conn), conn) + ad_over_nu(R, a, kind, ch); });
    }
    check("nabla = nabla_z + nabla_zbar",
          [&](const element &a) { return nabla(a, conn) - nabla_z(a, conn) - nabla_zbar(a, conn); });
    check("nabla_z^2 = nabla_zbar^2 = 0", [&](const element &a) {
        return nabla_z(nabla_z(a, conn), conn) + nabla_zbar(nabla_zbar(a, conn), conn).scaled(gaussian_rational(2));
    });
    check("nabla_z nabla_zbar + nabla_zbar nabla_z = -(1/nu) ad_wick(R)", [&](const element &a) {
        return nabla_z(nabla_zbar(a, conn), conn) + nabla_zbar(nabla_z(a, conn), conn) +
               ad_over_nu(R, a, product_kind::wick, ch);
    });
    check("delta_z, delta_zbar anticommute with nabla_z, nabla_zbar", [&](const element &a) {
        element acc = delta_z(nabla_z(a, conn)) + nabla_z(delta_z(a), conn);
        acc += (delta_z(nabla_zbar(a, conn)) + nabla_zbar(delta_z(a), conn)).scaled(gaussian_rational(2));
        acc += (delta_zbar(nabla_z(a, conn)) + nabla_z(delta_zbar(a), conn)).scaled(gaussian_rational(3));
        acc += (delta_zbar(nabla_zbar(a, conn)) + nabla_zbar(delta_zbar(a), conn)).scaled(gaussian_rational(5));
        return acc;
    });
    return rep;
}

// Runs one named suite for the chart and product kind.
inline report run_suite(const std::string &suite, const chart::chart &ch, product_kind kind, const suite_options &o)
{
    int N = o.N;
    int K = o.truncation();
    auto geo = make_geometry(ch);
    if (suite == "algebra") {
        return algebra_suite(ch, o);
    }
    if (suite == "geometry") {
        return geometry_suite(*geo, o);
    }
    fedosov_data d(geo, kind, ch.omega_series(), element(ch.dimension()), K);
    auto pool = detail::pool(ch, o);
    if (suite == "fedosov") {
        report rep = fedosov_properties(d, N, pool, o.triples);
        rep.append(vey_order_check(d, N, pool));
        return rep;
    }
    if (suite == "wick") {
        detail::require_type(d, suite);
        report rep = wick_type_check(d, N, standard_witnesses(ch, detail::partners(ch, o)));
        if (kind == product_kind::wick) {
            rep.append(separation_check(d, N, standard_witnesses(ch, detail::partners(ch, o))));
        }
        return rep;
    }
    if (suite == "karabegov") {
        detail::require_type(d, suite);
        return karabegov_form(d, N, pool).checks;
    }
    if (suite == "hermitian") {
        return hermitian_check(d, N, pool);
    }
    if (suite == "parity") {
        detail::require_type(d, suite);
        report rep;
        rep.title = "parity";
        report p = parity_transport(d, N, pool).checks;
        p.title.clear();
        rep.append(p);
        rep.append(fibrewise_transport(d, N, pool).checks);
        return rep;
    }
    if (suite == "equivalence") {
        report rep;
        rep.title = "equivalence";
        auto zb = ch.coordinate(ch.dimension());
        auto B = detail::one_form(ch, 1, zb, 0);
        rep.append(renormalize_s(d, B, N, pool).checks);
        fedosov_data dp(geo, kind, chart::add(d.omega(), detail::exterior_derivative(B), -1), element(ch.dimension()),
                        K);
        auto A = equivalence_A_h(d, dp, B);
        report a = equivalence_check(A, N, pool);
        a.title = "A_h";
        rep.append(a);
        if (kind != product_kind::weyl) {
            // Changing s among admissible normalizations leaves the product unchanged.
            weyl::key k;
            k = k.add_count(0, 1).add_count(ch.dimension(), 2);
            element s(ch.dimension());
            s.add(k, ch.coordinate(0));
            fedosov_data ds(geo, kind, d.omega(), s, K);
            auto As = equivalence_A_h(d, ds, {});
            bool same = true;
            for (const auto &f : pool) {
                for (const auto &g : pool) {
                    same = same && star(d, f, g, N) == star(ds, f, g, N);
                }
            }
            rep.add("normalization change: A_h = id", is_identity(As, N, pool), evidence::behavioral);
            rep.add("normalization change: products agree", same, evidence::behavioral);
        }
        return rep;
    }
    throw validation_error("unknown suite '" + suite + "'");
}

// Suites applicable to the chart and product kind for `all`.
inline std::vector<std::string> all_suites(const chart::chart &ch, product_kind kind)
{
    std::vector<std::string> out{"algebra", "geometry", "fedosov", "hermitian", "equivalence"};
    if (kind != product_kind::weyl) {
        out.insert(out.begin() + 3, "wick");
        if (ch.has_potential()) {
            out.insert(out.begin() + 4, "karabegov");
        }
        out.push_back("parity");
    }
    return out;
}

// Runs several suites; with `tolerate_preconditions`, a suite whose
// preconditions fail is reported as one failed check instead of throwing.
inline report run_suites(const std::vector<std::string> &suites, const chart::chart &ch, product_kind kind,
                         const suite_options &o, bool tolerate_preconditions)
{
    report all;
    for (const auto &name : suites) {
        try {
            report r = run_suite(name, ch, kind, o);
            r.title = name;
            all.append(r);
        } catch (const validation_error &e) {
            if (!tolerate_preconditions) {
                throw;
            }
            all.add(name + ".preconditions", false, evidence::structural, e.what());
        }
    }
    return all;
}

} // namespace kahler::fedosov
