#pragma once

#include <string>
#include <vector>

#include "checks.hpp"

namespace kahler::fedosov {

namespace detail {

inline form_series parity(const form_series &s)
{
    form_series out;
    for (const auto &[p, f] : s) {
        out.emplace(p, p % 2 ? f.scaled(chart_expr(-1)) : f);
    }
    return out;
}

inline form_series exterior_derivative(const form_series &s)
{
    form_series out;
    for (const auto &[p, f] : s) {
        form df = f.d();
        if (!df.is_zero()) {
            out.emplace(p, df);
        }
    }
    return out;
}

// sigma of an element as a nu-series up to order N.
inline nu_series sigma_series(const element &e, int N)
{
    nu_series out(N);
    element s = weyl::sigma(e);
    for (const auto &[k, c] : s.terms()) {
        if (k.nu <= N) {
            out[k.nu] += c;
        }
    }
    return out;
}

} // namespace detail

// Bernoulli numbers B_0..B_m with B_1 = -1/2.
inline std::vector<mpq_class> bernoulli_numbers(int m)
{
    std::vector<mpq_class> b(static_cast<std::size_t>(m + 1));
    b[0] = 1;
    for (int j = 1; j <= m; ++j) {
        mpq_class acc = 0;
        mpz_class binom = 1;
        for (int k = 0; k < j; ++k) {
            acc += binom * b[static_cast<std::size_t>(k)];
            binom = binom * (j + 1 - k) / (k + 1);
        }
        b[static_cast<std::size_t>(j)] = -acc / (j + 1);
    }
    return b;
}

struct renormalized {
    fedosov_data data;
    report checks;
};

// (Omega, s) -> (Omega - dB, s + B (x) 1) for B = sum_{i>=1} nu^i B_i; the
// Fedosov derivation is unchanged and r' = r + 1 (x) B.
inline renormalized renormalize_s(const fedosov_data &d, const form_series &B, int N,
                                  const std::vector<chart_expr> &samples)
{
    int n = d.dimension();
    for (const auto &[p, f] : B) {
        if (p < 1) {
            throw validation_error("B must start at nu^1");
        }
        for (const auto &[m, c] : f.terms()) {
            if (std::popcount(static_cast<unsigned>(m)) != 1) {
                throw validation_error("B must be a series of one-forms");
            }
        }
    }
    form_series omega = chart::add(d.omega(), detail::exterior_derivative(B), -1);
    element s = d.s() + one_form_symmetric(n, B);
    fedosov_data out(d.geo(), d.kind(), omega, s, d.K());
    report rep;
    rep.title = "renormalize";
    element expected = d.r() + omega_element(n, B);
    rep.add("r' = r + 1 (x) B", out.r() == expected, evidence::exact, detail::first_term(out.r() - expected));
    std::string closed;
    for (const auto &[p, f] : omega) {
        if (!f.d().is_zero()) {
            closed = "nu^" + std::to_string(p);
        }
    }
    rep.add("Omega - dB closed", closed.empty(), evidence::exact, closed);
    std::string fail;
    for (const auto &f : samples) {
        for (const auto &g : samples) {
            nu_series a = star(d, f, g, N);
            nu_series b = star(out, f, g, N);
            if (!(a == b) && fail.empty()) {
                fail = "f = " + f.to_string(n) + ", g = " + g.to_string(n) + "; " + detail::mismatch(b, a, n);
            }
        }
    }
    rep.add("star products agree", fail.empty(), evidence::behavioral, fail);
    return {std::move(out), std::move(rep)};
}

// Equivalence A_h f = sigma(exp((1/nu) ad(h)) tau(f)) from data to data_prime
// where h solves
//   h = C (x) 1 + delta^{-1}(nabla h - (1/nu) ad(r) h - sum_j B_j/j! ((1/nu) ad h)^j (r' - r)).
class equivalence {
public:
    equivalence(fedosov_data data, fedosov_data data_prime, form_series C)
        : d_(std::move(data)), dp_(std::move(data_prime)), C_(std::move(C))
    {
        if (d_.kind() != dp_.kind() || d_.K() != dp_.K() || d_.geo() != dp_.geo()) {
            throw validation_error("equivalence needs data with the same kind, chart and truncation");
        }
        for (const auto &[p, f] : C_) {
            if (p < 1) {
                throw validation_error("C must start at nu^1");
            }
        }
        form_series diff = chart::add(d_.omega(), dp_.omega(), -1);
        if (!chart::series_equal(detail::exterior_derivative(C_), diff)) {
            throw validation_error("dC differs from Omega - Omega'");
        }
        h_ = solve_h();
    }

    const element &h() const { return h_; }
    const fedosov_data &source() const { return d_; }
    const fedosov_data &target() const { return dp_; }

    nu_series apply(const chart_expr &f, int N) const { return transport(d_, f, N, 1); }
    nu_series inverse(const chart_expr &f, int N) const { return transport(dp_, f, N, -1); }

    nu_series apply(const nu_series &f, int N) const { return extend(f, N, 1); }
    nu_series inverse(const nu_series &f, int N) const { return extend(f, N, -1); }

    // Value of the h equation's right-hand side at x.
    element h_map(const element &x) const
    {
        int n = d_.dimension();
        element dr = dp_.r() - d_.r();
        element series = dr;
        element term = dr;
        auto b = bernoulli_numbers(d_.K() + 2);
        mpq_class fact = 1;
        for (int j = 1; j <= d_.K() + 1; ++j) {
            term = weyl::ad_over_nu(x, term, d_.kind(), d_.ch());
            if (term.is_zero()) {
                break;
            }
            fact *= j;
            series += term.scaled(gaussian_rational(b[static_cast<std::size_t>(j)] / fact));
        }
        element src = weyl::nabla(x, d_.conn()) - weyl::ad_over_nu(d_.r(), x, d_.kind(), d_.ch()) - series;
        return one_form_symmetric(n, C_) + weyl::delta_inv(src);
    }

private:
    element solve_h() const
    {
        auto map = [this](const element &x) { return h_map(x); };
        element h = fixed_point(map, staged_fixed_point(map, d_.dimension(), 2, d_.K()), d_.K());
        if (!weyl::sigma(h).is_zero()) {
            throw contract_violation("h has a nonzero sigma part");
        }
        return h;
    }

    nu_series transport(const fedosov_data &d, const chart_expr &f, int N, int sign) const
    {
        detail::require_order(d, N);
        element t = tau(d, f, 2 * N);
        element sum = t;
        element term = t;
        element hh = sign > 0 ? h_ : -h_;
        for (int j = 1;; ++j) {
            term = weyl::ad_over_nu(hh, term, d.kind(), d.ch(), 2 * N).truncated(2 * N);
            if (term.is_zero()) {
                break;
            }
            term = term.scaled(gaussian_rational(mpq_class(1, j)));
            sum += term;
        }
        nu_series out = detail::sigma_series(sum, N);
        for (int r = 0; r <= N; ++r) {
            out[r] = d.ch().reduce(out[r]);
        }
        return out;
    }

    nu_series extend(const nu_series &f, int N, int sign) const
    {
        nu_series out(N);
        for (int i = 0; i <= N && i <= f.order(); ++i) {
            if (f[i].is_zero()) {
                continue;
            }
            nu_series a = sign > 0 ? apply(f[i], N - i) : inverse(f[i], N - i);
            for (int r = 0; r <= a.order(); ++r) {
                out[i + r] += a[r];
            }
        }
        const auto &ch = d_.ch();
        for (int r = 0; r <= N; ++r) {
            out[r] = ch.reduce(out[r]);
        }
        return out;
    }

    fedosov_data d_;
    fedosov_data dp_;
    form_series C_;
    element h_;
};

inline equivalence equivalence_A_h(const fedosov_data &d, const fedosov_data &dp, const form_series &C)
{
    return equivalence(d, dp, C);
}

// A(f * g) = A f *' A g and A^{-1} A f = f on samples.
inline report equivalence_check(const equivalence &A, int N, const std::vector<chart_expr> &samples)
{
    report rep;
    rep.title = "equivalence";
    const auto &d = A.source();
    const auto &dp = A.target();
    int n = d.dimension();
    std::string fail;
    std::string inv;
    for (const auto &f : samples) {
        nu_series af = A.apply(f, N);
        if (!(A.inverse(af, N) == nu_series::constant(f, N)) && inv.empty()) {
            inv = "f = " + f.to_string(n);
        }
        for (const auto &g : samples) {
            nu_series lhs = A.apply(star(d, f, g, N), N);
            nu_series rhs = star(dp, af, A.apply(g, N), N);
            if (!(lhs == rhs) && fail.empty()) {
                fail = "f = " + f.to_string(n) + ", g = " + g.to_string(n) + "; " + detail::mismatch(lhs, rhs, n);
            }
        }
    }
    rep.add("A(f * g) = A f *' A g", fail.empty(), evidence::behavioral, fail);
    rep.add("A^{-1} A = id", inv.empty(), evidence::behavioral, inv);
    return rep;
}

// Whether A acts as the identity on the samples up to order N.
inline bool is_identity(const equivalence &A, int N, const std::vector<chart_expr> &samples)
{
    for (const auto &f : samples) {
        if (!(A.apply(f, N) == nu_series::constant(f, N))) {
            return false;
        }
    }
    return true;
}

struct transported {
    fedosov_data data;
    report checks;
};

// Wick <-> anti-Wick data with P applied to Omega and s; checks r' = P r and
// f *' g = P((P g) * (P f)).
inline transported parity_transport(const fedosov_data &d, int N, const std::vector<chart_expr> &samples)
{
    if (d.kind() == product_kind::weyl) {
        throw validation_error("parity transport maps between wick and antiwick data");
    }
    product_kind mirror = d.kind() == product_kind::wick ? product_kind::antiwick : product_kind::wick;
    fedosov_data out(d.geo(), mirror, detail::parity(d.omega()), weyl::parity_P(d.s()), d.K());
    report rep;
    rep.title = "parity";
    element pr = weyl::parity_P(d.r());
    rep.add("r' = P r", out.r() == pr, evidence::exact, detail::first_term(out.r() - pr));
    int n = d.dimension();
    std::string fail;
    for (const auto &f : samples) {
        for (const auto &g : samples) {
            nu_series lhs = star(out, f, g, N);
            nu_series rhs = parity_P(star(d, g, f, N));
            if (!(lhs == rhs) && fail.empty()) {
                fail = "f = " + f.to_string(n) + ", g = " + g.to_string(n) + "; " + detail::mismatch(lhs, rhs, n);
            }
        }
    }
    rep.add("f *' g = P((P g) * (P f))", fail.empty(), evidence::behavioral, fail);
    return {std::move(out), std::move(rep)};
}

// Weyl-kind data equivalent to Wick (resp. anti-Wick) data through the
// fibrewise equivalence S: Omega' = Omega +- i nu rho, s' = delta^{-1} S^{-+1} r.
// Checks r' = S^{-+1} r and that f -> sigma(S^{+-1} tau'(f)) intertwines the products.
inline transported fibrewise_transport(const fedosov_data &d, int N, const std::vector<chart_expr> &samples)
{
    if (d.kind() == product_kind::weyl) {
        throw validation_error("fibrewise transport starts from wick or antiwick data");
    }
    int n = d.dimension();
    bool wick = d.kind() == product_kind::wick;
    auto to_weyl = wick ? weyl::direction::inverse : weyl::direction::forward;
    auto back = wick ? weyl::direction::forward : weyl::direction::inverse;
    const form &rho = d.geo()->curv.ricci_form;
    form_series shift{{1, rho.scaled(chart_expr(gaussian_rational(0, wick ? 1 : -1)))}};
    form_series omega = chart::add(d.omega(), shift);
    element r_weyl = weyl::fib_equiv_S(d.r(), d.ch(), to_weyl);
    element s = weyl::delta_inv(r_weyl).truncated(d.K());
    fedosov_data out(d.geo(), product_kind::weyl, omega, s.with_trunc(weyl::exact), d.K());
    report rep;
    rep.title = "fibrewise";
    rep.add("r' = S r", out.r() == r_weyl, evidence::exact, detail::first_term(out.r() - r_weyl));
    auto map = [&](const chart_expr &f, int order) {
        element t = weyl::fib_equiv_S(tau(out, f, 2 * order), out.ch(), back);
        nu_series v = detail::sigma_series(t, order);
        for (int r = 0; r <= order; ++r) {
            v[r] = out.ch().reduce(v[r]);
        }
        return v;
    };
    auto map_series = [&](const nu_series &f) {
        nu_series o(N);
        for (int i = 0; i <= N; ++i) {
            if (f[i].is_zero()) {
                continue;
            }
            nu_series a = map(f[i], N - i);
            for (int r = 0; r <= a.order(); ++r) {
                o[i + r] += a[r];
            }
        }
        for (int r = 0; r <= N; ++r) {
            o[r] = out.ch().reduce(o[r]);
        }
        return o;
    };
    std::string fail;
    for (const auto &f : samples) {
        for (const auto &g : samples) {
            nu_series lhs = map_series(star(out, f, g, N));
            nu_series rhs = star(d, map(f, N), map(g, N), N);
            if (!(lhs == rhs) && fail.empty()) {
                fail = "f = " + f.to_string(n) + ", g = " + g.to_string(n) + "; " + detail::mismatch(lhs, rhs, n);
            }
        }
    }
    rep.add("S(f *' g) = S f * S g", fail.empty(), evidence::behavioral, fail);
    return {std::move(out), std::move(rep)};
}

} // namespace kahler::fedosov
