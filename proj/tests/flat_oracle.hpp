#pragma once

#include <array>
#include <map>
#include <vector>

#include <gmpxx.h>

#include <kahler/expr.hpp>

// Reference Wick and anti-Wick products on C^n with a constant metric,
// computed with a private polynomial type:
//   f * g = sum_r (c nu)^r / r! sum g^{k1 l1}..g^{kr lr} (d_K f)(d_Lbar g)
// with c = -2i (Wick, holomorphic derivatives on f) or c = 2i (anti-Wick,
// antiholomorphic derivatives on f).
namespace oracle {

struct cplx {
    mpq_class re = 0;
    mpq_class im = 0;

    bool zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    friend cplx operator+(const cplx &a, const cplx &b) { return {a.re + b.re, a.im + b.im}; }
    friend cplx operator*(const cplx &a, const cplx &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
};

using exps = std::array<unsigned, 8>;

struct poly {
    std::map<exps, cplx> terms;

    void add(const exps &e, const cplx &c)
    {
        cplx &slot = terms[e];
        slot = slot + c;
        if (slot.zero()) {
            terms.erase(e);
        }
    }

    poly derivative(int slot) const
    {
        poly out;
        for (const auto &[e, c] : terms) {
            if (e[slot] == 0) {
                continue;
            }
            exps f = e;
            --f[slot];
            out.add(f, c * cplx{mpq_class(e[slot]), 0});
        }
        return out;
    }

    friend poly operator*(const poly &a, const poly &b)
    {
        poly out;
        for (const auto &[ea, ca] : a.terms) {
            for (const auto &[eb, cb] : b.terms) {
                exps e{};
                for (int s = 0; s < 8; ++s) {
                    e[s] = ea[s] + eb[s];
                }
                out.add(e, ca * cb);
            }
        }
        return out;
    }

    poly scaled(const cplx &c) const
    {
        poly out;
        for (const auto &[e, x] : terms) {
            out.add(e, x * c);
        }
        return out;
    }
};

inline poly monomial(const exps &e) { return poly{{{e, cplx{1, 0}}}}; }

inline kahler::expr::chart_expr to_expr(const poly &p, int n)
{
    kahler::expr::polynomial out;
    for (const auto &[e, c] : p.terms) {
        kahler::expr::monomial m;
        for (int s = 0; s < 2 * n; ++s) {
            m = m.with(s, e[s]);
        }
        out = out + kahler::expr::polynomial::from_term(n, m, kahler::expr::gaussian_rational(c.re, c.im));
    }
    return kahler::expr::chart_expr(out);
}

// Coefficients C_0..C_N of the product of two monomials; ginv[k][l] = g^{k lbar}.
inline std::vector<poly> product(int n, const std::vector<std::vector<cplx>> &ginv, const exps &f, const exps &g,
                                 int N, bool wick)
{
    std::vector<std::pair<poly, poly>> pairs{{monomial(f), monomial(g)}};
    std::vector<poly> out;
    cplx step{0, wick ? -2 : 2};
    cplx power{1, 0};
    mpz_class factorial = 1;
    for (int r = 0; r <= N; ++r) {
        if (r > 0) {
            std::vector<std::pair<poly, poly>> next;
            for (const auto &[a, b] : pairs) {
                for (int k = 0; k < n; ++k) {
                    for (int l = 0; l < n; ++l) {
                        if (ginv[k][l].zero()) {
                            continue;
                        }
                        poly da = a.derivative(wick ? k : n + l);
                        poly db = b.derivative(wick ? n + l : k);
                        if (da.terms.empty() || db.terms.empty()) {
                            continue;
                        }
                        next.emplace_back(da.scaled(ginv[k][l]), db);
                    }
                }
            }
            pairs = std::move(next);
            power = power * step;
            factorial *= r;
        }
        poly sum;
        for (const auto &[a, b] : pairs) {
            for (const auto &[e, c] : (a * b).terms) {
                sum.add(e, c);
            }
        }
        out.push_back(sum.scaled(power * cplx{mpq_class(1) / mpq_class(factorial), 0}));
    }
    return out;
}

} // namespace oracle
