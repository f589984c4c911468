#pragma once

#include <array>
#include <vector>

#include "../chart/chart.hpp"
#include "element.hpp"

namespace kahler::weyl {

// One contraction channel c * i_s(left) (x) i_s(right) of the fibrewise product.
struct pairing {
    int left;
    int right;
    chart_expr c;
};

// Channels of nu*B for each product kind:
//   wick:      (2/i) g^{k lbar} i_s(Z_k) (x) i_s(Zbar_l)
//   antiwick: -(2/i) g^{k lbar} i_s(Zbar_l) (x) i_s(Z_k)
//   weyl:      (1/i) g^{k lbar} [i_s(Z_k) (x) i_s(Zbar_l) - i_s(Zbar_l) (x) i_s(Z_k)]
inline std::vector<pairing> pairings(const chart::chart &ch, product_kind kind)
{
    int n = ch.dimension();
    std::vector<pairing> out;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const chart_expr &h = ch.ginv(k, l);
            if (h.is_zero()) {
                continue;
            }
            switch (kind) {
            case product_kind::wick:
                out.push_back({k, n + l, h.scaled(gaussian_rational(0, -2))});
                break;
            case product_kind::antiwick:
                out.push_back({n + l, k, h.scaled(gaussian_rational(0, 2))});
                break;
            case product_kind::weyl:
                out.push_back({k, n + l, h.scaled(gaussian_rational(0, -1))});
                out.push_back({n + l, k, h.scaled(gaussian_rational(0, 1))});
                break;
            }
        }
    }
    return out;
}

struct product_options {
    // Highest total degree to compute.
    int cap = exact;
    // Keep only the part of symmetric and antisymmetric degree zero.
    bool sigma_only = false;
    // Drop the undeformed (no contraction) part.
    bool deformed_only = false;
};

namespace detail {

inline mpz_class falling(int a, int u)
{
    mpz_class r = 1;
    for (int j = 0; j < u; ++j) {
        r *= a - j;
    }
    return r;
}

class contraction_engine {
public:
    contraction_engine(std::vector<pairing> channels, int n) : ch_(std::move(channels)), n_(n)
    {
        powers_.resize(ch_.size());
        for (std::size_t p = 0; p < ch_.size(); ++p) {
            powers_[p].push_back(chart_expr(1));
        }
    }

    // c_p^m / m!
    const chart_expr &power(std::size_t p, int m)
    {
        auto &v = powers_[p];
        while (static_cast<int>(v.size()) <= m) {
            int j = static_cast<int>(v.size());
            v.push_back((v.back() * ch_[p].c).scaled(gaussian_rational(mpq_class(1, j))));
        }
        return v[m];
    }

    template <class Emit>
    void run(const key &ka, const key &kb, const product_options &o, Emit &&emit)
    {
        std::array<int, 8> ra{};
        std::array<int, 8> rb{};
        for (int s = 0; s < 2 * n_; ++s) {
            ra[s] = ka.count(s);
            rb[s] = kb.count(s);
        }
        ka_ = ka;
        kb_ = kb;
        m_.assign(ch_.size(), 0);
        recurse(0, ra, rb, 0, o, emit);
    }

private:
    template <class Emit>
    void recurse(std::size_t p, std::array<int, 8> &ra, std::array<int, 8> &rb, int total,
                 const product_options &o, Emit &emit)
    {
        if (p == ch_.size()) {
            if (o.deformed_only && total == 0) {
                return;
            }
            key out;
            out.nu = static_cast<std::uint8_t>(ka_.nu + kb_.nu + total);
            out.asym = static_cast<form_mask>(ka_.asym | kb_.asym);
            mpz_class factor = 1;
            for (int s = 0; s < 2 * n_; ++s) {
                if (o.sigma_only && (ra[s] != 0 || rb[s] != 0)) {
                    return;
                }
                factor *= falling(ka_.count(s), ka_.count(s) - ra[s]);
                factor *= falling(kb_.count(s), kb_.count(s) - rb[s]);
                out = out.with_count(s, ra[s] + rb[s]);
            }
            chart_expr coeff{gaussian_rational(mpq_class(factor))};
            for (std::size_t q = 0; q < ch_.size(); ++q) {
                if (m_[q] > 0) {
                    coeff = coeff * power(q, m_[q]);
                }
            }
            emit(out, coeff);
            return;
        }
        const pairing &c = ch_[p];
        int top = std::min(ra[c.left], rb[c.right]);
        for (int m = 0; m <= top; ++m) {
            m_[p] = m;
            ra[c.left] -= m;
            rb[c.right] -= m;
            recurse(p + 1, ra, rb, total + m, o, emit);
            ra[c.left] += m;
            rb[c.right] += m;
        }
        m_[p] = 0;
    }

    std::vector<pairing> ch_;
    int n_;
    std::vector<std::vector<chart_expr>> powers_;
    key ka_;
    key kb_;
    std::vector<int> m_;
};

inline int product_trunc(const element &a, const element &b, const product_options &o)
{
    long va = o.deformed_only ? a.deformable_valuation() : a.valuation();
    long vb = o.deformed_only ? b.deformable_valuation() : b.valuation();
    long t = std::min<long>(static_cast<long>(a.trunc()) + vb, static_cast<long>(b.trunc()) + va);
    t = std::min<long>(t, o.cap);
    return static_cast<int>(std::min<long>(t, exact));
}

} // namespace detail

// Undeformed product: v on symmetric parts, ^ on antisymmetric parts.
inline element mu(const element &a, const element &b, int cap = exact)
{
    product_options o;
    o.cap = cap;
    element r(a.dimension() ? a.dimension() : b.dimension(), detail::product_trunc(a, b, o));
    r.merge_dimension(b);
    for (const auto &[ka, ca] : a.terms()) {
        for (const auto &[kb, cb] : b.terms()) {
            if (ka.total_degree() + kb.total_degree() > r.trunc() || (ka.asym & kb.asym)) {
                continue;
            }
            key out;
            out.nu = static_cast<std::uint8_t>(ka.nu + kb.nu);
            out.asym = static_cast<form_mask>(ka.asym | kb.asym);
            for (int s = 0; s < 8; ++s) {
                out = out.with_count(s, ka.count(s) + kb.count(s));
            }
            chart_expr c = ca * cb;
            r.add(out, wedge_sign(ka.asym, kb.asym) < 0 ? -c : c);
        }
    }
    return r;
}

// Fibrewise deformed product mu o exp(nu B).
inline element circ(const element &a, const element &b, product_kind kind, const chart::chart &ch,
                    const product_options &o = {})
{
    int n = ch.dimension();
    if ((a.dimension() != 0 && a.dimension() != n) || (b.dimension() != 0 && b.dimension() != n)) {
        throw validation_error("dimension mismatch between Weyl elements");
    }
    element r(n, detail::product_trunc(a, b, o));
    detail::contraction_engine eng(pairings(ch, kind), n);
    for (const auto &[ka, ca] : a.terms()) {
        if (o.deformed_only && ka.sym == 0) {
            continue;
        }
        if (o.sigma_only && ka.asym != 0) {
            continue;
        }
        for (const auto &[kb, cb] : b.terms()) {
            if (ka.total_degree() + kb.total_degree() > r.trunc() || (ka.asym & kb.asym)) {
                continue;
            }
            if (o.deformed_only && kb.sym == 0) {
                continue;
            }
            if (o.sigma_only && (kb.asym != 0 || ka.deg_s() != kb.deg_s())) {
                continue;
            }
            chart_expr base;
            bool have_base = false;
            int sign = wedge_sign(ka.asym, kb.asym);
            eng.run(ka, kb, o, [&](const key &out, const chart_expr &coeff) {
                if (!have_base) {
                    base = ca * cb;
                    if (sign < 0) {
                        base = -base;
                    }
                    have_base = true;
                }
                r.add(out, coeff.is_constant() ? base.scaled(coeff.constant_value()) : base * coeff);
            });
        }
    }
    return r;
}

// Grade involution: (-1)^{deg_a}.
inline element grade_involution(const element &a)
{
    element out(a.dimension(), a.trunc());
    for (const auto &[k, c] : a.terms()) {
        out.add(k, k.deg_a() % 2 ? -c : c);
    }
    return out;
}

inline element odd_part(const element &a)
{
    return a.filtered([](const key &k) { return k.deg_a() % 2 == 1; });
}
inline element even_part(const element &a)
{
    return a.filtered([](const key &k) { return k.deg_a() % 2 == 0; });
}

// Graded commutator ad(a)b = a o b - (-1)^{|a||b|} b o a.
inline element ad(const element &a, const element &b, product_kind kind, const chart::chart &ch,
                  product_options o = {})
{
    // The undeformed parts cancel by graded commutativity of mu.
    o.deformed_only = true;
    element lhs = circ(a, b, kind, ch, o);
    element be = even_part(b);
    element bo = odd_part(b);
    element rhs = circ(be, a, kind, ch, o);
    if (!bo.is_zero()) {
        rhs += circ(bo, grade_involution(a), kind, ch, o);
    }
    return lhs - rhs;
}

// nu^{-1} * a; every term must carry at least one power of nu.
inline element nu_divide(const element &a)
{
    element r(a.dimension(), a.trunc() >= exact ? exact : a.trunc() - 2);
    for (const auto &[k, c] : a.terms()) {
        if (k.nu == 0) {
            throw contract_violation("division by nu of an element with a nu^0 part");
        }
        key q = k;
        q.nu = static_cast<std::uint8_t>(k.nu - 1);
        r.add(q, c);
    }
    return r;
}

// (1/nu) ad(a) b, computed up to total degree cap.
inline element ad_over_nu(const element &a, const element &b, product_kind kind, const chart::chart &ch,
                          int cap = exact)
{
    product_options o;
    o.cap = cap >= exact ? exact : cap + 2;
    return nu_divide(ad(a, b, kind, ch, o));
}

} // namespace kahler::weyl
