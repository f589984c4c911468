#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "../chart.hpp"
#include "../weyl.hpp"
#include "fixed_point.hpp"
#include "series.hpp"

namespace kahler::fedosov {

using chart::form;
using chart::form_mask;
using chart::form_series;
using expr::monomial;
using expr::polynomial;
using weyl::product_kind;

// Chart together with its Levi-Civita connection and curvature.
struct geometry {
    chart::chart ch;
    chart::connection_data conn;
    chart::curvature_data curv;

    explicit geometry(chart::chart c)
        : ch(std::move(c)), conn(chart::christoffel(ch)), curv(chart::curvature(ch, conn))
    {
    }
};

using geometry_ptr = std::shared_ptr<const geometry>;

inline geometry_ptr make_geometry(const chart::chart &c) { return std::make_shared<const geometry>(c); }

// sum_i nu^i (1 (x) Omega_i)
inline element omega_element(int n, const form_series &omega)
{
    element e(n);
    for (const auto &[p, f] : omega) {
        e += element::from_form(f, p);
    }
    return e;
}

// sum_i nu^i (B_i (x) 1): one-form coefficients placed on symmetric symbols.
inline element one_form_symmetric(int n, const form_series &b)
{
    element e(n);
    for (const auto &[p, f] : b) {
        for (const auto &[m, c] : f.terms()) {
            weyl::key k;
            k.nu = static_cast<std::uint8_t>(p);
            k = k.with_count(std::countr_zero(static_cast<unsigned>(m)), 1);
            e.add(k, c);
        }
    }
    return e;
}

namespace detail {

// Memo tables filled lazily; guarded so concurrent readers see consistent entries.
struct caches {
    std::mutex m;
    // jets[alpha][d] = degree-d part of T_alpha
    std::map<monomial, std::vector<element>> jets;
    int jet_degree = -1;
    // star tables keyed by order N: alpha -> [(beta, C_0..C_N)]
    std::map<int, std::map<monomial, std::vector<std::pair<monomial, std::vector<chart_expr>>>>> tables;
    std::map<std::string, element> tau;
};

} // namespace detail

// Input data (kind, Omega, s, K) of one Fedosov construction together with
// the solution r of the defining equations.
class fedosov_data {
public:
    fedosov_data(geometry_ptr geo, product_kind kind, form_series omega, element s, int K)
        : geo_(std::move(geo)), kind_(kind), omega_(std::move(omega)), s_(std::move(s)), K_(K),
          cache_(std::make_shared<detail::caches>())
    {
        int n = geo_->ch.dimension();
        if (K_ < 2) {
            throw validation_error("truncation must be at least 2");
        }
        if (s_.dimension() == 0) {
            s_ = element(n);
        }
        if (s_.dimension() != n) {
            throw validation_error("normalization element has the wrong dimension");
        }
        for (const auto &[k, c] : s_.terms()) {
            if (k.asym != 0 || k.total_degree() < 3) {
                throw validation_error("normalization element must have antisymmetric degree 0 and total degree >= 3");
            }
        }
        for (const auto &[p, f] : omega_) {
            if (p < 1) {
                throw validation_error("Omega series must start at nu^1");
            }
            for (const auto &[m, c] : f.terms()) {
                if (std::popcount(static_cast<unsigned>(m)) != 2) {
                    throw validation_error("Omega entries must be two-forms");
                }
            }
            if (!f.d().is_zero()) {
                throw validation_error("Omega entry at nu^" + std::to_string(p) + " is not closed");
            }
        }
        r_ = compute_r();
    }

    // Data for the chart's own Omega series and s = 0.
    static fedosov_data from_chart(const chart::chart &c, product_kind kind, int K)
    {
        return fedosov_data(make_geometry(c), kind, c.omega_series(), element(c.dimension()), K);
    }

    const geometry_ptr &geo() const { return geo_; }
    const chart::chart &ch() const { return geo_->ch; }
    const chart::connection_data &conn() const { return geo_->conn; }
    const element &curvature_element() const { return geo_->curv.curvature_element; }
    int dimension() const { return geo_->ch.dimension(); }
    product_kind kind() const { return kind_; }
    const form_series &omega() const { return omega_; }
    const element &s() const { return s_; }
    int K() const { return K_; }
    const element &r() const { return r_; }
    detail::caches &cache() const { return *cache_; }

    // x -> delta s + delta^{-1}(nabla x - (1/nu) x o x + R + 1 (x) Omega)
    element r_map(const element &x) const
    {
        weyl::product_options o;
        o.deformed_only = true;
        element sq = weyl::nu_divide(weyl::circ(x, x, kind_, ch(), o));
        element rhs = weyl::nabla(x, conn()) - sq + curvature_element() + omega_element(dimension(), omega_);
        return weyl::delta(s_) + weyl::delta_inv(rhs);
    }

    // Same solver from an arbitrary seed.
    element solve_r_from(const element &seed) const
    {
        return fixed_point([this](const element &x) { return r_map(x); }, seed, K_);
    }

    // D = -delta + nabla - (1/nu) ad(r)
    element D(const element &a) const
    {
        return -weyl::delta(a) + weyl::nabla(a, conn()) - weyl::ad_over_nu(r_, a, kind_, ch());
    }

private:
    element compute_r() const
    {
        int n = dimension();
        auto map = [this](const element &x) { return r_map(x); };
        element r = fixed_point(map, staged_fixed_point(map, n, 1, K_), K_);
        verify_r(r);
        return r;
    }

    void verify_r(const element &r) const
    {
        weyl::product_options o;
        o.deformed_only = true;
        element rhs = weyl::nabla(r, conn()) - weyl::nu_divide(weyl::circ(r, r, kind_, ch(), o)) +
                      curvature_element() + omega_element(dimension(), omega_);
        if (!(weyl::delta(r).truncated(K_ - 1) == rhs.truncated(K_ - 1))) {
            throw contract_violation("r violates its defining equation");
        }
        if (!(weyl::delta_inv(r).truncated(K_) == s_.truncated(K_))) {
            throw contract_violation("r violates its normalization");
        }
        for (const auto &[k, c] : r.terms()) {
            if (k.deg_a() != 1 || k.total_degree() < 2) {
                throw contract_violation("r has a term outside antisymmetric degree 1 or below total degree 2");
            }
        }
    }

    geometry_ptr geo_;
    product_kind kind_;
    form_series omega_;
    element s_;
    int K_;
    element r_;
    std::shared_ptr<detail::caches> cache_;
};

inline element fedosov_D(const fedosov_data &d, const element &a) { return d.D(a); }

} // namespace kahler::fedosov
