#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "../chart/forms.hpp"

namespace kahler::weyl {

using chart::form;
using chart::form_mask;
using chart::wedge_sign;
using expr::chart_expr;
using expr::gaussian_rational;

enum class product_kind { weyl, wick, antiwick };

inline std::string to_string(product_kind k)
{
    switch (k) {
    case product_kind::weyl:
        return "weyl";
    case product_kind::wick:
        return "wick";
    case product_kind::antiwick:
        return "antiwick";
    }
    return "?";
}

// Truncation value of an element known exactly in every degree.
inline constexpr int exact = 1 << 20;

// Index of a homogeneous generator nu^nu * (sym monomial) (x) (asym wedge).
// Symmetric counts are packed one byte per symbol slot, slot 0 most significant.
struct key {
    std::uint64_t sym = 0;
    std::uint8_t nu = 0;
    form_mask asym = 0;

    static constexpr int shift(int s) { return 8 * (7 - s); }

    int count(int s) const { return static_cast<int>((sym >> shift(s)) & 0xffu); }

    key with_count(int s, int c) const
    {
        if (c < 0 || c > 255) {
            throw contract_violation("symmetric degree out of range");
        }
        key k = *this;
        k.sym &= ~(std::uint64_t{0xff} << shift(s));
        k.sym |= std::uint64_t(c) << shift(s);
        return k;
    }

    key add_count(int s, int d) const { return with_count(s, count(s) + d); }

    int deg_s() const
    {
        int d = 0;
        for (int s = 0; s < 8; ++s) {
            d += count(s);
        }
        return d;
    }
    int deg_a() const { return std::popcount(static_cast<unsigned>(asym)); }
    int total_degree() const { return deg_s() + 2 * nu; }

    friend bool operator==(const key &, const key &) = default;
    friend std::strong_ordering operator<=>(const key &a, const key &b)
    {
        if (auto c = a.nu <=> b.nu; c != 0) {
            return c;
        }
        if (auto c = a.sym <=> b.sym; c != 0) {
            return c;
        }
        return a.asym <=> b.asym;
    }
};

// Truncated element of the formal Weyl algebra tensored with forms.
// Every stored term has total degree <= trunc(); the element is known exactly
// up to that degree.
class element {
public:
    using map_type = std::map<key, chart_expr>;

    element() = default;
    explicit element(int n, int trunc = exact) : n_(n), trunc_(trunc) {}

    static element scalar(int n, const chart_expr &f)
    {
        element e(n);
        e.add(key{}, f);
        return e;
    }

    // dx^slot (x) 1
    static element symbol(int n, int slot, const chart_expr &c = chart_expr(1))
    {
        element e(n);
        e.add(key{}.with_count(slot, 1), c);
        return e;
    }

    // 1 (x) form
    static element from_form(const form &f, int nu_power = 0)
    {
        element e(f.dimension());
        for (const auto &[m, c] : f.terms()) {
            key k;
            k.nu = static_cast<std::uint8_t>(nu_power);
            k.asym = m;
            e.add(k, c);
        }
        return e;
    }

    int dimension() const { return n_; }
    int trunc() const { return trunc_; }
    const map_type &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const key &k, const chart_expr &c)
    {
        if (c.is_zero() || k.total_degree() > trunc_) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    chart_expr coefficient(const key &k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? chart_expr{} : it->second;
    }

    element truncated(int K) const
    {
        if (K >= trunc_) {
            return *this;
        }
        element r(n_, K);
        for (const auto &[k, c] : terms_) {
            if (k.total_degree() <= K) {
                r.terms_.emplace_hint(r.terms_.end(), k, c);
            }
        }
        return r;
    }

    // Lowest total degree present, or trunc()+1 when empty.
    int valuation() const
    {
        int v = trunc_ + 1;
        for (const auto &[k, c] : terms_) {
            v = std::min(v, k.total_degree());
        }
        return v;
    }

    // Lowest total degree among terms with deg_s >= 1, or trunc()+1.
    int deformable_valuation() const
    {
        int v = trunc_ + 1;
        for (const auto &[k, c] : terms_) {
            if (k.sym != 0) {
                v = std::min(v, k.total_degree());
            }
        }
        return v;
    }

    int max_degree() const
    {
        int d = -1;
        for (const auto &[k, c] : terms_) {
            d = std::max(d, k.total_degree());
        }
        return d;
    }

    // Part of total degree exactly d (truncation unchanged).
    element homogeneous(int d) const
    {
        element r(n_, trunc_);
        for (const auto &[k, c] : terms_) {
            if (k.total_degree() == d) {
                r.terms_.emplace_hint(r.terms_.end(), k, c);
            }
        }
        return r;
    }

    template <class Pred>
    element filtered(Pred pred) const
    {
        element r(n_, trunc_);
        for (const auto &[k, c] : terms_) {
            if (pred(k)) {
                r.terms_.emplace_hint(r.terms_.end(), k, c);
            }
        }
        return r;
    }

    element operator-() const
    {
        element r = *this;
        for (auto &[k, c] : r.terms_) {
            c = -c;
        }
        return r;
    }

    element &operator+=(const element &b)
    {
        merge_dimension(b);
        if (b.trunc_ < trunc_) {
            *this = truncated(b.trunc_);
        }
        for (const auto &[k, c] : b.terms_) {
            add(k, c);
        }
        return *this;
    }
    element &operator-=(const element &b) { return *this += -b; }
    friend element operator+(element a, const element &b) { return a += b; }
    friend element operator-(element a, const element &b) { return a -= b; }

    element scaled(const chart_expr &f) const
    {
        element r(n_, trunc_);
        if (f.is_zero()) {
            return r;
        }
        for (const auto &[k, c] : terms_) {
            r.add(k, c * f);
        }
        return r;
    }
    element scaled(const gaussian_rational &g) const
    {
        element r(n_, trunc_);
        if (g.is_zero()) {
            return r;
        }
        for (const auto &[k, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), k, c.scaled(g));
        }
        return r;
    }

    // nu^p * this; truncation rises by 2p.
    element times_nu(int p = 1) const
    {
        element r(n_, trunc_ >= exact ? exact : trunc_ + 2 * p);
        for (const auto &[k, c] : terms_) {
            key q = k;
            q.nu = static_cast<std::uint8_t>(k.nu + p);
            r.terms_.emplace_hint(r.terms_.end(), q, c);
        }
        return r;
    }

    // Equality on the common range of exactness.
    friend bool operator==(const element &a, const element &b) { return (a - b).is_zero(); }

    element with_trunc(int K) const
    {
        element r = truncated(K);
        r.trunc_ = std::min(K, exact);
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto &[k, c] : terms_) {
            if (!s.empty()) {
                s += "\n";
            }
            s += "nu^" + std::to_string(k.nu) + " * (" + c.to_string(n_) + ")";
            std::string sym;
            for (int t = 0; t < 2 * n_; ++t) {
                for (int j = 0; j < k.count(t); ++j) {
                    sym += (sym.empty() ? "" : " v ") + chart::symbol_name(n_, t);
                }
            }
            if (!sym.empty()) {
                s += " * " + sym;
            }
            std::string asym;
            for (int t = 0; t < 2 * n_; ++t) {
                if (k.asym & (1u << t)) {
                    asym += (asym.empty() ? "" : " ^ ") + chart::symbol_name(n_, t);
                }
            }
            if (!asym.empty()) {
                s += " # " + asym;
            }
        }
        return s;
    }

    void merge_dimension(const element &b)
    {
        if (n_ == 0) {
            n_ = b.n_;
        } else if (b.n_ != 0 && b.n_ != n_) {
            throw validation_error("dimension mismatch between Weyl elements");
        }
    }

private:
    int n_ = 0;
    int trunc_ = exact;
    map_type terms_;
};

inline bool is_holomorphic_slot(int n, int s) { return s < n; }

} // namespace kahler::weyl
