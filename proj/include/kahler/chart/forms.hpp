#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>

#include "../expr.hpp"

namespace kahler::chart {

using expr::chart_expr;
using expr::gaussian_rational;

// Bitmask over the 2n coordinate one-forms dz1..dzn, dzb1..dzbn (bit s for slot s),
// with the wedge factors in increasing slot order.
using form_mask = std::uint8_t;

inline int wedge_sign(form_mask a, form_mask b)
{
    // Sign of sorting the concatenation a ++ b into canonical order.
    int inversions = 0;
    for (int s = 0; s < 8; ++s) {
        if (b & (1u << s)) {
            inversions += std::popcount(static_cast<unsigned>(a >> (s + 1)));
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

inline std::string symbol_name(int n, int slot)
{
    return slot < n ? "dz" + std::to_string(slot + 1) : "dzb" + std::to_string(slot - n + 1);
}

// Differential form with rational coefficients on a chart of dimension n.
class form {
public:
    form() = default;
    explicit form(int n) : n_(n) {}

    int dimension() const { return n_; }
    const std::map<form_mask, chart_expr> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(form_mask m, const chart_expr &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    chart_expr coefficient(form_mask m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? chart_expr{} : it->second;
    }

    friend form operator+(form a, const form &b)
    {
        if (a.n_ == 0) {
            a.n_ = b.n_;
        }
        for (const auto &[m, c] : b.terms_) {
            a.add(m, c);
        }
        return a;
    }
    friend form operator-(const form &a, const form &b) { return a + b.scaled(chart_expr(-1)); }

    form scaled(const chart_expr &f) const
    {
        form r(n_);
        for (const auto &[m, c] : terms_) {
            r.add(m, c * f);
        }
        return r;
    }

    friend bool operator==(const form &a, const form &b) { return (a - b).is_zero(); }

    // Exterior derivative: d(c dx^I) = sum_s (d_s c) dx^s ^ dx^I.
    form d() const
    {
        form r(n_);
        for (const auto &[m, c] : terms_) {
            for (int s = 0; s < 2 * n_; ++s) {
                form_mask bit = static_cast<form_mask>(1u << s);
                if (m & bit) {
                    continue;
                }
                chart_expr dc = c.derivative(s);
                if (dc.is_zero()) {
                    continue;
                }
                r.add(static_cast<form_mask>(m | bit), dc.scaled(gaussian_rational(wedge_sign(bit, m))));
            }
        }
        return r;
    }

    // Complex conjugate form: conjugated coefficients, dz <-> dzb (reordered).
    form conjugate() const
    {
        form r(n_);
        for (const auto &[m, c] : terms_) {
            form_mask out = 0;
            int sign = 1;
            // Build the image in the original factor order, tracking the reordering sign.
            for (int s = 0; s < 2 * n_; ++s) {
                if (m & (1u << s)) {
                    int t = s < n_ ? s + n_ : s - n_;
                    form_mask bit = static_cast<form_mask>(1u << t);
                    sign *= wedge_sign(out, bit);
                    out |= bit;
                }
            }
            r.add(out, c.conjugate().scaled(gaussian_rational(sign)));
        }
        return r;
    }

    // Bidegree test: every term has exactly p holomorphic and q antiholomorphic factors.
    bool has_type(int p, int q) const
    {
        form_mask holo = static_cast<form_mask>((1u << n_) - 1);
        for (const auto &[m, c] : terms_) {
            if (std::popcount(static_cast<unsigned>(m & holo)) != p ||
                std::popcount(static_cast<unsigned>(m & ~holo)) != q) {
                return false;
            }
        }
        return true;
    }

    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        for (const auto &[m, c] : terms_) {
            if (!s.empty()) {
                s += " + ";
            }
            s += "(" + c.to_string(n_) + ")";
            for (int t = 0; t < 2 * n_; ++t) {
                if (m & (1u << t)) {
                    s += (m & ((1u << t) - 1)) ? "^" : " ";
                    s += symbol_name(n_, t);
                }
            }
        }
        return s;
    }

private:
    int n_ = 0;
    std::map<form_mask, chart_expr> terms_;
};

// Formal series sum_i nu^i form_i, keyed by nu power.
using form_series = std::map<int, form>;

inline form_series add(form_series a, const form_series &b, int sign = 1)
{
    for (const auto &[p, f] : b) {
        form g = sign > 0 ? f : f.scaled(chart_expr(-1));
        auto it = a.find(p);
        if (it == a.end()) {
            a.emplace(p, g);
        } else {
            it->second = it->second + g;
        }
    }
    std::erase_if(a, [](const auto &kv) { return kv.second.is_zero(); });
    return a;
}

inline bool series_equal(const form_series &a, const form_series &b)
{
    return add(a, b, -1).empty();
}

} // namespace kahler::chart
