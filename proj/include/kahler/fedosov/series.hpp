#pragma once

#include <string>
#include <vector>

#include "../expr.hpp"

namespace kahler::fedosov {

using expr::chart_expr;
using expr::gaussian_rational;

// Truncated formal series sum_{i<=N} nu^i c_i; trailing zeros are kept.
class nu_series {
public:
    nu_series() = default;
    explicit nu_series(int order) : c_(static_cast<std::size_t>(order + 1)) {}
    nu_series(std::vector<chart_expr> coeffs) : c_(std::move(coeffs)) {}

    static nu_series constant(const chart_expr &f, int order)
    {
        nu_series s(order);
        s.c_[0] = f;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const chart_expr &operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    chart_expr &operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<chart_expr> &coefficients() const { return c_; }

    bool is_zero() const
    {
        for (const auto &c : c_) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }

    nu_series truncated(int order) const
    {
        nu_series r(order);
        for (int i = 0; i <= order && i <= this->order(); ++i) {
            r[i] = c_[static_cast<std::size_t>(i)];
        }
        return r;
    }

    // Lowest order at which a and b differ, or -1.
    friend int first_difference(const nu_series &a, const nu_series &b)
    {
        int top = std::min(a.order(), b.order());
        for (int i = 0; i <= top; ++i) {
            if (!(a[i] == b[i])) {
                return i;
            }
        }
        return -1;
    }

    // Equality on the common range of orders.
    friend bool operator==(const nu_series &a, const nu_series &b) { return first_difference(a, b) < 0; }

    friend nu_series operator+(const nu_series &a, const nu_series &b)
    {
        nu_series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            r[i] = a[i] + b[i];
        }
        return r;
    }
    friend nu_series operator-(const nu_series &a, const nu_series &b)
    {
        nu_series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            r[i] = a[i] - b[i];
        }
        return r;
    }

    nu_series scaled(const chart_expr &f) const
    {
        nu_series r(order());
        for (int i = 0; i <= order(); ++i) {
            r[i] = c_[static_cast<std::size_t>(i)] * f;
        }
        return r;
    }

    // nu^p * this, keeping the order.
    nu_series shifted(int p) const
    {
        nu_series r(order());
        for (int i = p; i <= order(); ++i) {
            r[i] = c_[static_cast<std::size_t>(i - p)];
        }
        return r;
    }

    std::string to_string(int n) const
    {
        std::string s;
        for (int i = 0; i <= order(); ++i) {
            if (i) {
                s += "\n";
            }
            s += "order" + std::to_string(i) + ": " + c_[static_cast<std::size_t>(i)].to_string(n);
        }
        return s;
    }

private:
    std::vector<chart_expr> c_;
};

// P: nu -> -nu.
inline nu_series parity_P(const nu_series &a)
{
    nu_series r = a;
    for (int i = 1; i <= r.order(); i += 2) {
        r[i] = -r[i];
    }
    return r;
}

// C: complex conjugation with nu -> -nu.
inline nu_series conj_C(const nu_series &a)
{
    nu_series r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        chart_expr c = a[i].conjugate();
        r[i] = i % 2 ? -c : c;
    }
    return r;
}

} // namespace kahler::fedosov
