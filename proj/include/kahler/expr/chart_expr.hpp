#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace kahler::expr {

// Rational function num / prod(p_k^e_k). Each denominator factor p_k is a
// non-constant polynomial scaled so that its lowest term has coefficient 1.
// There is no general gcd: cancellation happens only by trial division
// against the factors already present (and any factor base passed to reduce).
class chart_expr {
public:
    struct factor {
        polynomial p;
        int e;
    };

    chart_expr() = default;
    chart_expr(polynomial num) : num_(std::move(num)) {}
    chart_expr(gaussian_rational c) : num_(std::move(c)) {}
    chart_expr(long c) : num_(c) {}

    static chart_expr variable(int n, int slot) { return chart_expr(polynomial::variable(n, slot)); }
    static chart_expr imaginary_unit() { return chart_expr(gaussian_rational::i()); }

    const polynomial &numerator() const { return num_; }
    const std::vector<factor> &denominator_factors() const { return den_; }

    polynomial denominator() const
    {
        polynomial d(1);
        for (const auto &f : den_) {
            d = d * f.p.pow(static_cast<unsigned>(f.e));
        }
        return d;
    }

    int dimension() const
    {
        int n = num_.dimension();
        for (const auto &f : den_) {
            n = std::max(n, f.p.dimension());
        }
        return n;
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    gaussian_rational constant_value() const { return num_.constant_value(); }

    chart_expr operator-() const
    {
        chart_expr r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend chart_expr operator+(const chart_expr &a, const chart_expr &b) { return add(a, b, false); }
    friend chart_expr operator-(const chart_expr &a, const chart_expr &b) { return add(a, b, true); }

    friend chart_expr operator*(const chart_expr &a, const chart_expr &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        if (a.den_.empty() && b.den_.empty()) {
            return chart_expr(a.num_ * b.num_);
        }
        polynomial na = a.num_;
        polynomial nb = b.num_;
        std::vector<factor> da = a.den_;
        std::vector<factor> db = b.den_;
        cancel_against(na, db);
        cancel_against(nb, da);
        chart_expr r;
        r.num_ = na * nb;
        r.den_ = merge(da, db);
        return r;
    }

    friend chart_expr operator/(const chart_expr &a, const chart_expr &b) { return a * b.inverse(a.den_); }

    chart_expr &operator+=(const chart_expr &b) { return *this = *this + b; }
    chart_expr &operator-=(const chart_expr &b) { return *this = *this - b; }
    chart_expr &operator*=(const chart_expr &b) { return *this = *this * b; }
    chart_expr &operator/=(const chart_expr &b) { return *this = *this / b; }

    chart_expr scaled(const gaussian_rational &c) const
    {
        chart_expr r = *this;
        r.num_ = r.num_.scaled(c);
        if (r.num_.is_zero()) {
            r.den_.clear();
        }
        return r;
    }

    // 1 / *this; existing factors and `known` are used to split the new denominator.
    chart_expr inverse(const std::vector<factor> &known = {}) const
    {
        if (is_zero()) {
            throw domain_error("division by zero");
        }
        chart_expr r;
        r.num_ = denominator();
        std::vector<factor> base = den_;
        base.insert(base.end(), known.begin(), known.end());
        r.absorb(num_, 1, base);
        r.cancel();
        return r;
    }

    chart_expr pow(int k) const
    {
        if (k < 0) {
            return inverse().pow(-k);
        }
        chart_expr r;
        r.num_ = num_.pow(static_cast<unsigned>(k));
        if (r.num_.is_zero()) {
            return r;
        }
        for (const auto &f : den_) {
            r.den_.push_back({f.p, f.e * k});
        }
        if (k == 0) {
            r.den_.clear();
        }
        return r;
    }

    chart_expr derivative(int slot) const
    {
        polynomial dn = num_.derivative(slot);
        if (den_.empty()) {
            return chart_expr(dn);
        }
        // d(N / prod f^e) = (N' prod f - N sum e f' prod_{j!=i} f) / prod f^{e+1}
        // where the products run over factors that actually depend on the slot.
        std::vector<std::size_t> active;
        std::vector<polynomial> fprime(den_.size());
        for (std::size_t k = 0; k < den_.size(); ++k) {
            fprime[k] = den_[k].p.derivative(slot);
            if (!fprime[k].is_zero()) {
                active.push_back(k);
            }
        }
        if (active.empty()) {
            chart_expr r = *this;
            r.num_ = dn;
            if (r.num_.is_zero()) {
                r.den_.clear();
            }
            return r;
        }
        polynomial all(1);
        for (auto k : active) {
            all = all * den_[k].p;
        }
        polynomial numer = dn * all;
        for (auto k : active) {
            polynomial others(1);
            for (auto j : active) {
                if (j != k) {
                    others = others * den_[j].p;
                }
            }
            numer = numer - num_ * fprime[k].scaled(gaussian_rational(static_cast<long>(den_[k].e))) * others;
        }
        chart_expr r;
        r.num_ = std::move(numer);
        r.den_ = den_;
        for (auto k : active) {
            r.den_[k].e += 1;
        }
        r.cancel();
        return r;
    }

    chart_expr conjugate() const
    {
        chart_expr r;
        r.num_ = num_.conjugate();
        for (const auto &f : den_) {
            polynomial q = f.p.conjugate();
            gaussian_rational c = q.trailing().c;
            if (!c.is_one()) {
                q = q.scaled(gaussian_rational(1) / c);
                r.num_ = r.num_.scaled(gaussian_rational(1) / power(c, f.e));
            }
            r.den_ = merge(r.den_, {{std::move(q), f.e}});
        }
        return r;
    }

    // Splits denominator factors by the factor base and cancels common factors.
    chart_expr reduced(const std::vector<polynomial> &base) const
    {
        if (num_.is_zero()) {
            return chart_expr{};
        }
        std::vector<factor> known;
        for (const auto &b : base) {
            if (b.is_constant()) {
                throw validation_error("factor base entries must be non-constant");
            }
            known.push_back({normalized(b).second, 1});
        }
        chart_expr r;
        r.num_ = num_;
        for (const auto &f : den_) {
            r.absorb(f.p, f.e, known);
        }
        r.cancel();
        return r;
    }

    friend bool operator==(const chart_expr &a, const chart_expr &b)
    {
        if (a.den_.size() == b.den_.size()) {
            bool same = true;
            for (std::size_t k = 0; k < a.den_.size() && same; ++k) {
                same = a.den_[k].e == b.den_[k].e && a.den_[k].p == b.den_[k].p;
            }
            if (same) {
                return a.num_ == b.num_;
            }
        }
        if (a.is_zero() || b.is_zero()) {
            return a.is_zero() && b.is_zero();
        }
        auto l = lcm(a.den_, b.den_);
        return scale_to(a, l) == scale_to(b, l);
    }
    friend bool operator!=(const chart_expr &a, const chart_expr &b) { return !(a == b); }

    // Canonical structural order (not a value order); equal values in canonical
    // form compare equal when no further cancellation is possible.
    friend int compare(const chart_expr &a, const chart_expr &b)
    {
        if (a.den_.size() != b.den_.size()) {
            return a.den_.size() < b.den_.size() ? -1 : 1;
        }
        for (std::size_t k = 0; k < a.den_.size(); ++k) {
            if (a.den_[k].e != b.den_[k].e) {
                return a.den_[k].e < b.den_[k].e ? -1 : 1;
            }
            if (int c = compare(a.den_[k].p, b.den_[k].p); c != 0) {
                return c;
            }
        }
        return compare(a.num_, b.num_);
    }

    std::string to_string(int n = -1) const
    {
        int dim = n < 0 ? dimension() : n;
        if (den_.empty()) {
            return num_.to_string(dim);
        }
        return "(" + num_.to_string(dim) + ")/(" + denominator().to_string(dim) + ")";
    }

    // p = c * q with the lowest term of q having coefficient 1.
    static std::pair<gaussian_rational, polynomial> normalized(const polynomial &p)
    {
        gaussian_rational c = p.trailing().c;
        if (c.is_one()) {
            return {c, p};
        }
        return {c, p.scaled(gaussian_rational(1) / c)};
    }

private:
    static gaussian_rational power(const gaussian_rational &c, int e)
    {
        gaussian_rational r(1);
        for (int k = 0; k < e; ++k) {
            r *= c;
        }
        return r;
    }

    static std::vector<factor> merge(const std::vector<factor> &a, const std::vector<factor> &b)
    {
        std::vector<factor> r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].p, b[j].p);
            if (c < 0) {
                r.push_back(a[i++]);
            } else if (c > 0) {
                r.push_back(b[j++]);
            } else {
                r.push_back({a[i].p, a[i].e + b[j].e});
                ++i;
                ++j;
            }
        }
        return r;
    }

    static std::vector<factor> lcm(const std::vector<factor> &a, const std::vector<factor> &b)
    {
        std::vector<factor> r;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].p, b[j].p);
            if (c < 0) {
                r.push_back(a[i++]);
            } else if (c > 0) {
                r.push_back(b[j++]);
            } else {
                r.push_back({a[i].p, std::max(a[i].e, b[j].e)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    // Numerator of x over the common denominator l (which x's factors divide).
    static polynomial scale_to(const chart_expr &x, const std::vector<factor> &l)
    {
        polynomial n = x.num_;
        std::size_t i = 0;
        for (const auto &f : l) {
            int have = 0;
            if (i < x.den_.size() && compare(x.den_[i].p, f.p) == 0) {
                have = x.den_[i].e;
                ++i;
            }
            if (f.e > have) {
                n = n * f.p.pow(static_cast<unsigned>(f.e - have));
            }
        }
        return n;
    }

    static chart_expr add(const chart_expr &a, const chart_expr &b, bool subtract)
    {
        if (b.is_zero()) {
            return a;
        }
        if (a.is_zero()) {
            return subtract ? -b : b;
        }
        chart_expr r;
        bool same = a.den_.size() == b.den_.size();
        for (std::size_t k = 0; k < a.den_.size() && same; ++k) {
            same = a.den_[k].e == b.den_[k].e && a.den_[k].p == b.den_[k].p;
        }
        if (same) {
            r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
            r.den_ = a.den_;
        } else {
            r.den_ = lcm(a.den_, b.den_);
            polynomial x = scale_to(a, r.den_);
            polynomial y = scale_to(b, r.den_);
            r.num_ = subtract ? x - y : x + y;
        }
        r.cancel();
        return r;
    }

    // Divides n by factors of d while exact, lowering their exponents.
    static void cancel_against(polynomial &n, std::vector<factor> &d)
    {
        for (auto &f : d) {
            while (f.e > 0) {
                auto q = n.divide_exact(f.p);
                if (!q) {
                    break;
                }
                n = std::move(*q);
                --f.e;
            }
        }
        std::erase_if(d, [](const factor &f) { return f.e == 0; });
    }

    void cancel()
    {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        cancel_against(num_, den_);
    }

    // Multiplies the denominator by q^e, splitting q by the known factors first.
    void absorb(polynomial q, int e, const std::vector<factor> &known)
    {
        std::vector<factor> add;
        for (const auto &f : known) {
            if (q.is_constant()) {
                break;
            }
            int count = 0;
            while (!q.is_constant()) {
                auto d = q.divide_exact(f.p);
                if (!d) {
                    break;
                }
                q = std::move(*d);
                ++count;
            }
            if (count > 0) {
                add = merge(add, {{f.p, count * e}});
            }
        }
        if (q.is_constant()) {
            num_ = num_.scaled(gaussian_rational(1) / power(q.constant_value(), e));
        } else {
            auto [c, nq] = normalized(q);
            num_ = num_.scaled(gaussian_rational(1) / power(c, e));
            add = merge(add, {{std::move(nq), e}});
        }
        den_ = merge(den_, add);
    }

    polynomial num_;
    std::vector<factor> den_;
};

} // namespace kahler::expr
