#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaussian.hpp"
#include "monomial.hpp"

namespace kahler::expr {

struct term {
    monomial m;
    gaussian_rational c;
};

// Sparse polynomial in z1..zn, zb1..zbn with Gaussian-rational coefficients.
// Terms are kept sorted by increasing monomial with no zero coefficients.
// Dimension 0 marks a constant that adapts to whatever it is combined with.
class polynomial {
public:
    polynomial() = default;
    polynomial(gaussian_rational c)
    {
        if (!c.is_zero()) {
            terms_.push_back({monomial{}, std::move(c)});
        }
    }
    polynomial(long c) : polynomial(gaussian_rational(c)) {}

    static polynomial variable(int n, int slot)
    {
        check_slot(n, slot);
        polynomial p;
        p.n_ = n;
        p.terms_.push_back({monomial::variable(slot), gaussian_rational(1)});
        return p;
    }
    static polynomial from_term(int n, monomial m, gaussian_rational c)
    {
        polynomial p;
        p.n_ = m.is_one() ? 0 : n;
        if (!c.is_zero()) {
            p.terms_.push_back({m, std::move(c)});
        }
        return p;
    }

    int dimension() const { return n_; }
    const std::vector<term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    gaussian_rational constant_value() const
    {
        return !terms_.empty() && terms_[0].m.is_one() ? terms_[0].c : gaussian_rational(0);
    }
    const term &leading() const { return terms_.back(); }
    const term &trailing() const { return terms_.front(); }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (const auto &t : terms_) {
            d = std::max(d, t.m.degree());
        }
        return d;
    }

    polynomial operator-() const
    {
        polynomial r = *this;
        for (auto &t : r.terms_) {
            t.c = -t.c;
        }
        return r;
    }

    friend polynomial operator+(const polynomial &a, const polynomial &b) { return combine(a, b, false); }
    friend polynomial operator-(const polynomial &a, const polynomial &b) { return combine(a, b, true); }

    friend polynomial operator*(const polynomial &a, const polynomial &b)
    {
        polynomial r;
        r.n_ = joint_dimension(a, b);
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        if (a.terms_.size() == 1) {
            return b.scaled(a.terms_[0].c, a.terms_[0].m, r.n_);
        }
        if (b.terms_.size() == 1) {
            return a.scaled(b.terms_[0].c, b.terms_[0].m, r.n_);
        }
        std::vector<term> raw;
        raw.reserve(a.terms_.size() * b.terms_.size());
        for (const auto &x : a.terms_) {
            for (const auto &y : b.terms_) {
                raw.push_back({x.m * y.m, x.c * y.c});
            }
        }
        std::sort(raw.begin(), raw.end(), [](const term &u, const term &v) { return u.m < v.m; });
        for (auto &t : raw) {
            if (!r.terms_.empty() && r.terms_.back().m == t.m) {
                r.terms_.back().c += t.c;
                if (r.terms_.back().c.is_zero()) {
                    r.terms_.pop_back();
                }
            } else {
                r.terms_.push_back(std::move(t));
            }
        }
        r.fix_dimension();
        return r;
    }

    polynomial scaled(const gaussian_rational &c, monomial m = {}, int n = -1) const
    {
        polynomial r;
        r.n_ = n < 0 ? n_ : n;
        if (c.is_zero()) {
            return r;
        }
        r.terms_.reserve(terms_.size());
        for (const auto &t : terms_) {
            r.terms_.push_back({t.m * m, c.is_one() ? t.c : t.c * c});
        }
        r.fix_dimension();
        return r;
    }

    polynomial &operator+=(const polynomial &b) { return *this = *this + b; }
    polynomial &operator-=(const polynomial &b) { return *this = *this - b; }
    polynomial &operator*=(const polynomial &b) { return *this = *this * b; }

    polynomial pow(unsigned k) const
    {
        polynomial result(1);
        polynomial base = *this;
        while (k > 0) {
            if (k & 1u) {
                result = result * base;
            }
            k >>= 1;
            if (k > 0) {
                base = base * base;
            }
        }
        return result;
    }

    // Exact quotient *this / d, or nullopt when d does not divide *this.
    std::optional<polynomial> divide_exact(const polynomial &d) const
    {
        if (d.is_zero()) {
            throw domain_error("division by zero polynomial");
        }
        if (d.is_constant()) {
            return scaled(gaussian_rational(1) / d.terms_[0].c);
        }
        if (is_zero()) {
            return polynomial{};
        }
        const term &dl = d.leading();
        const term &dt = d.trailing();
        if (!dl.m.divides(leading().m) || !dt.m.divides(trailing().m)) {
            return std::nullopt;
        }
        int n = joint_dimension(*this, d);
        gaussian_rational inv = gaussian_rational(1) / dl.c;
        std::vector<term> rem = terms_;
        std::vector<term> quot;
        while (!rem.empty()) {
            const term &lt = rem.back();
            if (!dl.m.divides(lt.m)) {
                return std::nullopt;
            }
            monomial qm = lt.m / dl.m;
            gaussian_rational qc = lt.c * inv;
            // rem -= qc*qm*d, merging from the top; the leading term cancels exactly.
            std::vector<term> next;
            next.reserve(rem.size() + d.terms_.size());
            std::size_t i = 0;
            std::size_t j = 0;
            std::size_t rn = rem.size() - 1;
            std::size_t dn = d.terms_.size() - 1;
            while (i < rn || j < dn) {
                if (j >= dn || (i < rn && rem[i].m < d.terms_[j].m * qm)) {
                    next.push_back(std::move(rem[i++]));
                    continue;
                }
                monomial m = d.terms_[j].m * qm;
                gaussian_rational c = -(d.terms_[j].c * qc);
                if (i < rn && rem[i].m == m) {
                    c += rem[i].c;
                    ++i;
                }
                ++j;
                if (!c.is_zero()) {
                    next.push_back({m, std::move(c)});
                }
            }
            quot.push_back({qm, std::move(qc)});
            rem = std::move(next);
        }
        polynomial q;
        q.n_ = n;
        q.terms_.assign(std::make_move_iterator(quot.rbegin()), std::make_move_iterator(quot.rend()));
        q.fix_dimension();
        return q;
    }

    polynomial derivative(int slot) const
    {
        polynomial r;
        r.n_ = n_;
        for (const auto &t : terms_) {
            unsigned e = t.m.exponent(slot);
            if (e == 0) {
                continue;
            }
            r.terms_.push_back({t.m.with(slot, e - 1), t.c * gaussian_rational(static_cast<long>(e))});
        }
        // Lowering one exponent preserves the relative lex order of the surviving terms.
        r.fix_dimension();
        return r;
    }

    // Coefficient conjugation together with z_k <-> zb_k.
    polynomial conjugate() const
    {
        polynomial r;
        r.n_ = n_;
        r.terms_.reserve(terms_.size());
        for (const auto &t : terms_) {
            r.terms_.push_back({t.m.swapped(n_), t.c.conj()});
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const term &u, const term &v) { return u.m < v.m; });
        return r;
    }

    friend bool operator==(const polynomial &a, const polynomial &b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (std::size_t k = 0; k < a.terms_.size(); ++k) {
            if (a.terms_[k].m != b.terms_[k].m || a.terms_[k].c != b.terms_[k].c) {
                return false;
            }
        }
        return true;
    }

    // Canonical total order (term count, then terms lexicographically).
    friend int compare(const polynomial &a, const polynomial &b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return a.terms_.size() < b.terms_.size() ? -1 : 1;
        }
        for (std::size_t k = 0; k < a.terms_.size(); ++k) {
            if (a.terms_[k].m != b.terms_[k].m) {
                return a.terms_[k].m < b.terms_[k].m ? -1 : 1;
            }
            if (int c = compare(a.terms_[k].c, b.terms_[k].c); c != 0) {
                return c;
            }
        }
        return 0;
    }

    std::string to_string(int n = -1) const
    {
        int dim = n < 0 ? n_ : n;
        if (terms_.empty()) {
            return "0";
        }
        std::string s;
        bool first = true;
        for (const auto &t : terms_) {
            std::string body = render_term(t, dim);
            if (first) {
                s = body;
                first = false;
            } else if (body[0] == '-') {
                s += " - " + body.substr(1);
            } else {
                s += " + " + body;
            }
        }
        return s;
    }

    static std::string variable_name(int n, int slot)
    {
        return slot < n ? "z" + std::to_string(slot + 1) : "zb" + std::to_string(slot - n + 1);
    }

    static int joint_dimension(const polynomial &a, const polynomial &b)
    {
        if (a.n_ != 0 && b.n_ != 0 && a.n_ != b.n_) {
            throw validation_error("dimension mismatch between expressions");
        }
        return a.n_ != 0 ? a.n_ : b.n_;
    }

    void set_dimension(int n)
    {
        if (n_ != 0 && n_ != n) {
            throw validation_error("dimension mismatch between expressions");
        }
        n_ = n;
    }

private:
    static void check_slot(int n, int slot)
    {
        if (n < 1 || n > max_dimension || slot < 0 || slot >= 2 * n) {
            throw validation_error("variable index out of range");
        }
    }

    void fix_dimension()
    {
        if (is_constant()) {
            n_ = 0;
        }
    }

    static polynomial combine(const polynomial &a, const polynomial &b, bool subtract)
    {
        polynomial r;
        r.n_ = joint_dimension(a, b);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].m < b.terms_[j].m)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].m < a.terms_[i].m) {
                r.terms_.push_back({b.terms_[j].m, subtract ? -b.terms_[j].c : b.terms_[j].c});
                ++j;
            } else {
                gaussian_rational c = subtract ? a.terms_[i].c - b.terms_[j].c : a.terms_[i].c + b.terms_[j].c;
                if (!c.is_zero()) {
                    r.terms_.push_back({a.terms_[i].m, std::move(c)});
                }
                ++i;
                ++j;
            }
        }
        r.fix_dimension();
        return r;
    }

    static std::string render_term(const term &t, int n)
    {
        std::string mono;
        for (int s = 0; s < max_slots; ++s) {
            unsigned e = t.m.exponent(s);
            if (e == 0) {
                continue;
            }
            if (s >= 2 * n) {
                throw validation_error("cannot render variable outside chart dimension");
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += variable_name(n, s);
            if (e > 1) {
                mono += "^" + std::to_string(e);
            }
        }
        if (mono.empty()) {
            return t.c.to_string();
        }
        if (t.c.is_one()) {
            return mono;
        }
        if (t.c == gaussian_rational(-1)) {
            return "-" + mono;
        }
        return t.c.to_string() + "*" + mono;
    }

    int n_ = 0;
    std::vector<term> terms_;
};

} // namespace kahler::expr
