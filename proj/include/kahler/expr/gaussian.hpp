#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "../error.hpp"

namespace kahler::expr {

// Exact element re + i*im of Q(i).
class gaussian_rational {
public:
    gaussian_rational() = default;
    gaussian_rational(long v) : re_(v) {}
    gaussian_rational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static gaussian_rational i() { return {mpq_class(0), mpq_class(1)}; }
    static gaussian_rational ratio(long num, long den) { return {mpq_class(num, den)}; }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    gaussian_rational conj() const { return {re_, -im_}; }

    gaussian_rational operator-() const { return {-re_, -im_}; }

    gaussian_rational &operator+=(const gaussian_rational &o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    gaussian_rational &operator-=(const gaussian_rational &o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    gaussian_rational &operator*=(const gaussian_rational &o)
    {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    gaussian_rational &operator/=(const gaussian_rational &o)
    {
        if (o.is_zero()) {
            throw domain_error("division by zero");
        }
        if (sgn(o.im_) == 0) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class m = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }

    friend gaussian_rational operator+(gaussian_rational a, const gaussian_rational &b) { return a += b; }
    friend gaussian_rational operator-(gaussian_rational a, const gaussian_rational &b) { return a -= b; }
    friend gaussian_rational operator*(gaussian_rational a, const gaussian_rational &b) { return a *= b; }
    friend gaussian_rational operator/(gaussian_rational a, const gaussian_rational &b) { return a /= b; }

    friend bool operator==(const gaussian_rational &a, const gaussian_rational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const gaussian_rational &a, const gaussian_rational &b) { return !(a == b); }

    // Total order used only for canonical sorting.
    friend int compare(const gaussian_rational &a, const gaussian_rational &b)
    {
        int c = cmp(a.re_, b.re_);
        return c != 0 ? c : cmp(a.im_, b.im_);
    }

    // Renders as it would appear as a standalone factor: "3", "-1/2", "2*i", "(1 + i)".
    std::string to_string() const
    {
        if (sgn(im_) == 0) {
            return re_.get_str();
        }
        if (sgn(re_) == 0) {
            return imag_part(im_);
        }
        std::string s = "(" + re_.get_str();
        s += sgn(im_) < 0 ? " - " : " + ";
        s += imag_part(abs(im_));
        return s + ")";
    }

    friend std::ostream &operator<<(std::ostream &os, const gaussian_rational &g) { return os << g.to_string(); }

private:
    static std::string imag_part(const mpq_class &v)
    {
        if (v == 1) {
            return "i";
        }
        if (v == -1) {
            return "-i";
        }
        return v.get_str() + "*i";
    }

    mpq_class re_{0};
    mpq_class im_{0};
};

} // namespace kahler::expr
