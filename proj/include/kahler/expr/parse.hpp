#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "chart_expr.hpp"

namespace kahler::expr {

namespace detail {

class expr_parser {
public:
    expr_parser(std::string_view text, int n) : s_(text), n_(n) {}

    chart_expr run()
    {
        skip();
        if (pos_ == s_.size()) {
            throw parse_error("empty expression", pos_);
        }
        chart_expr e = sum();
        skip();
        if (pos_ != s_.size()) {
            throw parse_error(std::string("unexpected '") + s_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    chart_expr sum()
    {
        chart_expr e = product();
        for (;;) {
            if (accept('+')) {
                e = e + product();
            } else if (accept('-')) {
                e = e - product();
            } else {
                return e;
            }
        }
    }

    chart_expr product()
    {
        chart_expr e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                chart_expr d = unary();
                if (d.is_zero()) {
                    throw parse_error("zero denominator", at);
                }
                e = e / d;
            } else {
                return e;
            }
        }
    }

    chart_expr unary()
    {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    chart_expr power()
    {
        bool atom = false;
        chart_expr base = primary(atom);
        if (!accept('^')) {
            return base;
        }
        skip();
        std::size_t at = pos_;
        bool negative = accept('-');
        skip();
        if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            throw parse_error("expected integer exponent", pos_);
        }
        long k = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            k = k * 10 + (s_[pos_++] - '0');
            if (k > 255) {
                throw parse_error("exponent too large", at);
            }
        }
        if (negative) {
            if (!atom) {
                throw parse_error("negative exponent only allowed on atoms", at);
            }
            if (base.is_zero()) {
                throw parse_error("zero denominator", at);
            }
            return base.pow(-static_cast<int>(k));
        }
        return base.pow(static_cast<int>(k));
    }

    chart_expr primary(bool &atom)
    {
        skip();
        if (pos_ == s_.size()) {
            throw parse_error("unexpected end of expression", pos_);
        }
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            chart_expr e = sum();
            if (!accept(')')) {
                throw parse_error("expected ')'", pos_);
            }
            return e;
        }
        atom = true;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            }
            return chart_expr(gaussian_rational(mpq_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (c == 'i' && !ident_continues(pos_ + 1)) {
            ++pos_;
            return chart_expr::imaginary_unit();
        }
        if (c == 'z') {
            std::size_t start = pos_;
            ++pos_;
            bool bar = false;
            if (pos_ < s_.size() && s_[pos_] == 'b') {
                bar = true;
                ++pos_;
            }
            if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                throw parse_error("expected variable index", pos_);
            }
            int k = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                k = k * 10 + (s_[pos_++] - '0');
                if (k > 99) {
                    break;
                }
            }
            if (k < 1 || k > n_) {
                throw parse_error("variable index out of range", start);
            }
            return chart_expr::variable(n_, bar ? n_ + k - 1 : k - 1);
        }
        throw parse_error(std::string("unexpected '") + c + "'", pos_);
    }

    bool ident_continues(std::size_t p) const
    {
        return p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_');
    }

    std::string_view s_;
    int n_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline chart_expr parse(std::string_view text, int n)
{
    return detail::expr_parser(text, n).run();
}

inline chart_expr parse(std::string_view text, int n, const std::vector<polynomial> &factor_base)
{
    return parse(text, n).reduced(factor_base);
}

inline std::string serialize(const chart_expr &e, int n) { return e.to_string(n); }

} // namespace kahler::expr
