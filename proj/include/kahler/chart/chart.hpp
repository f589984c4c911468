#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forms.hpp"

namespace kahler::chart {

using expr::polynomial;

// One term nu^p * Omega_p of the formal two-form series.
struct omega_entry {
    int nu_power = 1;
    form explicit_part;
    std::optional<gaussian_rational> omega_multiple;
    // explicit_part + omega_multiple * omega, filled in by the chart.
    form two_form;
};

// Pseudo-Kaehler coordinate chart; immutable after validation.
class chart {
public:
    chart(std::string name, int n, std::vector<chart_expr> metric, std::vector<chart_expr> inverse,
          std::vector<polynomial> factor_base, std::optional<std::vector<chart_expr>> potential_gradient,
          std::vector<omega_entry> omega_series)
        : name_(std::move(name)), n_(n), metric_(std::move(metric)), inverse_(std::move(inverse)),
          base_(std::move(factor_base)), potential_(std::move(potential_gradient)),
          omega_series_(std::move(omega_series))
    {
        if (n_ < 1 || n_ > expr::max_dimension) {
            throw validation_error("dimension must be between 1 and " + std::to_string(expr::max_dimension));
        }
        if (metric_.size() != static_cast<std::size_t>(n_ * n_) ||
            inverse_.size() != static_cast<std::size_t>(n_ * n_)) {
            throw validation_error("metric and inverse_metric must have n*n entries");
        }
        if (potential_ && potential_->size() != static_cast<std::size_t>(n_)) {
            throw validation_error("potential_gradient must have n entries");
        }
        for (auto &e : metric_) {
            e = reduce(e);
        }
        for (auto &e : inverse_) {
            e = reduce(e);
        }
        if (potential_) {
            for (auto &e : *potential_) {
                e = reduce(e);
            }
        }
        validate();
        for (auto &entry : omega_series_) {
            entry.two_form = entry.explicit_part;
            if (entry.omega_multiple) {
                entry.two_form = entry.two_form + omega().scaled(chart_expr(*entry.omega_multiple));
            }
        }
        validate_omega();
    }

    const std::string &name() const { return name_; }
    int dimension() const { return n_; }
    const std::vector<polynomial> &factor_base() const { return base_; }

    // g_{k lbar}
    const chart_expr &g(int k, int l) const { return metric_[k * n_ + l]; }
    // g^{k lbar}, with sum_l g^{k lbar} g_{m lbar} = delta^k_m
    const chart_expr &ginv(int k, int l) const { return inverse_[k * n_ + l]; }

    bool has_potential() const { return potential_.has_value(); }
    const std::vector<chart_expr> &potential_gradient() const
    {
        if (!potential_) {
            throw validation_error("chart '" + name_ + "' has no potential_gradient");
        }
        return *potential_;
    }

    const std::vector<omega_entry> &omega_entries() const { return omega_series_; }

    form_series omega_series() const
    {
        form_series s;
        for (const auto &e : omega_series_) {
            s = add(s, {{e.nu_power, e.two_form}});
        }
        return s;
    }

    // A copy of this chart carrying a different Omega series.
    chart with_omega(std::vector<omega_entry> series, std::string name = {}) const
    {
        return chart(name.empty() ? name_ : std::move(name), n_, metric_, inverse_, base_, potential_,
                     std::move(series));
    }

    chart_expr reduce(const chart_expr &e) const { return base_.empty() ? e : e.reduced(base_); }

    chart_expr parse(const std::string &text) const { return reduce(expr::parse(text, n_)); }

    chart_expr coordinate(int slot) const { return chart_expr::variable(n_, slot); }

    // omega = (i/2) g_{k lbar} dz^k ^ dzb^l
    form omega() const
    {
        form w(n_);
        chart_expr half_i(gaussian_rational(0, mpq_class(1, 2)));
        for (int k = 0; k < n_; ++k) {
            for (int l = 0; l < n_; ++l) {
                w.add(static_cast<form_mask>((1u << k) | (1u << (n_ + l))), half_i * g(k, l));
            }
        }
        return w;
    }

    // {f, g} = (2/i) g^{k lbar} (Z_k f Zbar_l g - Zbar_l f Z_k g)
    chart_expr poisson_bracket(const chart_expr &f, const chart_expr &h) const
    {
        chart_expr acc;
        for (int k = 0; k < n_; ++k) {
            for (int l = 0; l < n_; ++l) {
                if (ginv(k, l).is_zero()) {
                    continue;
                }
                chart_expr part =
                    f.derivative(k) * h.derivative(n_ + l) - f.derivative(n_ + l) * h.derivative(k);
                acc += ginv(k, l) * part;
            }
        }
        return acc.scaled(gaussian_rational(0, -2));
    }

    bool is_flat_constant() const
    {
        for (const auto &e : metric_) {
            if (!e.is_constant()) {
                return false;
            }
        }
        return true;
    }

private:
    void validate() const
    {
        for (int k = 0; k < n_; ++k) {
            for (int l = 0; l < n_; ++l) {
                if (g(k, l).conjugate() != g(l, k)) {
                    throw validation_error("metric is not Hermitian at (" + std::to_string(k + 1) + "," +
                                           std::to_string(l + 1) + ")");
                }
            }
        }
        for (int k = 0; k < n_; ++k) {
            for (int m = 0; m < n_; ++m) {
                chart_expr acc;
                for (int l = 0; l < n_; ++l) {
                    acc += ginv(k, l) * g(m, l);
                }
                if (acc != chart_expr(k == m ? 1 : 0)) {
                    throw validation_error("inverse_metric does not invert metric at (" + std::to_string(k + 1) +
                                           "," + std::to_string(m + 1) + ")");
                }
            }
        }
        if (!omega().d().is_zero()) {
            throw validation_error("metric two-form is not closed");
        }
        if (potential_) {
            chart_expr half_i(gaussian_rational(0, mpq_class(1, 2)));
            for (int k = 0; k < n_; ++k) {
                for (int l = 0; l < n_; ++l) {
                    if ((*potential_)[k].derivative(n_ + l) != half_i * g(k, l)) {
                        throw validation_error("potential_gradient mismatch: Zbar_" + std::to_string(l + 1) + " u_" +
                                               std::to_string(k + 1) + " != (i/2) g");
                    }
                    if ((*potential_)[k].derivative(l) != (*potential_)[l].derivative(k)) {
                        throw validation_error("potential_gradient is not a holomorphic gradient");
                    }
                }
            }
        }
    }

    void validate_omega() const
    {
        for (const auto &e : omega_series_) {
            if (e.nu_power < 1) {
                throw validation_error("omega_series nu_power must be >= 1");
            }
            for (const auto &[m, c] : e.two_form.terms()) {
                if (std::popcount(static_cast<unsigned>(m)) != 2) {
                    throw validation_error("omega_series entries must be two-forms");
                }
            }
            if (!e.two_form.d().is_zero()) {
                throw validation_error("omega_series entry at nu^" + std::to_string(e.nu_power) + " is not closed");
            }
        }
    }

    std::string name_;
    int n_;
    std::vector<chart_expr> metric_;
    std::vector<chart_expr> inverse_;
    std::vector<polynomial> base_;
    std::optional<std::vector<chart_expr>> potential_;
    std::vector<omega_entry> omega_series_;
};

namespace detail {

// "dz1^dzb2" -> (mask, sign)
inline std::pair<form_mask, int> parse_two_form_key(const std::string &key, int n)
{
    auto caret = key.find('^');
    if (caret == std::string::npos || key.find('^', caret + 1) != std::string::npos) {
        throw validation_error("two-form key '" + key + "' must have the form dzA^dzB");
    }
    auto slot = [&](const std::string &tok) {
        int base = 0;
        std::string digits;
        if (tok.rfind("dzb", 0) == 0) {
            base = n;
            digits = tok.substr(3);
        } else if (tok.rfind("dz", 0) == 0) {
            digits = tok.substr(2);
        } else {
            throw validation_error("bad one-form symbol '" + tok + "'");
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw validation_error("bad one-form symbol '" + tok + "'");
        }
        int k = std::stoi(digits);
        if (k < 1 || k > n) {
            throw validation_error("one-form index out of range in '" + tok + "'");
        }
        return base + k - 1;
    };
    int a = slot(key.substr(0, caret));
    int b = slot(key.substr(caret + 1));
    if (a == b) {
        throw validation_error("two-form key '" + key + "' repeats a symbol");
    }
    form_mask ma = static_cast<form_mask>(1u << a);
    form_mask mb = static_cast<form_mask>(1u << b);
    return {static_cast<form_mask>(ma | mb), wedge_sign(ma, mb)};
}

inline std::string require_string(const nlohmann::json &j, const std::string &what)
{
    if (!j.is_string()) {
        throw validation_error(what + " must be an expression string");
    }
    return j.get<std::string>();
}

} // namespace detail

inline chart load_chart(const nlohmann::json &doc, const std::string &default_name = "chart")
{
    if (!doc.is_object()) {
        throw validation_error("chart document must be a JSON object");
    }
    for (const char *field : {"dimension", "metric", "inverse_metric", "factor_base"}) {
        if (!doc.contains(field)) {
            throw validation_error(std::string("chart document is missing '") + field + "'");
        }
    }
    if (!doc["dimension"].is_number_integer()) {
        throw validation_error("'dimension' must be an integer");
    }
    int n = doc["dimension"].get<int>();
    if (n < 1 || n > expr::max_dimension) {
        throw validation_error("dimension must be between 1 and " + std::to_string(expr::max_dimension));
    }
    auto expr_array = [&](const char *field) {
        const auto &a = doc[field];
        if (!a.is_array()) {
            throw validation_error(std::string("'") + field + "' must be an array");
        }
        std::vector<chart_expr> out;
        for (const auto &x : a) {
            out.push_back(expr::parse(detail::require_string(x, field), n));
        }
        return out;
    };
    auto metric = expr_array("metric");
    auto inverse = expr_array("inverse_metric");
    std::vector<polynomial> base;
    for (const auto &e : expr_array("factor_base")) {
        if (!e.is_polynomial() || e.numerator().is_constant()) {
            throw validation_error("factor_base entries must be non-constant polynomials");
        }
        base.push_back(e.numerator());
    }
    std::optional<std::vector<chart_expr>> potential;
    if (doc.contains("potential_gradient")) {
        potential = expr_array("potential_gradient");
    }
    std::vector<omega_entry> series;
    if (doc.contains("omega_series")) {
        const auto &s = doc["omega_series"];
        if (!s.is_array()) {
            throw validation_error("'omega_series' must be an array");
        }
        for (const auto &entry : s) {
            if (!entry.is_object() || !entry.contains("nu_power") || !entry.contains("coefficients") ||
                !entry["nu_power"].is_number_integer() || !entry["coefficients"].is_object()) {
                throw validation_error("omega_series entries need integer 'nu_power' and object 'coefficients'");
            }
            omega_entry e;
            e.nu_power = entry["nu_power"].get<int>();
            e.explicit_part = form(n);
            for (const auto &[key, value] : entry["coefficients"].items()) {
                chart_expr c = expr::parse(detail::require_string(value, "omega_series coefficient"), n);
                if (key == "omega") {
                    if (!c.is_constant()) {
                        throw validation_error("'omega' multiplier must be a Gaussian-rational constant");
                    }
                    e.omega_multiple = c.constant_value();
                } else {
                    auto [mask, sign] = detail::parse_two_form_key(key, n);
                    e.explicit_part.add(mask, c.scaled(gaussian_rational(sign)));
                }
            }
            series.push_back(std::move(e));
        }
    }
    std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : default_name;
    return chart(name, n, std::move(metric), std::move(inverse), std::move(base), std::move(potential),
                 std::move(series));
}

inline chart load_chart_text(const std::string &text, const std::string &default_name = "chart")
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw validation_error(std::string("chart document is not valid JSON: ") + e.what());
    }
    return load_chart(doc, default_name);
}

inline chart load_chart_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open chart file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path.substr(path.find_last_of('/') + 1);
    stem = stem.substr(0, stem.find('.'));
    return load_chart_text(ss.str(), stem);
}

} // namespace kahler::chart
