#pragma once

#include <vector>

#include "chart.hpp"

namespace kahler::chart {

// Kaehler connection: only the pure holomorphic components Gamma^m_{kl} and
// their conjugates Gamma^mbar_{kbar lbar} are nonzero.
class connection_data {
public:
    connection_data() = default;
    connection_data(int n, std::vector<chart_expr> gamma) : n_(n), gamma_(std::move(gamma))
    {
        gamma_bar_.reserve(gamma_.size());
        flat_ = true;
        for (const auto &e : gamma_) {
            gamma_bar_.push_back(e.conjugate());
            flat_ = flat_ && e.is_zero();
        }
    }

    int dimension() const { return n_; }
    // Gamma^m_{kl}
    const chart_expr &gamma(int m, int k, int l) const { return gamma_[(m * n_ + k) * n_ + l]; }
    // Gamma^mbar_{kbar lbar} = conjugate(Gamma^m_{kl})
    const chart_expr &gamma_bar(int m, int k, int l) const { return gamma_bar_[(m * n_ + k) * n_ + l]; }
    bool is_flat() const { return flat_; }

private:
    int n_ = 0;
    std::vector<chart_expr> gamma_;
    std::vector<chart_expr> gamma_bar_;
    bool flat_ = true;
};

// Gamma^m_{kl} = sum_n g^{m nbar} Z_k g_{l nbar}
inline connection_data christoffel(const chart &c)
{
    int n = c.dimension();
    std::vector<chart_expr> gamma(static_cast<std::size_t>(n * n * n));
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                chart_expr acc;
                for (int j = 0; j < n; ++j) {
                    if (!c.ginv(m, j).is_zero()) {
                        acc += c.ginv(m, j) * c.g(l, j).derivative(k);
                    }
                }
                gamma[(m * n + k) * n + l] = c.reduce(acc);
            }
        }
    }
    return connection_data(n, std::move(gamma));
}

} // namespace kahler::chart
