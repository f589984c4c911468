#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "expr.hpp"

namespace kahler {

// Splittable generator: a 64-bit LCG (Knuth's MMIX constants, modulus 2^64)
// whose 32 high bits form each output. Streams are derived from (seed, index)
// through the splitmix64 finalizer, so sampled checks are reproducible.
class sample_stream {
public:
    using engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                                   1442695040888963407ULL, 0ULL>;

    explicit sample_stream(std::uint64_t seed, std::uint64_t index = 0) : engine_(mix(seed ^ mix(index + 1))) {}

    static std::uint64_t mix(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint32_t next() { return static_cast<std::uint32_t>(engine_() >> 32); }

    // Uniform on [lo, hi] by reduction modulo the range width.
    int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint32_t>(hi - lo + 1)); }

    sample_stream split(std::uint64_t index) { return sample_stream(next() ^ (std::uint64_t{next()} << 32), index); }

    // Small Gaussian rational with numerators in [-3, 3] and denominators in [1, 3].
    expr::gaussian_rational coefficient()
    {
        // Draws are sequenced explicitly; argument evaluation order is unspecified.
        int a = uniform(-3, 3);
        int b = uniform(1, 3);
        int c = uniform(-3, 3);
        int d = uniform(1, 3);
        mpq_class re{mpz_class(a), mpz_class(b)};
        mpq_class im{mpz_class(c), mpz_class(d)};
        if (uniform(0, 2) == 0) {
            im = 0;
        }
        expr::gaussian_rational g(re, im);
        return g.is_zero() ? expr::gaussian_rational(1) : g;
    }

    // Random polynomial: `terms` monomials with per-variable degree <= max_degree.
    expr::polynomial polynomial(int n, int terms, int max_degree)
    {
        expr::polynomial p;
        for (int t = 0; t < terms; ++t) {
            expr::monomial m;
            for (int s = 0; s < 2 * n; ++s) {
                m = m.with(s, static_cast<unsigned>(uniform(0, max_degree)));
            }
            p = p + expr::polynomial::from_term(n, m, coefficient());
        }
        return p;
    }

private:
    engine engine_;
};

// Test-function pool: all monomials of per-variable degree <= 3.
inline std::vector<expr::chart_expr> monomial_pool(int n, int max_degree = 3)
{
    std::vector<expr::chart_expr> out;
    int slots = 2 * n;
    std::vector<unsigned> e(slots, 0);
    for (;;) {
        expr::monomial m;
        for (int s = 0; s < slots; ++s) {
            m = m.with(s, e[s]);
        }
        out.emplace_back(expr::polynomial::from_term(n, m, expr::gaussian_rational(1)));
        int s = slots - 1;
        while (s >= 0 && e[s] == static_cast<unsigned>(max_degree)) {
            e[s] = 0;
            --s;
        }
        if (s < 0) {
            break;
        }
        ++e[s];
    }
    return out;
}

// Seeded Gaussian-rational combinations of pool monomials.
inline std::vector<expr::chart_expr> random_pool(int n, std::uint64_t seed, int count, int terms = 3,
                                                 int max_degree = 3)
{
    sample_stream rng(seed, 0x706f6f6c);
    std::vector<expr::chart_expr> out;
    for (int k = 0; k < count; ++k) {
        auto sub = rng.split(static_cast<std::uint64_t>(k));
        out.emplace_back(sub.polynomial(n, terms, max_degree));
    }
    return out;
}

} // namespace kahler
