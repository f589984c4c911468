#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "../error.hpp"

namespace kahler::expr {

// Up to four complex coordinates: z1..zn occupy slots 0..n-1, zb1..zbn slots n..2n-1.
inline constexpr int max_dimension = 4;
inline constexpr int max_slots = 2 * max_dimension;

// Exponent vector packed into one word, slot 0 in the most significant byte,
// so that integer comparison is lexicographic comparison of exponent vectors.
class monomial {
public:
    static constexpr unsigned max_exponent = 255;

    constexpr monomial() = default;
    static constexpr monomial from_bits(std::uint64_t b)
    {
        monomial m;
        m.bits_ = b;
        return m;
    }
    static monomial variable(int slot, unsigned power = 1)
    {
        return monomial{}.with(slot, power);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool is_one() const { return bits_ == 0; }

    constexpr unsigned exponent(int slot) const
    {
        return static_cast<unsigned>((bits_ >> shift(slot)) & 0xffu);
    }

    monomial with(int slot, unsigned e) const
    {
        if (e > max_exponent) {
            throw domain_error("monomial exponent overflow");
        }
        monomial m = *this;
        m.bits_ &= ~(std::uint64_t{0xff} << shift(slot));
        m.bits_ |= std::uint64_t{e} << shift(slot);
        return m;
    }

    unsigned degree() const
    {
        unsigned d = 0;
        for (int s = 0; s < max_slots; ++s) {
            d += exponent(s);
        }
        return d;
    }

    bool divides(const monomial &o) const
    {
        for (int s = 0; s < max_slots; ++s) {
            if (exponent(s) > o.exponent(s)) {
                return false;
            }
        }
        return true;
    }

    friend monomial operator*(const monomial &a, const monomial &b)
    {
        // Byte-wise add with per-slot overflow detection.
        std::uint64_t sum = 0;
        for (int s = 0; s < max_slots; ++s) {
            unsigned e = a.exponent(s) + b.exponent(s);
            if (e > max_exponent) {
                throw domain_error("monomial exponent overflow");
            }
            sum |= std::uint64_t{e} << shift(s);
        }
        return from_bits(sum);
    }

    // Caller guarantees b divides a.
    friend monomial operator/(const monomial &a, const monomial &b) { return from_bits(a.bits_ - b.bits_); }

    // Swaps slot k with slot n+k for k < n.
    monomial swapped(int n) const
    {
        monomial m;
        for (int k = 0; k < n; ++k) {
            m.bits_ |= std::uint64_t{exponent(k)} << shift(n + k);
            m.bits_ |= std::uint64_t{exponent(n + k)} << shift(k);
        }
        return m;
    }

    friend constexpr auto operator<=>(const monomial &, const monomial &) = default;

private:
    static constexpr int shift(int slot) { return 8 * (max_slots - 1 - slot); }

    std::uint64_t bits_ = 0;
};

} // namespace kahler::expr

template <>
struct std::hash<kahler::expr::monomial> {
    std::size_t operator()(const kahler::expr::monomial &m) const noexcept
    {
        return std::hash<std::uint64_t>{}(m.bits());
    }
};
