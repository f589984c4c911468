#include <gtest/gtest.h>

#include "support.hpp"

using namespace kahler;
using namespace kahler::weyl;
using expr::chart_expr;
using support::load;

namespace {

constexpr product_kind all_kinds[] = {product_kind::weyl, product_kind::wick, product_kind::antiwick};

const gaussian_rational I(0, 1);

element nu_scalar(int n, const gaussian_rational &c, int p = 1)
{
    return element::scalar(n, chart_expr(c)).times_nu(p);
}

element asym_one(int n, int slot)
{
    element e(n);
    key k;
    k.asym = static_cast<form_mask>(1u << slot);
    e.add(k, chart_expr(1));
    return e;
}

// (-1)^{deg_a(a) deg_a(b)} split over the odd parts.
element swapped_product(const element &a, const element &b, product_kind kind, const chart::chart &ch)
{
    element out = circ(b, a, kind, ch);
    out -= circ(odd_part(b), odd_part(a), kind, ch).scaled(gaussian_rational(2));
    return out;
}

} // namespace

TEST(WeylElement, Serialization)
{
    element e(1);
    e.add(key{}.with_count(0, 1).with_count(1, 1), chart_expr(1));
    key k;
    k.nu = 1;
    e.add(k, chart_expr(gaussian_rational(0, -2)));
    EXPECT_EQ(e.to_string(), "nu^0 * (1) * dz1 v dzb1\nnu^1 * (-2*i)");
    EXPECT_EQ(element(1).to_string(), "0");
    EXPECT_THROW(key{}.with_count(0, 256), contract_violation);
}

TEST(Mu, Examples)
{
    int n = 1;
    auto dz = element::symbol(n, 0);
    auto dzb = element::symbol(n, 1);
    element expect(n);
    expect.add(key{}.with_count(0, 1).with_count(1, 1), chart_expr(1));
    EXPECT_EQ(mu(dz, dzb), expect);
    EXPECT_TRUE(mu(asym_one(n, 0), asym_one(n, 0)).is_zero());
    EXPECT_EQ(mu(asym_one(n, 0), asym_one(n, 1)), -mu(asym_one(n, 1), asym_one(n, 0)));
    EXPECT_THROW(mu(element::symbol(1, 0), element::symbol(2, 0)), validation_error);
}

TEST(Circ, FlatExamples)
{
    auto flat = load("c1_flat");
    auto dz = element::symbol(1, 0);
    auto dzb = element::symbol(1, 1);
    auto sym = mu(dz, dzb);
    EXPECT_EQ(circ(dz, dzb, product_kind::wick, flat), sym + nu_scalar(1, gaussian_rational(0, -2)));
    EXPECT_EQ(circ(dzb, dz, product_kind::wick, flat), sym);
    EXPECT_EQ(circ(dzb, dz, product_kind::antiwick, flat), sym + nu_scalar(1, gaussian_rational(0, 2)));
    EXPECT_EQ(circ(dz, dzb, product_kind::weyl, flat), sym + nu_scalar(1, gaussian_rational(0, -1)));
    EXPECT_EQ(ad(dz, dzb, product_kind::wick, flat), nu_scalar(1, gaussian_rational(0, -2)));
    EXPECT_THROW(circ(element::symbol(2, 0), dz, product_kind::wick, flat), validation_error);
}

TEST(Circ, UnitAndCentrality)
{
    auto disk = load("disk");
    sample_stream rng(11);
    auto one = element::scalar(1, chart_expr(1));
    for (auto kind : all_kinds) {
        for (int t = 0; t < 4; ++t) {
            auto a = random_element(disk, rng, 4, 3);
            EXPECT_EQ(circ(one, a, kind, disk), a);
            EXPECT_EQ(circ(a, one, kind, disk), a);
            EXPECT_TRUE(ad(one, a, kind, disk).is_zero());
            auto e = even_part(a);
            EXPECT_TRUE(ad(e, e, kind, disk).is_zero());
        }
    }
}

TEST(Circ, Associativity)
{
    for (const char *name : {"disk", "cp1", "c2_flat"}) {
        auto ch = load(name);
        sample_stream rng(21);
        for (auto kind : all_kinds) {
            for (int t = 0; t < 3; ++t) {
                auto a = random_element(ch, rng, 3, 3);
                auto b = random_element(ch, rng, 3, 3);
                auto c = random_element(ch, rng, 3, 3);
                EXPECT_EQ(circ(circ(a, b, kind, ch), c, kind, ch), circ(a, circ(b, c, kind, ch), kind, ch))
                    << name << " " << to_string(kind);
            }
        }
    }
}

TEST(Circ, DegreeIsAdditive)
{
    auto cp1 = load("cp1");
    sample_stream rng(5);
    for (auto kind : all_kinds) {
        for (int t = 0; t < 4; ++t) {
            auto a = random_element(cp1, rng, 4, 4).homogeneous(3);
            auto b = random_element(cp1, rng, 4, 4).homogeneous(2);
            auto p = circ(a, b, kind, cp1);
            EXPECT_EQ(p, p.homogeneous(5));
        }
    }
}

TEST(Circ, TruncationTracking)
{
    auto disk = load("disk");
    sample_stream rng(8);
    for (auto kind : all_kinds) {
        auto a = random_element(disk, rng, 5, 4);
        auto b = random_element(disk, rng, 5, 4);
        auto full = circ(a, b, kind, disk);
        auto cut = circ(a.truncated(3), b.truncated(3), kind, disk);
        EXPECT_LE(cut.trunc(), 3 + std::max(0, b.valuation()));
        EXPECT_EQ(cut, full.truncated(cut.trunc()));
    }
}

TEST(Delta, Examples)
{
    auto dz = element::symbol(1, 0);
    auto dzb = element::symbol(1, 1);
    EXPECT_EQ(delta(dz), asym_one(1, 0));
    EXPECT_EQ(delta_inv(asym_one(1, 0)), dz);
    auto dz_dzb = mu(dz, asym_one(1, 1));
    EXPECT_EQ(delta_inv(dz_dzb), mu(dz, dzb).scaled(gaussian_rational(mpq_class(1, 2))));
    EXPECT_EQ(delta_inv(mu(dzb, asym_one(1, 0))), mu(dz, dzb).scaled(gaussian_rational(mpq_class(1, 2))));
    EXPECT_EQ(delta_z(mu(dz, dzb)), mu(dzb, asym_one(1, 0)));
    EXPECT_TRUE(delta_zbar(dz).is_zero());
    auto f = element::scalar(1, chart_expr(expr::polynomial::variable(1, 0)));
    EXPECT_TRUE(delta(f).is_zero());
    EXPECT_EQ(sigma(f + dz), f);
}

TEST(Delta, HodgeIdentities)
{
    for (const char *name : {"disk", "c2_flat"}) {
        auto ch = load(name);
        sample_stream rng(31);
        for (int t = 0; t < 6; ++t) {
            auto a = random_element(ch, rng, 6, 4, 3);
            EXPECT_TRUE(delta(delta(a)).is_zero());
            EXPECT_TRUE(delta_star(delta_star(a)).is_zero());
            EXPECT_EQ(delta(delta_inv(a)) + delta_inv(delta(a)) + sigma(a), a);
            element weighted(a.dimension());
            for (const auto &[k, c] : a.terms()) {
                weighted.add(k, c.scaled(gaussian_rational(static_cast<long>(k.deg_s() + k.deg_a()))));
            }
            EXPECT_EQ(delta(delta_star(a)) + delta_star(delta(a)), weighted);
            EXPECT_EQ(delta(a), delta_z(a) + delta_zbar(a));
            EXPECT_EQ(delta_z_inv(delta_z(a)) + delta_z(delta_z_inv(a)) + pi_zbar(a), a);
            EXPECT_EQ(delta_zbar_inv(delta_zbar(a)) + delta_zbar(delta_zbar_inv(a)) + pi_z(a), a);
        }
    }
}

TEST(Delta, SuperDerivation)
{
    auto ch = load("cp1");
    sample_stream rng(41);
    for (auto kind : all_kinds) {
        for (int t = 0; t < 4; ++t) {
            auto a = random_element(ch, rng, 4, 3);
            auto b = random_element(ch, rng, 4, 3);
            auto lhs = delta(circ(a, b, kind, ch));
            auto rhs = circ(delta(a), b, kind, ch) + circ(grade_involution(a), delta(b), kind, ch);
            EXPECT_EQ(lhs, rhs);
            auto conn = chart::christoffel(ch);
            EXPECT_EQ(nabla(circ(a, b, kind, ch), conn),
                      circ(nabla(a, conn), b, kind, ch) + circ(grade_involution(a), nabla(b, conn), kind, ch));
        }
    }
}

TEST(Projection, Examples)
{
    auto flat = load("c1_flat");
    auto zzb = chart_expr(flat.parse("z1*zb1"));
    auto dz = element::symbol(1, 0);
    auto dzb = element::symbol(1, 1);
    auto a = mu(dz, asym_one(1, 0)).scaled(zzb);
    EXPECT_EQ(pi_z(a), a);
    EXPECT_TRUE(pi_z(mu(dz, dzb)).is_zero());
    EXPECT_TRUE(pi_zbar(mu(dzb, asym_one(1, 0))).is_zero());
    sample_stream rng(3);
    auto b = random_element(load("c2_flat"), rng, 8, 4, 3);
    EXPECT_EQ(pi_z(pi_z(b)), pi_z(b));
    EXPECT_EQ(pi_z(pi_zbar(b)), sigma(b));
    EXPECT_EQ(project(b, selector::sz()), project(project(b, selector::sz()), selector::sz()));
    EXPECT_EQ(pi_z(b), project(project(b, selector::sz()), selector::az()));
}

TEST(Projection, ProductCompatibility)
{
    for (const char *name : {"disk", "c2_flat"}) {
        auto ch = load(name);
        sample_stream rng(51);
        for (int t = 0; t < 5; ++t) {
            auto a = random_element(ch, rng, 5, 3);
            auto b = random_element(ch, rng, 5, 3);
            auto w = product_kind::wick;
            EXPECT_EQ(pi_z(circ(a, b, w, ch)), pi_z(circ(pi_z(a), b, w, ch)));
            EXPECT_EQ(pi_zbar(circ(a, b, w, ch)), pi_zbar(circ(a, pi_zbar(b), w, ch)));
            auto aw = product_kind::antiwick;
            EXPECT_EQ(pi_zbar(circ(a, b, aw, ch)), pi_zbar(circ(pi_zbar(a), b, aw, ch)));
            EXPECT_EQ(pi_z(circ(a, b, aw, ch)), pi_z(circ(a, pi_z(b), aw, ch)));
        }
    }
}

TEST(Nabla, Examples)
{
    auto flat = load("c1_flat");
    auto fconn = chart::christoffel(flat);
    auto dz = element::symbol(1, 0);
    EXPECT_TRUE(nabla(dz, fconn).is_zero());
    auto f = flat.parse("z1^2*zb1");
    element df(1);
    key kz;
    kz.asym = 1;
    key kzb;
    kzb.asym = 2;
    df.add(kz, f.derivative(0));
    df.add(kzb, f.derivative(1));
    EXPECT_EQ(nabla(element::scalar(1, f), fconn), df);
    auto disk = load("disk");
    auto conn = chart::christoffel(disk);
    auto expect = mu(dz, asym_one(1, 0)).scaled(disk.parse("-2*zb1/(1 - z1*zb1)"));
    EXPECT_EQ(nabla(dz, conn), expect);
}

TEST(Nabla, CurvatureIdentities)
{
    for (const char *name : {"disk", "cp1", "c2_flat"}) {
        auto ch = load(name);
        auto conn = chart::christoffel(ch);
        auto R = chart::curvature(ch, conn).curvature_element;
        sample_stream rng(61);
        for (int t = 0; t < 3; ++t) {
            auto a = random_element(ch, rng, 4, 3, 1);
            auto nn = nabla(nabla(a, conn), conn);
            EXPECT_EQ(delta(nabla(a, conn)) + nabla(delta(a), conn), element(a.dimension())) << name;
            for (auto kind : all_kinds) {
                EXPECT_EQ(nn, -ad_over_nu(R, a, kind, ch)) << name << " " << to_string(kind);
            }
            EXPECT_EQ(nabla(a, conn), nabla_z(a, conn) + nabla_zbar(a, conn));
            EXPECT_TRUE(nabla_z(nabla_z(a, conn), conn).is_zero()) << name;
            EXPECT_TRUE(nabla_zbar(nabla_zbar(a, conn), conn).is_zero()) << name;
            EXPECT_EQ(nabla_z(nabla_zbar(a, conn), conn) + nabla_zbar(nabla_z(a, conn), conn),
                      -ad_over_nu(R, a, product_kind::wick, ch));
            EXPECT_TRUE(delta_z(delta_z(a)).is_zero());
            EXPECT_TRUE(delta_zbar(delta_zbar(a)).is_zero());
            EXPECT_TRUE((delta_z(delta_zbar(a)) + delta_zbar(delta_z(a))).is_zero());
            EXPECT_TRUE((delta_z(nabla_z(a, conn)) + nabla_z(delta_z(a), conn)).is_zero());
            EXPECT_TRUE((delta_z(nabla_zbar(a, conn)) + nabla_zbar(delta_z(a), conn)).is_zero());
            EXPECT_TRUE((delta_zbar(nabla_z(a, conn)) + nabla_z(delta_zbar(a), conn)).is_zero());
            EXPECT_TRUE((delta_zbar(nabla_zbar(a, conn)) + nabla_zbar(delta_zbar(a), conn)).is_zero());
        }
    }
}

TEST(FibEquivalence, Examples)
{
    auto flat = load("c1_flat");
    auto sym = mu(element::symbol(1, 0), element::symbol(1, 1));
    EXPECT_EQ(fib_equiv_S(sym, flat), sym + nu_scalar(1, gaussian_rational(0, -1)));
    auto f = element::scalar(1, flat.parse("z1"));
    EXPECT_EQ(fib_equiv_S(f, flat), f);
}

TEST(FibEquivalence, Intertwining)
{
    for (const char *name : {"disk", "c2_flat"}) {
        auto ch = load(name);
        sample_stream rng(71);
        for (int t = 0; t < 4; ++t) {
            auto a = random_element(ch, rng, 4, 4);
            auto b = random_element(ch, rng, 4, 3);
            auto S = [&](const element &x) { return fib_equiv_S(x, ch); };
            auto Si = [&](const element &x) { return fib_equiv_S(x, ch, direction::inverse); };
            EXPECT_EQ(Si(S(a)), a);
            auto weyl = circ(a, b, product_kind::weyl, ch);
            EXPECT_EQ(Si(circ(S(a), S(b), product_kind::wick, ch)), weyl) << name;
            EXPECT_EQ(S(circ(Si(a), Si(b), product_kind::antiwick, ch)), weyl) << name;
        }
    }
}

TEST(Involutions, ParityAndConjugation)
{
    auto n = 1;
    auto flat = load("c1_flat");
    auto dz = element::symbol(n, 0);
    EXPECT_EQ(parity_P(dz.times_nu()), -dz.times_nu());
    EXPECT_EQ(parity_P(dz), dz);
    auto a = dz.times_nu().scaled(I);
    EXPECT_EQ(conj_C(a), element::symbol(n, 1).times_nu().scaled(I));
    auto z = element::scalar(n, flat.parse("z1"));
    EXPECT_EQ(conj_C(z), element::scalar(n, flat.parse("zb1")));
    sample_stream rng(81);
    for (const char *name : {"disk", "c2_flat"}) {
        auto ch = load(name);
        for (int t = 0; t < 4; ++t) {
            auto x = random_element(ch, rng, 5, 4, 3);
            auto y = random_element(ch, rng, 5, 3, 3);
            EXPECT_EQ(parity_P(parity_P(x)), x);
            EXPECT_EQ(conj_C(conj_C(x)), x);
            EXPECT_EQ(conj_C(circ(x, y, product_kind::wick, ch)),
                      swapped_product(conj_C(x), conj_C(y), product_kind::wick, ch))
                << name;
        }
    }
}
