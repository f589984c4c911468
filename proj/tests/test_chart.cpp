#include <gtest/gtest.h>

#include "support.hpp"

using namespace kahler;
using namespace kahler::chart;
using support::load;

namespace {

const char *flat_doc = R"({"dimension": 1, "metric": ["1"], "inverse_metric": ["1"], "factor_base": []})";

std::string with_field(const std::string &metric, const std::string &inverse, const std::string &extra = "")
{
    return R"({"dimension": 1, "metric": [")" + metric + R"("], "inverse_metric": [")" + inverse +
           R"("], "factor_base": [])" + extra + "}";
}

} // namespace

TEST(LoadChart, ValidDocuments)
{
    auto c = load_chart_text(flat_doc);
    EXPECT_EQ(c.dimension(), 1);
    for (const char *name : {"c1_flat", "c2_flat", "disk", "cp1", "disk_nu_omega", "c2_flat_omega20"}) {
        EXPECT_NO_THROW(load(name)) << name;
    }
}

TEST(LoadChart, Rejections)
{
    EXPECT_THROW(load_chart_text(with_field("z1", "1/z1")), validation_error);
    EXPECT_THROW(load_chart_text(with_field("1", "2")), validation_error);
    EXPECT_THROW(load_chart_text(with_field("1", "1", R"(, "potential_gradient": ["zb1"])")), validation_error);
    EXPECT_THROW(load_chart_text("{\"dimension\": 1}"), validation_error);
    EXPECT_THROW(load_chart_text("not json"), validation_error);
    const char *open_omega = R"({"dimension": 2, "metric": ["1","0","0","1"], "inverse_metric": ["1","0","0","1"],
        "factor_base": [], "omega_series": [{"nu_power": 1, "coefficients": {"dz1^dz2": "zb1"}}]})";
    EXPECT_THROW(load_chart_text(open_omega), validation_error);
    const char *bad_key = R"({"dimension": 1, "metric": ["1"], "inverse_metric": ["1"],
        "factor_base": [], "omega_series": [{"nu_power": 1, "coefficients": {"dz1^dz1": "1"}}]})";
    EXPECT_THROW(load_chart_text(bad_key), validation_error);
    EXPECT_THROW(load_chart_file("/nonexistent/chart.json"), validation_error);
}

TEST(LoadChart, OmegaTokenAndOrientation)
{
    auto d = load("disk_nu_omega");
    auto s = d.omega_series();
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.at(1), d.omega());
    const char *reversed = R"({"dimension": 2, "metric": ["1","0","0","1"], "inverse_metric": ["1","0","0","1"],
        "factor_base": [], "omega_series": [{"nu_power": 1, "coefficients": {"dz2^dz1": "1"}}]})";
    auto c = load_chart_text(reversed);
    EXPECT_EQ(c.omega_series().at(1).coefficient(0b0011), expr::chart_expr(-1));
}

TEST(Christoffel, BundledCharts)
{
    auto flat = christoffel(load("c2_flat"));
    EXPECT_TRUE(flat.is_flat());
    auto disk = load("disk");
    EXPECT_EQ(christoffel(disk).gamma(0, 0, 0), disk.parse("2*zb1/(1 - z1*zb1)"));
    EXPECT_EQ(christoffel(disk).gamma(0, 0, 0).to_string(1), "(2*zb1)/(1 - z1*zb1)");
    auto cp1 = load("cp1");
    EXPECT_EQ(christoffel(cp1).gamma(0, 0, 0), cp1.parse("-2*zb1/(1 + z1*zb1)"));
}

TEST(Christoffel, CompatibleAndSymmetric)
{
    for (const char *name : {"disk", "cp1", "c2_flat"}) {
        auto c = load(name);
        auto conn = christoffel(c);
        int n = c.dimension();
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                for (int m = 0; m < n; ++m) {
                    EXPECT_EQ(conn.gamma(m, k, l), conn.gamma(m, l, k));
                }
                for (int j = 0; j < n; ++j) {
                    expr::chart_expr rhs;
                    for (int m = 0; m < n; ++m) {
                        rhs += conn.gamma(m, k, l) * c.g(m, j);
                    }
                    EXPECT_EQ(c.g(l, j).derivative(k), rhs);
                }
            }
        }
    }
}

TEST(OmegaForm, Examples)
{
    auto flat = load("c1_flat");
    form w(1);
    w.add(0b11, expr::chart_expr(gaussian_rational(0, mpq_class(1, 2))));
    EXPECT_EQ(flat.omega(), w);
    auto disk = load("disk");
    EXPECT_EQ(disk.omega().coefficient(0b11), disk.parse("i/(1 - z1*zb1)^2"));
    EXPECT_TRUE(load("cp1").omega().d().is_zero());
}

TEST(PoissonBracket, Examples)
{
    auto flat = load("c1_flat");
    auto z = flat.coordinate(0);
    auto zb = flat.coordinate(1);
    EXPECT_EQ(flat.poisson_bracket(z, zb), expr::chart_expr(gaussian_rational(0, -2)));
    EXPECT_TRUE(flat.poisson_bracket(z, z).is_zero());
    sample_stream rng(4);
    auto disk = load("disk");
    for (int t = 0; t < 5; ++t) {
        expr::chart_expr f(rng.polynomial(1, 2, 2));
        expr::chart_expr g(rng.polynomial(1, 2, 2));
        expr::chart_expr h(rng.polynomial(1, 2, 2));
        EXPECT_TRUE(disk.poisson_bracket(f, f).is_zero());
        EXPECT_EQ(disk.poisson_bracket(f, g), -disk.poisson_bracket(g, f));
        EXPECT_EQ(disk.poisson_bracket(f, g * h), disk.poisson_bracket(f, g) * h + g * disk.poisson_bracket(f, h));
    }
}

TEST(Curvature, FlatVanishes)
{
    auto c = load("c2_flat");
    auto cd = curvature(c, christoffel(c));
    EXPECT_TRUE(cd.curvature_element.is_zero());
    EXPECT_TRUE(cd.ricci_form.is_zero());
}

TEST(Curvature, BianchiAndRicci)
{
    for (const char *name : {"disk", "cp1"}) {
        auto c = load(name);
        auto conn = christoffel(c);
        auto cd = curvature(c, conn);
        const auto &R = cd.curvature_element;
        EXPECT_FALSE(R.is_zero());
        EXPECT_TRUE(weyl::delta(R).is_zero()) << name;
        EXPECT_TRUE(weyl::nabla(R, conn).is_zero()) << name;
        EXPECT_EQ(weyl::delta_fib(R, c), weyl::element::from_form(cd.ricci_form)) << name;
        EXPECT_EQ(cd.ricci_form, ricci_form_from_determinant(c)) << name;
        EXPECT_TRUE(cd.ricci_form.d().is_zero());
    }
    // The hyperbolic disk has Ricci form equal to its Kaehler form.
    auto disk = load("disk");
    EXPECT_EQ(curvature(disk, christoffel(disk)).ricci_form, disk.omega());
}
