// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <kahler/fedosov.hpp>

#include "flat_oracle.hpp"

using namespace kahler;
using namespace kahler::fedosov;
using expr::chart_expr;

namespace {

constexpr product_kind all_kinds[] = {product_kind::weyl, product_kind::wick, product_kind::antiwick};

chart::chart load(const std::string &name)
{
    return chart::load_chart_file(std::string(KAHLER_CHART_DIR) + "/" + name + ".json");
}

// The chart with Omega = nu * omega.
chart::chart with_nu_omega(const chart::chart &ch)
{
    chart::omega_entry e;
    e.nu_power = 1;
    e.explicit_part = form(ch.dimension());
    e.omega_multiple = gaussian_rational(1);
    return ch.with_omega({e}, ch.name() + "_nu_omega");
}

struct outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }

    void require(const report &r, const std::string &context)
    {
        for (const auto &c : r.checks) {
            require(c.pass, context + ": " + r.title + "." + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
        }
    }
};

// Negative expectations need the check to be present.
bool present(const report &r, const std::string &name)
{
    for (const auto &c : r.checks) {
        if (c.name == name) {
            return true;
        }
    }
    return false;
}

std::string kind_name(product_kind k) { return weyl::to_string(k); }

outcome flat_closed_form()
{
    outcome out;
    for (const char *name : {"c1_flat", "c2_flat"}) {
        auto ch = load(name);
        int n = ch.dimension();
        std::vector<std::vector<oracle::cplx>> ginv(n, std::vector<oracle::cplx>(n));
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                auto c = ch.ginv(k, l).constant_value();
                ginv[k][l] = {c.re(), c.im()};
            }
        }
        // Exponent vectors of all monomials of per-variable degree <= 3.
        std::vector<oracle::exps> mons;
        oracle::exps e{};
        for (;;) {
            mons.push_back(e);
            int s = 2 * n - 1;
            while (s >= 0 && e[s] == 3) {
                e[s] = 0;
                --s;
            }
            if (s < 0) {
                break;
            }
            ++e[s];
        }
        for (auto kind : {product_kind::wick, product_kind::antiwick}) {
            auto d = fedosov_data::from_chart(ch, kind, 10);
            std::size_t bad = 0;
            std::string first;
            for (const auto &a : mons) {
                chart_expr f = oracle::to_expr(oracle::monomial(a), n);
                for (const auto &b : mons) {
                    chart_expr g = oracle::to_expr(oracle::monomial(b), n);
                    nu_series s = star(d, f, g, 4);
                    nu_series c = closed_form_flat(ch, f, g, kind, 4);
                    auto o = oracle::product(n, ginv, a, b, 4, kind == product_kind::wick);
                    bool ok = s == c;
                    for (int r = 0; r <= 4 && ok; ++r) {
                        ok = c[r] == oracle::to_expr(o[static_cast<std::size_t>(r)], n);
                    }
                    if (!ok && bad++ == 0) {
                        first = f.to_string(n) + " * " + g.to_string(n);
                    }
                }
            }
            out.require(bad == 0, std::string(name) + " " + kind_name(kind) + ": " + std::to_string(bad) +
                                      " mismatching pairs, first " + first);
        }
    }
    return out;
}

outcome associativity()
{
    outcome out;
    for (const char *name : {"c1_flat", "disk", "cp1"}) {
        auto base = load(name);
        for (const auto &ch : {base, with_nu_omega(base)}) {
            auto pool = random_pool(1, 2024, 30, 3, 3);
            for (auto kind : all_kinds) {
                auto d = fedosov_data::from_chart(ch, kind, 8);
                for (int t = 0; t < 10; ++t) {
                    const auto &f = pool[static_cast<std::size_t>(3 * t)];
                    const auto &g = pool[static_cast<std::size_t>(3 * t + 1)];
                    const auto &h = pool[static_cast<std::size_t>(3 * t + 2)];
                    nu_series lhs = star(d, star(d, f, g, 3), nu_series::constant(h, 3), 3);
                    nu_series rhs = star(d, nu_series::constant(f, 3), star(d, g, h, 3), 3);
                    out.require(lhs == rhs, ch.name() + " " + kind_name(kind) + " triple " + std::to_string(t));
                }
            }
        }
    }
    return out;
}

outcome wick_characterization()
{
    outcome out;
    auto disk = load("disk_nu_omega");
    wick_witnesses w;
    w.holomorphic = {chart_expr(1), disk.parse("z1"), disk.parse("z1^2"), disk.parse("z1^3")};
    w.antiholomorphic = {chart_expr(1), disk.parse("zb1"), disk.parse("zb1^2"), disk.parse("zb1^3")};
    w.partners = random_pool(1, 7, 6);
    w.partners.push_back(disk.parse("z1*zb1"));
    out.require(wick_type_check(fedosov_data::from_chart(disk, product_kind::wick, 8), 3, w), "disk, Omega = nu omega");

    auto c2 = load("c2_flat_omega20");
    auto w2 = standard_witnesses(c2, {c2.parse("z1"), c2.parse("zb1"), c2.parse("z2"), c2.parse("zb2")});
    auto neg = wick_type_check(fedosov_data::from_chart(c2, product_kind::wick, 8), 3, w2);
    for (const char *c : {"pi_z r = 0", "Omega of type (1,1)", "antiholomorphic h: h * g = hg",
                          "holomorphic h: f * h = fh"}) {
        out.require(present(neg, c), std::string("negative control: missing check ") + c);
    }
    bool structural_fail = !neg.passed("pi_z r = 0") && !neg.passed("Omega of type (1,1)");
    bool behavioral_fail = !neg.passed("antiholomorphic h: h * g = hg") || !neg.passed("holomorphic h: f * h = fh");
    out.require(structural_fail, "negative control: structural conditions did not fail");
    out.require(behavioral_fail, "negative control: behavioral conditions did not fail");
    return out;
}

outcome karabegov()
{
    outcome out;
    auto pool = monomial_pool(1, 3);
    for (const char *name : {"c1_flat", "disk_nu_omega"}) {
        auto ch = load(name);
        for (auto kind : {product_kind::wick, product_kind::antiwick}) {
            auto k = karabegov_form(fedosov_data::from_chart(ch, kind, 8), 3, pool);
            out.require(k.checks, std::string(name) + " " + kind_name(kind));
        }
    }
    auto disk = load("disk_nu_omega");
    auto k = karabegov_form(fedosov_data::from_chart(disk, product_kind::wick, 8), 3, pool);
    out.require(chart::series_equal(k.extracted, {{0, disk.omega()}, {1, disk.omega()}}), "disk: K != (1 + nu) omega");
    return out;
}

outcome parity()
{
    outcome out;
    auto pool = monomial_pool(1, 3);
    for (const char *name : {"c1_flat", "disk"}) {
        auto ch = load(name);
        auto w = fedosov_data::from_chart(ch, product_kind::wick, 8);
        auto aw = fedosov_data::from_chart(ch, product_kind::antiwick, 8);
        std::size_t bad = 0;
        for (const auto &f : pool) {
            for (const auto &g : pool) {
                if (!(star(aw, f, g, 3) == parity_P(star(w, g, f, 3)))) {
                    ++bad;
                }
            }
        }
        out.require(bad == 0, std::string(name) + ": " + std::to_string(bad) + " mismatching pairs");
    }
    auto disk = load("disk_nu_omega");
    out.require(parity_transport(fedosov_data::from_chart(disk, product_kind::wick, 8), 3, random_pool(1, 5, 5)).checks,
                "disk, Omega = nu omega");
    return out;
}

outcome structural_suite()
{
    outcome out;
    suite_options o;
    o.seed = 6;
    o.elements = 20;
    o.max_degree = 6;
    for (const char *name : {"c1_flat", "c2_flat", "disk", "cp1"}) {
        auto ch = load(name);
        out.require(algebra_suite(ch, o), name);
        out.require(geometry_suite(*make_geometry(ch), o), name);
    }
    return out;
}

outcome d_squared_and_uniqueness()
{
    outcome out;
    for (const char *name : {"c1_flat", "disk"}) {
        auto ch = load(name);
        for (auto kind : all_kinds) {
            auto rep = fedosov_properties(fedosov_data::from_chart(ch, kind, 8), 3, {ch.parse("z1")}, 0);
            std::string context = std::string(name) + " " + kind_name(kind);
            out.require(rep.passed("r unique from seeds 0 and delta^{-1} R"), context + ": r depends on the seed");
            out.require(rep.passed("D^2 = 0 on generators to degree K-2"), context + ": D^2 != 0");
        }
    }
    return out;
}

outcome equivalences()
{
    outcome out;
    auto flat = load("c1_flat");
    std::vector<chart_expr> samples{flat.parse("z1"), flat.parse("zb1"), flat.parse("z1*zb1")};
    auto d = fedosov_data::from_chart(flat, product_kind::wick, 8);
    form B(1);
    B.add(1, flat.parse("zb1"));
    fedosov_data dp(d.geo(), product_kind::wick, {{1, B.d().scaled(chart_expr(-1))}}, element(1), 8);
    auto A = equivalence_A_h(d, dp, {{1, B}});
    out.require(equivalence_check(A, 2, samples), "flat, Omega' = -d(nu zb dz)");

    for (const char *name : {"c1_flat", "disk_nu_omega"}) {
        auto ch = load(name);
        auto pool = random_pool(1, 11, 4);
        pool.push_back(ch.parse("z1"));
        pool.push_back(ch.parse("zb1"));
        auto a = fedosov_data::from_chart(ch, product_kind::wick, 8);
        weyl::key k = weyl::key{}.add_count(0, 1).add_count(1, 2);
        element s(1);
        s.add(k, ch.parse("z1"));
        fedosov_data b(a.geo(), product_kind::wick, a.omega(), s, 8);
        out.require(!(a.r() == b.r()), std::string(name) + ": normalization had no effect on r");
        auto As = equivalence_A_h(a, b, {});
        out.require(is_identity(As, 3, pool), std::string(name) + ": A_h != id");
        bool same = true;
        for (const auto &f : pool) {
            for (const auto &g : pool) {
                same = same && star(a, f, g, 3) == star(b, f, g, 3);
            }
        }
        out.require(same, std::string(name) + ": products differ");
    }
    return out;
}

outcome hermiticity()
{
    outcome out;
    for (auto kind : all_kinds) {
        for (const char *name : {"disk_i_nu_omega", "disk_nu_omega"}) {
            auto ch = load(name);
            auto pool = random_pool(1, 3, 4);
            pool.push_back(ch.parse("z1"));
            pool.push_back(ch.parse("zb1"));
            auto rep = hermitian_check(fedosov_data::from_chart(ch, kind, 8), 2, pool);
            bool hermitian = std::string(name) == "disk_i_nu_omega";
            std::string context = std::string(name) + " " + kind_name(kind);
            for (const char *c : {"C(Omega) = Omega", "C(f * g) = C(g) * C(f)"}) {
                out.require(present(rep, c), context + ": missing check " + c);
            }
            out.require(rep.passed("C(Omega) = Omega") == hermitian, context + ": structural criterion");
            out.require(rep.passed("C(f * g) = C(g) * C(f)") == hermitian, context + ": product criterion");
            out.require(rep.passed("criteria agree"), context + ": criteria disagree");
        }
    }
    return out;
}

outcome vey()
{
    outcome out;
    auto ch = load("disk_nu_omega");
    std::vector<chart_expr> pool;
    for (const char *t : {"z1", "zb1", "z1^2", "z1*zb1", "zb1^2", "z1^2*zb1", "z1*zb1^3", "zb1^3 + z1"}) {
        pool.push_back(ch.parse(t));
    }
    out.require(vey_order_check(fedosov_data::from_chart(ch, product_kind::wick, 8), 2, pool, 4), "disk wick");
    return out;
}

struct criterion {
    int number;
    std::string title;
    double budget;
    std::function<outcome()> run;
};

} // namespace

int main()
{
    std::vector<criterion> all{
        {1, "flat closed-form equivalence, C^1 and C^2, wick and antiwick, to nu^4", 60, flat_closed_form},
        {2, "associativity to nu^3, 10 triples per chart, kind and Omega", 600, associativity},
        {3, "Wick-type characterization on the disk with negative control", 0, wick_characterization},
        {4, "Karabegov form equals omega + Omega with potential relations to nu^3", 0, karabegov},
        {5, "parity duality to nu^3, flat and disk", 0, parity},
        {6, "structural operator identities on 20 random elements per chart", 0, structural_suite},
        {7, "D^2 = 0 and uniqueness of r at K = 8, flat and disk", 0, d_squared_and_uniqueness},
        {8, "equivalence transformations A_h", 0, equivalences},
        {9, "Hermiticity criteria agree to nu^2", 0, hermiticity},
        {10, "Vey order (r,r) for r <= 2 on disk wick", 300, vey},
    };
    int failed = 0;
    for (const auto &c : all) {
        auto start = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget > 0 && secs > c.budget) {
            o.pass = false;
            std::ostringstream s;
            s << "runtime " << secs << " s exceeds target " << c.budget << " s";
            o.notes.push_back(s.str());
        }
        std::ostringstream line;
        line << "criterion " << std::setw(2) << c.number << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title
             << " (" << std::fixed << std::setprecision(2) << secs << " s)";
        std::cout << line.str() << std::endl;
        for (std::size_t i = 0; i < o.notes.size() && i < 10; ++i) {
            std::cout << "    " << o.notes[i] << "\n";
        }
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
