#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <kahler/fedosov.hpp>

using namespace kahler;
using json = nlohmann::ordered_json;

namespace {

struct options {
    std::string chart;
    std::string product = "wick";
    int order = 2;
    int truncation = 0;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string f;
    std::string g;
    std::string suite = "all";
    std::string show;
};

// Exit status of a verification run with failed checks.
constexpr int exit_checks_failed = 3;

weyl::product_kind parse_kind(const std::string &s)
{
    if (s == "weyl") {
        return weyl::product_kind::weyl;
    }
    if (s == "wick") {
        return weyl::product_kind::wick;
    }
    return weyl::product_kind::antiwick;
}

int truncation(const options &o) { return o.truncation > 0 ? o.truncation : 2 * o.order + 2; }

json header(const options &o, const chart::chart &ch, const std::string &command)
{
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["chart"] = ch.name();
    j["product"] = o.product;
    j["order"] = o.order;
    j["truncation"] = truncation(o);
    return j;
}

void emit(const options &o, const json &j, const std::string &text)
{
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int cmd_star(const options &o)
{
    auto ch = chart::load_chart_file(o.chart);
    auto f = ch.parse(o.f);
    auto g = ch.parse(o.g);
    fedosov::fedosov_data d(fedosov::make_geometry(ch), parse_kind(o.product), ch.omega_series(),
                            weyl::element(ch.dimension()), truncation(o));
    auto s = fedosov::star(d, f, g, o.order);
    json j = header(o, ch, "star");
    j["f"] = f.to_string(ch.dimension());
    j["g"] = g.to_string(ch.dimension());
    j["coefficients"] = json::array();
    for (int r = 0; r <= s.order(); ++r) {
        j["coefficients"].push_back(s[r].to_string(ch.dimension()));
    }
    emit(o, j, s.to_string(ch.dimension()) + "\n");
    return 0;
}

int cmd_verify(const options &o)
{
    auto ch = chart::load_chart_file(o.chart);
    auto kind = parse_kind(o.product);
    fedosov::suite_options so;
    so.N = o.order;
    so.K = o.truncation;
    so.seed = o.seed;
    bool all = o.suite == "all";
    std::vector<std::string> suites = all ? fedosov::all_suites(ch, kind) : std::vector<std::string>{o.suite};
    auto rep = fedosov::run_suites(suites, ch, kind, so, all);

    json j = header(o, ch, "verify");
    j["seed"] = o.seed;
    j["suite"] = o.suite;
    j["checks"] = json::array();
    std::ostringstream text;
    text << "verify chart=" << ch.name() << " product=" << o.product << " order=" << o.order
         << " truncation=" << truncation(o) << " seed=" << o.seed << "\n";
    int failed = 0;
    for (const auto &c : rep.checks) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["evidence"] = fedosov::to_string(c.kind);
        if (!c.pass) {
            cj["counterexample"] = c.detail;
            ++failed;
        }
        j["checks"].push_back(cj);
        text << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << fedosov::to_string(c.kind) << "]";
        if (!c.pass && !c.detail.empty()) {
            text << ": " << c.detail;
        }
        text << "\n";
    }
    j["passed"] = failed == 0;
    text << "summary: " << rep.checks.size() - static_cast<std::size_t>(failed) << " passed, " << failed
         << " failed\n";
    emit(o, j, text.str());
    return failed == 0 ? 0 : exit_checks_failed;
}

std::string index(std::initializer_list<int> xs)
{
    std::string s;
    for (int x : xs) {
        s += (s.empty() ? "" : ",") + std::to_string(x + 1);
    }
    return s;
}

int cmd_geometry(const options &o)
{
    auto ch = chart::load_chart_file(o.chart);
    int n = ch.dimension();
    json j = header(o, ch, "geometry");
    j["show"] = o.show;
    json items = json::array();
    std::ostringstream text;
    auto line = [&](const std::string &name, const std::string &value) {
        items.push_back(json{{"name", name}, {"value", value}});
        text << name << " = " << value << "\n";
    };
    if (o.show == "christoffel") {
        auto conn = chart::christoffel(ch);
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) {
                    if (!conn.gamma(m, k, l).is_zero()) {
                        line("Gamma[" + index({m, k, l}) + "]", conn.gamma(m, k, l).to_string(n));
                    }
                }
            }
        }
        if (items.empty()) {
            line("Gamma", "0");
        }
    } else if (o.show == "curvature") {
        auto geo = fedosov::make_geometry(ch);
        const auto &R = geo->curv.curvature_element;
        if (R.is_zero()) {
            line("R", "0");
        } else {
            std::istringstream terms(R.to_string());
            for (std::string t; std::getline(terms, t);) {
                line("R", t);
            }
        }
    } else if (o.show == "ricci") {
        auto geo = fedosov::make_geometry(ch);
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                line("Ric[" + index({k, l}) + "]", geo->curv.ricci_tensor[k * n + l].to_string(n));
            }
        }
        line("rho", geo->curv.ricci_form.is_zero() ? "0" : geo->curv.ricci_form.to_string());
    } else if (o.show == "omega") {
        line("omega", ch.omega().to_string());
        for (const auto &[p, f] : ch.omega_series()) {
            line("Omega[nu^" + std::to_string(p) + "]", f.to_string());
        }
    } else if (o.show == "karabegov") {
        if (!ch.has_potential()) {
            throw validation_error("chart '" + ch.name() + "' has no potential_gradient");
        }
        fedosov::fedosov_data d(fedosov::make_geometry(ch), parse_kind(o.product), ch.omega_series(),
                                weyl::element(n), truncation(o));
        auto k = fedosov::karabegov_form(d, o.order, {});
        for (const auto &[p, f] : k.extracted) {
            line("K[nu^" + std::to_string(p) + "]", f.to_string());
        }
        for (int a = 0; a < n; ++a) {
            for (int p = 0; p <= o.order; ++p) {
                const auto &u = k.potentials[static_cast<std::size_t>(a)][p];
                if (!u.is_zero()) {
                    line((d.kind() == weyl::product_kind::wick ? "u" : "v") + std::to_string(a + 1) + "[nu^" +
                             std::to_string(p) + "]",
                         u.to_string(n));
                }
            }
        }
        bool agree = k.checks.passed(d.kind() == weyl::product_kind::wick ? "K = omega + Omega"
                                                                           : "Kbar = omega + Omega");
        line("closed form agrees", agree ? "true" : "false");
        if (!agree) {
            emit(o, j, text.str());
            throw contract_violation("Karabegov form extraction differs from omega + Omega");
        }
    }
    j["items"] = items;
    emit(o, j, text.str());
    return 0;
}

int cmd_describe(const options &o)
{
    auto ch = chart::load_chart_file(o.chart);
    int n = ch.dimension();
    json j = header(o, ch, "describe");
    std::ostringstream text;
    text << "chart: " << ch.name() << "\n" << "dimension: " << n << "\n";
    json metric = json::array();
    json inverse = json::array();
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            metric.push_back(ch.g(k, l).to_string(n));
            inverse.push_back(ch.ginv(k, l).to_string(n));
            text << "g[" << index({k, l}) << "] = " << ch.g(k, l).to_string(n) << "\n";
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            text << "ginv[" << index({k, l}) << "] = " << ch.ginv(k, l).to_string(n) << "\n";
        }
    }
    json base = json::array();
    for (const auto &p : ch.factor_base()) {
        base.push_back(p.to_string(n));
        text << "factor: " << p.to_string(n) << "\n";
    }
    json potential = nullptr;
    if (ch.has_potential()) {
        potential = json::array();
        for (int k = 0; k < n; ++k) {
            potential.push_back(ch.potential_gradient()[k].to_string(n));
            text << "u0[" << k + 1 << "] = " << ch.potential_gradient()[k].to_string(n) << "\n";
        }
    }
    json omega = json::array();
    for (const auto &[p, f] : ch.omega_series()) {
        omega.push_back(json{{"nu_power", p}, {"two_form", f.to_string()}});
        text << "Omega[nu^" << p << "] = " << f.to_string() << "\n";
    }
    fedosov::fedosov_data d(fedosov::make_geometry(ch), parse_kind(o.product), ch.omega_series(),
                            weyl::element(n), truncation(o));
    text << "flat: " << (ch.is_flat_constant() ? "true" : "false") << "\n";
    text << "r terms: " << d.r().size() << "\n";
    j["dimension"] = n;
    j["metric"] = metric;
    j["inverse_metric"] = inverse;
    j["factor_base"] = base;
    j["potential_gradient"] = potential;
    j["omega_series"] = omega;
    j["flat"] = ch.is_flat_constant();
    j["r_terms"] = d.r().size();
    emit(o, j, text.str());
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    options o;
    CLI::App app{"Fedosov star products on pseudo-Kaehler charts"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--chart", o.chart, "chart file (JSON)")->required();
    app.add_option("--product", o.product, "fibrewise product")
        ->check(CLI::IsMember({"weyl", "wick", "antiwick"}))
        ->capture_default_str();
    app.add_option("--order", o.order, "nu-order N")->check(CLI::Range(0, 8))->capture_default_str();
    app.add_option("--truncation", o.truncation, "total-degree truncation K (default 2N+2)")
        ->check(CLI::Range(0, 40));
    app.add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto *star = app.add_subcommand("star", "print C_0..C_N of f * g");
    star->add_option("--f", o.f, "first factor")->required();
    star->add_option("--g", o.g, "second factor")->required();

    std::vector<std::string> suites = fedosov::suite_names();
    suites.push_back("all");
    auto *verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(suites))->capture_default_str();

    auto *geometry = app.add_subcommand("geometry", "render geometric objects of the chart");
    geometry->add_option("--show", o.show, "object")
        ->required()
        ->check(CLI::IsMember({"christoffel", "curvature", "ricci", "omega", "karabegov"}));

    app.add_subcommand("describe", "summarize the chart and its Fedosov data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*star) {
            return cmd_star(o);
        }
        if (*verify) {
            return cmd_verify(o);
        }
        if (*geometry) {
            return cmd_geometry(o);
        }
        return cmd_describe(o);
    } catch (const user_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const contract_violation &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
