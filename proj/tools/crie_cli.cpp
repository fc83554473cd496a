// Command-line front-end: reference-table reproduction, tau1 scans, bound
// audits, representation verification, trend classification and
// goodness-of-fit testing.
//
// Exit codes: 0 success, 1 verification/audit failure, 2 usage or input error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crie/bounds.hpp"
#include "crie/entropy.hpp"
#include "crie/errors.hpp"
#include "crie/estimation.hpp"
#include "crie/parallel.hpp"
#include "crie/reference_data.hpp"
#include "crie/shape_diag.hpp"

namespace {

using nlohmann::json;

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

GridSpec parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw crie::ParseError("grid '" + text + "' must look like 'lo:hi:n'");
    }
    GridSpec g;
    try {
        g.lo = std::stod(text.substr(0, c1));
        g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        g.n = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw crie::ParseError("grid '" + text + "' must look like 'lo:hi:n'");
    }
    if (!(g.lo < g.hi) || g.n < 2) throw crie::ParseError("grid needs lo < hi and n >= 2");
    return g;
}

// Output sink: --out FILE or stdout.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw crie::Error("cannot open output file '" + path + "'");
        os = &file;
    }
    std::ostream& out() { return *os; }
};

struct CommonOpts {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::string format = "table";
    std::string out_path;

    crie::QuadratureConfig quad() const { return {abs_tol, rel_tol, 2000}; }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--abs-tol", o.abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--rel-tol", o.rel_tol, "relative quadrature tolerance");
    if (with_format) {
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"table", "csv", "json"}));
    }
    cmd->add_option("--out", o.out_path, "write output to FILE instead of stdout");
}

int cmd_table(const CommonOpts& o) {
    Sink sink;
    sink.open(o.out_path);
    auto& os = sink.out();

    const auto cases = crie::refdata::crie_reference_cases();
    std::vector<double> computed(cases.size());
    crie::detail::parallel_for(cases.size(), [&](std::size_t i) {
        const auto& c = cases[i];
        const crie::TruncatedView v(crie::parse_distribution(c.dist),
                                    crie::Window(c.tau1, c.tau2), o.quad());
        computed[i] = crie::entropy(v);
    });

    double max_dev = 0.0;
    if (o.format == "csv") {
        os << "dist,tau1,tau2,computed,reference,abs_dev\n";
    } else if (o.format == "table") {
        os << std::left << std::setw(16) << "dist" << std::right << std::setw(6) << "tau1"
           << std::setw(6) << "tau2" << std::setw(12) << "computed" << std::setw(12)
           << "reference" << std::setw(12) << "abs_dev" << "\n";
    }
    json rows = json::array();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const double dev = std::fabs(computed[i] - c.value);
        max_dev = std::max(max_dev, dev);
        if (o.format == "csv") {
            // dist specs carry commas; keep the column quoted
            os << '"' << c.dist << "\"," << num(c.tau1) << ',' << num(c.tau2) << ','
               << num(computed[i]) << ',' << num(c.value) << ',' << num(dev) << "\n";
        } else if (o.format == "json") {
            rows.push_back({{"dist", c.dist},
                            {"tau1", c.tau1},
                            {"tau2", c.tau2},
                            {"computed", computed[i]},
                            {"reference", c.value},
                            {"abs_dev", dev}});
        } else {
            os << std::left << std::setw(16) << c.dist << std::right << std::fixed
               << std::setprecision(1) << std::setw(6) << c.tau1 << std::setw(6) << c.tau2
               << std::setprecision(5) << std::setw(12) << computed[i] << std::setw(12) << c.value
               << std::scientific << std::setprecision(2) << std::setw(12) << dev << "\n";
            os.unsetf(std::ios::floatfield);
        }
    }
    if (o.format == "json") {
        os << rows.dump(2) << "\n";
    } else {
        os << "# max |computed - reference| = " << std::scientific << std::setprecision(3)
           << max_dev << "\n";
    }
    return 0;
}

int cmd_scan(const CommonOpts& o, const std::string& dist_spec, double tau2,
             const std::string& grid_text, const std::string& quantities) {
    Sink sink;
    sink.open(o.out_path);
    auto& os = sink.out();

    const crie::DistPtr dist = crie::parse_distribution(dist_spec);
    const GridSpec g = parse_grid(grid_text);
    const auto taus = crie::linspace(g.lo, g.hi, g.n);

    const bool want_m1 = quantities.find("m1") != std::string::npos;
    const bool want_h = quantities.find("H") != std::string::npos;
    if (!want_m1 && !want_h) throw crie::ParseError("--quantities must mention m1 and/or H");

    struct Row {
        double tau1 = 0.0, m1 = 0.0, h = 0.0;
        bool ok = false;
        std::string error;
    };
    std::vector<Row> rows(taus.size());
    crie::detail::parallel_for(taus.size(), [&](std::size_t i) {
        rows[i].tau1 = taus[i];
        try {
            const crie::TruncatedView v(dist, crie::Window(taus[i], tau2), o.quad());
            if (want_m1) rows[i].m1 = v.mean_residual();
            if (want_h) rows[i].h = crie::entropy(v);
            rows[i].ok = true;
        } catch (const crie::Error& e) {
            rows[i].error = e.what();
        }
    });

    os << "tau1";
    if (want_m1) os << ",m1";
    if (want_h) os << ",H";
    os << "\n";
    for (const Row& r : rows) {
        if (!r.ok) {
            std::cerr << "warning: skipped tau1=" << r.tau1 << ": " << r.error << "\n";
            continue;
        }
        os << num(r.tau1);
        if (want_m1) os << ',' << num(r.m1);
        if (want_h) os << ',' << num(r.h);
        os << "\n";
    }
    return 0;
}

int cmd_bounds(const CommonOpts& o, const std::string& dist_spec,
               const std::vector<std::string>& window_texts) {
    Sink sink;
    sink.open(o.out_path);
    auto& os = sink.out();

    const crie::DistPtr dist = crie::parse_distribution(dist_spec);
    std::vector<crie::Window> windows;
    for (const auto& w : window_texts) windows.push_back(crie::Window::parse(w));

    const auto all = crie::audit_windows(dist, windows, o.quad());
    bool violated = false;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (o.format == "json") {
            for (const auto& r : all[i]) {
                json j = json::parse(crie::to_json_line(r));
                j["dist"] = dist_spec;
                j["window"] = windows[i].describe();
                os << j.dump() << "\n";
            }
        } else {
            os << "== " << dist_spec << "  window " << windows[i].describe() << "\n";
            os << crie::format_report_table(all[i]);
        }
        for (const auto& r : all[i]) violated = violated || r.certified_and_violated();
    }
    return violated ? 1 : 0;
}

int cmd_verify(const CommonOpts& o, const std::string& dist_spec, const std::string& window_text) {
    Sink sink;
    sink.open(o.out_path);
    auto& os = sink.out();

    const crie::TruncatedView v(crie::parse_distribution(dist_spec),
                                crie::Window::parse(window_text), o.quad());
    const crie::CrieMethod methods[] = {
        crie::CrieMethod::definition, crie::CrieMethod::via_mrl, crie::CrieMethod::via_covariance,
        crie::CrieMethod::via_relevation};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto m : methods) {
        const double h = crie::entropy(v, m);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
        os << std::left << std::setw(12) << crie::to_string(m) << " " << num(h) << "\n";
    }
    const double spread = hi - lo;
    os << "max spread   " << num(spread) << "\n";
    return spread > 1e-6 ? 1 : 0;
}

int cmd_classify(const CommonOpts& o, const std::string& dist_spec, double tau2,
                 const std::string& grid_text) {
    Sink sink;
    sink.open(o.out_path);
    auto& os = sink.out();

    const crie::DistPtr dist = crie::parse_distribution(dist_spec);
    const GridSpec g = parse_grid(grid_text);
    const auto cert =
        crie::certify_entropy_trend(dist, tau2, crie::linspace(g.lo, g.hi, g.n), o.quad());

    json j;
    j["dist"] = dist_spec;
    j["tau2"] = tau2;
    j["verdict"] = crie::to_string(cert.verdict) + std::string(" (grid-certified)");
    j["entropy_scan"] = crie::to_string(cert.entropy_scan.direction);
    j["sign_uniform"] = cert.sign_uniform;
    j["max_identity_rel_err"] = cert.max_identity_rel_err;
    j["aging_class"] = crie::to_string(crie::classify_aging(dist));
    j["cells"] = json::array();
    for (const auto& c : cert.cells) {
        j["cells"].push_back({{"tau1", c.tau1},
                              {"H", c.entropy},
                              {"m1", c.mean_residual},
                              {"h1", c.gfr},
                              {"dH_dtau1_fd", c.d_entropy_fd},
                              {"identity_rel_err", c.identity_rel_err}});
    }
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_gof(const CommonOpts& o, const std::string& data_path, const std::string& dist_spec,
            const std::string& window_text, int replicates, std::uint64_t seed, double alpha) {
    Sink sink;
    sink.open(o.out_path);
    auto& os = sink.out();

    std::ifstream in(data_path);
    if (!in) throw crie::Error("cannot open data file '" + data_path + "'");
    const crie::SampleData sample = crie::SampleData::read(in);

    const auto result = crie::bootstrap_gof(sample, crie::parse_distribution(dist_spec),
                                            crie::Window::parse(window_text), replicates, seed);
    if (o.format == "json") {
        json j;
        j["statistic"] = result.statistic;
        j["p_value"] = result.p_value;
        j["replicates"] = result.replicates;
        j["seed"] = result.seed;
        j["alpha"] = alpha;
        j["reject_null"] = result.p_value <= alpha;
        os << j.dump(2) << "\n";
    } else {
        os << "n           " << sample.size() << "\n";
        os << "statistic   " << num(result.statistic) << "\n";
        os << "p_value     " << num(result.p_value) << "\n";
        os << "replicates  " << result.replicates << "\n";
        os << "seed        " << result.seed << "\n";
        os << "decision    " << (result.p_value <= alpha ? "reject" : "do not reject")
           << " at alpha=" << alpha << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"doubly truncated entropy toolkit"};
    app.require_subcommand(1);
    app.set_config("--config")->description("key=value file mirroring the flags; flags win");

    CommonOpts table_o, scan_o, bounds_o, verify_o, classify_o, gof_o;
    std::string dist_spec, window_text, grid_text, data_path;
    std::string quantities = "m1,H";
    std::vector<std::string> window_texts;
    double tau2 = 0.0, alpha = 0.05;
    int replicates = 199;
    std::uint64_t seed = 42;

    auto* table = app.add_subcommand("table", "recompute the built-in reference grid");
    add_common(table, table_o);

    auto* scan = app.add_subcommand("scan", "tau1 scan of m1 and H at fixed tau2 (CSV)");
    scan->add_option("--dist", dist_spec, "distribution spec, e.g. exp:0.5")->required();
    scan->add_option("--tau2", tau2, "fixed upper truncation point")->required();
    scan->add_option("--grid", grid_text, "tau1 grid lo:hi:n")->required();
    scan->add_option("--quantities", quantities, "comma list from {m1,H}");
    add_common(scan, scan_o, false);

    auto* bounds = app.add_subcommand("bounds", "audit the bound suite on given windows");
    bounds->add_option("--dist", dist_spec, "distribution spec")->required();
    bounds->add_option("--window", window_texts, "window tau1:tau2 (repeatable)")->required();
    add_common(bounds, bounds_o);

    auto* verify = app.add_subcommand("verify", "compare the four entropy routes");
    verify->add_option("--dist", dist_spec, "distribution spec")->required();
    verify->add_option("--window", window_text, "window tau1:tau2")->required();
    add_common(verify, verify_o, false);

    auto* classify = app.add_subcommand("classify", "grid-certify the entropy trend in tau1");
    classify->add_option("--dist", dist_spec, "distribution spec")->required();
    classify->add_option("--tau2", tau2, "fixed upper truncation point")->required();
    classify->add_option("--grid", grid_text, "tau1 grid lo:hi:n")->required();
    add_common(classify, classify_o, false);

    auto* gof = app.add_subcommand("gof", "bootstrap goodness-of-fit test");
    gof->add_option("--data", data_path, "newline-delimited decimal data file")->required();
    gof->add_option("--dist", dist_spec, "hypothesized distribution spec")->required();
    gof->add_option("--window", window_text, "window tau1:tau2")->required();
    gof->add_option("--replicates", replicates, "bootstrap replicates (>= 99)");
    gof->add_option("--seed", seed, "random seed");
    gof->add_option("--alpha", alpha, "decision level");
    gof->add_option("--format", gof_o.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    gof->add_option("--out", gof_o.out_path, "write output to FILE");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table->parsed()) return cmd_table(table_o);
        if (scan->parsed()) return cmd_scan(scan_o, dist_spec, tau2, grid_text, quantities);
        if (bounds->parsed()) return cmd_bounds(bounds_o, dist_spec, window_texts);
        if (verify->parsed()) return cmd_verify(verify_o, dist_spec, window_text);
        if (classify->parsed()) return cmd_classify(classify_o, dist_spec, tau2, grid_text);
        if (gof->parsed())
            return cmd_gof(gof_o, data_path, dist_spec, window_text, replicates, seed, alpha);
    } catch (const crie::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
