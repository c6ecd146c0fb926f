#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qk/cyclo.hpp"
#include "qk/expr.hpp"
#include "qk/point.hpp"
#include "qk/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct usage_error : qk::error {
    using qk::error::error;
};

// --ring "D=4,N=4,Q=1"
qk::ConfigPtr parse_ring_spec(const std::string& spec) {
    int D = 4, Q = 1, N = -1;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw usage_error("ring spec entries must look like D=4");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        int* target = nullptr;
        if (key == "D")
            target = &D;
        else if (key == "Q")
            target = &Q;
        else if (key == "N")
            target = &N;
        else
            throw usage_error("unknown ring spec key '" + key + "' (use D, N, Q)");
        try {
            *target = std::stoi(val);
        } catch (...) {
            throw usage_error("invalid integer in ring spec: " + item);
        }
    }
    if (N < 0) N = D;
    return qk::make_config(Q, N, D);
}

std::string cyclo_lambda_str(const qk::CycloLambda& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : e.terms()) {
        if (!first) os << " + ";
        first = false;
        std::string ms = qk::monomial_str(mono, *e.config());
        os << "(" << c.str() << ")";
        if (!ms.empty()) os << "*" << ms;
    }
    return os.str();
}

json witness_json(const qk::Witness& w) {
    json j;
    j["where"] = w.where;
    j["monomial"] = w.monomial;
    j["q_exponent"] = w.q_exponent;
    j["expected"] = w.expected;
    j["got"] = w.got;
    return j;
}

json report_json(const qk::IdentityReport& r) {
    json j;
    j["schema"] = "qk-report/1";
    j["name"] = r.name;
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    if (r.witness) j["witness"] = witness_json(*r.witness);
    return j;
}

void emit_report(const std::vector<qk::IdentityReport>& reports, const std::string& path) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    std::string text = arr.dump(2);
    text += "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw qk::error("cannot open output file: " + path);
    out << text;
    if (!out.good()) throw qk::error("failed writing output file: " + path);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw usage_error("unknown key '" + key + "' in " + where);
    }
}

qk::SuiteConfig load_suite_config(const std::string& path, std::string* output_path) {
    qk::SuiteConfig cfg = qk::SuiteConfig::defaults();
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw usage_error(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(j, {"ring", "grid", "conductors", "checks", "seed", "random", "corrupt_t_sign", "output"},
                        "config");
    if (j.contains("ring")) {
        reject_unknown_keys(j["ring"], {"truncation", "novikov", "sym"}, "config.ring");
        int D = j["ring"].value("truncation", 4);
        int Q = j["ring"].value("novikov", 1);
        int N = j["ring"].value("sym", D);
        cfg.ring = qk::make_config(Q, N, D);
    }
    auto parse_grid_list = [&](const json& list) {
        std::vector<qk::LambdaElem> out;
        for (const auto& item : list) out.push_back(qk::parse_lambda(item.get<std::string>(), cfg.ring));
        return out;
    };
    if (j.contains("grid")) {
        reject_unknown_keys(j["grid"], {"tau", "t", "eps"}, "config.grid");
        if (j["grid"].contains("tau")) cfg.taus = parse_grid_list(j["grid"]["tau"]);
        if (j["grid"].contains("t")) cfg.ts = parse_grid_list(j["grid"]["t"]);
        if (j["grid"].contains("eps")) cfg.epss = parse_grid_list(j["grid"]["eps"]);
    } else {
        // rebuild the default grid over the configured ring
        qk::LambdaElem zero(cfg.ring);
        qk::LambdaElem g0 = qk::LambdaElem::generator(cfg.ring, 0);
        cfg.taus = {zero, g0};
        cfg.ts = {zero, g0};
        cfg.epss = {g0};
        if (cfg.ring->sym >= 1) {
            qk::LambdaElem n1 = qk::LambdaElem::generator(cfg.ring, cfg.ring->novikov);
            cfg.taus.push_back(n1);
            cfg.taus.push_back(g0 + n1);
            cfg.ts.push_back(n1);
            cfg.ts.push_back(g0 + n1);
        }
    }
    if (j.contains("conductors")) {
        cfg.conductors = j["conductors"].get<std::vector<int>>();
        for (int m : cfg.conductors)
            if (m < 1) throw usage_error("conductors must be >= 1");
    }
    if (j.contains("checks")) {
        cfg.checks.clear();
        for (const auto& c : j["checks"]) cfg.checks.insert(c.get<std::string>());
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("random")) {
        reject_unknown_keys(j["random"], {"hamiltonian_cases", "infra_cases"}, "config.random");
        cfg.hamiltonian_cases = j["random"].value("hamiltonian_cases", cfg.hamiltonian_cases);
        cfg.infra_cases = j["random"].value("infra_cases", cfg.infra_cases);
    }
    if (j.contains("corrupt_t_sign")) cfg.corrupt_t_sign = j["corrupt_t_sign"].get<bool>();
    if (j.contains("output") && output_path && output_path->empty())
        *output_path = j["output"].get<std::string>();
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"qk: exact verification toolkit for genus-0 permutation-equivariant quantum K-theory"};
    app.require_subcommand(1);
    std::string ring_spec, expr1, expr2, tau_src = "0", t_src = "0", config_path, output_path;
    std::vector<int> conductors{1, 2, 3, 4};

    CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate an expression and print its canonical form");
    cmd_eval->add_option("expr", expr1, "expression")->required();
    cmd_eval->add_option("--ring", ring_spec, "ring spec, e.g. D=4,N=4,Q=1");

    CLI::App* cmd_project = app.add_subcommand("project", "split a loop into K_+ and K_- parts");
    cmd_project->add_option("expr", expr1)->required();
    cmd_project->add_option("--ring", ring_spec);

    CLI::App* cmd_omega = app.add_subcommand("omega", "symplectic pairing of two loops");
    cmd_omega->add_option("f", expr1)->required();
    cmd_omega->add_option("g", expr2)->required();
    cmd_omega->add_option("--ring", ring_spec);

    CLI::App* cmd_j = app.add_subcommand("j", "the J-function of the point target");
    cmd_j->add_option("--tau", tau_src);
    cmd_j->add_option("--t", t_src);
    cmd_j->add_option("--ring", ring_spec);

    CLI::App* cmd_cone = app.add_subcommand("cone-check", "certify membership on the overruled cone L_t");
    cmd_cone->add_option("expr", expr1)->required();
    cmd_cone->add_option("--t", t_src);
    cmd_cone->add_option("--ring", ring_spec);

    CLI::App* cmd_adelic = app.add_subcommand("adelic", "pole classification and expansions at roots of unity");
    cmd_adelic->add_option("expr", expr1)->required();
    cmd_adelic->add_option("--m", conductors, "conductors to expand at");
    cmd_adelic->add_option("--ring", ring_spec);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the identity suite");
    cmd_verify->add_option("--config", config_path, "JSON suite configuration");
    cmd_verify->add_option("--output", output_path, "report path (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    qk::ConfigPtr ring = parse_ring_spec(ring_spec);

    if (app.got_subcommand(cmd_eval)) {
        std::cout << qk::parse_value(expr1, ring).str() << "\n";
        return 0;
    }
    if (app.got_subcommand(cmd_project)) {
        qk::SplitParts parts = qk::project_split(qk::parse_value(expr1, ring).as_loop());
        json out;
        out["plus"] = qk::laurent_str(parts.plus);
        out["minus"] = qk::loop_str(parts.minus);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (app.got_subcommand(cmd_omega)) {
        qk::RationalLoop f = qk::parse_value(expr1, ring).as_loop();
        qk::RationalLoop g = qk::parse_value(expr2, ring).as_loop();
        qk::LambdaElem w = qk::omega(f, g, qk::PairingData::point());
        std::cout << json(qk::lambda_str(w)).dump() << "\n";
        return 0;
    }
    if (app.got_subcommand(cmd_j)) {
        qk::TheoryParams p(qk::parse_lambda(tau_src, ring), qk::parse_lambda(t_src, ring));
        std::cout << qk::loop_str(qk::j_function(p)) << "\n";
        return 0;
    }
    if (app.got_subcommand(cmd_cone)) {
        qk::RationalLoop f = qk::parse_value(expr1, ring).as_loop();
        qk::LambdaElem t = qk::parse_lambda(t_src, ring);
        if (!t.config()) t = qk::LambdaElem(ring);
        qk::ConeCertificate cert = qk::cone_membership(f, t);
        json out;
        out["on_cone"] = cert.on_cone;
        out["tau"] = qk::lambda_str(cert.tau);
        out["y"] = qk::laurent_str(cert.y);
        out["residual"] = qk::loop_str(cert.residual);
        out["message"] = cert.message;
        std::cout << out.dump(2) << "\n";
        return cert.on_cone ? 0 : kExitFail;
    }
    if (app.got_subcommand(cmd_adelic)) {
        for (int m : conductors)
            if (m < 1) throw usage_error("conductors must be >= 1");
        qk::RationalLoop f = qk::parse_value(expr1, ring).as_loop();
        qk::AdelicProfile profile = qk::classify_poles(f);
        json out;
        out["schema"] = "qk-adelic/1";
        json poles = json::array();
        for (const auto& [m, order] : profile.poles) poles.push_back({{"conductor", m}, {"order", order}});
        out["poles"] = poles;
        out["test_iii"] = profile.pass_iii ? "PASS" : "FAIL";
        if (!profile.pass_iii) out["non_cyclotomic"] = profile.non_cyclotomic.str("q");
        json roots = json::array();
        for (int m : conductors) {
            int order = profile.order_of(m);
            qk::RootExpansion e = qk::expand_at_root(f, m, -std::max(order, 1), 2);
            json r;
            r["conductor"] = m;
            r["pole_order"] = e.pole_order;
            json series = json::array();
            for (int v = e.series.v_min; v <= e.series.v_max(); ++v) {
                const qk::CycloVec& cv = e.series.coeff(v);
                series.push_back({{"order", v}, {"coeff", cyclo_lambda_str(cv.empty() ? qk::CycloLambda() : cv[0])}});
            }
            r["series"] = series;
            roots.push_back(r);
        }
        out["roots"] = roots;
        std::cout << out.dump(2) << "\n";
        return profile.pass_iii ? 0 : kExitFail;
    }
    if (app.got_subcommand(cmd_verify)) {
        qk::SuiteConfig cfg = load_suite_config(config_path, &output_path);
        std::vector<qk::IdentityReport> reports = qk::run_suite(cfg);
        emit_report(reports, output_path);
        bool all_pass = true;
        int fails = 0;
        for (const auto& r : reports)
            if (!r.pass) {
                all_pass = false;
                ++fails;
            }
        std::cerr << reports.size() << " checks, " << fails << " failing\n";
        return all_pass ? 0 : kExitFail;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qk::parse_error& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qk::semantic_error& e) {
        std::cerr << "semantic error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
