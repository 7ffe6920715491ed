#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include "bwe/beliefs.hpp"
#include "bwe/costs.hpp"
#include "bwe/equilibrium.hpp"
#include "bwe/oracle.hpp"
#include "bwe/value.hpp"

namespace bwe::cli {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::invalid_argument, what); }

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

// ---- rows ------------------------------------------------------------------

using Value = std::variant<std::monostate, double, std::string, bool, long long>;

struct Row {
    std::vector<std::pair<std::string, Value>> cells;
    Row& add(std::string key, double v) { return put(std::move(key), v); }
    Row& add(std::string key, bool v) { return put(std::move(key), v); }
    Row& add(std::string key, long long v) { return put(std::move(key), v); }
    Row& add(std::string key, std::string v) { return put(std::move(key), std::move(v)); }
    Row& add(std::string key, std::optional<double> v) {
        return v ? put(std::move(key), *v) : put(std::move(key), Value());
    }
    Row& put(std::string key, Value v) {
        cells.emplace_back(std::move(key), std::move(v));
        return *this;
    }
};

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
    if (rows.empty()) return;
    const auto& head = rows.front().cells;
    for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << head[i].first;
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.cells.size(); ++i) {
            if (i) os << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) os << format_double(v);
                    else if constexpr (std::is_same_v<T, bool>) os << (v ? "true" : "false");
                    else if constexpr (std::is_same_v<T, std::monostate>) {}
                    else os << v;
                },
                r.cells[i].second);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<Row>& rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.cells) {
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, std::monostate>) obj[k] = nullptr;
                    else obj[k] = x;
                },
                v);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

// ---- evaluation ------------------------------------------------------------

struct Point {
    NetworkParams params;
    InfoEnvironment env;
};

Row echo(const Point& pt) {
    Row r;
    r.add("p", pt.env.p_incident)
        .add("lambda", pt.env.frac_informed)
        .add("eta_h", pt.env.accuracy_high)
        .add("eta_l", pt.env.accuracy_low);
    return r;
}

using Evaluator = std::function<std::vector<Row>(const Point&)>;

// Points are evaluated on a small thread pool; results are stored by index
// so the output order never depends on scheduling.
std::vector<Row> evaluate(const std::vector<Point>& points, const Evaluator& f) {
    std::vector<std::vector<Row>> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
            try {
                results[i] = f(points[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, points.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<Row> rows;
    for (auto& r : results) {
        for (auto& row : r) rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> beliefs_rows(const Point& pt) {
    validate(pt.params, pt.env);
    std::vector<Row> rows;
    auto emit = [&](const char* treatment, const BeliefTable& table) {
        for (const auto& e : table.entries) {
            Row r = echo(pt);
            r.add("treatment", std::string(treatment))
                .add("owner", std::string(to_string(table.owner)))
                .add("state", std::string(to_string(e.state)))
                .add("opponent", std::string(to_string(e.opponent)))
                .add("probability", e.probability);
            rows.push_back(std::move(r));
        }
    };
    for (auto owner : {TypeLabel::Ln, TypeLabel::La, TypeLabel::Hn, TypeLabel::Ha}) {
        emit("conditional_ck", belief_conditional_ck(pt.env, owner));
    }
    for (auto owner : {TypeLabel::Ln, TypeLabel::La, TypeLabel::Hn, TypeLabel::Ha}) {
        emit("marginal_ck", belief_marginal_ck(pt.env, owner));
    }
    if (pt.env.accuracy_low == 0.5) {
        for (auto owner : kPlayerTypes) emit("uninformative", belief_uninformative(pt.env, owner));
    }
    return rows;
}

std::vector<Row> regimes_rows(const Point& pt) {
    require_uninformative_low(pt.params, pt.env);
    const auto b = regime_boundaries(pt.params, pt.env);
    const auto c = derived_constants(pt.params, pt.env);
    Row r = echo(pt);
    r.add("lambda1", b.lambda1)
        .add("lambda2", b.lambda2)
        .add("lambda3", b.lambda3)
        .add("regime", std::string(to_string(classify(pt.params, pt.env))))
        .add("K1", c.K1)
        .add("K2", c.K2)
        .add("K3", c.K3)
        .add("K4", c.K4);
    return {r};
}

std::vector<Row> equilibrium_rows(const Point& pt) {
    const auto s = solve_bwe(pt.params, pt.env);
    Row r = echo(pt);
    r.add("regime", std::string(to_string(classify(pt.params, pt.env))))
        .add("rho_L", s.low_empty ? std::nullopt : std::optional<double>(s.rho_L))
        .add("rho_Hn", s.rho_Hn)
        .add("rho_Ha", s.rho_Ha)
        .add("residual", wardrop_residual(pt.params, pt.env, s));
    return {r};
}

std::optional<double> ratio(std::optional<double> v, double d) {
    if (!v) return std::nullopt;
    return *v / d;
}

std::vector<Row> costs_rows(const Point& pt) {
    const auto c = cost_report(pt.params, pt.env);
    Row r = echo(pt);
    r.add("regime", std::string(to_string(classify(pt.params, pt.env))))
        .add("c_L_n", c.c_L_n)
        .add("c_L_a", c.c_L_a)
        .add("c_L_exp", c.c_L_exp)
        .add("c_H_n", c.c_H_n)
        .add("c_H_a", c.c_H_a)
        .add("c_H_exp", c.c_H_exp)
        .add("c_soc_n", c.c_soc_n)
        .add("c_soc_a", c.c_soc_a)
        .add("c_soc_exp", c.c_soc_exp)
        .add("baseline_n", c.baseline_n)
        .add("baseline_a", c.baseline_a)
        .add("baseline_exp", c.baseline_exp)
        .add("socopt_n", c.socopt_n)
        .add("socopt_a", c.socopt_a)
        .add("socopt_exp", c.socopt_exp)
        .add("c_L_n_norm", ratio(c.c_L_n, c.socopt_n))
        .add("c_L_a_norm", ratio(c.c_L_a, c.socopt_a))
        .add("c_L_exp_norm", ratio(c.c_L_exp, c.socopt_exp))
        .add("c_H_n_norm", ratio(c.c_H_n, c.socopt_n))
        .add("c_H_a_norm", ratio(c.c_H_a, c.socopt_a))
        .add("c_H_exp_norm", ratio(c.c_H_exp, c.socopt_exp))
        .add("c_soc_n_norm", c.c_soc_n / c.socopt_n)
        .add("c_soc_a_norm", c.c_soc_a / c.socopt_a)
        .add("c_soc_exp_norm", c.c_soc_exp / c.socopt_exp)
        .add("baseline_n_norm", c.baseline_n / c.socopt_n)
        .add("baseline_a_norm", c.baseline_a / c.socopt_a)
        .add("baseline_exp_norm", c.baseline_exp / c.socopt_exp);
    return {r};
}

std::vector<Row> value_rows(const Point& pt) {
    const auto v = value_report(pt.params, pt.env);
    Row r = echo(pt);
    r.add("regime", std::string(to_string(classify(pt.params, pt.env))))
        .add("v_L_n", v.v_L_n)
        .add("v_L_a", v.v_L_a)
        .add("v_L_exp", v.v_L_exp)
        .add("v_H_n", v.v_H_n)
        .add("v_H_a", v.v_H_a)
        .add("v_H_exp", v.v_H_exp)
        .add("v_rel_n", v.v_rel_n)
        .add("v_rel_a", v.v_rel_a)
        .add("v_rel_exp", v.v_rel_exp)
        .add("w_n", v.w_n)
        .add("w_a", v.w_a)
        .add("w_exp", v.w_exp)
        .add("lambda_min", v.lambda_min);
    return {r};
}

std::vector<Row> verify_rows(const Point& pt) {
    const auto t1 = verify_theorem1(pt.params, pt.env);
    const auto t2 = verify_theorem2(pt.params, pt.env);
    Row r = echo(pt);
    r.add("pass", t1.pass && t2.pass)
        .add("theorem1_pass", t1.pass)
        .add("theorem1_checked", static_cast<long long>(t1.checked))
        .add("theorem1_skipped", static_cast<long long>(t1.skipped))
        .add("theorem1_counterexamples", static_cast<long long>(t1.counterexamples.size()))
        .add("theorem2_pass", t2.pass)
        .add("r3_branch", std::string(to_string(t2.r3_branch)))
        .add("lambda_tilde", t2.lambda_tilde)
        .add("r3_peak", t2.r3_peak)
        .add("lambda_min", t2.lambda_min)
        .add("grid_argmax", t2.grid_argmax)
        .add("argmax_ok", t2.argmax_ok);
    for (const auto& rt : t2.regimes) {
        const std::string name = to_string(rt.regime);
        r.add(name + "_expected", std::string(to_string(rt.expected)))
            .add(name + "_observed", std::string(to_string(rt.observed)));
    }
    return {r};
}

Evaluator oracle_evaluator(const oracle::OracleConfig& cfg) {
    return [cfg](const Point& pt) {
        const auto cf = solve_bwe(pt.params, pt.env);
        Row r = echo(pt);
        r.add("regime", std::string(to_string(classify(pt.params, pt.env))))
            .add("rho_L", cf.low_empty ? std::nullopt : std::optional<double>(cf.rho_L))
            .add("rho_Hn", cf.rho_Hn)
            .add("rho_Ha", cf.rho_Ha);
        try {
            const auto fp = oracle::solve_fixed_point(pt.params, pt.env, cfg);
            double dev = std::max(std::abs(fp.profile.rho_Hn - cf.rho_Hn),
                                  std::abs(fp.profile.rho_Ha - cf.rho_Ha));
            if (!cf.low_empty) dev = std::max(dev, std::abs(fp.profile.rho_L - cf.rho_L));
            r.add("fp_rho_L", cf.low_empty ? std::nullopt : std::optional<double>(fp.profile.rho_L))
                .add("fp_rho_Hn", fp.profile.rho_Hn)
                .add("fp_rho_Ha", fp.profile.rho_Ha)
                .add("deviation", dev)
                .add("iterations", static_cast<long long>(fp.iterations))
                .add("fp_residual", fp.residual)
                .add("converged", true);
        } catch (const oracle::ConvergenceError& e) {
            const auto& last = e.last_iterate();
            r.add("fp_rho_L", last.rho_L)
                .add("fp_rho_Hn", last.rho_Hn)
                .add("fp_rho_Ha", last.rho_Ha)
                .put("deviation", Value())
                .add("iterations", static_cast<long long>(cfg.max_iters))
                .add("fp_residual", e.last_residual())
                .add("converged", false);
        }
        return std::vector<Row>{r};
    };
}

double cell_double(const Row& r, const std::string& key) {
    for (const auto& [k, v] : r.cells) {
        if (k == key) {
            if (const double* d = std::get_if<double>(&v)) return *d;
            return std::nan("");
        }
    }
    return std::nan("");
}

bool cell_bool(const Row& r, const std::string& key) {
    for (const auto& [k, v] : r.cells) {
        if (k == key) {
            if (const bool* b = std::get_if<bool>(&v)) return *b;
        }
    }
    return false;
}

const char* const kColumnsHelp =
    "Every row starts with p,lambda,eta_h,eta_l.\n"
    "  beliefs:     treatment,owner,state,opponent,probability\n"
    "  regimes:     lambda1,lambda2,lambda3,regime,K1,K2,K3,K4\n"
    "  equilibrium: regime,rho_L,rho_Hn,rho_Ha,residual (rho_L empty at lambda=1)\n"
    "  costs:       regime, c_{L,H,soc}_{n,a,exp}, baseline_*, socopt_*, and each\n"
    "               cost divided by the matching socopt as *_norm\n"
    "  value:       regime, v_{L,H,rel}_{n,a,exp}, w_{n,a,exp}, lambda_min\n"
    "  verify:      pass, theorem1_*, theorem2_pass, r3_branch, lambda_tilde, r3_peak,\n"
    "               lambda_min, grid_argmax, argmax_ok, R{1..4}_{expected,observed}\n"
    "  oracle:      regime, rho_*, fp_rho_*, deviation, iterations, fp_residual,\n"
    "               converged\n"
    "Empty cells (null in JSON) mark quantities of an empty population.\n"
    "Exit status: 0 ok, 1 invalid input, 2 verification failure.";

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    if (parts.size() != 4) invalid("sweep must look like axis:start:stop:points");

    SweepSpec s;
    if (parts[0] == "lambda") s.axis = SweepAxis::lambda;
    else if (parts[0] == "p") s.axis = SweepAxis::p;
    else if (parts[0] == "eta_h") s.axis = SweepAxis::eta_h;
    else invalid("unknown sweep axis '" + parts[0] + "' (expected lambda, p or eta_h)");

    const auto start = parse_double(parts[1]);
    const auto stop = parse_double(parts[2]);
    if (!start || !stop || !std::isfinite(*start) || !std::isfinite(*stop)) {
        invalid("sweep bounds must be finite numbers");
    }
    s.start = *start;
    s.stop = *stop;
    char* end = nullptr;
    errno = 0;
    const long long n = std::strtoll(parts[3].c_str(), &end, 10);
    if (parts[3].empty() || errno != 0 || *end != '\0') invalid("sweep points must be an integer");
    if (n < 2) invalid("sweep needs at least 2 points");
    s.points = static_cast<std::size_t>(n);
    if (!(s.start < s.stop)) invalid("sweep start must be below stop");

    bool ok = false;
    switch (s.axis) {
        case SweepAxis::lambda: ok = s.start >= 0.0 && s.stop <= 1.0; break;
        case SweepAxis::p: ok = s.start > 0.0 && s.stop < 1.0; break;
        case SweepAxis::eta_h: ok = s.start > 0.5 && s.stop <= 1.0; break;
    }
    if (!ok) invalid("sweep interval outside the axis's valid range");
    return s;
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    std::vector<double> v(spec.points);
    const double span = spec.stop - spec.start;
    const double last = static_cast<double>(spec.points - 1);
    for (std::size_t i = 0; i < spec.points; ++i) v[i] = spec.start + span * (i / last);
    v.back() = spec.stop;
    return v;
}

void apply_config(std::string_view text, NetworkParams& params, InfoEnvironment& env) {
    const std::map<std::string, double*> keys = {
        {"slope1_normal", &params.slope1_normal},
        {"slope1_incident", &params.slope1_incident},
        {"slope2", &params.slope2},
        {"intercept1", &params.intercept1},
        {"intercept2", &params.intercept2},
        {"demand", &params.demand},
        {"p_incident", &env.p_incident},
        {"frac_informed", &env.frac_informed},
        {"accuracy_high", &env.accuracy_high},
        {"accuracy_low", &env.accuracy_low},
    };
    std::istringstream in{std::string(text)};
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto where = "config line " + std::to_string(lineno) + ": ";
        const auto eq = body.find('=');
        if (eq == std::string::npos) invalid(where + "expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string val = trim(std::string_view(body).substr(eq + 1));
        const auto it = keys.find(key);
        if (it == keys.end()) invalid(where + "unknown key '" + key + "'");
        const auto v = parse_double(val);
        if (!v) invalid(where + "value of '" + key + "' is not a number");
        *it->second = *v;
    }
}

void apply_config_file(const std::string& path, NetworkParams& params, InfoEnvironment& env) {
    std::ifstream f(path);
    if (!f) invalid("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    apply_config(ss.str(), params, env);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayesian Wardrop equilibria on a two-route network with two information services",
                 args.empty() ? "bwe" : args.front()};
    app.footer(kColumnsHelp);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<double> p, lambda, eta_h, eta_l, demand, a1n, a1a, a2, b1, b2;
    std::string sweep_text;
    std::string format = "csv";
    std::string out_path;
    int max_iters = 1'000'000;
    double damping = 0.5;
    double fp_tolerance = 1e-10;
    double max_deviation = 1e-6;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key = value parameter file");
        sub->add_option("--p", p, "incident probability p_incident");
        sub->add_option("--lambda", lambda, "informed fraction frac_informed");
        sub->add_option("--eta-h", eta_h, "accuracy of the high service");
        sub->add_option("--eta-l", eta_l, "accuracy of the low service");
        sub->add_option("--demand", demand, "total demand D");
        sub->add_option("--slope1-normal", a1n, "route 1 slope, normal state");
        sub->add_option("--slope1-incident", a1a, "route 1 slope, incident state");
        sub->add_option("--slope2", a2, "route 2 slope");
        sub->add_option("--intercept1", b1, "route 1 free-flow time");
        sub->add_option("--intercept2", b2, "route 2 free-flow time");
        sub->add_option("--sweep", sweep_text, "axis:start:stop:points, axis in {lambda,p,eta_h}");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "output file (default stdout)");
    };

    struct Command {
        const char* name;
        const char* help;
        Evaluator eval;
    };
    std::vector<Command> commands = {
        {"beliefs", "interim belief tables of every treatment", beliefs_rows},
        {"regimes", "regime boundaries and the regime of lambda", regimes_rows},
        {"equilibrium", "closed-form equilibrium split fractions", equilibrium_rows},
        {"costs", "equilibrium, baseline and socially optimal costs", costs_rows},
        {"value", "value of information (eta_h = 1)", value_rows},
        {"verify", "check the value-of-information theorems over lambda (eta_h = 1)", verify_rows},
        {"oracle", "fixed-point oracle against the closed form", nullptr},
    };
    for (auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub);
        if (std::string_view(c.name) == "oracle") {
            sub->add_option("--max-iters", max_iters, "fixed-point iteration budget")
                ->capture_default_str();
            sub->add_option("--damping", damping, "fixed-point damping")->capture_default_str();
            sub->add_option("--tolerance", fp_tolerance, "fixed-point tolerance (minutes)")
                ->capture_default_str();
            sub->add_option("--max-deviation", max_deviation,
                            "largest accepted componentwise deviation")
                ->capture_default_str();
        }
    }

    try {
        std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
        std::reverse(rest.begin(), rest.end());
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();

    try {
        NetworkParams params;
        InfoEnvironment env;
        if (!config_path.empty()) apply_config_file(config_path, params, env);
        auto set = [](const std::optional<double>& o, double& dst) {
            if (o) dst = *o;
        };
        set(p, env.p_incident);
        set(lambda, env.frac_informed);
        set(eta_h, env.accuracy_high);
        set(eta_l, env.accuracy_low);
        set(demand, params.demand);
        set(a1n, params.slope1_normal);
        set(a1a, params.slope1_incident);
        set(a2, params.slope2);
        set(b1, params.intercept1);
        set(b2, params.intercept2);

        std::vector<Point> points;
        if (sweep_text.empty()) {
            points.push_back({params, env});
        } else {
            const SweepSpec spec = parse_sweep(sweep_text);
            for (double x : sweep_values(spec)) {
                Point pt{params, env};
                switch (spec.axis) {
                    case SweepAxis::lambda: pt.env.frac_informed = x; break;
                    case SweepAxis::p: pt.env.p_incident = x; break;
                    case SweepAxis::eta_h: pt.env.accuracy_high = x; break;
                }
                points.push_back(pt);
            }
        }
        for (const auto& pt : points) validate(pt.params, pt.env);

        oracle::OracleConfig cfg;
        cfg.max_iters = max_iters;
        cfg.damping = damping;
        cfg.tolerance = fp_tolerance;
        if (name == "oracle") cfg.validate();

        Evaluator eval;
        for (const auto& c : commands) {
            if (name == c.name) eval = c.eval;
        }
        if (name == "oracle") eval = oracle_evaluator(cfg);

        const std::vector<Row> rows = evaluate(points, eval);

        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);
            if (!file) invalid("cannot write '" + out_path + "'");
        }
        std::ostream& sink = out_path.empty() ? out : file;
        if (format == "json") write_json(sink, rows);
        else write_csv(sink, rows);
        sink.flush();

        if (name == "verify") {
            const auto failed = std::count_if(rows.begin(), rows.end(),
                                              [](const Row& r) { return !cell_bool(r, "pass"); });
            if (failed > 0) {
                err << "verification failed at " << failed << " of " << rows.size() << " points\n";
                return kExitVerifyFailed;
            }
        }
        if (name == "oracle") {
            double worst = 0;
            std::size_t unconverged = 0;
            for (const auto& r : rows) {
                if (!cell_bool(r, "converged")) ++unconverged;
                else worst = std::max(worst, cell_double(r, "deviation"));
            }
            err << "max deviation " << format_double(worst) << " over " << rows.size()
                << " points, " << unconverged << " not converged\n";
            if (unconverged > 0 || !(worst <= max_deviation)) return kExitVerifyFailed;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace bwe::cli
