#include "opoly/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "opoly/jacobi.hpp"
#include "opoly/lincomb.hpp"
#include "opoly/moments.hpp"
#include "opoly/oracle.hpp"
#include "opoly/quadrature.hpp"

namespace opoly::cli {

namespace {

double parse_decimal(const std::string& s, const std::string& where)
{
    std::string t = s;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (!t.empty() && t.front() == '+') {
        t.erase(0, 1);
    }
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError(where + ": '" + s + "' is not a number");
    }
    return out;
}

const Json& require(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(where + ": missing field '" + key + "'");
    }
    return obj.at(key);
}

void allow_only(const Json& obj, const std::set<std::string>& keys, const std::string& where)
{
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!keys.contains(key)) {
            throw ConfigError(where + ": unknown field '" + key + "'");
        }
    }
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& where)
{
    return obj.contains(key) ? parse_number(obj.at(key), where + "." + key) : fallback;
}

std::vector<double> number_array(const Json& v, const std::string& where)
{
    if (!v.is_array()) {
        throw ConfigError(where + " must be an array");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(parse_number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::complex<double> parse_complex(const Json& v, const std::string& where)
{
    if (v.is_object()) {
        allow_only(v, {"re", "im"}, where);
        return {number_or(v, "re", 0.0, where), number_or(v, "im", 0.0, where)};
    }
    return {parse_number(v, where), 0.0};
}

int parse_int(const Json& v, const std::string& where)
{
    if (!v.is_number_integer()) {
        throw ConfigError(where + " must be an integer");
    }
    return v.get<int>();
}

std::array<double, 2> pair_of(const Json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key)) {
        return {0.0, 0.0};
    }
    const auto v = number_array(obj.at(key), where + "." + key);
    if (v.size() != 2) {
        throw ConfigError(where + "." + key + " needs the values at n = 2 and n = 3");
    }
    return {v[0], v[1]};
}

Json complex_json(std::complex<double> z)
{
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json finite_or_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

CombCoeffs comb_of(const JobConfig& cfg)
{
    return CombCoeffs(cfg.a);
}

int k_of(const JobConfig& cfg)
{
    return static_cast<int>(cfg.a.size());
}

bool positive_up_to(const RecurrencePair& rec, int n)
{
    for (int j = 1; j <= n; ++j) {
        if (!(rec.gamma(j) > 0.0)) {
            return false;
        }
    }
    return true;
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string csv_cell(const Json& v)
{
    if (v.is_null()) {
        return "";
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    if (v.is_number()) {
        return format_number(v.get<double>());
    }
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        quoted += c;
        if (c == '"') {
            quoted += '"';
        }
    }
    return quoted + "\"";
}

Json csv_value(const std::string& cell, bool was_quoted)
{
    if (was_quoted) {
        return cell;
    }
    if (cell.empty()) {
        return nullptr;
    }
    if (cell == "true" || cell == "false") {
        return cell == "true";
    }
    long long i = 0;
    auto [pi, ei] = std::from_chars(cell.data(), cell.data() + cell.size(), i);
    // "-0" stays a double so the sign survives
    if (ei == std::errc() && pi == cell.data() + cell.size() && !(i == 0 && cell.front() == '-')) {
        return i;
    }
    double d = 0.0;
    auto [pd, ed] = std::from_chars(cell.data(), cell.data() + cell.size(), d);
    if (ed == std::errc() && pd == cell.data() + cell.size()) {
        return d;
    }
    return cell;
}

ConditionReport conditions(const JobConfig& cfg)
{
    return check_conditions(cfg.rec, comb_of(cfg), cfg.horizon, cfg.tol.conditions);
}

Json verdict_json(const ConditionReport& r)
{
    return Json{{"verdict", r.verdict}, {"pivot", r.pivot}, {"pivot_ok", r.pivot_ok}};
}

} // namespace

double parse_number(const Json& v, const std::string& where)
{
    if (v.is_number()) {
        return v.get<double>();
    }
    if (!v.is_string()) {
        throw ConfigError(where + " must be a number, a decimal string or \"p/q\"");
    }
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return parse_decimal(s, where);
    }
    const double num = parse_decimal(s.substr(0, slash), where);
    const double den = parse_decimal(s.substr(slash + 1), where);
    if (den == 0.0) {
        throw ConfigError(where + ": zero denominator in '" + s + "'");
    }
    return num / den;
}

JobConfig parse_config(const Json& doc, int max_horizon)
{
    allow_only(doc, {"schema", "description", "family", "combination", "horizon", "n", "m", "tolerances", "expect"},
               "config");
    if (!doc.contains("schema") || doc.at("schema") != kSchema) {
        throw ConfigError("config: \"schema\" must be " + std::to_string(kSchema));
    }
    JobConfig cfg;
    cfg.echo = doc;

    const Json& comb = require(doc, "combination", "config");
    allow_only(comb, {"k", "a"}, "combination");
    const int k = parse_int(require(comb, "k", "combination"), "combination.k");
    cfg.a = number_array(require(comb, "a", "combination"), "combination.a");
    if (k < 1) {
        throw ConfigError("combination.k must be >= 1");
    }
    if (static_cast<int>(cfg.a.size()) != k) {
        throw ConfigError("combination.a lists " + std::to_string(cfg.a.size()) + " coefficients, k = " +
                          std::to_string(k) + " needs a_1..a_" + std::to_string(k));
    }
    if (cfg.a.back() == 0.0) {
        throw ConfigError("combination: a_k must be nonzero");
    }

    if (doc.contains("n")) {
        cfg.n = parse_int(doc.at("n"), "n");
    }
    if (doc.contains("m")) {
        cfg.m = parse_int(doc.at("m"), "m");
    }
    if (doc.contains("tolerances")) {
        const Json& t = doc.at("tolerances");
        allow_only(t, {"conditions", "oracle", "zeros", "hk", "quadrature"}, "tolerances");
        cfg.tol.conditions = number_or(t, "conditions", cfg.tol.conditions, "tolerances");
        cfg.tol.oracle = number_or(t, "oracle", cfg.tol.oracle, "tolerances");
        cfg.tol.zeros = number_or(t, "zeros", cfg.tol.zeros, "tolerances");
        cfg.tol.hk = number_or(t, "hk", cfg.tol.hk, "tolerances");
        cfg.tol.quadrature = number_or(t, "quadrature", cfg.tol.quadrature, "tolerances");
    }

    const Json& fam = require(doc, "family", "config");
    cfg.family_type = require(fam, "type", "family").get<std::string>();
    std::optional<int> horizon;
    if (doc.contains("horizon")) {
        horizon = parse_int(doc.at("horizon"), "horizon");
    }
    if (cfg.family_type != "explicit" && !horizon) {
        throw ConfigError("config: missing field 'horizon'");
    }
    if (horizon && (*horizon > max_horizon)) {
        throw ConfigError("horizon " + std::to_string(*horizon) + " exceeds the cap " + std::to_string(max_horizon) +
                          " (raise it with --max-horizon)");
    }

    try {
        if (cfg.family_type == "chebyshev") {
            allow_only(fam, {"type", "kind"}, "family");
            cfg.rec = chebyshev_family(parse_int(require(fam, "kind", "family"), "family.kind"), *horizon);
        } else if (cfg.family_type == "explicit") {
            allow_only(fam, {"type", "beta", "gamma"}, "family");
            RecurrencePair full(number_array(require(fam, "beta", "family"), "family.beta"),
                                number_array(require(fam, "gamma", "family"), "family.gamma"));
            if (horizon && *horizon > full.horizon()) {
                throw ConfigError("horizon exceeds the explicit arrays (" + std::to_string(full.horizon()) + ")");
            }
            if (!horizon && full.horizon() > max_horizon) {
                throw ConfigError("explicit arrays exceed the horizon cap " + std::to_string(max_horizon));
            }
            cfg.rec = horizon ? full.truncated(*horizon) : full;
        } else if (cfg.family_type == "k2") {
            allow_only(fam,
                       {"type", "case", "A", "B", "C", "D", "E", "F", "beta_period", "gamma_period", "beta0", "beta1",
                        "gamma1"},
                       "family");
            if (k != 2) {
                throw ConfigError("k2 families need k = 2");
            }
            K2Params p;
            p.case_tag = k2_case_from_string(require(fam, "case", "family").get<std::string>());
            p.A = number_or(fam, "A", 0.0, "family");
            p.D = number_or(fam, "D", 0.0, "family");
            p.B = fam.contains("B") ? parse_complex(fam.at("B"), "family.B") : 0.0;
            p.C = fam.contains("C") ? parse_complex(fam.at("C"), "family.C") : 0.0;
            p.E = fam.contains("E") ? parse_complex(fam.at("E"), "family.E") : 0.0;
            p.F = fam.contains("F") ? parse_complex(fam.at("F"), "family.F") : 0.0;
            p.beta_period = pair_of(fam, "beta_period", "family");
            p.gamma_period = pair_of(fam, "gamma_period", "family");
            p.beta0 = number_or(fam, "beta0", 0.0, "family");
            p.beta1 = number_or(fam, "beta1", 0.0, "family");
            p.gamma1 = number_or(fam, "gamma1", 1.0, "family");
            cfg.k2 = k2_family(cfg.a[0], cfg.a[1], p, *horizon);
            cfg.rec = cfg.k2->recurrence;
        } else if (cfg.family_type == "k1") {
            allow_only(fam, {"type", "gammas", "beta0", "beta1", "beta2"}, "family");
            if (k != 1) {
                throw ConfigError("k1 families need k = 1");
            }
            auto g = number_array(require(fam, "gammas", "family"), "family.gammas");
            if (g.empty()) {
                throw ConfigError("family.gammas must not be empty");
            }
            // the last listed value repeats out to the horizon
            g.resize(static_cast<std::size_t>(std::max<int>(*horizon, static_cast<int>(g.size()))), g.back());
            cfg.rec = k1_family(g, number_or(fam, "beta0", 0.0, "family"), number_or(fam, "beta1", 0.0, "family"),
                                number_or(fam, "beta2", 0.0, "family"), cfg.a[0], *horizon);
        } else {
            throw ConfigError("family.type must be chebyshev, explicit, k2 or k1");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("family: ") + e.what());
    }

    cfg.horizon = cfg.rec.horizon();
    if (cfg.horizon < k + 3) {
        throw ConfigError("horizon " + std::to_string(cfg.horizon) + " must be >= k+3 = " + std::to_string(k + 3));
    }
    return cfg;
}

JobConfig load_config(const std::string& path, int max_horizon)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, max_horizon);
}

RunReport cmd_check(const JobConfig& cfg)
{
    const auto report = conditions(cfg);
    RunReport out;
    out.command = "check";
    out.pass = report.verdict;

    Json& r = out.result;
    r = verdict_json(report);
    r["k"] = report.k;
    r["horizon"] = report.horizon;
    r["fourier"] = report.fourier;
    r["cond_iii"] = report.cond_iii;
    r["cond_iii_ok"] = report.cond_iii_ok;
    r["vanishing_gamma_tilde"] = report.vanishing_gamma_tilde;
    Json low = Json::array();
    for (const auto& s : report.cond_i) {
        low.push_back({{"j", s.j},
                       {"beta_tilde", s.pass ? finite_or_null(s.beta_tilde) : Json(nullptr)},
                       {"gamma_tilde", s.pass ? finite_or_null(s.gamma_tilde) : Json(nullptr)},
                       {"pass", s.pass}});
    }
    r["cond_i"] = low;
    Json failing = Json::array();
    double worst = 0.0;
    out.table.columns = {"n", "max_residual", "pass"};
    for (const auto& row : report.cond_ii) {
        double m = 0.0;
        for (double v : row.residuals) {
            m = std::max(m, std::abs(v));
        }
        worst = std::max(worst, m);
        if (!row.pass) {
            failing.push_back(row.n);
        }
        out.table.rows.push_back({row.n, m, row.pass});
    }
    r["cond_ii_failing_n"] = failing;
    r["cond_ii_max_residual"] = worst;

    const int n_oracle = std::min(12, (cfg.horizon + 1) / 2);
    const auto oracle = combination_oracle(cfg.rec, cfg.a, n_oracle, cfg.tol.oracle);
    r["oracle"] = {{"pass", oracle.pass},
                   {"n_max", n_oracle},
                   {"tol", cfg.tol.oracle},
                   {"completion_breakdown", oracle.completion_breakdown},
                   {"worst_off_diagonal", finite_or_null(oracle.gram.worst_off_diagonal)},
                   {"agrees", oracle.pass == report.verdict}};
    return out;
}

RunReport cmd_tilde(const JobConfig& cfg)
{
    const auto report = conditions(cfg);
    RunReport out;
    out.command = "tilde";
    out.result = verdict_json(report);
    out.pass = report.verdict;
    if (!report.verdict) {
        return out;
    }
    const auto comb = comb_of(cfg);
    const auto tilde = tilde_recurrence(cfg.rec, comb, report);
    const int k = k_of(cfg);
    double formula = 0.0;
    for (int n = k + 1; n <= cfg.horizon; ++n) {
        formula = std::max(formula, std::abs(tilde.beta(n) - cfg.rec.beta(n)));
        const double g = cfg.rec.gamma(n) + cfg.a[0] * (cfg.rec.beta(n - 1) - cfg.rec.beta(n));
        formula = std::max(formula, std::abs(tilde.gamma(n) - g));
    }
    const auto q = q_sequence(cfg.rec, comb, report, cfg.horizon);
    double favard = 0.0;
    for (int n = 1; n < cfg.horizon; ++n) {
        favard = std::max(favard, three_term_residual(q, tilde, n));
    }
    out.result["formula_residual"] = formula;
    out.result["favard_residual"] = favard;
    out.table.columns = {"n", "beta_tilde", "gamma_tilde"};
    for (int n = 0; n <= cfg.horizon; ++n) {
        out.table.rows.push_back({n, tilde.beta(n), n == 0 ? Json(nullptr) : Json(tilde.gamma(n))});
    }
    return out;
}

RunReport cmd_zeros(const JobConfig& cfg, std::optional<int> n)
{
    const int m = n.value_or(cfg.n.value_or(8));
    const auto comb = comb_of(cfg);
    const auto z = zeros_q(cfg.rec, comb, m, cfg.tol.zeros);
    RunReport out;
    out.command = "zeros";
    out.pass = z.agree;
    out.result = {{"m", m}, {"distance", z.distance}, {"agree", z.agree}, {"tol", cfg.tol.zeros}};

    const auto report = conditions(cfg);
    out.result["verdict"] = report.verdict;
    if (report.verdict) {
        const int mi = std::min(20, cfg.horizon);
        const auto check = verify_intertwining(cfg.rec, comb, report, mi);
        out.result["intertwining"] = {{"m", mi}, {"residual", check.residual}, {"pass", check.pass}};
        out.pass = out.pass && check.pass;
    }
    out.table.columns = {"i", "eigen_re", "eigen_im", "root_re", "root_im"};
    for (std::size_t i = 0; i < z.eigenvalues.size(); ++i) {
        out.table.rows.push_back({static_cast<int>(i), z.eigenvalues[i].real(), z.eigenvalues[i].imag(),
                                  z.roots[i].real(), z.roots[i].imag()});
    }
    return out;
}

RunReport cmd_hk(const JobConfig& cfg)
{
    const auto report = conditions(cfg);
    RunReport out;
    out.command = "hk";
    out.result = verdict_json(report);
    if (!report.verdict) {
        return out;
    }
    const auto comb = comb_of(cfg);
    const int k = k_of(cfg);
    const int m = cfg.m.value_or(std::min(cfg.horizon - k, 30));
    const auto h = solve_hk(cfg.rec, comb, report, m);
    const auto tilde = tilde_recurrence(cfg.rec, comb, report);
    const auto u = moments_from_recurrence(cfg.rec, 2 * cfg.horizon);
    const auto v = moments_from_recurrence(tilde, 2 * cfg.horizon);
    const Poly hp = h.poly();
    const auto relation = verify_functional_relation(u, v, hp, cfg.tol.hk);
    const auto similarity = verify_hk_similarity(cfg.rec, comb, report, h, m);

    double min_grid = INFINITY;
    for (int i = 0; i < 100; ++i) {
        min_grid = std::min(min_grid, hp(-0.99 + 1.98 * i / 99.0));
    }

    Json& r = out.result;
    r["m"] = m;
    r["coefficients"] = h.coeffs;
    r["residual"] = h.residual;
    r["scale"] = h.scale;
    r["functional_relation"] = {{"pass", relation.pass},
                                {"scale", relation.scale},
                                {"max_residual", relation.max_residual},
                                {"orders_checked", relation.orders_checked},
                                {"tol", cfg.tol.hk}};
    r["similarity"] = {{"pass", similarity.pass}, {"residual", similarity.residual}};
    r["grid_minimum"] = min_grid;
    r["positive_on_grid"] = min_grid > 0.0;
    out.pass = relation.pass && similarity.pass;
    if (positive_up_to(cfg.rec, cfg.horizon) && positive_up_to(tilde, cfg.horizon)) {
        const auto ortho = orthonormal_identity_check(cfg.rec, comb, report, m);
        r["orthonormal_identity"] = {{"pass", ortho.pass}, {"residual", ortho.residual}};
        out.pass = out.pass && ortho.pass;
    } else {
        r["orthonormal_identity"] = nullptr;
    }
    out.table.columns = {"j", "h_j"};
    for (std::size_t j = 0; j < h.coeffs.size(); ++j) {
        out.table.rows.push_back({static_cast<int>(j), h.coeffs[j]});
    }
    return out;
}

RunReport cmd_quad(const JobConfig& cfg, std::optional<int> n)
{
    const int nodes = n.value_or(cfg.n.value_or(6));
    const auto f = moments_from_recurrence(cfg.rec, 2 * cfg.horizon);
    RunReport out;
    out.command = "quad";
    out.result["n"] = nodes;
    out.result["tol"] = cfg.tol.quadrature;
    bool gauss_ok = true;
    if (nodes <= cfg.horizon && positive_up_to(cfg.rec, nodes)) {
        const auto g = gauss_rule(cfg.rec, f, nodes);
        const auto d = degree_of_precision(f, g, -1, cfg.tol.quadrature);
        const bool positive = std::all_of(g.weights.begin(), g.weights.end(), [](double w) { return w > 0.0; });
        gauss_ok = d.degree == 2 * nodes - 1 && positive;
        out.result["gauss"] = {{"nodes", g.nodes},
                               {"weights", g.weights},
                               {"degree", d.degree},
                               {"expected", 2 * nodes - 1},
                               {"weights_positive", positive}};
    } else {
        out.result["gauss"] = nullptr;
    }
    try {
        const auto s = shohat_check(cfg.rec, comb_of(cfg), f, nodes, cfg.tol.quadrature);
        out.result["shohat"] = {{"pass", s.pass}, {"degree", s.degree}, {"expected", s.expected}};
        out.pass = s.pass && gauss_ok;
        out.table.columns = {"node", "weight"};
        for (std::size_t i = 0; i < s.rule.nodes.size(); ++i) {
            out.table.rows.push_back({s.rule.nodes[i], s.rule.weights[i]});
        }
    } catch (const InapplicableError& e) {
        out.result["shohat"] = {{"pass", false}, {"inapplicable", e.what()}};
        out.pass = false;
    }
    return out;
}

RunReport cmd_gen(const JobConfig& cfg)
{
    if (cfg.family_type != "k2" && cfg.family_type != "k1") {
        throw ConfigError("gen needs a k2 or k1 family");
    }
    RunReport out;
    out.command = "gen";
    const auto report = conditions(cfg);
    Json& r = out.result;
    r = verdict_json(report);
    bool ok = report.verdict;
    if (cfg.k2) {
        const double a1 = cfg.a[0];
        const double a2 = cfg.a[1];
        const auto lambda = cfg.k2->lambda;
        // a1 = 0 has no characteristic root to speak of
        const bool has_root = cfg.k2->kind != K2Case::A1Zero;
        const double lambda_residual =
            has_root ? std::abs(a1 * a1 * lambda - a2 * (1.0 + lambda) * (1.0 + lambda)) : 0.0;
        std::vector<double> gammas{0.0};
        gammas.insert(gammas.end(), cfg.rec.gammas().begin(), cfg.rec.gammas().end());
        const double rb = difference_equation_residual(cfg.rec.betas(), 5, cfg.horizon, a1, a2);
        const double rg = difference_equation_residual(gammas, 5, cfg.horizon, a1, a2);
        r["case"] = to_string(cfg.k2->kind);
        r["lambda"] = has_root ? complex_json(lambda) : Json(nullptr);
        r["lambda_residual"] = has_root ? Json(lambda_residual) : Json(nullptr);
        r["imag_residue"] = cfg.k2->imag_residue;
        r["difference_residual_beta"] = rb;
        r["difference_residual_gamma"] = rg;
        ok = ok && rb <= 1e-10 && rg <= 1e-10 && lambda_residual <= 1e-12 && cfg.k2->imag_residue < 1e-12;
    } else {
        const double a1 = cfg.a[0];
        double worst = 0.0;
        for (int n = 3; n <= cfg.horizon; ++n) {
            const double want = cfg.rec.beta(2) + (cfg.rec.gamma(n) - cfg.rec.gamma(2)) / a1;
            worst = std::max(worst, std::abs(cfg.rec.beta(n) - want));
        }
        r["k1_relation_residual"] = worst;
        ok = ok && worst <= 1e-12;
    }
    out.pass = ok;
    out.table.columns = {"n", "beta", "gamma"};
    for (int n = 0; n <= cfg.horizon; ++n) {
        out.table.rows.push_back({n, cfg.rec.beta(n), n == 0 ? Json(nullptr) : Json(cfg.rec.gamma(n))});
    }
    return out;
}

RunReport run_command(const std::string& command, const JobConfig& cfg, std::optional<int> n)
{
    if (command == "check") {
        return cmd_check(cfg);
    }
    if (command == "tilde") {
        return cmd_tilde(cfg);
    }
    if (command == "zeros") {
        return cmd_zeros(cfg, n);
    }
    if (command == "hk") {
        return cmd_hk(cfg);
    }
    if (command == "quad") {
        return cmd_quad(cfg, n);
    }
    if (command == "gen") {
        return cmd_gen(cfg);
    }
    throw ConfigError("unknown command '" + command + "'");
}

Json report_json(const RunReport& report, const JobConfig& cfg)
{
    Json rows = Json::array();
    for (const auto& row : report.table.rows) {
        rows.push_back(row);
    }
    return Json{{"schema", kSchema},
                {"tool", "opoly"},
                {"version", kToolVersion},
                {"command", report.command},
                {"config", cfg.echo},
                {"result", report.result},
                {"tolerances",
                 {{"conditions", cfg.tol.conditions},
                  {"oracle", cfg.tol.oracle},
                  {"zeros", cfg.tol.zeros},
                  {"hk", cfg.tol.hk},
                  {"quadrature", cfg.tol.quadrature}}},
                {"table", {{"columns", report.table.columns}, {"rows", rows}}},
                {"pass", report.pass}};
}

std::string render_json(const RunReport& report, const JobConfig& cfg)
{
    return report_json(report, cfg).dump(2) + "\n";
}

std::string render_csv(const Table& table)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << csv_cell(table.columns[i]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_cell(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

Table parse_csv(const std::string& text)
{
    Table table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        std::vector<Json> cells;
        std::string cell;
        bool quoted = false;
        bool in_quotes = false;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            const char c = i < line.size() ? line[i] : ',';
            if (in_quotes) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else if (c == '"') {
                    in_quotes = false;
                } else {
                    cell += c;
                }
            } else if (c == '"') {
                in_quotes = true;
                quoted = true;
            } else if (c == ',') {
                cells.push_back(csv_value(cell, quoted));
                cell.clear();
                quoted = false;
            } else {
                cell += c;
            }
        }
        if (header) {
            for (const auto& c : cells) {
                table.columns.push_back(c.is_string() ? c.get<std::string>() : c.dump());
            }
            header = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const RangeError*>(&e) ||
        dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ConstraintError*>(&e)) {
        return kUsage;
    }
    if (dynamic_cast<const StateError*>(&e) || dynamic_cast<const InapplicableError*>(&e)) {
        return kFail;
    }
    return kNumeric;
}

} // namespace opoly::cli
