#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opoly/errors.hpp"
#include "opoly/recurrence.hpp"

namespace opoly::cli {

using Json = nlohmann::json;

inline constexpr int kSchema = 1;
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kDefaultMaxHorizon = 64;

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kNumeric = 3 };

/// Malformed or inconsistent job configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct Tolerances {
    double conditions = 1e-10;
    double oracle = 1e-9;
    double zeros = 1e-8;
    double hk = 1e-8;
    double quadrature = 1e-10;
};

struct JobConfig {
    /// The parsed document, echoed into every report.
    Json echo;
    std::string family_type;
    RecurrencePair rec{{0.0, 0.0}, {1.0}};
    std::vector<double> a;
    int horizon = 0;
    std::optional<int> n;
    std::optional<int> m;
    Tolerances tol;
    /// k2 families only.
    std::optional<K2Family> k2;
};

/// Accepts a JSON number, a decimal string, or a "p/q" string.
double parse_number(const Json& v, const std::string& where);

JobConfig parse_config(const Json& doc, int max_horizon = kDefaultMaxHorizon);
JobConfig load_config(const std::string& path, int max_horizon = kDefaultMaxHorizon);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct RunReport {
    std::string command;
    bool pass = false;
    Json result = Json::object();
    Table table;
};

RunReport cmd_check(const JobConfig& cfg);
RunReport cmd_tilde(const JobConfig& cfg);
RunReport cmd_zeros(const JobConfig& cfg, std::optional<int> n = std::nullopt);
RunReport cmd_hk(const JobConfig& cfg);
RunReport cmd_quad(const JobConfig& cfg, std::optional<int> n = std::nullopt);
RunReport cmd_gen(const JobConfig& cfg);

RunReport run_command(const std::string& command, const JobConfig& cfg, std::optional<int> n = std::nullopt);

/// Full report document: schema, tool version, command, config echo, result, table, pass.
Json report_json(const RunReport& report, const JobConfig& cfg);
std::string render_json(const RunReport& report, const JobConfig& cfg);
std::string render_csv(const Table& table);
Table parse_csv(const std::string& text);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

} // namespace opoly::cli
