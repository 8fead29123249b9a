#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "opoly/cli.hpp"

namespace cli = opoly::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Linear combinations of monic orthogonal polynomials"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::optional<int> n;
    int max_horizon = cli::kDefaultMaxHorizon;
    std::optional<double> tol_conditions, tol_oracle, tol_zeros, tol_hk, tol_quadrature;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"check", "Decide orthogonality of the combination and cross-check with the moment oracle"},
        {"tilde", "Recurrence coefficients of the combined family"},
        {"zeros", "Zeros of Q_n as eigenvalues, cross-checked against polynomial roots"},
        {"hk", "Polynomial h_k with u = h_k v"},
        {"quad", "Gauss rule and the quadrature on the zeros of Q_n"},
        {"gen", "Generate and validate a k2 or k1 family"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Job config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "Write the report here instead of stdout");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--max-horizon", max_horizon, "Largest accepted horizon");
        sub->add_option("--tol-conditions", tol_conditions);
        sub->add_option("--tol-oracle", tol_oracle);
        sub->add_option("--tol-zeros", tol_zeros);
        sub->add_option("--tol-hk", tol_hk);
        sub->add_option("--tol-quadrature", tol_quadrature);
        if (name == "zeros" || name == "quad") {
            sub->add_option("--n", n, "Degree n of Q_n");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        auto cfg = cli::load_config(config_path, max_horizon);
        for (auto [flag, slot] : {std::pair{&tol_conditions, &cfg.tol.conditions}, {&tol_oracle, &cfg.tol.oracle},
                                  {&tol_zeros, &cfg.tol.zeros}, {&tol_hk, &cfg.tol.hk},
                                  {&tol_quadrature, &cfg.tol.quadrature}}) {
            if (*flag) {
                *slot = **flag;
            }
        }
        const auto report = cli::run_command(command, cfg, n);
        const std::string text = format == "csv" ? cli::render_csv(report.table) : cli::render_json(report, cfg);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "opoly: cannot write '" << out_path << "'\n";
                return cli::kUsage;
            }
            out << text;
        }
        return report.pass ? cli::kPass : cli::kFail;
    } catch (const std::exception& e) {
        std::cerr << "opoly " << command << ": " << e.what() << "\n";
        return cli::exit_code_for(e);
    }
}
