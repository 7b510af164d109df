// Copyright 2026 The qsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qsim/runner.hpp"

namespace {

// 0 success, 2 validation/parse error, 3 tolerance failure, 4 cap exceeded.
constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitCap = 4;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw qsim::ValidationError("cannot open output file '" + path + "'");
    }
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsim: state-vector emulator of Trotterized spin dynamics and "
                 "QFT-based split-operator particle dynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string csv_path;
    std::uint64_t seed = 0;
    int halvings = 1;

    CLI::App* cmd_run = app.add_subcommand("run", "evolve a problem and emit its report");
    cmd_run->add_option("config", config_path, "problem config (JSON)")->required();
    cmd_run->add_option("--out", out_path, "report JSON path (default: stdout)");
    cmd_run->add_option("--csv", csv_path, "trajectory CSV path");
    CLI::Option* seed_opt = cmd_run->add_option("--seed", seed, "override plan.seed");

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "dt-halving convergence study against the dense oracle");
    cmd_sweep->add_option("config", config_path, "problem config (JSON)")->required();
    cmd_sweep->add_option("--halvings", halvings, "number of dt halvings")->required();

    CLI::App* cmd_census =
        app.add_subcommand("census", "closed-form vs instrumented gate counts");
    cmd_census->add_option("config", config_path, "problem config (JSON)")->required();

    CLI::App* cmd_validate = app.add_subcommand("validate", "parse and validate a config");
    cmd_validate->add_option("config", config_path, "problem config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        const int cap = qsim::effective_qubit_cap();
        qsim::Problem problem = qsim::load_problem(config_path);

        if (app.got_subcommand(cmd_run)) {
            if (seed_opt->count() > 0) problem.plan.seed = seed;
            qsim::RunOutcome outcome = qsim::run(problem, cap);
            const std::string report = outcome.report.dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << report;
            } else {
                write_file(out_path, report);
            }
            if (!csv_path.empty()) {
                write_file(csv_path, qsim::trajectory_csv(outcome.trajectory));
            }
            if (!outcome.tolerances_ok) {
                std::cerr << "error: embedded tolerance check failed\n";
                return kExitTolerance;
            }
            return 0;
        }
        if (app.got_subcommand(cmd_sweep)) {
            std::cout << qsim::convergence_sweep(problem, halvings, cap).dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_census)) {
            const nlohmann::json census = qsim::gate_census(problem, cap);
            std::cout << census.dump(2) << "\n";
            if (!census.at("match").get<bool>()) {
                std::cerr << "error: measured gate counts deviate from the closed form\n";
                return kExitTolerance;
            }
            return 0;
        }
        // validate
        std::cout << "ok: " << (problem.type == qsim::ProblemType::spins ? "spins" : "particles")
                  << " problem, " << problem.num_qubits() << " qubits, "
                  << problem.plan.steps() << " steps\n";
        return 0;
    } catch (const qsim::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const qsim::ToleranceFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const qsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
