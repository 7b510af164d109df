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

#include "qsim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <utility>

namespace qsim {

using nlohmann::json;

std::string to_string(StepAlgorithm mode) {
    switch (mode) {
        case StepAlgorithm::literal_paper: return "literal_paper";
        case StepAlgorithm::exact_term: return "exact_term";
        case StepAlgorithm::strang: return "strang";
        case StepAlgorithm::lie: return "lie";
    }
    throw ValidationError("unknown stepping mode");
}

StepAlgorithm step_algorithm_from_string(const std::string& s) {
    if (s == "literal_paper") return StepAlgorithm::literal_paper;
    if (s == "exact_term") return StepAlgorithm::exact_term;
    if (s == "strang") return StepAlgorithm::strang;
    if (s == "lie") return StepAlgorithm::lie;
    throw ValidationError("unknown stepping mode '" + s + "'");
}

namespace {

[[noreturn]] void fail_parse(const std::string& msg) { throw ParseError(msg); }

void require_known_keys(const json& obj, const std::string& where,
                        const std::vector<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const std::string& a : allowed) {
            if (item.key() == a) {
                known = true;
                break;
            }
        }
        if (!known) fail_parse("unknown key '" + item.key() + "' in " + where);
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail_parse("missing key '" + std::string(key) + "' in " + where);
    return *it;
}

void require_object(const json& v, const std::string& what) {
    if (!v.is_object()) fail_parse(what + " must be a JSON object");
}

double as_number(const json& v, const std::string& what) {
    if (!v.is_number()) fail_parse(what + " must be a number");
    return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& what) {
    if (!v.is_number_integer()) fail_parse(what + " must be an integer");
    return v.get<std::int64_t>();
}

std::uint64_t as_nonneg_integer(const json& v, const std::string& what) {
    const std::int64_t n = as_integer(v, what);
    if (n < 0) fail_parse(what + " must be non-negative");
    return static_cast<std::uint64_t>(n);
}

bool as_bool(const json& v, const std::string& what) {
    if (!v.is_boolean()) fail_parse(what + " must be a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& what) {
    if (!v.is_string()) fail_parse(what + " must be a string");
    return v.get<std::string>();
}

std::vector<double> as_number_array(const json& v, const std::string& what) {
    if (!v.is_array()) fail_parse(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(as_number(e, what + " entry"));
    return out;
}

SpinSystem parse_spin_system(const json& s) {
    require_object(s, "system");
    require_known_keys(s, "system", {"num_spins", "terms", "hbar"});
    SpinSystem sys;
    sys.num_spins = static_cast<int>(as_integer(require_field(s, "num_spins", "system"),
                                                "system.num_spins"));
    if (s.contains("hbar")) sys.hbar = as_number(s["hbar"], "system.hbar");
    const json& terms = require_field(s, "terms", "system");
    if (!terms.is_array()) fail_parse("system.terms must be an array");
    for (const json& t : terms) {
        require_object(t, "system.terms entry");
        require_known_keys(t, "system.terms entry", {"coefficient", "sites", "paulis"});
        PauliTerm term;
        term.coefficient = as_number(require_field(t, "coefficient", "term"), "term.coefficient");
        const json& sites = require_field(t, "sites", "term");
        if (!sites.is_array()) fail_parse("term.sites must be an array");
        for (const json& e : sites) {
            term.sites.push_back(static_cast<int>(as_integer(e, "term site")));
        }
        const std::string paulis = as_string(require_field(t, "paulis", "term"), "term.paulis");
        if (paulis.size() != term.sites.size()) {
            throw ValidationError("term needs one Pauli letter per site");
        }
        for (char c : paulis) term.paulis.push_back(pauli_from_char(c));
        sys.terms.push_back(std::move(term));
    }
    validate(sys);
    return sys;
}

ParticleSystem parse_particle_system(const json& s, int cap) {
    require_object(s, "system");
    require_known_keys(s, "system",
                       {"num_particles", "qubits_per_particle", "box_length", "masses", "hbar"});
    ParticleSystem sys;
    sys.num_particles = static_cast<int>(
        as_integer(require_field(s, "num_particles", "system"), "system.num_particles"));
    sys.qubits_per_particle = static_cast<int>(as_integer(
        require_field(s, "qubits_per_particle", "system"), "system.qubits_per_particle"));
    sys.box_length = as_number(require_field(s, "box_length", "system"), "system.box_length");
    sys.masses = as_number_array(require_field(s, "masses", "system"), "system.masses");
    if (s.contains("hbar")) sys.hbar = as_number(s["hbar"], "system.hbar");
    validate(sys, cap);
    return sys;
}

PotentialTerm parse_potential_term(const json& e, const ParticleSystem& sys,
                                   const std::string& where,
                                   const std::vector<std::string>& base_keys) {
    PotentialTerm term;
    const std::string kind = as_string(require_field(e, "kind", where), where + ".kind");
    std::vector<std::string> allowed = base_keys;
    allowed.push_back("kind");
    if (kind == "harmonic") {
        term.kind = PotentialKind::harmonic;
        allowed.insert(allowed.end(), {"center", "stiffness"});
        require_known_keys(e, where, allowed);
        term.stiffness = as_number(require_field(e, "stiffness", where), where + ".stiffness");
        if (e.contains("center")) term.center = as_number(e["center"], where + ".center");
    } else if (kind == "polynomial") {
        term.kind = PotentialKind::polynomial;
        allowed.push_back("coefficients");
        require_known_keys(e, where, allowed);
        term.coefficients =
            as_number_array(require_field(e, "coefficients", where), where + ".coefficients");
    } else if (kind == "coulomb_soft") {
        term.kind = PotentialKind::coulomb_soft;
        allowed.insert(allowed.end(), {"strength", "softening", "center"});
        require_known_keys(e, where, allowed);
        term.strength = as_number(require_field(e, "strength", where), where + ".strength");
        term.softening = e.contains("softening")
            ? as_number(e["softening"], where + ".softening")
            : 2.0 * sys.dx();
        if (e.contains("center")) term.center = as_number(e["center"], where + ".center");
    } else if (kind == "tabulated") {
        term.kind = PotentialKind::tabulated;
        allowed.push_back("table");
        require_known_keys(e, where, allowed);
        term.table = as_number_array(require_field(e, "table", where), where + ".table");
    } else {
        fail_parse("unknown potential kind '" + kind + "' in " + where);
    }
    return term;
}

PotentialSpec parse_potentials(const json& p, const ParticleSystem& sys) {
    require_object(p, "potentials");
    require_known_keys(p, "potentials", {"one_body", "two_body"});
    PotentialSpec spec;
    if (p.contains("one_body")) {
        if (!p["one_body"].is_array()) fail_parse("potentials.one_body must be an array");
        for (const json& e : p["one_body"]) {
            require_object(e, "one_body entry");
            OneBodyPotential ob;
            ob.particle = static_cast<int>(
                as_integer(require_field(e, "particle", "one_body entry"), "one_body particle"));
            ob.term = parse_potential_term(e, sys, "potentials.one_body entry", {"particle"});
            spec.one_body.push_back(std::move(ob));
        }
    }
    if (p.contains("two_body")) {
        if (!p["two_body"].is_array()) fail_parse("potentials.two_body must be an array");
        for (const json& e : p["two_body"]) {
            require_object(e, "two_body entry");
            TwoBodyPotential tb;
            const json& pair = require_field(e, "particles", "two_body entry");
            if (!pair.is_array() || pair.size() != 2) {
                fail_parse("two_body 'particles' must be a pair of indices");
            }
            tb.particle_a = static_cast<int>(as_integer(pair[0], "two_body particle"));
            tb.particle_b = static_cast<int>(as_integer(pair[1], "two_body particle"));
            tb.term = parse_potential_term(e, sys, "potentials.two_body entry", {"particles"});
            spec.two_body.push_back(std::move(tb));
        }
    }
    validate(spec, sys);
    return spec;
}

void parse_plan(const json& p, Problem& out) {
    require_object(p, "plan");
    require_known_keys(p, "plan",
                       {"dt", "T", "mode", "literal_sign", "sample_stride", "seed", "shots",
                        "renormalize_after_step", "paper_literal_signs", "minimal_image",
                        "observables"});
    EvolutionPlan& plan = out.plan;
    plan.dt = as_number(require_field(p, "dt", "plan"), "plan.dt");
    plan.total_time = as_number(require_field(p, "T", "plan"), "plan.T");
    plan.mode = step_algorithm_from_string(as_string(require_field(p, "mode", "plan"), "plan.mode"));
    if (p.contains("literal_sign")) {
        const std::int64_t s = as_integer(p["literal_sign"], "plan.literal_sign");
        if (s != 1 && s != -1) throw ValidationError("plan.literal_sign must be +1 or -1");
        plan.literal_sign = static_cast<int>(s);
    }
    if (p.contains("sample_stride")) {
        plan.sample_stride = as_integer(p["sample_stride"], "plan.sample_stride");
    }
    if (p.contains("seed")) plan.seed = as_nonneg_integer(p["seed"], "plan.seed");
    if (p.contains("shots")) plan.shots = as_nonneg_integer(p["shots"], "plan.shots");
    if (p.contains("renormalize_after_step")) {
        plan.renormalize_after_step =
            as_bool(p["renormalize_after_step"], "plan.renormalize_after_step");
    }
    if (p.contains("paper_literal_signs")) {
        plan.paper_literal_signs = as_bool(p["paper_literal_signs"], "plan.paper_literal_signs");
    }
    if (p.contains("minimal_image")) {
        plan.minimal_image = as_bool(p["minimal_image"], "plan.minimal_image");
    }
    if (p.contains("observables")) {
        if (!p["observables"].is_array()) fail_parse("plan.observables must be an array");
        for (const json& e : p["observables"]) {
            const std::string name = as_string(e, "plan.observables entry");
            if (out.type == ProblemType::spins) {
                if (name == "terms") out.record_term_expectations = true;
                else if (name != "site_z" && name != "energy") {
                    throw ValidationError("spin observables menu: site_z, energy, terms");
                }
            } else {
                if (name == "density") out.record_density = true;
                else if (name != "moments") {
                    throw ValidationError("particle observables menu: moments, density");
                }
            }
        }
    }
    plan.steps();  // validates dt, T, stride
}

void parse_initial_state(const json& s, Problem& out) {
    require_object(s, "initial_state");
    const std::string kind = as_string(require_field(s, "kind", "initial_state"),
                                       "initial_state.kind");
    const std::uint64_t dim = std::uint64_t{1} << out.num_qubits();
    if (kind == "basis") {
        require_known_keys(s, "initial_state", {"kind", "index"});
        out.init_kind = InitKind::basis;
        out.basis_index = as_nonneg_integer(require_field(s, "index", "initial_state"),
                                            "initial_state.index");
        if (out.basis_index >= dim) {
            throw ValidationError("initial_state.index outside the basis range");
        }
    } else if (kind == "amplitudes") {
        require_known_keys(s, "initial_state", {"kind", "values"});
        out.init_kind = InitKind::amplitudes;
        const json& values = require_field(s, "values", "initial_state");
        if (!values.is_array()) fail_parse("initial_state.values must be an array");
        for (const json& e : values) {
            if (!e.is_array() || e.size() != 2) {
                fail_parse("initial_state.values entries must be [re, im] pairs");
            }
            out.init_amplitudes.emplace_back(as_number(e[0], "amplitude re"),
                                             as_number(e[1], "amplitude im"));
        }
        if (out.init_amplitudes.size() != dim) {
            throw ValidationError("initial_state.values must hold 2^n amplitudes");
        }
        double norm_sq = 0.0;
        for (const cplx& a : out.init_amplitudes) norm_sq += std::norm(a);
        if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-6) {
            throw ValidationError("initial_state.values must be normalized");
        }
    } else if (kind == "wavepackets") {
        if (out.type != ProblemType::particles) {
            throw ValidationError("wavepacket initial states apply to particle problems");
        }
        require_known_keys(s, "initial_state", {"kind", "packets"});
        out.init_kind = InitKind::wavepackets;
        const json& packets = require_field(s, "packets", "initial_state");
        if (!packets.is_array()) fail_parse("initial_state.packets must be an array");
        for (const json& e : packets) {
            require_object(e, "packet");
            require_known_keys(e, "packet", {"center", "momentum", "width"});
            Wavepacket w;
            w.center = as_number(require_field(e, "center", "packet"), "packet.center");
            w.momentum = as_number(require_field(e, "momentum", "packet"), "packet.momentum");
            w.width = as_number(require_field(e, "width", "packet"), "packet.width");
            out.packets.packets.push_back(w);
        }
        validate(out.packets, out.particles);
    } else {
        fail_parse("unknown initial_state kind '" + kind + "'");
    }
}

void parse_tolerances(const json& t, Problem& out) {
    require_object(t, "tolerances");
    require_known_keys(t, "tolerances", {"norm_drift_max", "oracle_fidelity_min"});
    if (t.contains("norm_drift_max")) {
        out.tolerances.norm_drift_max = as_number(t["norm_drift_max"], "tolerances.norm_drift_max");
    }
    if (t.contains("oracle_fidelity_min")) {
        out.tolerances.oracle_fidelity_min =
            as_number(t["oracle_fidelity_min"], "tolerances.oracle_fidelity_min");
    }
}

std::string iso8601_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double l2_distance(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("state dimensions differ");
    }
    const auto sa = a.amplitudes();
    const auto sb = b.amplitudes();
    double acc = 0.0;
    for (std::uint64_t i = 0; i < a.dim(); ++i) acc += std::norm(sa[i] - sb[i]);
    return std::sqrt(acc);
}

/// Time argument that makes exp(-iHt/hbar) the target of the configured
/// stepping: literal_paper(+1) and paper_literal_signs approximate the
/// opposite-sign exponential, so their target time is negated.
double oracle_target_time(const Problem& problem, const EvolutionPlan& plan) {
    const double t = plan.realized_time();
    if (problem.type == ProblemType::spins) {
        if (plan.mode == StepAlgorithm::literal_paper) return -plan.literal_sign * t;
        return t;
    }
    return plan.paper_literal_signs ? -t : t;
}

oracle::DenseOperator dense_hamiltonian(const Problem& problem, int cap_dense) {
    if (problem.type == ProblemType::spins) {
        return oracle::dense_spin_hamiltonian(problem.spins, cap_dense);
    }
    return oracle::dense_grid_hamiltonian(problem.particles, problem.potentials,
                                          problem.plan.minimal_image, cap_dense);
}

void advance_one_step(StateVector& state, const Problem& problem,
                      const EvolutionPlan& plan, GateCounts* tally) {
    if (problem.type == ProblemType::spins) {
        trotter_step(state, problem.spins, plan.dt, plan.mode, plan.literal_sign,
                     plan.renormalize_after_step, tally);
    } else {
        split_step(state, problem.particles, problem.potentials, plan.dt, plan.mode,
                   plan.minimal_image, plan.paper_literal_signs, tally);
    }
}

json trajectory_json(const Trajectory& trajectory) {
    json t;
    t["labels"] = trajectory.labels;
    if (!trajectory.density_labels.empty()) {
        t["density_labels"] = trajectory.density_labels;
    }
    json records = json::array();
    for (const TrajectoryRecord& rec : trajectory.records) {
        json r;
        r["step"] = rec.step;
        r["t"] = rec.t;
        r["norm"] = rec.norm;
        r["values"] = rec.values;
        if (!rec.densities.empty()) r["densities"] = rec.densities;
        records.push_back(std::move(r));
    }
    t["records"] = std::move(records);
    return t;
}

}  // namespace

int effective_qubit_cap() {
    const char* env = std::getenv("QSIM_CAP_QUBITS");
    if (env == nullptr || *env == '\0') return kDefaultQubitCap;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 62) {
        throw ValidationError("QSIM_CAP_QUBITS must be a positive integer");
    }
    return static_cast<int>(v);
}

Problem parse_problem(const json& config) {
    require_object(config, "config");
    require_known_keys(config, "config", {"problem_type", "system", "potentials",
                                          "initial_state", "plan", "tolerances"});
    Problem out;
    const std::string type = as_string(require_field(config, "problem_type", "config"),
                                       "problem_type");
    if (type == "spins") {
        out.type = ProblemType::spins;
    } else if (type == "particles") {
        out.type = ProblemType::particles;
    } else {
        throw ValidationError("problem_type must be 'spins' or 'particles'");
    }
    const int cap = effective_qubit_cap();
    if (out.type == ProblemType::spins) {
        if (config.contains("potentials")) {
            throw ValidationError("potentials apply to particle problems only");
        }
        out.spins = parse_spin_system(require_field(config, "system", "config"));
        if (out.spins.num_spins > cap) {
            throw CapExceeded("system needs " + std::to_string(out.spins.num_spins) +
                              " qubits, cap is " + std::to_string(cap));
        }
    } else {
        out.particles = parse_particle_system(require_field(config, "system", "config"), cap);
        if (config.contains("potentials")) {
            out.potentials = parse_potentials(config["potentials"], out.particles);
        }
    }
    parse_plan(require_field(config, "plan", "config"), out);
    parse_initial_state(require_field(config, "initial_state", "config"), out);
    if (config.contains("tolerances")) parse_tolerances(config["tolerances"], out);
    if (out.type == ProblemType::spins && out.plan.mode == StepAlgorithm::lie) {
        throw InvalidPlan("lie stepping applies to particle systems only");
    }
    if (out.type == ProblemType::particles &&
        (out.plan.mode == StepAlgorithm::literal_paper ||
         out.plan.mode == StepAlgorithm::exact_term)) {
        throw InvalidPlan("particle systems step in lie or strang mode");
    }
    out.config_echo = config;
    return out;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open config file '" + path + "'");
    }
    json config;
    try {
        config = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_problem(config);
}

StateVector initial_state(const Problem& problem, int cap) {
    const int n = problem.num_qubits();
    switch (problem.init_kind) {
        case InitKind::basis:
            return StateVector::basis(n, problem.basis_index, cap);
        case InitKind::amplitudes: {
            StateVector s = StateVector::from_amplitudes(n, problem.init_amplitudes, cap);
            s.normalize();
            return s;
        }
        case InitKind::wavepackets:
            return prepare_product_wavepackets(problem.particles, problem.packets, cap);
    }
    throw ValidationError("unknown initial state kind");
}

json gate_counts_json(const GateCounts& counts) {
    json g;
    g["hadamard"] = counts.hadamard;
    g["controlled_phase"] = counts.controlled_phase;
    g["swap"] = counts.swap;
    g["diagonal_phase_applications"] = counts.diagonal_phase;
    g["literal_term_applications"] = counts.literal_term;
    g["exact_term_applications"] = counts.exact_term;
    return g;
}

RunOutcome run(const Problem& problem, int cap) {
    StateVector state = initial_state(problem, cap);
    const StateVector psi0 = state;
    const std::int64_t steps = problem.plan.steps();

    RunOutcome out;
    GateCounts counts;
    if (problem.type == ProblemType::spins) {
        SpinRunResult r = evolve_spins(state, problem.spins, problem.plan,
                                       problem.record_term_expectations);
        out.trajectory = std::move(r.trajectory);
        counts = r.counts;
    } else {
        ParticleRunResult r = evolve_particles(state, problem.particles, problem.potentials,
                                               problem.plan, problem.record_density);
        out.trajectory = std::move(r.trajectory);
        counts = r.counts;
    }

    json report;
    report["rng_algorithm"] = kRngAlgorithm;
    report["timestamp"] = iso8601_now();
    report["problem_type"] = problem.type == ProblemType::spins ? "spins" : "particles";
    report["qubits"] = problem.num_qubits();
    report["amplitude_count"] = std::uint64_t{1} << problem.num_qubits();
    report["steps"] = steps;
    report["dt"] = problem.plan.dt;
    report["realized_time"] = problem.plan.realized_time();
    report["mode"] = to_string(problem.plan.mode);
    report["final_norm"] = state.norm();
    report["gate_counts"] = gate_counts_json(counts);
    report["trajectory"] = trajectory_json(out.trajectory);
    report["config_echo"] = problem.config_echo.is_null() ? json::object()
                                                          : problem.config_echo;

    if (problem.plan.shots > 0) {
        StateVector sampled = state;
        sampled.normalize();
        const auto hist = sample_counts(sampled, problem.plan.shots, problem.plan.seed);
        json counts_json = json::object();
        for (const auto& [basis, count] : hist) {
            counts_json[std::to_string(basis)] = count;
        }
        json h;
        h["shots"] = problem.plan.shots;
        h["seed"] = problem.plan.seed;
        h["counts"] = std::move(counts_json);
        h["max_std_error"] = 0.5 / std::sqrt(static_cast<double>(problem.plan.shots));
        h["std_error_note"] =
            "sampled probability estimates carry standard error <= max_std_error; "
            "the trajectory reports exact expectations";
        report["histogram"] = std::move(h);
    }

    json checks = json::array();
    bool ok = true;
    if (problem.tolerances.norm_drift_max) {
        const double drift = std::abs(state.norm() - 1.0);
        const bool pass = drift <= *problem.tolerances.norm_drift_max;
        checks.push_back({{"name", "norm_drift_max"},
                          {"value", drift},
                          {"bound", *problem.tolerances.norm_drift_max},
                          {"pass", pass}});
        ok = ok && pass;
    }
    if (problem.tolerances.oracle_fidelity_min) {
        const oracle::DenseOperator h = dense_hamiltonian(problem, oracle::kDenseCap);
        const StateVector target = oracle::exact_propagate(
            h, psi0, oracle_target_time(problem, problem.plan), problem.hbar());
        StateVector final_normed = state;
        final_normed.normalize();
        const double fidelity = std::abs(inner_product(target, final_normed));
        const bool pass = fidelity >= *problem.tolerances.oracle_fidelity_min;
        checks.push_back({{"name", "oracle_fidelity_min"},
                          {"value", fidelity},
                          {"bound", *problem.tolerances.oracle_fidelity_min},
                          {"pass", pass}});
        ok = ok && pass;
    }
    report["tolerance_checks"] = std::move(checks);
    report["tolerances_ok"] = ok;
    out.tolerances_ok = ok;
    out.report = std::move(report);
    return out;
}

json convergence_sweep(const Problem& problem, int halvings, int cap, int cap_dense) {
    if (halvings < 0) {
        throw ValidationError("halvings must be >= 0");
    }
    const StateVector psi0 = initial_state(problem, cap);
    const oracle::DenseOperator h = dense_hamiltonian(problem, cap_dense);

    json rows = json::array();
    std::vector<double> errors;
    for (int i = 0; i <= halvings; ++i) {
        EvolutionPlan p = problem.plan;
        p.dt = problem.plan.dt / static_cast<double>(std::int64_t{1} << i);
        const std::int64_t steps = p.steps();
        StateVector s = psi0;
        for (std::int64_t st = 0; st < steps; ++st) {
            advance_one_step(s, problem, p, nullptr);
        }
        const StateVector target =
            oracle::exact_propagate(h, psi0, oracle_target_time(problem, p), problem.hbar());
        const double err = l2_distance(s, target);
        errors.push_back(err);
        rows.push_back({{"dt", p.dt},
                        {"steps", steps},
                        {"realized_time", p.realized_time()},
                        {"error", err}});
    }
    json ratios = json::array();
    json orders = json::array();
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double ratio = errors[i] / errors[i + 1];
        ratios.push_back(ratio);
        orders.push_back(std::log2(ratio));
    }
    return {{"rows", std::move(rows)},
            {"ratios", std::move(ratios)},
            {"observed_orders", std::move(orders)}};
}

GateCounts predicted_counts_per_step(const Problem& problem) {
    GateCounts c;
    if (problem.type == ProblemType::spins) {
        const auto m = static_cast<std::uint64_t>(problem.spins.terms.size());
        switch (problem.plan.mode) {
            case StepAlgorithm::literal_paper: c.literal_term = m; break;
            case StepAlgorithm::exact_term: c.exact_term = m; break;
            case StepAlgorithm::strang: c.exact_term = 2 * m; break;
            case StepAlgorithm::lie:
                throw InvalidPlan("lie stepping applies to particle systems only");
        }
        return c;
    }
    const auto n = static_cast<std::uint64_t>(problem.particles.num_particles);
    const auto k = static_cast<std::uint64_t>(problem.particles.qubits_per_particle);
    std::uint64_t sweeps = 0;
    switch (problem.plan.mode) {
        case StepAlgorithm::lie: sweeps = 1; break;
        case StepAlgorithm::strang: sweeps = 2; break;
        default:
            throw InvalidPlan("particle systems step in lie or strang mode");
    }
    // Two QFTs per particle per kinetic sweep, one momentum diagonal between
    // them, plus one diagonal per potential entry per step.
    c.hadamard = sweeps * n * 2 * k;
    c.controlled_phase = sweeps * n * k * (k - 1);
    c.swap = sweeps * n * 2 * (k / 2);
    c.diagonal_phase = sweeps * n + problem.potentials.one_body.size() +
                       problem.potentials.two_body.size();
    return c;
}

json gate_census(const Problem& problem, int cap) {
    const std::int64_t steps = problem.plan.steps();
    const GateCounts per_step = predicted_counts_per_step(problem);
    GateCounts predicted;
    const auto scale = static_cast<std::uint64_t>(steps);
    predicted.hadamard = per_step.hadamard * scale;
    predicted.controlled_phase = per_step.controlled_phase * scale;
    predicted.swap = per_step.swap * scale;
    predicted.diagonal_phase = per_step.diagonal_phase * scale;
    predicted.literal_term = per_step.literal_term * scale;
    predicted.exact_term = per_step.exact_term * scale;

    StateVector state = initial_state(problem, cap);
    GateCounts measured;
    for (std::int64_t st = 0; st < steps; ++st) {
        advance_one_step(state, problem, problem.plan, &measured);
    }

    json out;
    out["problem_type"] = problem.type == ProblemType::spins ? "spins" : "particles";
    out["mode"] = to_string(problem.plan.mode);
    out["steps"] = steps;
    out["qubits"] = problem.num_qubits();
    out["amplitude_count"] = std::uint64_t{1} << problem.num_qubits();
    if (problem.type == ProblemType::spins) {
        out["parameters"] = {{"num_spins", problem.spins.num_spins},
                             {"num_terms", problem.spins.terms.size()}};
    } else {
        out["parameters"] = {{"num_particles", problem.particles.num_particles},
                             {"qubits_per_particle", problem.particles.qubits_per_particle},
                             {"potential_entries", problem.potentials.one_body.size() +
                                                       problem.potentials.two_body.size()}};
    }
    out["per_step_predicted"] = gate_counts_json(per_step);
    out["total_predicted"] = gate_counts_json(predicted);
    out["total_measured"] = gate_counts_json(measured);
    out["per_step_gate_total"] = per_step.total();
    out["match"] = predicted == measured;
    return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::string out = "step,t,norm";
    for (const std::string& label : trajectory.labels) {
        out += ",";
        out += label;
    }
    out += "\n";
    for (const TrajectoryRecord& rec : trajectory.records) {
        out += std::to_string(rec.step);
        out += ",";
        out += fmt_double(rec.t);
        out += ",";
        out += fmt_double(rec.norm);
        for (double v : rec.values) {
            out += ",";
            out += fmt_double(v);
        }
        out += "\n";
    }
    return out;
}

}  // namespace qsim
