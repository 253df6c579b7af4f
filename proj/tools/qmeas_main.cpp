// SPDX-License-Identifier: Apache-2.0
//
// Scenario runner: validates measurement-model files and executes the
// conditioning, dilation, probe-chain, key-distribution and property-suite
// analyses on them.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmeas/conditioning.hpp"
#include "qmeas/fixtures.hpp"
#include "qmeas/json_io.hpp"
#include "qmeas/neumark.hpp"
#include "qmeas/probe_chain.hpp"
#include "qmeas/properties.hpp"

namespace {

using namespace qmeas;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;

struct Options {
    std::string path;
    std::string out;
    std::string format = "csv";
    double tol = 1e-9;
    std::uint64_t seed = 1;
    int sweeps = 0;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fnv1a_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::uint64_t h = 14695981039346656037ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// One row of a report table: a metric name, up to two string arguments and a
// value. The same rows back the CSV and JSON outputs.
struct Row {
    std::string metric;
    std::string arg1;
    std::string arg2;
    double value = 0.0;
};

struct RunReport {
    std::string kind;
    std::string digest;
    double tol = 0.0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::vector<Row> rows;
    std::optional<Json> extra;  // command-specific detail for json output
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void write_csv(std::ostream& out, const RunReport& report) {
    out << "metric,arg1,arg2,value\n";
    for (const auto& r : report.rows)
        out << csv_field(r.metric) << ',' << csv_field(r.arg1) << ',' << csv_field(r.arg2) << ','
            << fmt_double(r.value) << '\n';
}

Json report_to_json(const RunReport& report) {
    Json rows = Json::array();
    for (const auto& r : report.rows)
        rows.push_back(Json{{"metric", r.metric},
                            {"arg1", r.arg1},
                            {"arg2", r.arg2},
                            {"value", r.value}});
    Json j{{"kind", report.kind}, {"digest", report.digest}, {"tolerance", report.tol},
           {"seed", report.seed}, {"pass", report.pass},     {"rows", std::move(rows)}};
    if (report.extra) j["detail"] = *report.extra;
    return j;
}

void emit(const Options& opt, const RunReport& report) {
    std::cout << "kind: " << report.kind << "\n"
              << "input digest: " << report.digest << "\n"
              << "tolerance: " << fmt_double(report.tol) << "  seed: " << report.seed << "\n";
    for (const auto& r : report.rows) {
        std::cout << "  " << r.metric;
        if (!r.arg1.empty()) {
            std::cout << '[' << r.arg1;
            if (!r.arg2.empty()) std::cout << ',' << r.arg2;
            std::cout << ']';
        }
        std::cout << " = " << fmt_double(r.value) << "\n";
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << "\n";

    if (!opt.out.empty()) {
        std::ofstream file(opt.out, std::ios::binary);
        if (!file) throw ParseError("cannot write '" + opt.out + "'");
        if (opt.format == "json")
            file << report_to_json(report).dump(2) << '\n';
        else
            write_csv(file, report);
    }
}

ScenarioFile load_for(const std::string& expected_kind, const Options& opt) {
    ScenarioFile file = load_scenario(opt.path);
    if (file.kind != expected_kind)
        throw KindMismatch("scenario kind '" + file.kind + "' does not match subcommand '" +
                           expected_kind + "'");
    return file;
}

RunReport make_report(const std::string& kind, const Options& opt, bool with_digest = true) {
    RunReport report;
    report.kind = kind;
    report.digest = with_digest ? fnv1a_digest(opt.path) : "-";
    report.tol = opt.tol;
    report.seed = opt.seed;
    return report;
}

// --- validate ----------------------------------------------------------------

int cmd_validate(const Options& opt) {
    const ScenarioFile file = load_scenario(opt.path);
    RunReport report = make_report(file.kind, opt);

    bool pass = true;
    auto try_load = [&](const std::string& object, const std::function<void()>& load) {
        double ok = 1.0;
        try {
            load();
        } catch (const ParseError&) {
            throw;  // structural problems keep the parse exit code
        } catch (const Error& e) {
            ok = 0.0;
            std::cerr << object << ": " << e.what() << "\n";
        }
        report.rows.push_back({"object_valid", object, "", ok});
        pass = pass && ok == 1.0;
    };

    if (file.kind == "povm_check") {
        if (!file.payload.contains("povm")) throw ParseError("povm_check payload needs a 'povm'");
        const Json& raw = file.payload.at("povm");
        const OutcomeSpace space = outcome_space_from_json(raw.at("space"));
        // decode atoms without the constructor so a broken measure is
        // reported axiom by axiom instead of thrown
        const auto dim = static_cast<Index>(raw.at("dim").get<std::int64_t>());
        std::vector<Matrix> atoms;
        for (const auto& flat : raw.at("atoms")) {
            if (!flat.is_array() || static_cast<Index>(flat.size()) != dim * dim)
                throw ParseError("measure atom entry count does not match dim*dim");
            Matrix a(dim, dim);
            Index k = 0;
            for (const auto& e : flat) {
                if (!e.is_array() || e.size() != 2)
                    throw ParseError("measure atom entry must be [re, im]");
                a(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
                ++k;
            }
            atoms.push_back(std::move(a));
        }
        const ValidationReport v = validate_povm(space, atoms);
        for (const auto& c : v.checks) {
            report.rows.push_back({"axiom_residual", c.name, c.pass ? "pass" : "fail",
                                   c.residual});
            if (c.name.find("projective") == std::string::npos) pass = pass && c.pass;
        }
        report.rows.push_back({"projective", "", "", v.projective ? 1.0 : 0.0});
        pass = pass && v.valid;
        if (!v.valid)
            for (const auto& c : v.checks)
                if (!c.pass) std::cerr << "violated: " << c.name << "\n";
    } else if (file.kind == "conditioning") {
        try_load("state", [&] { density_from_json(file.payload.at("state")); });
        try_load("measure_b", [&] {
            const OperatorValuedMeasure mb = povm_from_json(file.payload.at("measure_b"));
            event_from_json(file.payload.at("event_y"), mb.space());
        });
        if (file.payload.contains("measure_a"))
            try_load("measure_a", [&] { povm_from_json(file.payload.at("measure_a")); });
    } else if (file.kind == "neumark") {
        try_load("povm", [&] { povm_from_json(file.payload.at("povm")); });
    } else if (file.kind == "probe_chain") {
        try_load("scenario", [&] { chain_scenario_from_json(file.payload); });
    } else if (file.kind == "bb84") {
        try_load("scenario", [&] { entangled_scenario_from_json(file.payload); });
    } else {
        throw ParseError("unknown scenario kind '" + file.kind + "'");
    }

    report.pass = pass;
    emit(opt, report);
    return pass ? kExitPass : kExitFail;
}

// --- condition ------------------------------------------------------------------

int cmd_condition(const Options& opt) {
    const ScenarioFile file = load_for("conditioning", opt);
    const Json& p = file.payload;

    const DensityOperator state = density_from_json(p.at("state"));
    const OperatorValuedMeasure mb = povm_from_json(p.at("measure_b"));
    std::string b_label = state.layout()[state.layout().size() - 1].label;
    if (p.contains("condition_factor")) b_label = p.at("condition_factor").get<std::string>();
    const Event y = event_from_json(p.at("event_y"), mb.space());

    RunReport report = make_report(file.kind, opt);

    const ConditionedState reduced = condition_rect_reduced(state, mb, b_label, y);
    report.rows.push_back({"normalizer", "", "", reduced.normalizer});

    double agreement = 0.0;
    if (mb.projective()) {
        const ConditionedState full = condition_rect_full(state, mb, b_label, y);
        std::vector<std::string> kept_labels;
        for (const auto& f : reduced.state.layout()) kept_labels.push_back(f.label);
        const OperatorValuedMeasure probe_side =
            computational_pvm(reduced.state.dim(), "probe");
        for (int j = 0; j < probe_side.outcomes(); ++j) {
            const Matrix embedded = embed(probe_side.atom(j), kept_labels, state.layout());
            const double via_full = trace(full.state.matrix() * embedded).real();
            const double via_reduced =
                trace(reduced.state.matrix() * probe_side.atom(j)).real();
            agreement = std::max(agreement, std::abs(via_full - via_reduced));
        }
        report.rows.push_back({"definition_agreement_residual", "", "", agreement});
    }

    const OperatorValuedMeasure ma = p.contains("measure_a")
                                         ? povm_from_json(p.at("measure_a"))
                                         : computational_pvm(reduced.state.dim(), "A");
    for (int j = 0; j < ma.outcomes(); ++j)
        report.rows.push_back({"pr_a_given_y", std::to_string(j), "",
                               trace(reduced.state.matrix() * ma.atom(j)).real()});

    report.pass = agreement <= opt.tol;
    report.extra = Json{{"conditioned_state", density_to_json(reduced.state)}};
    emit(opt, report);
    return report.pass ? kExitPass : kExitFail;
}

// --- neumark ---------------------------------------------------------------------

int cmd_neumark(const Options& opt) {
    const ScenarioFile file = load_for("neumark", opt);
    const OperatorValuedMeasure m = povm_from_json(file.payload.at("povm"));
    int samples = 50;
    if (file.payload.contains("samples")) samples = file.payload.at("samples").get<int>();

    const NeumarkDilation dil = dilate(m);

    RunReport report = make_report(file.kind, opt);
    report.rows.push_back({"extended_dim", "", "", static_cast<double>(dil.extended_dim)});

    Rng rng(derive_seed(opt.seed, "neumark-lifting"));
    double lifting = 0.0;
    for (int s = 0; s < samples; ++s) {
        const DensityOperator rho = random_density(rng, FactorLayout{{"H", m.dim()}});
        lifting = std::max(lifting, verify_lifting(rho, m, dil));
    }
    report.rows.push_back({"lifting_residual_max", "", "", lifting});

    double obstacle_max = 0.0;
    for (int i = 0; i < m.outcomes(); ++i)
        for (int j = 0; j < m.outcomes(); ++j) {
            if (i == j) continue;
            const ObstacleReport r = obstacle_report(m, dil, Event::singleton(m.space(), i),
                                                     Event::singleton(m.space(), j));
            report.rows.push_back(
                {"obstacle_residual", std::to_string(i), std::to_string(j), r.residual});
            obstacle_max = std::max(obstacle_max, r.residual);
        }
    report.rows.push_back({"obstacle_residual_max", "", "", obstacle_max});

    report.pass = lifting <= opt.tol;
    report.extra = Json{{"dilation", dilation_to_json(dil)}};
    emit(opt, report);
    return report.pass ? kExitPass : kExitFail;
}

// --- probe-chain -------------------------------------------------------------------

int cmd_probe_chain(const Options& opt) {
    const ScenarioFile file = load_for("probe_chain", opt);
    const ChainScenario scn = chain_scenario_from_json(file.payload);

    if (!file.payload.contains("events"))
        throw ParseError("probe_chain payload needs per-step 'events'");
    const Json& events_json = file.payload.at("events");
    if (!events_json.is_array() || events_json.size() != scn.length())
        throw ParseError("probe_chain events must list one event per step");
    std::vector<Event> events;
    for (std::size_t j = 0; j < scn.length(); ++j)
        events.push_back(event_from_json(events_json[j], scn.steps()[j].measure.space()));

    RunReport report = make_report(file.kind, opt);

    ScaledConditional sigma = initial_scaled(scn.particle());
    for (std::size_t j = 0; j < scn.length(); ++j) {
        sigma = chain_step(sigma, scn.steps()[j], events[j]);
        report.rows.push_back({"weight_after_step", std::to_string(j), "", sigma.weight});
    }
    const double joint = chain_joint(scn, events);
    const double oracle = chain_joint_bruteforce(scn, events);
    report.rows.push_back({"joint", "", "", joint});
    report.rows.push_back({"joint_bruteforce", "", "", oracle});
    report.rows.push_back({"cross_check_residual", "", "", std::abs(joint - oracle)});

    report.pass = std::abs(joint - oracle) <= opt.tol;
    emit(opt, report);
    return report.pass ? kExitPass : kExitFail;
}

// --- bb84-equiv ---------------------------------------------------------------------

int cmd_bb84(const Options& opt) {
    const ScenarioFile file = load_for("bb84", opt);
    const EntangledScenario s = entangled_scenario_from_json(file.payload);

    RunReport report = make_report(file.kind, opt);

    const EquivalenceTable table = equivalence_table(s);
    for (std::size_t i = 0; i < 4; ++i)
        report.rows.push_back({"zeta", std::to_string(i), "", table.priors[i]});
    report.rows.push_back({"zeta_sum", "", "", table.prior_sum});
    report.rows.push_back({"max_residual", "", "", table.max_residual});

    double worst = table.max_residual;
    Rng rng(derive_seed(opt.seed, "bb84-sweeps"));
    for (int k = 0; k < opt.sweeps; ++k) {
        const Index de = (rng() % 2) ? 2 : 4;
        const EntangledScenario attacked = bb84_bell_fixture_with_attack(
            random_density(rng, FactorLayout{{"E", de}}),
            random_unitary_on(rng, FactorLayout{{"E", de}, {"B", 2}}));
        const double r = equivalence_report(attacked);
        report.rows.push_back({"sweep_residual", std::to_string(k), "", r});
        worst = std::max(worst, r);
    }
    report.pass = worst <= opt.tol;

    if (!opt.out.empty() && opt.format == "csv") {
        // machine table: one row per (eve atom, bob atom, key index)
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw ParseError("cannot write '" + opt.out + "'");
        out << "x_e,y_b,i,entangled,transmitted,diff\n";
        for (const auto& row : table.rows)
            out << row.eve_atom << ',' << row.bob_atom << ',' << row.key_index << ','
                << fmt_double(row.entangled) << ',' << fmt_double(row.transmitted) << ','
                << fmt_double(row.entangled - row.transmitted) << '\n';
        Options stdout_only = opt;
        stdout_only.out.clear();
        emit(stdout_only, report);
    } else {
        emit(opt, report);
    }
    return report.pass ? kExitPass : kExitFail;
}

// --- properties -----------------------------------------------------------------------

int cmd_properties(const Options& opt) {
    RunReport report = make_report("properties", opt, /*with_digest=*/false);

    const auto results = run_all(opt.seed);
    for (const auto& r : results)
        report.rows.push_back(
            {r.kind == PropertyKind::witness ? "witness_residual" : "equality_residual", r.id,
             r.pass ? "pass" : "fail", r.residual});
    report.pass = all_passed(results);

    if (!opt.out.empty() && opt.format == "csv") {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw ParseError("cannot write '" + opt.out + "'");
        out << "id,kind,residual,bound,pass\n";
        for (const auto& r : results)
            out << r.id << ',' << (r.kind == PropertyKind::witness ? "witness" : "equality")
                << ',' << fmt_double(r.residual) << ',' << fmt_double(r.bound) << ','
                << (r.pass ? 1 : 0) << '\n';
        Options stdout_only = opt;
        stdout_only.out.clear();
        emit(stdout_only, report);
    } else {
        emit(opt, report);
    }
    return report.pass ? kExitPass : kExitFail;
}

int dispatch(const std::function<int(const Options&)>& fn, const Options& opt) {
    try {
        return fn(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-model scenario runner"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_path) {
        if (needs_path) cmd->add_option("path", opt.path, "scenario file")->required();
        cmd->add_option("--out", opt.out, "write the report table to this path");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--tol", opt.tol, "residual threshold for PASS");
        cmd->add_option("--seed", opt.seed, "seed for randomized sweeps");
    };

    CLI::App* validate = app.add_subcommand("validate", "check every object in a scenario file");
    add_common(validate, true);
    CLI::App* condition =
        app.add_subcommand("condition", "conditional states for a two-factor scenario");
    add_common(condition, true);
    CLI::App* neumark = app.add_subcommand("neumark", "dilate a measure and verify the lifting");
    add_common(neumark, true);
    CLI::App* probe = app.add_subcommand("probe-chain", "joint probabilities for a probe chain");
    add_common(probe, true);
    CLI::App* bb84 = app.add_subcommand(
        "bb84-equiv", "entangled vs transmitted key-distribution equivalence");
    add_common(bb84, true);
    bb84->add_option("--sweeps", opt.sweeps, "additional random attacks to test");
    CLI::App* properties = app.add_subcommand("properties", "run the identity registry");
    add_common(properties, false);

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return dispatch(cmd_validate, opt);
    if (condition->parsed()) return dispatch(cmd_condition, opt);
    if (neumark->parsed()) return dispatch(cmd_neumark, opt);
    if (probe->parsed()) return dispatch(cmd_probe_chain, opt);
    if (bb84->parsed()) return dispatch(cmd_bb84, opt);
    if (properties->parsed()) return dispatch(cmd_properties, opt);
    return kExitFail;
}
