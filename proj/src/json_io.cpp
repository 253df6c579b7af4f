// SPDX-License-Identifier: Apache-2.0
#include "qmeas/json_io.hpp"

#include <fstream>

namespace qmeas {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double need_number(const Json& j) {
    if (!j.is_number()) throw ParseError("expected a number");
    return j.get<double>();
}

std::int64_t need_int(const Json& j) {
    if (!j.is_number_integer()) throw ParseError("expected an integer");
    return j.get<std::int64_t>();
}

std::string need_string(const Json& j) {
    if (!j.is_string()) throw ParseError("expected a string");
    return j.get<std::string>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
    const auto rows = static_cast<Index>(need_int(need(j, "rows")));
    const auto cols = static_cast<Index>(need_int(need(j, "cols")));
    if (rows < 1 || cols < 1) throw ParseError("matrix dims must be positive");
    const Json& entries = need(j, "entries");
    if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols)
        throw ParseError("matrix entries length does not match rows*cols");
    Matrix m(rows, cols);
    Index k = 0;
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2) throw ParseError("matrix entry must be [re, im]");
        m(k / cols, k % cols) = Complex(need_number(e[0]), need_number(e[1]));
        ++k;
    }
    if (!m.allFinite()) throw ParseError("matrix has non-finite entries");
    return m;
}

Json layout_to_json(const FactorLayout& layout) {
    Json out = Json::array();
    for (const auto& f : layout) out.push_back(Json{{"label", f.label}, {"dim", f.dim}});
    return out;
}

FactorLayout layout_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("layout must be an array of factors");
    std::vector<Factor> factors;
    for (const auto& f : j)
        factors.push_back(
            {need_string(need(f, "label")), static_cast<Index>(need_int(need(f, "dim")))});
    try {
        return FactorLayout(std::move(factors));
    } catch (const Error& e) {
        throw ParseError(std::string("bad layout: ") + e.what());
    }
}

Json outcome_space_to_json(const OutcomeSpace& space) {
    Json out{{"label", space.label}, {"atoms", space.atoms}};
    if (!space.atom_names.empty()) out["atom_names"] = space.atom_names;
    return out;
}

OutcomeSpace outcome_space_from_json(const Json& j) {
    std::vector<std::string> names;
    if (j.is_object() && j.contains("atom_names")) {
        const Json& raw = j.at("atom_names");
        if (!raw.is_array()) throw ParseError("atom_names must be an array of strings");
        for (const auto& n : raw) names.push_back(need_string(n));
    }
    try {
        return OutcomeSpace(need_string(need(j, "label")),
                            static_cast<int>(need_int(need(j, "atoms"))), std::move(names));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("bad outcome space: ") + e.what());
    }
}

Json event_to_json(const Event& e) { return Json(e.members()); }

Event event_from_json(const Json& j, const OutcomeSpace& space) {
    if (!j.is_array()) throw ParseError("event must be an array of atom indices");
    std::vector<int> members;
    for (const auto& m : j) {
        members.push_back(static_cast<int>(need_int(m)));
    }
    return Event(space, std::move(members));
}

Json density_to_json(const DensityOperator& rho) {
    return Json{{"matrix", matrix_to_json(rho.matrix())},
                {"layout", layout_to_json(rho.layout())}};
}

DensityOperator density_from_json(const Json& j, const Tolerance& tol) {
    return DensityOperator(matrix_from_json(need(j, "matrix")),
                           layout_from_json(need(j, "layout")), tol);
}

Json unitary_to_json(const UnitaryOperator& u) {
    return Json{{"matrix", matrix_to_json(u.matrix())},
                {"layout", layout_to_json(u.layout())}};
}

UnitaryOperator unitary_from_json(const Json& j, const Tolerance& tol) {
    return UnitaryOperator(matrix_from_json(need(j, "matrix")),
                           layout_from_json(need(j, "layout")), tol);
}

Json povm_to_json(const OperatorValuedMeasure& m) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms()) {
        Json flat = Json::array();
        for (Index r = 0; r < a.rows(); ++r)
            for (Index c = 0; c < a.cols(); ++c)
                flat.push_back(Json::array({a(r, c).real(), a(r, c).imag()}));
        atoms.push_back(std::move(flat));
    }
    return Json{{"space", outcome_space_to_json(m.space())},
                {"dim", m.dim()},
                {"atoms", std::move(atoms)}};
}

OperatorValuedMeasure povm_from_json(const Json& j, const Tolerance& tol) {
    const OutcomeSpace space = outcome_space_from_json(need(j, "space"));
    const auto dim = static_cast<Index>(need_int(need(j, "dim")));
    if (dim < 1) throw ParseError("measure dim must be positive");
    const Json& atoms_json = need(j, "atoms");
    if (!atoms_json.is_array()) throw ParseError("measure atoms must be an array");
    std::vector<Matrix> atoms;
    for (const auto& flat : atoms_json) {
        if (!flat.is_array() || static_cast<Index>(flat.size()) != dim * dim)
            throw ParseError("measure atom entry count does not match dim*dim");
        Matrix a(dim, dim);
        Index k = 0;
        for (const auto& e : flat) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("measure atom entry must be [re, im]");
            a(k / dim, k % dim) = Complex(need_number(e[0]), need_number(e[1]));
            ++k;
        }
        atoms.push_back(std::move(a));
    }
    return OperatorValuedMeasure(space, std::move(atoms), tol);
}

Json dilation_to_json(const NeumarkDilation& dil) {
    Json atoms = Json::array();
    for (const auto& a : dil.extended_pvm.atoms()) atoms.push_back(matrix_to_json(a));
    return Json{{"D", dil.extended_dim},
                {"Q", matrix_to_json(dil.q_projection)},
                {"atoms", std::move(atoms)},
                {"space", outcome_space_to_json(dil.extended_pvm.space())}};
}

Json chain_scenario_to_json(const ChainScenario& scn) {
    Json steps = Json::array();
    for (const auto& s : scn.steps())
        steps.push_back(Json{{"probe_state", density_to_json(s.probe_state)},
                             {"interaction", matrix_to_json(s.interaction.matrix())},
                             {"measure", povm_to_json(s.measure)}});
    return Json{{"particle", density_to_json(scn.particle())}, {"steps", std::move(steps)}};
}

ChainScenario chain_scenario_from_json(const Json& j, const Tolerance& tol) {
    DensityOperator particle = density_from_json(need(j, "particle"), tol);
    const Index d0 = particle.dim();
    const Json& steps_json = need(j, "steps");
    if (!steps_json.is_array() || steps_json.empty())
        throw ParseError("probe chain needs a non-empty steps array");
    std::vector<ProbeStep> steps;
    for (const auto& s : steps_json) {
        DensityOperator probe = density_from_json(need(s, "probe_state"), tol);
        const Index dj = probe.dim();
        UnitaryOperator interaction(matrix_from_json(need(s, "interaction")),
                                    FactorLayout{{"sys", d0}, {"probe", dj}}, tol);
        steps.push_back(
            {std::move(probe), std::move(interaction), povm_from_json(need(s, "measure"), tol)});
    }
    return ChainScenario(std::move(particle), std::move(steps), tol);
}

Json entangled_scenario_to_json(const EntangledScenario& s) {
    Json keys = Json::array();
    for (const auto& z : s.alice_key_events) keys.push_back(event_to_json(z));
    return Json{{"eve_probe", density_to_json(s.eve_probe)},
                {"alice_state", density_to_json(s.alice_state)},
                {"attack", matrix_to_json(s.attack.matrix())},
                {"eve_measure", povm_to_json(s.eve_measure)},
                {"bob_measure", povm_to_json(s.bob_measure)},
                {"alice_measure", povm_to_json(s.alice_measure)},
                {"alice_key_events", std::move(keys)}};
}

EntangledScenario entangled_scenario_from_json(const Json& j, const Tolerance& tol) {
    DensityOperator eve = density_from_json(need(j, "eve_probe"), tol);
    DensityOperator shared = density_from_json(need(j, "alice_state"), tol);
    if (shared.layout().size() != 2)
        throw ParseError("alice_state layout must have exactly two factors (bob, alice)");
    const Index d_b = shared.layout()[0].dim;
    UnitaryOperator attack(matrix_from_json(need(j, "attack")),
                           FactorLayout{{"E", eve.dim()}, {"B", d_b}}, tol);
    OperatorValuedMeasure eve_m = povm_from_json(need(j, "eve_measure"), tol);
    OperatorValuedMeasure bob_m = povm_from_json(need(j, "bob_measure"), tol);
    OperatorValuedMeasure alice_m = povm_from_json(need(j, "alice_measure"), tol);

    const Json& keys = need(j, "alice_key_events");
    if (!keys.is_array() || keys.size() != 4)
        throw ParseError("alice_key_events must list exactly four events");
    std::array<Event, 4> events{
        event_from_json(keys[0], alice_m.space()), event_from_json(keys[1], alice_m.space()),
        event_from_json(keys[2], alice_m.space()), event_from_json(keys[3], alice_m.space())};
    return EntangledScenario(std::move(eve), std::move(shared), std::move(attack),
                             std::move(eve_m), std::move(bob_m), std::move(alice_m),
                             std::move(events), tol);
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    ScenarioFile file;
    file.version = need_string(need(j, "version"));
    if (file.version != "1") throw ParseError("unsupported scenario version '" + file.version + "'");
    file.kind = need_string(need(j, "kind"));
    file.payload = need(j, "payload");
    return file;
}

}  // namespace qmeas
