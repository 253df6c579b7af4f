// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qmeas/bb84.hpp"
#include "qmeas/neumark.hpp"
#include "qmeas/probe_chain.hpp"

namespace qmeas {

using Json = nlohmann::json;

// Matrices are {"rows", "cols", "entries"} with row-major [re, im] pairs;
// dimensions are always explicit so files round-trip bit-exactly.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json layout_to_json(const FactorLayout& layout);
FactorLayout layout_from_json(const Json& j);

Json outcome_space_to_json(const OutcomeSpace& space);
OutcomeSpace outcome_space_from_json(const Json& j);

// Events are bare arrays of atom indices.
Json event_to_json(const Event& e);
Event event_from_json(const Json& j, const OutcomeSpace& space);

Json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const Json& j, const Tolerance& tol = {});

Json unitary_to_json(const UnitaryOperator& u);
UnitaryOperator unitary_from_json(const Json& j, const Tolerance& tol = {});

Json povm_to_json(const OperatorValuedMeasure& m);
OperatorValuedMeasure povm_from_json(const Json& j, const Tolerance& tol = {});

Json dilation_to_json(const NeumarkDilation& dil);

Json chain_scenario_to_json(const ChainScenario& scn);
ChainScenario chain_scenario_from_json(const Json& j, const Tolerance& tol = {});

Json entangled_scenario_to_json(const EntangledScenario& s);
EntangledScenario entangled_scenario_from_json(const Json& j, const Tolerance& tol = {});

/// On-disk envelope for every CLI input.
struct ScenarioFile {
    std::string version;
    std::string kind;  // povm_check | conditioning | neumark | probe_chain | bb84
    Json payload;
};

/// Parses the envelope; throws ParseError for unreadable files, malformed
/// JSON, missing fields or an unsupported version.
ScenarioFile load_scenario(const std::filesystem::path& path);

}  // namespace qmeas
