// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmeas/random.hpp"

namespace qmeas {

/// equality: the residual must stay below the bound.
/// witness:  the residual must exceed the bound (the checked claim is a
///           genuine inequality and the suite must exhibit it).
enum class PropertyKind { equality, witness };

/// One machine-checked identity: a seeded generator feeding a residual
/// computation, with the bound the residual is held against.
struct PropertyEntry {
    std::string id;
    std::string statement;  ///< the identity, in plain math notation
    std::string generator;  ///< what the randomized inputs are
    PropertyKind kind = PropertyKind::equality;
    double bound = 0.0;
    std::function<double(Rng&)> run;  ///< returns the worst residual observed
};

struct PropertyResult {
    std::string id;
    PropertyKind kind = PropertyKind::equality;
    double residual = 0.0;
    double bound = 0.0;
    bool pass = false;
};

const std::vector<PropertyEntry>& property_registry();

/// Runs every entry with a per-entry sub-seed derived from the master seed.
std::vector<PropertyResult> run_all(std::uint64_t seed);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace qmeas
