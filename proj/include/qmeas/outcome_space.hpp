// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qmeas/errors.hpp"

namespace qmeas {

/// Finite set of measurement outcomes.  Every measure space in the library is
/// one of these: atoms are indexed 0..atoms-1, optionally named.
struct OutcomeSpace {
    std::string label;
    int atoms = 0;
    std::vector<std::string> atom_names;  // empty, or one name per atom

    OutcomeSpace() = default;
    OutcomeSpace(std::string label, int atoms, std::vector<std::string> atom_names = {});
};

bool operator==(const OutcomeSpace& a, const OutcomeSpace& b);
bool operator!=(const OutcomeSpace& a, const OutcomeSpace& b);

/// Subset of a space's atoms, kept sorted and duplicate-free.
class Event {
  public:
    Event(OutcomeSpace space, std::vector<int> members);

    static Event full(const OutcomeSpace& space);
    static Event empty(const OutcomeSpace& space);
    static Event singleton(const OutcomeSpace& space, int atom);

    const OutcomeSpace& space() const { return space_; }
    const std::vector<int>& members() const { return members_; }
    bool contains(int atom) const;
    bool is_full() const { return static_cast<int>(members_.size()) == space_.atoms; }
    bool is_empty() const { return members_.empty(); }

  private:
    OutcomeSpace space_;
    std::vector<int> members_;
};

/// Set intersection; both events must live on the same space.
Event intersect(const Event& x, const Event& y);

/// Canonical product space with row-major atom ordering: (i, j) -> i*n_b + j.
OutcomeSpace product_space(const OutcomeSpace& a, const OutcomeSpace& b);

/// Rectangle event {(i, j) : i in x, j in y} on product_space(x.space, y.space).
Event product_event(const Event& x, const Event& y);

}  // namespace qmeas
