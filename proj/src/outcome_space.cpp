// SPDX-License-Identifier: Apache-2.0
#include "qmeas/outcome_space.hpp"

#include <algorithm>
#include <set>

namespace qmeas {

OutcomeSpace::OutcomeSpace(std::string label_, int atoms_, std::vector<std::string> atom_names_)
    : label(std::move(label_)), atoms(atoms_), atom_names(std::move(atom_names_)) {
    if (atoms < 1) throw ValidationFailure("outcome space '" + label + "' needs at least 1 atom");
    if (!atom_names.empty()) {
        if (static_cast<int>(atom_names.size()) != atoms)
            throw ValidationFailure("outcome space '" + label + "': atom_names length mismatch");
        std::set<std::string> seen(atom_names.begin(), atom_names.end());
        if (static_cast<int>(seen.size()) != atoms)
            throw ValidationFailure("outcome space '" + label + "': atom names not unique");
    }
}

bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
    return a.label == b.label && a.atoms == b.atoms;
}

bool operator!=(const OutcomeSpace& a, const OutcomeSpace& b) { return !(a == b); }

Event::Event(OutcomeSpace space, std::vector<int> members)
    : space_(std::move(space)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int m : members_)
        if (m < 0 || m >= space_.atoms)
            throw IndexOutOfRange("event atom " + std::to_string(m) + " outside space '" +
                                  space_.label + "' with " + std::to_string(space_.atoms) +
                                  " atoms");
}

Event Event::full(const OutcomeSpace& space) {
    std::vector<int> all(static_cast<std::size_t>(space.atoms));
    for (int i = 0; i < space.atoms; ++i) all[static_cast<std::size_t>(i)] = i;
    return Event(space, std::move(all));
}

Event Event::empty(const OutcomeSpace& space) { return Event(space, {}); }

Event Event::singleton(const OutcomeSpace& space, int atom) { return Event(space, {atom}); }

bool Event::contains(int atom) const {
    return std::binary_search(members_.begin(), members_.end(), atom);
}

Event intersect(const Event& x, const Event& y) {
    if (x.space() != y.space())
        throw SpaceMismatch("intersect: events on '" + x.space().label + "' and '" +
                            y.space().label + "'");
    std::vector<int> out;
    std::set_intersection(x.members().begin(), x.members().end(), y.members().begin(),
                          y.members().end(), std::back_inserter(out));
    return Event(x.space(), std::move(out));
}

OutcomeSpace product_space(const OutcomeSpace& a, const OutcomeSpace& b) {
    return OutcomeSpace(a.label + "x" + b.label, a.atoms * b.atoms);
}

Event product_event(const Event& x, const Event& y) {
    const OutcomeSpace prod = product_space(x.space(), y.space());
    std::vector<int> out;
    out.reserve(x.members().size() * y.members().size());
    for (int i : x.members())
        for (int j : y.members()) out.push_back(i * y.space().atoms + j);
    return Event(prod, std::move(out));
}

}  // namespace qmeas
