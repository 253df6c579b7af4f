// SPDX-License-Identifier: Apache-2.0
#include "qmeas/properties.hpp"

#include <cmath>
#include <numbers>

#include "qmeas/conditioning.hpp"
#include "qmeas/fixtures.hpp"
#include "qmeas/neumark.hpp"
#include "qmeas/probe_chain.hpp"

namespace qmeas {

namespace {

constexpr int kLemmaTrials = 100;
constexpr double kLemmaBound = 1e-10;
constexpr double kSuiteBound = 1e-9;

Index pick_dim(Rng& rng) { return 2 + static_cast<Index>(rng() % 2); }

Event random_event(Rng& rng, const OutcomeSpace& space) {
    std::vector<int> members;
    for (int a = 0; a < space.atoms; ++a)
        if (rng() % 2) members.push_back(a);
    return Event(space, std::move(members));
}

// Event whose probability stays usefully away from zero, so ratio
// comparisons do not divide by noise.
Event random_conditioning_event(Rng& rng, const DensityOperator& rho,
                                const OperatorValuedMeasure& m, double floor = 1e-4) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        Event y = random_event(rng, m.space());
        if (y.is_empty()) continue;
        if (trace(rho.matrix() * event_operator(m, y)).real() > floor) return y;
    }
    return Event::full(m.space());
}

std::vector<Event> all_events(const OutcomeSpace& space) {
    std::vector<Event> out;
    const int n = space.atoms;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> members;
        for (int a = 0; a < n; ++a)
            if (mask & (1 << a)) members.push_back(a);
        out.emplace_back(space, std::move(members));
    }
    return out;
}

double table_probability(const ProbabilityTable& table, const Event& x) {
    double p = 0.0;
    for (int a : x.members()) p += table.at(a);
    return p;
}

FactorLayout ab_layout(Index da, Index db) {
    return FactorLayout{{"A", da}, {"B", db}};
}

ProbeStep random_probe_step(Rng& rng, Index d0, const std::string& tag) {
    return ProbeStep{random_density(rng, FactorLayout{{"probe", 2}}),
                     random_unitary_on(rng, FactorLayout{{"sys", d0}, {"probe", 2}}),
                     random_povm(rng, 2, 2, tag)};
}

ChainScenario random_chain(Rng& rng, int probes) {
    DensityOperator particle = random_density(rng, FactorLayout{{"sys", 2}});
    std::vector<ProbeStep> steps;
    for (int j = 0; j < probes; ++j)
        steps.push_back(random_probe_step(rng, 2, "M" + std::to_string(j + 1)));
    return ChainScenario(std::move(particle), std::move(steps));
}

std::vector<Event> random_chain_events(Rng& rng, const ChainScenario& scn) {
    std::vector<Event> events;
    for (const auto& step : scn.steps()) events.push_back(random_event(rng, step.measure.space()));
    return events;
}

EntangledScenario random_attack_scenario(Rng& rng) {
    const Index de = (rng() % 2) ? 2 : 4;
    DensityOperator eve = random_density(rng, FactorLayout{{"E", de}});
    UnitaryOperator attack = random_unitary_on(rng, FactorLayout{{"E", de}, {"B", 2}});
    return bb84_bell_fixture_with_attack(std::move(eve), std::move(attack));
}

// --- appendix lemmas ------------------------------------------------------

double check_trace_cyclic(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index d = 3;
        const Matrix a = random_matrix(rng, d, d), b = random_matrix(rng, d, d),
                     c = random_matrix(rng, d, d);
        worst = std::max(worst, std::abs(trace(a * b * c) - trace(c * a * b)));
    }
    return worst;
}

double check_partial_trace_composition(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Matrix prod =
            random_matrix(rng, da * db, da * db) * random_matrix(rng, da * db, da * db);
        const Complex full = trace(prod);
        worst = std::max(worst, std::abs(trace(partial_trace(prod, layout, {"B"}).first) - full));
        worst = std::max(worst, std::abs(trace(partial_trace(prod, layout, {"A"}).first) - full));
    }
    return worst;
}

double check_a9(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Matrix m = random_matrix(rng, da * db, da * db);
        const Matrix s = embed(random_matrix(rng, db, db), {"B"}, layout);
        worst = std::max(worst, max_abs_diff(partial_trace(m * s, layout, {"B"}).first,
                                             partial_trace(s * m, layout, {"B"}).first));
    }
    return worst;
}

double check_a10(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Matrix m = random_hermitian(rng, da * db);
        const Matrix s = embed(random_hermitian(rng, db), {"B"}, layout);
        const Matrix reduced = partial_trace(m * s, layout, {"B"}).first;
        worst = std::max(worst, max_abs(reduced - reduced.adjoint()));
    }
    return worst;
}

double check_a11_a12(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Matrix m = random_matrix(rng, da * db, da * db);
        const Matrix r = random_matrix(rng, da, da);
        const Matrix r_full = embed(r, {"A"}, layout);
        const Matrix tr_b_m = partial_trace(m, layout, {"B"}).first;
        worst = std::max(worst, max_abs_diff(partial_trace(r_full * m, layout, {"B"}).first,
                                             r * tr_b_m));
        worst = std::max(worst, max_abs_diff(partial_trace(m * r_full, layout, {"B"}).first,
                                             tr_b_m * r));
    }
    return worst;
}

double check_combined_lemma(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Matrix m = random_matrix(rng, da * db, da * db);
        const Matrix r = random_matrix(rng, da, da);
        const Complex lhs = trace(embed(r, {"A"}, layout) * m);
        const Complex rhs = trace(r * partial_trace(m, layout, {"B"}).first);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double check_swap_lemma(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Matrix q = random_matrix(rng, da * db, da * db);
        const Matrix r = embed(random_matrix(rng, da, da), {"A"}, layout);
        worst = std::max(worst, max_abs_diff(partial_trace(r * q, layout, {"A"}).first,
                                             partial_trace(q * r, layout, {"A"}).first));
    }
    return worst;
}

double check_sqrt_symmetrization(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const FactorLayout layout = ab_layout(da, db);
        const Vector psi = random_ket(rng, da * db);
        const Matrix pure = psi * psi.adjoint();
        const Matrix ma = embed(random_psd(rng, da), {"A"}, layout);
        const Matrix root = hermitian_sqrt(ma);
        worst = std::max(worst, max_abs_diff(partial_trace(ma * pure, layout, {"A"}).first,
                                             partial_trace(root * pure * root, layout, {"A"}).first));
    }
    return worst;
}

double check_noncom_witness(Rng&) {
    // Concrete witness: (R (x) S)(R' (x) S') with R = sigma_x, R' = sigma_z,
    // S = S' = I; the partial traces differ by tr(I) [R, R'].
    const FactorLayout layout = ab_layout(2, 2);
    const Matrix lhs =
        partial_trace(kron(pauli_x(), identity(2)) * kron(pauli_z(), identity(2)), layout, {"B"})
            .first;
    const Matrix rhs =
        partial_trace(kron(pauli_z(), identity(2)) * kron(pauli_x(), identity(2)), layout, {"B"})
            .first;
    return max_abs_diff(lhs, rhs);
}

double check_qkd_reduction(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index de = pick_dim(rng), db = pick_dim(rng), da = pick_dim(rng);
        const FactorLayout eba{{"E", de}, {"B", db}, {"A", da}};
        const FactorLayout eb{{"E", de}, {"B", db}};
        const FactorLayout ba{{"B", db}, {"A", da}};

        const Matrix me = random_matrix(rng, de, de);
        const Matrix mb = random_matrix(rng, db, db);
        const Matrix ma = random_matrix(rng, da, da);
        const Matrix u = random_unitary(rng, de * db);
        const Matrix rho_e = random_psd(rng, de);
        const Matrix rho_ba = random_matrix(rng, db * da, db * da);

        // Shorthand expanded on the triple space.
        const Matrix u_full = embed(u, {"E", "B"}, eba);
        const Matrix product = embed(me, {"E"}, eba) * embed(mb, {"B"}, eba) *
                               embed(ma, {"A"}, eba) * u_full * embed(rho_e, {"E"}, eba) *
                               embed(rho_ba, {"B", "A"}, eba) * u_full.adjoint();
        const Matrix lhs = partial_trace(product, eba, {"A"}).first;

        // Same expression with the alice factor contracted first.
        const Matrix reduced = partial_trace(embed(ma, {"A"}, ba) * rho_ba, ba, {"A"}).first;
        const Matrix rhs = embed(me, {"E"}, eb) * embed(mb, {"B"}, eb) * u *
                           kron(rho_e, reduced) * u.adjoint();
        worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
    return worst;
}

// --- trace rule and conditioning -----------------------------------------

double check_conditional_ratio(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Index d = 4;
        const DensityOperator rho = random_density(rng, FactorLayout{{"H", d}});
        const OperatorValuedMeasure e = random_pvm(rng, d, 4, "P");
        const ProbabilityTable table = probability_table(rho, e);
        const Event y = random_conditioning_event(rng, rho, e);
        const Event x = random_event(rng, e.space());
        const double ratio = table_probability(table, intersect(x, y)) / table_probability(table, y);
        worst = std::max(worst, std::abs(conditional_probability_pvm(rho, e, x, y) - ratio));
    }
    return worst;
}

double check_trace_rule_normalization(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Index d = pick_dim(rng) + 1;
        const FactorLayout layout{{"H", d}};
        const DensityOperator rho = random_density(rng, layout);
        const UnitaryOperator u = random_unitary_on(rng, layout);
        const OperatorValuedMeasure m = random_povm(rng, d, 3, "M");
        double sum = 0.0;
        for (int j = 0; j < m.outcomes(); ++j)
            sum += trace_rule(rho, u, m, Event::singleton(m.space(), j));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

double check_decision_joint_normalization(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Index d = 2;
        const FactorLayout layout{{"H", d}};
        std::vector<double> priors(4);
        double norm = 0.0;
        for (auto& p : priors) {
            p = 0.1 + static_cast<double>(rng() % 1000) / 1000.0;
            norm += p;
        }
        for (auto& p : priors) p /= norm;
        std::vector<DensityOperator> states;
        for (int i = 0; i < 4; ++i) states.push_back(random_density(rng, layout));
        const StateEnsemble ensemble(priors, states);
        const UnitaryOperator u = random_unitary_on(rng, layout);
        const OperatorValuedMeasure m = random_povm(rng, d, 3, "M");
        double sum = 0.0;
        for (std::size_t i = 0; i < ensemble.size(); ++i)
            for (int j = 0; j < m.outcomes(); ++j)
                sum += decision_joint(ensemble, u, m, i, Event::singleton(m.space(), j));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

double check_pvm_conditional_product_form(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Index d = 4;
        const DensityOperator rho = random_density(rng, FactorLayout{{"H", d}});
        const OperatorValuedMeasure e = random_pvm(rng, d, 3, "P");
        const Event y = random_conditioning_event(rng, rho, e);
        const Event x = random_event(rng, e.space());
        const Matrix ex = event_operator(e, x), ey = event_operator(e, y);
        const double denom = trace(rho.matrix() * ey).real();
        const double direct = trace(rho.matrix() * ex * ey).real() / denom;
        const double sandwich = trace(ey * rho.matrix() * ey * ex).real() / denom;
        worst = std::max(worst, std::abs(direct - sandwich));
        worst = std::max(worst, std::abs(conditional_probability_pvm(rho, e, x, y) -
                                         std::clamp(direct, 0.0, 1.0)));
    }
    return worst;
}

double check_conditional_state_pairing(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Index d = 4;
        const DensityOperator rho = random_density(rng, FactorLayout{{"H", d}});
        const OperatorValuedMeasure e = random_pvm(rng, d, 4, "P");
        const Event y = random_conditioning_event(rng, rho, e);
        const ConditionedState conditioned = condition_pvm(rho, e, y);
        for (const Event& x : all_events(e.space())) {
            const double via_state = trace(conditioned.state.matrix() * event_operator(e, x)).real();
            worst = std::max(worst,
                             std::abs(via_state - conditional_probability_pvm(rho, e, x, y)));
        }
    }
    return worst;
}

double check_bayes_symmetry(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Index d = 4;
        const DensityOperator rho = random_density(rng, FactorLayout{{"H", d}});
        const OperatorValuedMeasure e = random_pvm(rng, d, 4, "P");
        const ProbabilityTable table = probability_table(rho, e);
        const Event y = random_conditioning_event(rng, rho, e);
        const Event x = random_conditioning_event(rng, rho, e);
        const double lhs = conditional_probability_pvm(rho, e, x, y) * table_probability(table, y);
        const double rhs = conditional_probability_pvm(rho, e, y, x) * table_probability(table, x);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double check_pvm_intersection_product(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Index d = 4;
        const OperatorValuedMeasure e = random_pvm(rng, d, 3, "P");
        const Event x = random_event(rng, e.space());
        const Event y = random_event(rng, e.space());
        worst = std::max(worst, max_abs_diff(event_operator(e, intersect(x, y)),
                                             event_operator(e, x) * event_operator(e, y)));
    }
    return worst;
}

double check_pvm_commutation(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const Index d = 4;
        const OperatorValuedMeasure e = random_pvm(rng, d, 3, "P");
        const Event x = random_event(rng, e.space());
        const Event y = random_event(rng, e.space());
        const Matrix ex = event_operator(e, x), ey = event_operator(e, y);
        worst = std::max(worst, max_abs(ex * ey - ey * ex));
    }
    return worst;
}

double check_pvm_tensor_rectangle(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const OperatorValuedMeasure ea = random_pvm(rng, da, static_cast<int>(da), "PA");
        const OperatorValuedMeasure eb = random_pvm(rng, db, static_cast<int>(db), "PB");
        const OperatorValuedMeasure tensor = tensor_povm(ea, eb);
        const Event xa = random_event(rng, ea.space());
        const Event yb = random_event(rng, eb.space());
        const Event rect = intersect(product_event(xa, Event::full(eb.space())),
                                     product_event(Event::full(ea.space()), yb));
        // Event-level rectangle identity.
        if (!(rect.members() == product_event(xa, yb).members())) worst = std::max(worst, 1.0);
        worst = std::max(worst, max_abs_diff(event_operator(tensor, rect),
                                             kron(event_operator(ea, xa), event_operator(eb, yb))));
    }
    return worst;
}

// Conditional probability of an A-side event given a B-side event, straight
// from the joint tensor-measure table.
double rect_ratio_oracle(const DensityOperator& rho, const OperatorValuedMeasure& ea,
                         const OperatorValuedMeasure& eb, const Event& xa, const Event& yb) {
    const OperatorValuedMeasure tensor = tensor_povm(ea, eb);
    const ProbabilityTable table = probability_table(rho, tensor);
    const Event num = product_event(xa, yb);
    const Event den = product_event(Event::full(ea.space()), yb);
    return table_probability(table, num) / table_probability(table, den);
}

double check_rect_conditional_ratio(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Index da = pick_dim(rng), db = pick_dim(rng);
        const DensityOperator rho = random_density(rng, ab_layout(da, db));
        const OperatorValuedMeasure ea = random_pvm(rng, da, static_cast<int>(da), "PA");
        const OperatorValuedMeasure eb = random_pvm(rng, db, static_cast<int>(db), "PB");
        const Event xa = random_event(rng, ea.space());
        Event yb = Event::full(eb.space());
        for (int attempt = 0; attempt < 32; ++attempt) {
            const Event candidate = random_event(rng, eb.space());
            if (candidate.is_empty()) continue;
            if (trace(rho.matrix() * embed(event_operator(eb, candidate), {"B"}, rho.layout()))
                    .real() > 1e-4) {
                yb = candidate;
                break;
            }
        }
        const Matrix my = embed(event_operator(eb, yb), {"B"}, rho.layout());
        const Matrix mx = embed(event_operator(ea, xa), {"A"}, rho.layout());
        const double denom = trace(rho.matrix() * my).real();
        const double direct = trace(my * rho.matrix() * my * mx).real() / denom;
        worst = std::max(worst, std::abs(direct - rect_ratio_oracle(rho, ea, eb, xa, yb)));
    }
    return worst;
}

struct RectCase {
    DensityOperator rho;
    OperatorValuedMeasure ea;
    OperatorValuedMeasure eb;
    Event yb;
};

RectCase random_rect_case(Rng& rng, bool projective_b) {
    const Index da = pick_dim(rng), db = pick_dim(rng);
    DensityOperator rho = random_density(rng, ab_layout(da, db));
    OperatorValuedMeasure ea = random_pvm(rng, da, static_cast<int>(da), "PA");
    OperatorValuedMeasure eb = projective_b ? random_pvm(rng, db, static_cast<int>(db), "PB")
                                            : random_povm(rng, db, 3, "MB");
    Event yb = Event::full(eb.space());
    for (int attempt = 0; attempt < 32; ++attempt) {
        const Event candidate = random_event(rng, eb.space());
        if (candidate.is_empty()) continue;
        if (trace(rho.matrix() * embed(event_operator(eb, candidate), {"B"}, rho.layout()))
                .real() > 1e-4) {
            yb = candidate;
            break;
        }
    }
    return {std::move(rho), std::move(ea), std::move(eb), std::move(yb)};
}

double check_rect_full_pairing(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RectCase c = random_rect_case(rng, true);
        const ConditionedState full = condition_rect_full(c.rho, c.eb, "B", c.yb);
        for (const Event& xa : all_events(c.ea.space())) {
            const double via_state =
                trace(full.state.matrix() *
                      embed(event_operator(c.ea, xa), {"A"}, c.rho.layout()))
                    .real();
            worst = std::max(worst,
                             std::abs(via_state - rect_ratio_oracle(c.rho, c.ea, c.eb, xa, c.yb)));
        }
    }
    return worst;
}

double check_rect_reduced_pairing(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RectCase c = random_rect_case(rng, true);
        const ConditionedState reduced = condition_rect_reduced(c.rho, c.eb, "B", c.yb);
        for (const Event& xa : all_events(c.ea.space())) {
            const double via_state =
                trace(reduced.state.matrix() * event_operator(c.ea, xa)).real();
            worst = std::max(worst,
                             std::abs(via_state - rect_ratio_oracle(c.rho, c.ea, c.eb, xa, c.yb)));
        }
    }
    return worst;
}

double check_rect_definitions_agree(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RectCase c = random_rect_case(rng, true);
        const ConditionedState full = condition_rect_full(c.rho, c.eb, "B", c.yb);
        const ConditionedState reduced = condition_rect_reduced(c.rho, c.eb, "B", c.yb);
        for (const Event& xa : all_events(c.ea.space())) {
            const double via_full =
                trace(full.state.matrix() *
                      embed(event_operator(c.ea, xa), {"A"}, c.rho.layout()))
                    .real();
            const double via_reduced =
                trace(reduced.state.matrix() * event_operator(c.ea, xa)).real();
            worst = std::max(worst, std::abs(via_full - via_reduced));
        }
    }
    return worst;
}

double check_reduced_one_sided_equals_sandwich(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RectCase c = random_rect_case(rng, true);
        const Matrix my = embed(event_operator(c.eb, c.yb), {"B"}, c.rho.layout());
        const Matrix sandwich =
            partial_trace(my * c.rho.matrix() * my, c.rho.layout(), {"B"}).first;
        const Matrix one_sided = partial_trace(c.rho.matrix() * my, c.rho.layout(), {"B"}).first;
        worst = std::max(worst, max_abs_diff(sandwich, one_sided));
    }
    return worst;
}

// --- dilation and lifting --------------------------------------------------

double check_dilation_restriction(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 15; ++t) {
        const Index d = pick_dim(rng);
        const int n = 2 + static_cast<int>(rng() % 3);
        const OperatorValuedMeasure m = random_povm(rng, d, n, "M");
        const NeumarkDilation dil = dilate(m);
        for (const Event& x : all_events(m.space())) {
            const Matrix compressed = restrict_to_base(
                dil.q_projection * event_operator(dil.extended_pvm, x) * dil.q_projection,
                dil.base_dim);
            worst = std::max(worst, max_abs_diff(compressed, event_operator(m, x)));
        }
    }
    return worst;
}

double check_lift_projection_fixed(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index d = pick_dim(rng), big = d + 3;
        const Matrix q = oplus_zero(identity(d), big);
        const Matrix lifted = oplus_zero(random_matrix(rng, d, d), big);
        worst = std::max(worst, max_abs_diff(q * lifted * q, lifted));
    }
    return worst;
}

double check_compression_block_structure(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index d = pick_dim(rng), big = d + 3;
        const Matrix q = oplus_zero(identity(d), big);
        const Matrix c_plus = random_matrix(rng, big, big);
        const Matrix compressed = q * c_plus * q;
        worst = std::max(worst,
                         max_abs_diff(compressed, oplus_zero(restrict_to_base(compressed, d), big)));
    }
    return worst;
}

double check_lift_multiplicative(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index d = pick_dim(rng), big = d + 3;
        const Matrix a = random_matrix(rng, d, d), b = random_matrix(rng, d, d);
        worst = std::max(worst, max_abs_diff(oplus_zero(a, big) * oplus_zero(b, big),
                                             oplus_zero(a * b, big)));
    }
    return worst;
}

double check_lift_trace_preserving(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index d = pick_dim(rng), big = d + 3;
        const Matrix a = random_matrix(rng, d, d);
        worst = std::max(worst, std::abs(trace(oplus_zero(a, big)) - trace(a)));
    }
    return worst;
}

double check_lift_trace_pairing(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < kLemmaTrials; ++t) {
        const Index d = pick_dim(rng), big = d + 3;
        const Matrix q = oplus_zero(identity(d), big);
        const Matrix a = random_matrix(rng, d, d);
        const Matrix c_plus = random_matrix(rng, big, big);
        const Complex lhs = trace(oplus_zero(a, big) * c_plus);
        const Complex rhs = trace(a * restrict_to_base(q * c_plus * q, d));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double check_dilation_lifts_trace_rule(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Index d = 2 + static_cast<Index>(rng() % 3);
        const int n = 2 + static_cast<int>(rng() % 4);
        const OperatorValuedMeasure m = random_povm(rng, d, n, "M");
        const NeumarkDilation dil = dilate(m);
        for (int s = 0; s < 5; ++s) {
            const DensityOperator rho = random_density(rng, FactorLayout{{"H", d}});
            worst = std::max(worst, verify_lifting(rho, m, dil));
        }
    }
    return worst;
}

double check_dilation_diagram_routes(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 15; ++t) {
        const Index d = pick_dim(rng);
        const OperatorValuedMeasure m = random_povm(rng, d, 3, "M");
        const NeumarkDilation dil = dilate(m);
        const DensityOperator rho = random_density(rng, FactorLayout{{"H", d}});
        const DensityOperator lifted = lift_state(rho, dil);
        for (const Event& x : all_events(m.space())) {
            const double downstairs = trace(rho.matrix() * event_operator(m, x)).real();
            const double upstairs =
                trace(lifted.matrix() * event_operator(dil.extended_pvm, x)).real();
            worst = std::max(worst, std::abs(downstairs - upstairs));
        }
    }
    return worst;
}

double check_obstacle_witness(Rng&) {
    const OperatorValuedMeasure trine = trine_povm();
    const NeumarkDilation dil = dilate(trine);
    const ObstacleReport report =
        obstacle_report(trine, dil, Event::singleton(trine.space(), 0),
                        Event::singleton(trine.space(), 1));
    return report.residual;
}

double check_tensor_dilation_restriction(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const OperatorValuedMeasure ma = random_povm(rng, 2, 3, "MA");
        const OperatorValuedMeasure mb = random_povm(rng, 2, 2, "MB");
        const NeumarkDilation da = dilate(ma);
        const NeumarkDilation db = dilate(mb);
        const Matrix q = kron(da.q_projection, db.q_projection);

        // Indices of the embedded base product inside the product of the
        // extended spaces.
        std::vector<Index> keep;
        for (Index i = 0; i < da.base_dim; ++i)
            for (Index j = 0; j < db.base_dim; ++j) keep.push_back(i * db.extended_dim + j);

        for (int i = 0; i < ma.outcomes(); ++i)
            for (int j = 0; j < mb.outcomes(); ++j) {
                const Matrix big =
                    q * kron(da.extended_pvm.atom(i), db.extended_pvm.atom(j)) * q;
                Matrix restricted(keep.size(), keep.size());
                for (std::size_t r = 0; r < keep.size(); ++r)
                    for (std::size_t c = 0; c < keep.size(); ++c)
                        restricted(static_cast<Index>(r), static_cast<Index>(c)) =
                            big(keep[r], keep[c]);
                worst = std::max(worst, max_abs_diff(restricted, kron(ma.atom(i), mb.atom(j))));
            }
    }
    return worst;
}

double check_povm_tensor_rectangle(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const OperatorValuedMeasure ma = random_povm(rng, 2, 3, "MA");
        const OperatorValuedMeasure mb = random_povm(rng, 2, 3, "MB");
        const OperatorValuedMeasure tensor = tensor_povm(ma, mb);
        const Event xa = random_event(rng, ma.space());
        const Event yb = random_event(rng, mb.space());
        const Event rect = intersect(product_event(xa, Event::full(mb.space())),
                                     product_event(Event::full(ma.space()), yb));
        worst = std::max(worst, max_abs_diff(event_operator(tensor, rect),
                                             kron(event_operator(ma, xa), event_operator(mb, yb))));
    }
    return worst;
}

double check_povm_reduced_conditional(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RectCase c = random_rect_case(rng, false);  // non-projective measure on B
        const OperatorValuedMeasure ma = random_povm(rng, c.rho.layout()[0].dim, 3, "XA");
        const ConditionedState reduced = condition_rect_reduced(c.rho, c.eb, "B", c.yb);
        const Matrix my = embed(event_operator(c.eb, c.yb), {"B"}, c.rho.layout());
        const double denom = trace(c.rho.matrix() * my).real();
        for (const Event& xa : all_events(ma.space())) {
            const Matrix mx = embed(event_operator(ma, xa), {"A"}, c.rho.layout());
            const double joint_form = trace(mx * my * c.rho.matrix()).real() / denom;
            const double via_state =
                trace(reduced.state.matrix() * event_operator(ma, xa)).real();
            worst = std::max(worst, std::abs(joint_form - via_state));
        }
    }
    return worst;
}

double check_sqrt_sandwich_equals_one_sided(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        RectCase c = random_rect_case(rng, false);
        const Matrix my = embed(event_operator(c.eb, c.yb), {"B"}, c.rho.layout());
        const Matrix root = hermitian_sqrt(my);
        const Matrix sym = partial_trace(root * c.rho.matrix() * root, c.rho.layout(), {"B"}).first;
        const Matrix one_sided = partial_trace(c.rho.matrix() * my, c.rho.layout(), {"B"}).first;
        worst = std::max(worst, max_abs_diff(sym, one_sided));
    }
    return worst;
}

double check_sandwich_discrepancy_witness(Rng&) {
    // Shared Bell pair, non-projective measure on B, two-atom event: the
    // literal sandwich and the one-sided reduction give different operators
    // even after normalization.
    const DensityOperator rho = bell_phi_plus("A", "B");
    const OperatorValuedMeasure mb = trine_povm("TB");
    const Event y(mb.space(), {0, 1});
    const Matrix my = embed(event_operator(mb, y), {"B"}, rho.layout());
    Matrix sandwich = partial_trace(my * rho.matrix() * my, rho.layout(), {"B"}).first;
    Matrix one_sided = partial_trace(rho.matrix() * my, rho.layout(), {"B"}).first;
    sandwich /= trace(sandwich).real();
    one_sided /= trace(one_sided).real();
    return spectral_norm(sandwich - one_sided);
}

double check_family_shared_projection(Rng&) {
    const std::vector<OperatorValuedMeasure> members = {
        rotated_trine_povm(0.0), rotated_trine_povm(10.0 * std::numbers::pi / 180.0),
        rotated_trine_povm(20.0 * std::numbers::pi / 180.0)};
    const FamilyDilation family = dilate_family(members);

    double worst = 0.0;
    Rng state_rng(20240607);
    for (std::size_t beta = 0; beta < members.size(); ++beta) {
        const auto& member = family.members[beta];
        // Rotation relates every member's extended measure to member 0's.
        for (int j = 0; j < members[beta].outcomes(); ++j) {
            const Matrix rotated = member.rotation.adjoint() *
                                   family.members[0].extended_pvm.atom(j) * member.rotation;
            worst = std::max(worst, max_abs_diff(rotated, member.extended_pvm.atom(j)));
        }
        // Lifting through the shared projection.
        for (int s = 0; s < 10; ++s) {
            const DensityOperator rho = random_density(state_rng, FactorLayout{{"H", 2}});
            const DensityOperator lifted = DensityOperator(
                oplus_zero(rho.matrix(), family.extended_dim),
                FactorLayout{{"ext", family.extended_dim}});
            for (int j = 0; j < members[beta].outcomes(); ++j) {
                const double base = trace(rho.matrix() * members[beta].atom(j)).real();
                const double up =
                    trace(lifted.matrix() * member.extended_pvm.atom(j)).real();
                worst = std::max(worst, std::abs(base - up));
            }
        }
    }
    return worst;
}

double check_family_projection_index_independence(Rng&) {
    const std::vector<OperatorValuedMeasure> members = {
        rotated_trine_povm(0.0), rotated_trine_povm(10.0 * std::numbers::pi / 180.0),
        rotated_trine_povm(20.0 * std::numbers::pi / 180.0)};
    const FamilyDilation family = dilate_family(members);
    double worst = 0.0;
    for (const auto& m : members) {
        const NeumarkDilation single = dilate(m);
        // Bit-identical, not merely close.
        if (single.q_projection.rows() != family.shared_q.rows()) return 1.0;
        for (Index r = 0; r < family.shared_q.rows(); ++r)
            for (Index c = 0; c < family.shared_q.cols(); ++c)
                if (single.q_projection(r, c) != family.shared_q(r, c)) worst = 1.0;
    }
    return worst;
}

// --- probe chains -----------------------------------------------------------

double check_probe_step_formula(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
        const DensityOperator particle = random_density(rng, FactorLayout{{"sys", 2}});
        const ProbeStep step = random_probe_step(rng, 2, "M1");
        const Event x = random_event(rng, step.measure.space());

        const ScaledConditional sigma = chain_step(initial_scaled(particle), step, x);

        const FactorLayout pair{{"sys", 2}, {"probe", 2}};
        const Matrix joint = step.interaction.matrix() *
                             kron(particle.matrix(), step.probe_state.matrix()) *
                             step.interaction.matrix().adjoint();
        const Matrix direct =
            partial_trace(embed(event_operator(step.measure, x), {"probe"}, pair) * joint, pair,
                          {"probe"})
                .first;
        worst = std::max(worst, max_abs_diff(sigma.matrix, symmetrized(direct)));
        worst = std::max(worst, std::abs(sigma.weight - trace(direct).real()));
    }
    return worst;
}

double check_chain_oracle(Rng& rng, int probes, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const ChainScenario scn = random_chain(rng, probes);
        const std::vector<Event> events = random_chain_events(rng, scn);
        worst = std::max(worst,
                         std::abs(chain_joint(scn, events) - chain_joint_bruteforce(scn, events)));
    }
    return worst;
}

double check_chain_conditional_ratio(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
        const ChainScenario scn = random_chain(rng, 3);
        std::vector<Event> events;
        for (const auto& step : scn.steps()) {
            Event e = random_event(rng, step.measure.space());
            if (e.is_empty()) e = Event::full(step.measure.space());
            events.push_back(std::move(e));
        }
        const double joint12 =
            chain_joint(scn, {events[0], events[1], Event::full(scn.steps()[2].measure.space())});
        if (joint12 < 1e-4) continue;
        const double joint123 = chain_joint(scn, events);
        const double conditional =
            chain_conditional(scn, {{0, events[0]}, {1, events[1]}}, {2, events[2]});
        worst = std::max(worst, std::abs(conditional * joint12 - joint123));

        const double joint1 =
            chain_joint(scn, {events[0], Event::full(scn.steps()[1].measure.space()),
                              Event::full(scn.steps()[2].measure.space())});
        if (joint1 < 1e-4) continue;
        const double cond2 = chain_conditional(scn, {{0, events[0]}}, {1, events[1]});
        worst = std::max(worst, std::abs(cond2 * joint1 - joint12));
    }
    return worst;
}

double check_chain_last_step_additivity(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
        const ChainScenario scn = random_chain(rng, 2);
        const Event first = random_event(rng, scn.steps()[0].measure.space());
        const OutcomeSpace& last = scn.steps()[1].measure.space();
        double sum = 0.0;
        for (int j = 0; j < last.atoms; ++j)
            sum += chain_joint(scn, {first, Event::singleton(last, j)});
        const double marginal = chain_joint(scn, {first, Event::full(last)});
        worst = std::max(worst, std::abs(sum - marginal));
    }
    return worst;
}

// --- key distribution -------------------------------------------------------

double check_transmitted_joint_form(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const EntangledScenario s = random_attack_scenario(rng);
        const TransmittedScenario trans = derive_transmitted(s);
        double total = 0.0;
        for (int e = 0; e < s.eve_measure.outcomes(); ++e)
            for (int b = 0; b < s.bob_measure.outcomes(); ++b)
                for (std::size_t i = 0; i < 4; ++i) {
                    const Event xe = Event::singleton(s.eve_measure.space(), e);
                    const Event yb = Event::singleton(s.bob_measure.space(), b);
                    const double val = transmitted_joint(trans, xe, yb, i);
                    total += val;
                    // Direct form: prior times the two-party trace rule.
                    const Matrix joint = trans.attack.matrix() *
                                         kron(trans.eve_probe.matrix(),
                                              trans.bob_states[i].matrix()) *
                                         trans.attack.matrix().adjoint();
                    const Matrix effect = kron(event_operator(trans.eve_measure, xe),
                                               event_operator(trans.bob_measure, yb));
                    const double direct = trans.priors[i] * trace(effect * joint).real();
                    worst = std::max(worst, std::abs(val - direct));
                }
        const double prior_sum =
            trans.priors[0] + trans.priors[1] + trans.priors[2] + trans.priors[3];
        worst = std::max(worst, std::abs(total - prior_sum));
    }
    return worst;
}

double check_entangled_normalization(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const EntangledScenario s = random_attack_scenario(rng);
        double total = 0.0;
        for (int e = 0; e < s.eve_measure.outcomes(); ++e)
            for (int b = 0; b < s.bob_measure.outcomes(); ++b)
                for (int a = 0; a < s.alice_measure.outcomes(); ++a)
                    total += entangled_joint(s, Event::singleton(s.eve_measure.space(), e),
                                             Event::singleton(s.bob_measure.space(), b),
                                             Event::singleton(s.alice_measure.space(), a));
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst;
}

double check_alice_marginal_invariance(Rng& rng) {
    double worst = 0.0;
    const EntangledScenario reference = bb84_bell_fixture();
    std::vector<double> reference_marginals;
    for (int a = 0; a < reference.alice_measure.outcomes(); ++a)
        reference_marginals.push_back(
            alice_marginal(reference, Event::singleton(reference.alice_measure.space(), a)));

    for (int t = 0; t < 20; ++t) {
        const EntangledScenario s = random_attack_scenario(rng);
        for (int a = 0; a < s.alice_measure.outcomes(); ++a) {
            const Event z = Event::singleton(s.alice_measure.space(), a);
            const double via_joint = entangled_joint(s, Event::full(s.eve_measure.space()),
                                                     Event::full(s.bob_measure.space()), z);
            const double marginal = alice_marginal(s, z);
            worst = std::max(worst, std::abs(via_joint - marginal));
            // Identical shared state: the marginal cannot depend on the attack.
            worst = std::max(worst,
                             std::abs(marginal - reference_marginals[static_cast<std::size_t>(a)]));
        }
    }
    return worst;
}

double check_entangled_chain_rule(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const EntangledScenario s = random_attack_scenario(rng);
        for (std::size_t i = 0; i < 4; ++i) {
            const Event& z = s.alice_key_events[i];
            const double pz = alice_marginal(s, z);
            for (int e = 0; e < s.eve_measure.outcomes(); ++e)
                for (int b = 0; b < s.bob_measure.outcomes(); ++b) {
                    const Event xe = Event::singleton(s.eve_measure.space(), e);
                    const Event yb = Event::singleton(s.bob_measure.space(), b);
                    worst = std::max(worst,
                                     std::abs(entangled_conditional(s, xe, yb, z) * pz -
                                              entangled_joint(s, xe, yb, z)));
                }
        }
    }
    return worst;
}

double check_conditional_bob_state_valid(Rng& rng) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const EntangledScenario s = random_attack_scenario(rng);
        for (std::size_t i = 0; i < 4; ++i) {
            const DensityOperator bob = conditional_bob_state(s, s.alice_key_events[i]);
            worst = std::max(worst, std::abs(trace(bob.matrix()).real() - 1.0));
            worst = std::max(worst, max_abs(bob.matrix() - bob.matrix().adjoint()));
            const Eigen::VectorXd evals = hermitian_eigenvalues(bob.matrix());
            worst = std::max(worst, std::max(0.0, -evals(0)));

            // Definition: tr_a[M_A(Z) rho_ba] normalized by its trace.
            const Matrix mz = embed(event_operator(s.alice_measure, s.alice_key_events[i]),
                                    {"A"}, s.alice_state.layout());
            Matrix direct =
                partial_trace(s.alice_state.matrix() * mz, s.alice_state.layout(), {"A"}).first;
            direct /= trace(direct).real();
            worst = std::max(worst, max_abs_diff(symmetrized(direct), bob.matrix()));
        }
    }
    return worst;
}

double check_bb84_equivalence(Rng& rng) {
    double worst = equivalence_report(bb84_bell_fixture());
    for (int t = 0; t < 10; ++t)
        worst = std::max(worst, equivalence_report(random_attack_scenario(rng)));
    return worst;
}

}  // namespace

const std::vector<PropertyEntry>& property_registry() {
    static const std::vector<PropertyEntry> entries = [] {
        std::vector<PropertyEntry> reg;
        auto add = [&reg](std::string id, std::string statement, std::string generator,
                          PropertyKind kind, double bound, std::function<double(Rng&)> run) {
            reg.push_back({std::move(id), std::move(statement), std::move(generator), kind, bound,
                           std::move(run)});
        };
        const auto eq = PropertyKind::equality;
        const auto wit = PropertyKind::witness;

        // partial-trace toolbox
        add("trace-cyclic", "tr(ABC) = tr(CAB)", "100 random complex 3x3 triples", eq,
            kLemmaBound, check_trace_cyclic);
        add("partial-trace-composition", "tr_A[tr_B(MN)] = tr(MN) = tr_B[tr_A(MN)]",
            "100 random pairs on A(x)B, dims 2-3", eq, kLemmaBound,
            check_partial_trace_composition);
        add("partial-trace-right-factor-commutation",
            "tr_B[M (1(x)S)] = tr_B[(1(x)S) M]", "100 random (M, S), dims 2-3", eq, kLemmaBound,
            check_a9);
        add("partial-trace-hermitian-preservation",
            "tr_B[M (1(x)S)] hermitian for hermitian M, S", "100 random hermitian pairs, dims 2-3",
            eq, kLemmaBound, check_a10);
        add("partial-trace-factor-pullout",
            "tr_B[(R(x)1) M] = R tr_B(M) and tr_B[M (R(x)1)] = tr_B(M) R",
            "100 random (R, M), dims 2-3", eq, kLemmaBound, check_a11_a12);
        add("full-trace-factor-split", "tr[(R(x)1) M] = tr[R tr_B(M)]",
            "100 random (R, M), dims 2-3", eq, kLemmaBound, check_combined_lemma);
        add("partial-trace-own-factor-commutation",
            "tr_A[(R(x)1) Q] = tr_A[Q (R(x)1)]", "100 random (R, Q), dims 2-3", eq, kLemmaBound,
            check_swap_lemma);
        add("partial-trace-sqrt-symmetrization",
            "tr_A[(M(x)1) |psi><psi|] = tr_A[(sqrt(M)(x)1) |psi><psi| (sqrt(M)(x)1)]",
            "100 random (psd M, ket), dims 2-3", eq, kLemmaBound, check_sqrt_symmetrization);
        add("partial-trace-order-witness",
            "tr_B[(R(x)S)(R'(x)S')] != tr_B[(R'(x)S')(R(x)S)] for some inputs",
            "fixed witness: R = sigma_x, R' = sigma_z, S = S' = I", wit, 0.01,
            check_noncom_witness);
        add("triple-space-partial-trace-reduction",
            "tr_A[M_E M_B M_A U (rho_E rho_BA) U^dag] = M_E M_B U (rho_E (x) tr_A[M_A rho_BA]) U^dag",
            "100 random triples on E(x)B(x)A, dims 2-3", eq, kLemmaBound, check_qkd_reduction);

        // trace rule and conditioning
        add("conditional-probability-ratio", "Pr(X|Y) = Pr(X n Y)/Pr(Y)",
            "40 random (state, projective measure) on dim 4", eq, kSuiteBound,
            check_conditional_ratio);
        add("trace-rule-normalization", "sum_j tr[U rho U^dag M(j)] = 1",
            "40 random (state, unitary, measure)", eq, kSuiteBound,
            check_trace_rule_normalization);
        add("decision-joint-normalization", "sum_{i,j} prior_i tr[U rho_i U^dag M(j)] = 1",
            "20 random 4-state ensembles", eq, kSuiteBound, check_decision_joint_normalization);
        add("pvm-conditional-product-form",
            "tr[rho E(X)E(Y)] = tr[E(Y) rho E(Y) E(X)], both over tr[rho E(Y)]",
            "40 random (state, projective measure) on dim 4", eq, kSuiteBound,
            check_pvm_conditional_product_form);
        add("conditional-state-pairing", "tr[rho|_Y E(X)] = Pr(X|Y) for all X",
            "20 random conditionings, all 16 events on dim 4", eq, kSuiteBound,
            check_conditional_state_pairing);
        add("bayes-symmetry", "Pr(X|Y) Pr(Y) = Pr(Y|X) Pr(X)",
            "40 random (state, projective measure) on dim 4", eq, kSuiteBound,
            check_bayes_symmetry);
        add("pvm-intersection-product-law", "E(X n Y) = E(X) E(Y)",
            "40 random projective measures and event pairs", eq, kSuiteBound,
            check_pvm_intersection_product);
        add("pvm-commutation", "[E(X), E(Y)] = 0",
            "40 random projective measures and event pairs", eq, kSuiteBound,
            check_pvm_commutation);
        add("pvm-tensor-rectangle",
            "(E_A (x) E_B)[(X x full) n (full x Y)] = E_A(X) (x) E_B(Y)",
            "30 random projective pairs, dims 2-3", eq, kSuiteBound, check_pvm_tensor_rectangle);
        add("rect-conditional-ratio",
            "sandwich formula for Pr(X_A|Y_B) matches the joint-table ratio",
            "20 random two-factor states with projective measures", eq, kSuiteBound,
            check_rect_conditional_ratio);
        add("rect-conditional-full-pairing",
            "full-space conditioned state reproduces Pr(X_A|Y_B) for all X_A",
            "20 random two-factor states, projective B measure", eq, kSuiteBound,
            check_rect_full_pairing);
        add("rect-conditional-reduced-pairing",
            "reduced conditioned state reproduces Pr(X_A|Y_B) for all X_A",
            "20 random two-factor states, projective B measure", eq, kSuiteBound,
            check_rect_reduced_pairing);
        add("rect-conditional-definitions-agree",
            "full-space and reduced conditioned states predict identical Pr(X_A|Y_B)",
            "20 random two-factor states, projective B measure", eq, kSuiteBound,
            check_rect_definitions_agree);
        add("reduced-one-sided-equals-sandwich",
            "tr_B[(1(x)E) rho (1(x)E)] = tr_B[rho (1(x)E)] for projective E",
            "20 random two-factor states, projective B measure", eq, kSuiteBound,
            check_reduced_one_sided_equals_sandwich);

        // dilation and lifting
        add("dilation-restriction-identity", "(Q E+(X) Q)|_base = M(X) for every event",
            "15 random measures, dims 2-3, 2-4 atoms", eq, kSuiteBound,
            check_dilation_restriction);
        add("lift-projection-fixed", "Q (A (+) 0) Q = A (+) 0", "100 random blocks", eq,
            kLemmaBound, check_lift_projection_fixed);
        add("compression-block-structure", "Q C Q = (Q C Q)|_base (+) 0",
            "100 random extended operators", eq, kLemmaBound, check_compression_block_structure);
        add("lift-multiplicative", "(A (+) 0)(B (+) 0) = AB (+) 0", "100 random pairs", eq,
            kLemmaBound, check_lift_multiplicative);
        add("lift-trace-preserving", "tr(A (+) 0) = tr(A)", "100 random blocks", eq, kLemmaBound,
            check_lift_trace_preserving);
        add("lift-trace-pairing", "tr[(A (+) 0) C] = tr[A (Q C Q)|_base]",
            "100 random (block, extended operator) pairs", eq, kLemmaBound,
            check_lift_trace_pairing);
        add("dilation-lifts-trace-rule", "tr[rho M(j)] = tr[(rho (+) 0) E+(j)]",
            "20 random measures (d <= 4, n <= 5), 5 states each", eq, kSuiteBound,
            check_dilation_lifts_trace_rule);
        add("dilation-diagram-routes",
            "restrict-then-pair equals lift-then-pair for every event",
            "15 random measures and states", eq, kSuiteBound, check_dilation_diagram_routes);
        add("povm-product-obstacle-witness",
            "(Q E+(X) E+(Y) Q)|_base != M(X) M(Y) for a non-projective measure",
            "trine measure, atoms {0} and {1}", wit, 0.1, check_obstacle_witness);
        add("tensor-dilation-restriction",
            "(Q_A (x) Q_B)(E+_A (x) E+_B)(Q_A (x) Q_B) restricts to M_A (x) M_B",
            "10 random measure pairs on qubits", eq, kSuiteBound,
            check_tensor_dilation_restriction);
        add("povm-tensor-rectangle",
            "(M_A (x) M_B)[(X x full) n (full x Y)] = M_A(X) (x) M_B(Y)",
            "20 random non-projective pairs on qubits", eq, kSuiteBound,
            check_povm_tensor_rectangle);
        add("povm-reduced-conditional",
            "Pr(X|Y) = tr[(M_A(X) (x) M_B(Y)) rho] / tr[rho (1 (x) M_B(Y))] via the reduced state",
            "20 random states with non-projective B measures", eq, kSuiteBound,
            check_povm_reduced_conditional);
        add("sqrt-sandwich-equals-one-sided",
            "tr_B[(1(x)sqrt(M)) rho (1(x)sqrt(M))] = tr_B[rho (1(x)M)]",
            "20 random states with non-projective B measures", eq, kSuiteBound,
            check_sqrt_sandwich_equals_one_sided);
        add("sandwich-one-sided-discrepancy-witness",
            "normalized literal sandwich != normalized one-sided reduction for non-projective M",
            "fixed witness: shared Bell pair, trine event {0,1}", wit, 0.05,
            check_sandwich_discrepancy_witness);
        add("family-dilation-shared-projection",
            "every family member lifts through the same Q; rotations map the reference frame",
            "trine rotated by 0, 10, 20 degrees; 10 random states each", eq, kSuiteBound,
            check_family_shared_projection);
        add("family-projection-index-independence",
            "the extended-space projection is bit-identical across family members",
            "trine rotated by 0, 10, 20 degrees", eq, 0.0,
            check_family_projection_index_independence);

        // probe chains
        add("probe-step-scaled-conditional",
            "one step folds to tr_probe[(1(x)M(X)) U (sigma (x) rho_probe) U^dag]",
            "30 random qubit steps", eq, kSuiteBound, check_probe_step_formula);
        add("probe-chain-joint-one", "single-probe joint equals the global-space evaluation",
            "35 random one-probe scenarios, all dims 2", eq, kSuiteBound,
            [](Rng& rng) { return check_chain_oracle(rng, 1, 35); });
        add("probe-chain-joint-two", "two-probe joint equals the global-space evaluation",
            "35 random two-probe scenarios, all dims 2", eq, kSuiteBound,
            [](Rng& rng) { return check_chain_oracle(rng, 2, 35); });
        add("probe-chain-joint-three", "three-probe joint equals the global-space evaluation",
            "35 random three-probe scenarios, all dims 2", eq, kSuiteBound,
            [](Rng& rng) { return check_chain_oracle(rng, 3, 35); });
        add("probe-chain-conditional-ratio",
            "Pr(X3|X1,X2) Pr(X1,X2) = Pr(X1,X2,X3) and Pr(X2|X1) Pr(X1) = Pr(X1,X2)",
            "25 random three-probe scenarios", eq, kSuiteBound, check_chain_conditional_ratio);
        add("probe-chain-last-step-additivity",
            "summing the last step over atoms reproduces the shorter joint",
            "25 random two-probe scenarios", eq, kSuiteBound, check_chain_last_step_additivity);

        // key distribution
        add("transmitted-joint-form",
            "Pr(X_E, Y_B, i) = prior_i tr[(M_E(X) (x) M_B(Y)) U (rho_E (x) rho_B(i)) U^dag]",
            "10 random attacks on the shared-pair scenario", eq, kSuiteBound,
            check_transmitted_joint_form);
        add("entangled-joint-normalization", "triple joint sums to 1 over all atom triples",
            "10 random attacks on the shared-pair scenario", eq, kSuiteBound,
            check_entangled_normalization);
        add("alice-marginal-attack-invariance",
            "Pr(Z_A) is independent of the probe, the attack, and the other measures",
            "20 random attacks, probe dims 2 and 4", eq, 1e-12, check_alice_marginal_invariance);
        add("entangled-conditional-chain-rule",
            "Pr(X_E, Y_B | Z_A) Pr(Z_A) = Pr(X_E, Y_B, Z_A)",
            "10 random attacks on the shared-pair scenario", eq, kSuiteBound,
            check_entangled_chain_rule);
        add("conditional-bob-state-valid",
            "tr_A[M_A(Z) rho_BA] / Pr(Z) is a valid state matching its definition",
            "10 random attacks, all four key events", eq, kSuiteBound,
            check_conditional_bob_state_valid);
        add("bb84-equivalence",
            "entangled-state and derived transmitted-state joints agree on every key triple",
            "shared-pair fixture plus 10 random attacks", eq, kSuiteBound,
            check_bb84_equivalence);

        return reg;
    }();
    return entries;
}

std::vector<PropertyResult> run_all(std::uint64_t seed) {
    std::vector<PropertyResult> results;
    for (const auto& entry : property_registry()) {
        Rng rng(derive_seed(seed, entry.id));
        PropertyResult r;
        r.id = entry.id;
        r.kind = entry.kind;
        r.bound = entry.bound;
        r.residual = entry.run(rng);
        r.pass = entry.kind == PropertyKind::equality ? r.residual <= entry.bound
                                                      : r.residual >= entry.bound;
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace qmeas
