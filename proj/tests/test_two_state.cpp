#include <gtest/gtest.h>

#include <cmath>

#include "tsvf/random_instances.hpp"
#include "tsvf/scenarios.hpp"
#include "tsvf/two_state.hpp"

using namespace tsvf;

namespace {

ProjectiveMeasurement spin_meas(double theta, double phi = 0.0) {
    return ProjectiveMeasurement::from_observable("spin", spin_observable(theta, phi));
}

TwoStateVector three_box_tsv() {
    return TwoStateVector(three_box_pre(), three_box_post());
}

}  // namespace

TEST(TwoStateVector, ConstructionAndReverse) {
    EXPECT_THROW(TwoStateVector(StateVector::basis(2, 0), StateVector::basis(3, 0)),
                 std::invalid_argument);
    const auto tsv = three_box_tsv();
    const auto back = time_reverse(time_reverse(tsv));
    EXPECT_NEAR(std::abs(inner(back.pre, tsv.pre)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(inner(back.post, tsv.post)), 1.0, 1e-14);
}

TEST(AblProb, TiltedSpinAgainstClosedForm) {
    const auto up = StateVector::basis(2, 0);
    const TwoStateVector tsv(up, up);
    for (double theta : {M_PI / 6, M_PI / 3, M_PI / 2, 2 * M_PI / 3, 2.9}) {
        const double c4 = std::pow(std::cos(theta / 2), 4);
        const double s4 = std::pow(std::sin(theta / 2), 4);
        EXPECT_NEAR(abl_prob(tsv, spin_meas(theta), "+1"), c4 / (c4 + s4), 1e-12);
    }
    // theta = 2*pi/3: cos^4 = 1/16, sin^4 = 9/16, ratio exactly 0.1
    EXPECT_NEAR(abl_prob(tsv, spin_meas(2 * M_PI / 3), "+1"), 0.1, 1e-12);
}

TEST(AblProb, ConsistentEigenstate) {
    const auto up = StateVector::basis(2, 0);
    EXPECT_NEAR(abl_prob(TwoStateVector(up, up), spin_meas(0.0), "+1"), 1.0, 1e-14);
}

TEST(AblProb, ThreeBoxCertainties) {
    const auto tsv = three_box_tsv();
    const auto m_a = ProjectiveMeasurement::binary(
        "open A", projector_onto(StateVector::basis(3, 0)), "in A", "elsewhere");
    EXPECT_NEAR(abl_prob(tsv, m_a, "in A"), 1.0, 1e-12);
}

TEST(AblProb, UnreachablePostSelection) {
    const TwoStateVector tsv(StateVector::basis(2, 0), StateVector::basis(2, 1));
    EXPECT_THROW(abl_prob(tsv, spin_meas(0.0), "+1"), std::domain_error);
}

TEST(AblProb, OrthogonalSelectionsArePermitted) {
    // <post|pre> = 0 is fine as long as some intermediate outcome connects
    // the two: an x measurement between z-up and z-down gives 1/2 each.
    const TwoStateVector tsv(StateVector::basis(2, 0), StateVector::basis(2, 1));
    EXPECT_NEAR(std::abs(inner(tsv.post, tsv.pre)), 0.0, 1e-15);
    EXPECT_NEAR(abl_prob(tsv, spin_meas(M_PI / 2), "+1"), 0.5, 1e-12);
    EXPECT_NEAR(abl_prob(tsv, spin_meas(M_PI / 2), "-1"), 0.5, 1e-12);
}

TEST(AblProb, NormalizationOnRandomInstances) {
    RngStream rng(5, 0);
    for (int k = 0; k < 40; ++k) {
        const std::size_t dim = 2 + k % 3;
        const auto tsv = random_tsv(dim, rng, 0.0);
        const auto m = random_measurement(dim, rng, k % 3 == 0);
        const auto table = abl_table(tsv, m);
        double sum = 0.0;
        for (double p : table) sum += p;
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(AblGeneral, RankOneReducesToAblProb) {
    RngStream rng(9, 0);
    for (int k = 0; k < 25; ++k) {
        const std::size_t dim = 2 + k % 3;
        const auto tsv = random_tsv(dim, rng, 0.0);
        const auto m = random_measurement(dim, rng, k % 2 == 0);
        const auto direct = abl_table(tsv, m);
        const auto general = abl_general(tsv.pre, m, projector_onto(tsv.post));
        for (std::size_t i = 0; i < direct.size(); ++i)
            EXPECT_NEAR(direct[i], general[i], 1e-12);
    }
}

TEST(AblGeneral, IdentityPostSelectionIsVacuous) {
    RngStream rng(15, 0);
    const auto psi = random_state(3, rng);
    const auto m = random_measurement(3, rng);
    const auto table = abl_general(psi, m, Matrix::identity(3));
    for (std::size_t i = 0; i < table.size(); ++i)
        EXPECT_NEAR(table[i], born_prob(psi, m.outcome(i).projector), 1e-12);
}

TEST(AblGeneral, DegeneratePostSelectionAgainstTheChain) {
    // Rank-2 post-selection subspace on a dim-4 system, checked against the
    // sampled measurement chain at four-sigma resolution.
    RngStream rng(21, 0);
    const auto pre = random_state(4, rng);
    const auto mid = random_measurement(4, rng);
    const auto fin = random_measurement(4, rng, /*force_degenerate=*/true);
    const auto& post_outcome = fin.outcome(0);  // the merged rank-2 outcome

    const auto table = abl_general(pre, mid, post_outcome.projector);

    const MeasurementChain chain(pre, {mid, fin});
    const auto records = run_ensemble(chain, 42, stream_block(12, 0), 100000);
    const auto freq = post_selected_frequencies(records, 1, post_outcome.label, 0);
    for (std::size_t i = 0; i < mid.size(); ++i)
        EXPECT_NEAR(freq.frequency_of(mid.outcome(i).label), table[i],
                    binomial_tolerance(table[i], freq.retained, 4.0));
}

TEST(DecompositionCheck, CoplanarSpinsAtRightAngles) {
    const auto up = StateVector::basis(2, 0);
    const auto m_b = spin_meas(M_PI / 2);
    const auto m_c = spin_meas(M_PI);
    const auto sides = decomposition_check(up, m_b, m_c, "+1");
    EXPECT_NEAR(sides.lhs, 0.5, 1e-12);
    EXPECT_NEAR(sides.rhs, 0.5, 1e-12);
}

TEST(DecompositionCheck, RandomInstances) {
    RngStream rng(33, 0);
    for (int k = 0; k < 40; ++k) {
        const std::size_t dim = 2 + k % 2;
        const auto pre = random_state(dim, rng);
        const auto mid = random_measurement(dim, rng, k % 4 == 0);
        const auto fin = random_measurement(dim, rng, k % 5 == 0);
        const auto sides = decomposition_check(pre, mid, fin, mid.outcome(k % mid.size()).label);
        EXPECT_NEAR(sides.lhs, sides.rhs, 1e-10);
    }
}

TEST(WeakValue, ThreeBoxValues) {
    const auto tsv = three_box_tsv();
    const Observable p_a = projector_observable(StateVector::basis(3, 0));
    const Observable p_b = projector_observable(StateVector::basis(3, 1));
    const Observable p_c = projector_observable(StateVector::basis(3, 2));
    EXPECT_NEAR(std::abs(weak_value(tsv, p_a) - cdouble(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(tsv, p_b) - cdouble(1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(tsv, p_c) - cdouble(-1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(tsv, p_a + p_b + p_c) - cdouble(1.0)), 0.0, 1e-12);
}

TEST(WeakValue, NoPostSelectionGivesExpectation) {
    RngStream rng(41, 0);
    for (int k = 0; k < 20; ++k) {
        const auto psi = random_state(3, rng);
        const auto obs = random_hermitian(3, rng);
        const TwoStateVector tsv(psi, psi);
        EXPECT_NEAR(std::abs(weak_value(tsv, obs) - cdouble(obs.expectation(psi))), 0.0, 1e-12);
    }
}

TEST(WeakValue, OrthogonalSelectionRejected) {
    const TwoStateVector tsv(StateVector::basis(2, 0), StateVector::basis(2, 1));
    EXPECT_THROW(weak_value(tsv, pauli_z()), std::domain_error);
}

TEST(TimeReverse, AblInvariance) {
    RngStream rng(43, 0);
    for (int k = 0; k < 50; ++k) {
        const std::size_t dim = 2 + k % 3;
        const auto tsv = random_tsv(dim, rng, 0.0);
        const auto m = random_measurement(dim, rng, k % 3 == 1);
        const auto fwd = abl_table(tsv, m);
        const auto rev = abl_table(time_reverse(tsv), m);
        for (std::size_t i = 0; i < fwd.size(); ++i) EXPECT_NEAR(fwd[i], rev[i], 1e-12);
    }
}

TEST(TimeReverse, WeakValueConjugation) {
    RngStream rng(47, 0);
    for (int k = 0; k < 50; ++k) {
        const std::size_t dim = 2 + k % 3;
        const auto tsv = random_tsv(dim, rng);
        const auto obs = random_hermitian(dim, rng);
        const auto fwd = weak_value(tsv, obs);
        const auto rev = weak_value(time_reverse(tsv), obs);
        EXPECT_NEAR(std::abs(rev - std::conj(fwd)), 0.0, 1e-12);
    }
}

TEST(WeakValue, LinearityForNonCommutingPairs) {
    RngStream rng(53, 0);
    for (int k = 0; k < 50; ++k) {
        const std::size_t dim = 2 + k % 3;
        const auto tsv = random_tsv(dim, rng);
        const auto a = random_hermitian(dim, rng);
        const auto b = random_hermitian(dim, rng);
        const Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
        EXPECT_GT(comm.frobenius_norm(), 1e-6);  // genuinely non-commuting draw
        EXPECT_NEAR(std::abs(weak_value(tsv, a + b) - (weak_value(tsv, a) + weak_value(tsv, b))),
                    0.0, 1e-12);
    }
}

TEST(WeakValue, CertaintyImpliesWeakValue) {
    // Wherever the conditional probability pins an outcome, the weak value
    // of the measured observable equals that eigenvalue.
    const auto tsv_boxes = three_box_tsv();
    const auto m_a = ProjectiveMeasurement::binary(
        "open A", projector_onto(StateVector::basis(3, 0)), "in A", "elsewhere");
    ASSERT_NEAR(abl_prob(tsv_boxes, m_a, "in A"), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(weak_value(tsv_boxes, m_a.observable()) - cdouble(1.0)), 0.0, 1e-10);

    const TwoStateVector tsv_singlet(
        singlet_state(), tensor_state(spin_up(M_PI / 2, 0.0), spin_up(M_PI / 2, M_PI / 2)));
    const auto m_1y = ProjectiveMeasurement::from_observable("y1", qubit_op(pauli_y(), 0, 2));
    const auto m_2x = ProjectiveMeasurement::from_observable("x2", qubit_op(pauli_x(), 1, 2));
    const auto m_prod = ProjectiveMeasurement::from_observable(
        "y1x2", tensor_op(pauli_y(), pauli_x()));
    for (const auto* m : {&m_1y, &m_2x, &m_prod}) {
        ASSERT_NEAR(abl_prob(tsv_singlet, *m, "-1"), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(weak_value(tsv_singlet, m->observable()) - cdouble(-1.0)), 0.0,
                    1e-10);
    }
}

TEST(AblProb, ProductRuleFailureWitness) {
    const TwoStateVector tsv(
        singlet_state(), tensor_state(spin_up(M_PI / 2, 0.0), spin_up(M_PI / 2, M_PI / 2)));
    const auto m_1y = ProjectiveMeasurement::from_observable("y1", qubit_op(pauli_y(), 0, 2));
    const auto m_2x = ProjectiveMeasurement::from_observable("x2", qubit_op(pauli_x(), 1, 2));
    const auto m_prod = ProjectiveMeasurement::from_observable(
        "y1x2", tensor_op(pauli_y(), pauli_x()));
    EXPECT_NEAR(abl_prob(tsv, m_1y, "-1"), 1.0, 1e-12);
    EXPECT_NEAR(abl_prob(tsv, m_2x, "-1"), 1.0, 1e-12);
    EXPECT_NEAR(abl_prob(tsv, m_prod, "-1"), 1.0, 1e-12);
    // (-1) * (-1) = +1 while the product observable is certainly -1.
}

TEST(AblProb, OracleEquivalenceOnFiftyRandomInstances) {
    // Conditional probabilities against the post-selected chain ensemble on
    // 50 random instances of dim <= 4 at 10^5 trials, within four binomial
    // standard deviations per outcome.
    RngStream inst(61, 0);
    for (int k = 0; k < 50; ++k) {
        const std::size_t dim = 2 + k % 3;
        const auto mid = random_measurement(dim, inst, k % 2 == 0);
        const auto pre = random_state(dim, inst);
        StateVector post = random_state(dim, inst);
        double reach = 0.0;
        do {
            post = random_state(dim, inst);
            reach = 0.0;
            for (const auto& o : mid.outcomes())
                reach += std::norm(detail::sandwich(post, o.projector, pre));
        } while (reach < 0.05);

        const auto m_post =
            ProjectiveMeasurement::binary("post", projector_onto(post), "match", "rest");
        const MeasurementChain chain(pre, {mid, m_post});
        const auto records = run_ensemble(chain, 42, stream_block(13, k), 100000);
        const auto freq = post_selected_frequencies(records, 1, "match", 0);
        const auto table = abl_table(TwoStateVector(pre, post), mid);
        for (std::size_t i = 0; i < mid.size(); ++i)
            EXPECT_NEAR(freq.frequency_of(mid.outcome(i).label), table[i],
                        binomial_tolerance(table[i], freq.retained, 4.0))
                << "instance " << k << " outcome " << i;
    }
}
