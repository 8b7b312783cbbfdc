#include <gtest/gtest.h>

#include <cmath>

#include "tsvf/random_instances.hpp"
#include "tsvf/scenarios.hpp"
#include "tsvf/weak_pointer.hpp"

using namespace tsvf;

namespace {

TwoStateVector three_box_tsv() {
    return TwoStateVector(three_box_pre(), three_box_post());
}

Observable box_projector(std::size_t k) {
    return projector_observable(StateVector::basis(3, k));
}

}  // namespace

TEST(PointerModel, RejectsBadParameters) {
    EXPECT_THROW(PointerModel(0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(PointerModel(0.1, -1.0), std::invalid_argument);
    EXPECT_THROW(PointerModel(0.1, 1.0, 0.0, -0.5), std::invalid_argument);
    // explicit grid narrower than g*max|a| + 8*width
    const auto up = StateVector::basis(2, 0);
    const TwoStateVector tsv(up, up);
    const PointerModel narrow(1.0, 1.0, 5.0, 0.02);
    EXPECT_THROW(pointer_distribution(tsv, pauli_z(), narrow), std::invalid_argument);
}

TEST(PointerDistribution, StrongMeasurementOfEigenstate) {
    const auto up = StateVector::basis(2, 0);
    const TwoStateVector tsv(up, up);
    const PointerModel pm(20.0, 1.0);  // g = 20 widths: fully resolved peaks
    const auto dist = pointer_distribution(tsv, pauli_z(), pm);

    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < dist.grid.size(); ++k)
        integral += 0.5 * (dist.density[k] + dist.density[k + 1]) *
                    (dist.grid[k + 1] - dist.grid[k]);
    EXPECT_NEAR(integral, 1.0, 1e-6);
    EXPECT_NEAR(dist.retained_norm, 1.0, 1e-9);
    EXPECT_NEAR(pointer_mean(dist), 20.0, 1e-6 * 20.0);
}

TEST(PointerDistribution, SymmetricSuperpositionHasZeroMean) {
    const auto up = StateVector::basis(2, 0);
    const TwoStateVector tsv(up, up);
    const PointerModel pm(0.05, 1.0);
    EXPECT_NEAR(pointer_mean(pointer_distribution(tsv, pauli_x(), pm)), 0.0, 1e-9);
}

TEST(PointerDistribution, UnreachablePostSelection) {
    const TwoStateVector tsv(StateVector::basis(2, 0), StateVector::basis(2, 1));
    EXPECT_THROW(pointer_distribution(tsv, pauli_z(), PointerModel(0.1, 1.0)),
                 std::domain_error);
}

TEST(PointerDistribution, RetainedNormForIdentityCoupling) {
    // Coupling to the identity shifts the pointer uniformly; the retained
    // norm is exactly the selection probability |<post|pre>|^2.
    const auto tsv = three_box_tsv();
    const auto dist = pointer_distribution(tsv, identity_observable(3), PointerModel(0.3, 1.0));
    EXPECT_NEAR(dist.retained_norm, 1.0 / 9.0, 1e-9);

    RngStream rng(71, 0);
    for (int k = 0; k < 5; ++k) {
        const auto rnd = random_tsv(3, rng);
        const auto d = pointer_distribution(rnd, identity_observable(3), PointerModel(0.2, 0.7));
        EXPECT_NEAR(d.retained_norm, std::norm(inner(rnd.post, rnd.pre)), 1e-9);
    }
}

TEST(PointerDistribution, GridRefinementStability) {
    const auto tsv = three_box_tsv();
    const PointerModel coarse(0.05, 1.0, 0.0, 1.0 / 50.0);
    const PointerModel fine(0.05, 1.0, 0.0, 1.0 / 100.0);
    const double m1 = pointer_mean(pointer_distribution(tsv, box_projector(2), coarse));
    const double m2 = pointer_mean(pointer_distribution(tsv, box_projector(2), fine));
    EXPECT_LT(std::abs(m1 - m2), 1e-8);
}

TEST(PointerMean, ThreeBoxWeakReadings) {
    const auto tsv = three_box_tsv();
    const PointerModel pm(0.01, 1.0);
    EXPECT_NEAR(pointer_mean(pointer_distribution(tsv, box_projector(0), pm)) / 0.01, 1.0, 1e-2);
    EXPECT_NEAR(pointer_mean(pointer_distribution(tsv, box_projector(2), pm)) / 0.01, -1.0,
                1e-2);
}

TEST(WeakConvergence, ThreeBoxBoxC) {
    const auto tsv = three_box_tsv();
    const auto report = weak_convergence_report(tsv, box_projector(2), PointerModel(0.1, 1.0), 3);
    ASSERT_EQ(report.size(), 4u);
    EXPECT_NEAR(report.back().coupling, 1.0 / 80.0, 1e-15);
    for (std::size_t k = 0; k + 1 < report.size(); ++k)
        EXPECT_LE(report[k + 1].error, report[k].error + 1e-9);
    EXPECT_LT(report.back().error, 0.02);
}

TEST(WeakConvergence, EigenstateIsExactAtEveryCoupling) {
    const auto up = StateVector::basis(2, 0);
    const TwoStateVector tsv(up, up);
    for (const auto& point : weak_convergence_report(tsv, pauli_z(), PointerModel(0.1, 1.0), 3))
        EXPECT_LT(point.error, 1e-9);
}

TEST(WeakConvergence, SpinPostSelectedAlongX) {
    // <up_x| sz |up_z> / <up_x|up_z> = 1, despite the post-selection.
    const TwoStateVector tsv(StateVector::basis(2, 0), spin_up(M_PI / 2));
    EXPECT_NEAR(std::abs(weak_value(tsv, pauli_z()) - cdouble(1.0)), 0.0, 1e-12);
    const auto report = weak_convergence_report(tsv, pauli_z(), PointerModel(0.1, 1.0), 3);
    EXPECT_LT(report.back().error, 0.02);
    for (std::size_t k = 0; k + 1 < report.size(); ++k)
        EXPECT_LE(report[k + 1].error, report[k].error + 1e-9);
}

TEST(WeakConvergence, CertaintyMatchesStrongLimit) {
    // Where the conditional probability pins the outcome, the weak reading
    // per unit coupling approaches the same eigenvalue.
    const auto tsv = three_box_tsv();
    const auto report = weak_convergence_report(tsv, box_projector(0), PointerModel(0.1, 1.0), 3);
    EXPECT_LT(report.back().error, 0.02);
}
