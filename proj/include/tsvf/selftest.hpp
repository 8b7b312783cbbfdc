#pragma once

#include <string>
#include <vector>

#include "tsvf/random_instances.hpp"
#include "tsvf/scenarios.hpp"
#include "tsvf/two_state.hpp"

namespace tsvf {

/// Randomized property suites at reduced trial counts: the sampled
/// measurement chain against the conditional-probability formulas, the
/// decomposition identity, symmetry under exchanging the selections, and
/// weak-value linearity.  Truths here hold for every seed; the seed only
/// picks the instances.
struct SelftestReport {
    std::vector<Check> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

inline SelftestReport run_selftest(std::uint64_t seed = 42) {
    SelftestReport report;
    const std::uint32_t salt = stream_salt("selftest");

    // Conditional probabilities vs the post-selected Monte Carlo ensemble.
    {
        RngStream inst(seed, stream_block(salt, 0));
        const std::size_t trials = 20000;
        double worst_sigma = 0.0;
        for (std::uint32_t k = 0; k < 8; ++k) {
            const std::size_t dim = 2 + k % 3;
            const auto mid = random_measurement(dim, inst, k % 2 == 1);
            StateVector pre = random_state(dim, inst);
            StateVector post = random_state(dim, inst);
            // keep the post-selection reachable often enough to fill the bins
            while (true) {
                double reach = 0.0;
                for (const auto& o : mid.outcomes())
                    reach += std::norm(detail::sandwich(post, o.projector, pre));
                if (reach > 0.05) break;
                post = random_state(dim, inst);
            }
            const auto m_post = ProjectiveMeasurement::binary("post", projector_onto(post),
                                                              "match", "rest");
            const MeasurementChain chain(pre, {mid, m_post});
            const auto records =
                run_ensemble(chain, seed, stream_block(salt, 10 + k), trials);
            const auto freq = post_selected_frequencies(records, 1, "match", 0);
            const auto table = abl_table(TwoStateVector(pre, post), mid);
            for (std::size_t i = 0; i < mid.size(); ++i) {
                const double tol = binomial_tolerance(table[i], freq.retained, 4.0);
                worst_sigma = std::max(
                    worst_sigma,
                    std::abs(freq.frequency_of(mid.outcome(i).label) - table[i]) / tol);
            }
        }
        report.checks.push_back(compare_check(
            "sampled chains reproduce the conditional probabilities (8 random instances)",
            "ABL rule", 0.0, worst_sigma, 1.0));
    }

    // Decomposition identity on random instances.
    {
        RngStream inst(seed, stream_block(salt, 1));
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const std::size_t dim = 2 + k % 3;
            const StateVector pre = random_state(dim, inst);
            const auto mid = random_measurement(dim, inst, k % 3 == 0);
            const auto fin = random_measurement(dim, inst, k % 5 == 0);
            const auto sides =
                decomposition_check(pre, mid, fin, mid.outcome(k % mid.size()).label);
            worst = std::max(worst, std::abs(sides.lhs - sides.rhs));
        }
        report.checks.push_back(compare_check(
            "conditioned decomposition equals the direct probability (100 random instances)",
            "Sharp-Shanks decomposition", 0.0, worst, 1e-10));
    }

    // Exchanging the selections preserves conditional probabilities.
    {
        RngStream inst(seed, stream_block(salt, 2));
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const std::size_t dim = 2 + k % 3;
            const auto tsv = random_tsv(dim, inst, 0.0);
            const auto m = random_measurement(dim, inst, k % 4 == 0);
            const auto fwd = abl_table(tsv, m);
            const auto rev = abl_table(time_reverse(tsv), m);
            for (std::size_t i = 0; i < fwd.size(); ++i)
                worst = std::max(worst, std::abs(fwd[i] - rev[i]));
        }
        report.checks.push_back(compare_check(
            "conditional probabilities are symmetric under exchanging the selections",
            "ABL rule", 0.0, worst, 1e-12));
    }

    // Weak values add even for non-commuting observables.
    {
        RngStream inst(seed, stream_block(salt, 3));
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const std::size_t dim = 2 + k % 3;
            const auto tsv = random_tsv(dim, inst);
            const auto a = random_hermitian(dim, inst);
            const auto b = random_hermitian(dim, inst);
            worst = std::max(worst, std::abs(weak_value(tsv, a + b) -
                                             (weak_value(tsv, a) + weak_value(tsv, b))));
        }
        report.checks.push_back(
            compare_check("weak values are additive for non-commuting pairs (50 random "
                          "instances)",
                          "weak value linearity", 0.0, worst, 1e-12));
    }

    return report;
}

}  // namespace tsvf
