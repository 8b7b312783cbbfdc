#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsvf/measurement.hpp"
#include "tsvf/observable.hpp"
#include "tsvf/state.hpp"

namespace tsvf {

inline constexpr double kAblDenominatorFloor = 1e-30;
inline constexpr double kWeakValueOverlapFloor = 1e-12;

/// Pre- and post-selected description of a system between two measurements:
/// |pre> prepared earlier, <post| found later.  Orthogonal pairs are allowed
/// here; operations that cannot tolerate them reject at the call site.
struct TwoStateVector {
    StateVector pre;
    StateVector post;

    TwoStateVector(StateVector pre_state, StateVector post_state)
        : pre(std::move(pre_state)), post(std::move(post_state)) {
        if (pre.dim() != post.dim())
            throw std::invalid_argument("TwoStateVector: dimension mismatch");
    }
};

inline TwoStateVector time_reverse(const TwoStateVector& tsv) {
    return TwoStateVector(tsv.post, tsv.pre);
}

using WeakValue = cdouble;

namespace detail {

inline cdouble sandwich(const StateVector& post, const Matrix& op, const StateVector& pre) {
    std::vector<cdouble> tmp(pre.dim());
    op.apply(pre.amplitudes().data(), tmp.data());
    cdouble acc = 0.0;
    for (std::size_t k = 0; k < pre.dim(); ++k) acc += std::conj(post[k]) * tmp[k];
    return acc;
}

}  // namespace detail

/// Conditional probabilities for an intermediate ideal measurement given
/// both selections:
///   Prob(a_i) = |<post| P_i |pre>|^2 / sum_j |<post| P_j |pre>|^2.
/// Manifestly symmetric under interchanging pre and post.
inline std::vector<double> abl_table(const TwoStateVector& tsv, const ProjectiveMeasurement& m) {
    if (m.dim() != tsv.pre.dim()) throw std::invalid_argument("abl_prob: dimension mismatch");
    std::vector<double> weights(m.size());
    double denom = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        weights[i] = std::norm(detail::sandwich(tsv.post, m.outcome(i).projector, tsv.pre));
        denom += weights[i];
    }
    if (denom <= kAblDenominatorFloor)
        throw std::domain_error("abl_prob: post-selection unreachable through this measurement");
    for (auto& w : weights) w /= denom;
    return weights;
}

inline double abl_prob(const TwoStateVector& tsv, const ProjectiveMeasurement& m,
                       const std::string& outcome) {
    return abl_table(tsv, m)[m.index_of(outcome)];
}

/// Conditional probabilities when the later selection is a subspace rather
/// than a complete state: post-selection by a projector P2 of any rank,
///   Prob(a_i) = |P2 P_i |pre>|^2 / sum_j |P2 P_j |pre>|^2.
/// Reduces to abl_table when P2 is rank one.
inline std::vector<double> abl_general(const StateVector& pre, const ProjectiveMeasurement& m,
                                       const Matrix& post_projector) {
    if (m.dim() != pre.dim() || post_projector.dim() != pre.dim())
        throw std::invalid_argument("abl_general: dimension mismatch");
    std::vector<cdouble> mid(pre.dim()), out(pre.dim());
    std::vector<double> weights(m.size());
    double denom = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        m.outcome(i).projector.apply(pre.amplitudes().data(), mid.data());
        post_projector.apply(mid.data(), out.data());
        double w = 0.0;
        for (const auto& z : out) w += std::norm(z);
        weights[i] = w;
        denom += w;
    }
    if (denom <= kAblDenominatorFloor)
        throw std::domain_error(
            "abl_general: post-selection unreachable through this measurement");
    for (auto& w : weights) w /= denom;
    return weights;
}

/// Both routes to the probability of an intermediate outcome when only the
/// preparation is given.  lhs is the direct Born probability; rhs decomposes
/// over the final measurement's outcomes, with the final-outcome
/// probabilities computed on the condition that the intermediate measurement
/// was performed.  The two coincide identically; assembling rhs with
/// unconditioned final probabilities is the classic mistake this operation
/// exists to expose.
struct DecompositionSides {
    double lhs;
    double rhs;
};

inline DecompositionSides decomposition_check(const StateVector& pre,
                                              const ProjectiveMeasurement& m_mid,
                                              const ProjectiveMeasurement& m_final,
                                              const std::string& outcome) {
    const std::size_t target = m_mid.index_of(outcome);
    const double lhs = born_prob(pre, m_mid.outcome(target).projector);

    std::vector<cdouble> mid(pre.dim()), out(pre.dim());
    double rhs = 0.0;
    for (const auto& fin : m_final.outcomes()) {
        // Prob(f | intermediate performed) = sum_j |Q_f P_j |pre>|^2
        double prob_f = 0.0;
        double weight_target = 0.0;
        for (std::size_t j = 0; j < m_mid.size(); ++j) {
            m_mid.outcome(j).projector.apply(pre.amplitudes().data(), mid.data());
            fin.projector.apply(mid.data(), out.data());
            double w = 0.0;
            for (const auto& z : out) w += std::norm(z);
            prob_f += w;
            if (j == target) weight_target = w;
        }
        if (prob_f <= kAblDenominatorFloor) continue;  // unreachable branch contributes 0
        rhs += prob_f * (weight_target / prob_f);
    }
    return {lhs, rhs};
}

/// The weak value <post| A |pre> / <post|pre>.  Undefined (rejected) when
/// the selections are orthogonal, where the ratio is singular.
inline WeakValue weak_value(const TwoStateVector& tsv, const Observable& obs) {
    if (obs.dim() != tsv.pre.dim()) throw std::invalid_argument("weak_value: dimension mismatch");
    const cdouble overlap = inner(tsv.post, tsv.pre);
    if (std::abs(overlap) <= kWeakValueOverlapFloor)
        throw std::domain_error("weak_value: undefined at orthogonal post-selection");
    return detail::sandwich(tsv.post, obs.matrix(), tsv.pre) / overlap;
}

}  // namespace tsvf
