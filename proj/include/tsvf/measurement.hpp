#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsvf/complexmat.hpp"
#include "tsvf/observable.hpp"
#include "tsvf/parallel.hpp"
#include "tsvf/rng.hpp"
#include "tsvf/spectral.hpp"
#include "tsvf/state.hpp"

namespace tsvf {

inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kProbSumDrift = 1e-9;
inline constexpr double kZeroProb = 1e-30;

/// "+1", "-1", "0", "+2", ... for near-integer eigenvalues, "%+.6g" otherwise.
inline std::string eigenvalue_label(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) < 1e-9) {
        const long n = static_cast<long>(r);
        if (n == 0) return "0";
        return (n > 0 ? "+" : "") + std::to_string(n);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.6g", v);
    return buf;
}

struct MeasurementOutcome {
    std::string label;
    double eigenvalue;
    Matrix projector;
};

/// Complete set of orthogonal projectors with labeled outcomes.  Outcome
/// order is fixed at construction; sampling determinism depends on it.
class ProjectiveMeasurement {
  public:
    ProjectiveMeasurement(std::string label, std::vector<MeasurementOutcome> outcomes)
        : label_(std::move(label)), outcomes_(std::move(outcomes)) {
        if (outcomes_.empty())
            throw std::invalid_argument("ProjectiveMeasurement: no outcomes");
        const std::size_t d = outcomes_.front().projector.dim();
        Matrix sum(d);
        for (std::size_t i = 0; i < outcomes_.size(); ++i) {
            const Matrix& p = outcomes_[i].projector;
            if (p.dim() != d)
                throw std::invalid_argument("ProjectiveMeasurement: mixed dimensions");
            if (!is_hermitian(p, kProjectorTol))
                throw std::invalid_argument("ProjectiveMeasurement: projector not Hermitian");
            if (max_abs_diff(p * p, p) > kProjectorTol)
                throw std::invalid_argument("ProjectiveMeasurement: projector not idempotent");
            for (std::size_t j = 0; j < i; ++j) {
                Matrix cross = p * outcomes_[j].projector;
                if (cross.frobenius_norm() > kProjectorTol)
                    throw std::invalid_argument(
                        "ProjectiveMeasurement: projectors not mutually orthogonal");
                if (outcomes_[j].label == outcomes_[i].label)
                    throw std::invalid_argument("ProjectiveMeasurement: duplicate outcome label");
            }
            sum = sum + p;
        }
        if (max_abs_diff(sum, Matrix::identity(d)) > kProjectorTol)
            throw std::invalid_argument("ProjectiveMeasurement: projectors do not sum to identity");
    }

    /// Measurement of an observable; outcomes ordered by ascending eigenvalue.
    static ProjectiveMeasurement from_observable(std::string label, const Observable& obs,
                                                 double degeneracy_tol = 1e-9) {
        SpectralForm form = spectral_decompose(obs, degeneracy_tol);
        std::vector<MeasurementOutcome> outs;
        outs.reserve(form.size());
        for (std::size_t k = 0; k < form.size(); ++k)
            outs.push_back({eigenvalue_label(form.eigenvalues[k]), form.eigenvalues[k],
                            std::move(form.projectors[k])});
        return ProjectiveMeasurement(std::move(label), std::move(outs));
    }

    /// Two-outcome test of a projector: {P, 1-P} with eigenvalues 1 and 0.
    static ProjectiveMeasurement binary(std::string label, const Matrix& p,
                                        std::string hit_label, std::string miss_label) {
        Matrix complement = Matrix::identity(p.dim()) - p;
        std::vector<MeasurementOutcome> outs;
        outs.push_back({std::move(hit_label), 1.0, p});
        outs.push_back({std::move(miss_label), 0.0, std::move(complement)});
        return ProjectiveMeasurement(std::move(label), std::move(outs));
    }

    const std::string& label() const { return label_; }
    std::size_t dim() const { return outcomes_.front().projector.dim(); }
    std::size_t size() const { return outcomes_.size(); }
    const std::vector<MeasurementOutcome>& outcomes() const { return outcomes_; }
    const MeasurementOutcome& outcome(std::size_t k) const { return outcomes_.at(k); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t k = 0; k < outcomes_.size(); ++k)
            if (outcomes_[k].label == label) return k;
        throw std::invalid_argument("ProjectiveMeasurement: unknown outcome label '" + label +
                                    "'");
    }

    double eigenvalue_of(const std::string& label) const {
        return outcomes_[index_of(label)].eigenvalue;
    }

    /// Reassembled observable sum(a_i P_i).
    Observable observable() const {
        Matrix m(dim());
        for (const auto& o : outcomes_) m = m + cdouble(o.eigenvalue) * o.projector;
        return Observable(std::move(m));
    }

  private:
    std::string label_;
    std::vector<MeasurementOutcome> outcomes_;
};

/// <psi| P |psi> as a probability.  Values that stray beyond 1e-12 outside
/// [0,1] indicate a malformed projector and are rejected.
inline double born_prob(const StateVector& state, const Matrix& projector) {
    if (state.dim() != projector.dim())
        throw std::invalid_argument("born_prob: dimension mismatch");
    const double p = projector.quadratic_form(state.amplitudes().data()).real();
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::invalid_argument("born_prob: value outside [0,1]");
    return std::min(1.0, std::max(0.0, p));
}

/// P|psi> renormalized.
inline StateVector collapse(const StateVector& state, const Matrix& projector) {
    if (state.dim() != projector.dim())
        throw std::invalid_argument("collapse: dimension mismatch");
    std::vector<cdouble> out(state.dim());
    projector.apply(state.amplitudes().data(), out.data());
    double n2 = 0.0;
    for (const auto& z : out) n2 += std::norm(z);
    if (n2 <= kZeroProb) throw std::domain_error("collapse: impossible outcome");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : out) z *= inv;
    return StateVector(std::move(out));
}

namespace detail {

/// Born weights of every outcome on a raw amplitude buffer.  The sum must
/// sit within kProbSumDrift of 1; anything further marks a malformed
/// measurement.
inline double outcome_probs(const ProjectiveMeasurement& m, const cdouble* amp,
                            std::vector<double>& probs) {
    probs.resize(m.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double p = m.outcome(i).projector.quadratic_form(amp).real();
        probs[i] = std::min(1.0, std::max(0.0, p));
        sum += probs[i];
    }
    if (std::abs(sum - 1.0) > kProbSumDrift)
        throw std::runtime_error("sample_outcome: outcome probabilities do not sum to 1");
    return sum;
}

/// Inverse-CDF draw over the fixed outcome order; boundary ties resolve
/// toward the lower index; zero-probability outcomes (anything at or below
/// the collapse threshold) are never selected.
inline std::size_t pick_outcome(const std::vector<double>& probs, double sum, double u01) {
    const double u = u01 * sum;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= kZeroProb) continue;
        cum += probs[i];
        last_positive = i;
        if (u <= cum) return i;
    }
    return last_positive;
}

}  // namespace detail

/// One stochastic measurement event: draws an outcome by the Born weights
/// and returns (label, collapsed state).
inline std::pair<std::string, StateVector> sample_outcome(const StateVector& state,
                                                          const ProjectiveMeasurement& m,
                                                          RngStream& rng) {
    if (state.dim() != m.dim()) throw std::invalid_argument("sample_outcome: dimension mismatch");
    std::vector<double> probs;
    const double sum = detail::outcome_probs(m, state.amplitudes().data(), probs);
    const std::size_t i = detail::pick_outcome(probs, sum, rng.uniform());
    return {m.outcome(i).label, collapse(state, m.outcome(i).projector)};
}

/// Time-ordered projective measurements applied to one initial state.
struct MeasurementChain {
    StateVector initial;
    std::vector<ProjectiveMeasurement> events;

    MeasurementChain(StateVector init, std::vector<ProjectiveMeasurement> evts)
        : initial(std::move(init)), events(std::move(evts)) {
        for (const auto& e : events)
            if (e.dim() != initial.dim())
                throw std::invalid_argument("MeasurementChain: event dimension mismatch");
    }
};

/// Transcript of one chain run: one outcome label per event.
struct ChainRecord {
    std::uint64_t trial_index;
    std::vector<std::string> outcomes;
};

/// Runs the chain once, threading the collapsed state through the events.
/// The record's trial index is the stream index of the supplied generator.
inline ChainRecord run_chain(const MeasurementChain& chain, RngStream rng) {
    ChainRecord rec{rng.stream_index(), {}};
    rec.outcomes.reserve(chain.events.size());

    const std::size_t d = chain.initial.dim();
    std::vector<cdouble> cur(chain.initial.amplitudes());
    std::vector<cdouble> next(d);
    std::vector<double> probs;

    for (const auto& event : chain.events) {
        const double sum = detail::outcome_probs(event, cur.data(), probs);
        const std::size_t pick = detail::pick_outcome(probs, sum, rng.uniform());
        event.outcome(pick).projector.apply(cur.data(), next.data());
        double n2 = 0.0;
        for (const auto& z : next) n2 += std::norm(z);
        if (n2 <= kZeroProb) throw std::domain_error("run_chain: impossible outcome");
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t i = 0; i < d; ++i) cur[i] = next[i] * inv;
        rec.outcomes.push_back(event.outcome(pick).label);
    }
    return rec;
}

/// Independent trials with per-trial streams (stream_base + trial).  The
/// result is a pure function of (chain, seed, stream_base, trials),
/// whatever the worker count.
inline std::vector<ChainRecord> run_ensemble(const MeasurementChain& chain, std::uint64_t seed,
                                             std::uint64_t stream_base, std::size_t trials) {
    std::vector<ChainRecord> records(trials);
    parallel_for(trials, [&](std::size_t i) {
        records[i] = run_chain(chain, RngStream(seed, stream_base + i));
    });
    return records;
}

/// Relative frequencies of one event's outcomes over a record set.
struct FrequencyTable {
    std::map<std::string, std::size_t> counts;
    std::size_t retained = 0;  // records contributing to the frequencies
    std::size_t total = 0;     // records inspected

    double frequency_of(const std::string& label) const {
        const auto it = counts.find(label);
        if (it == counts.end()) return 0.0;
        return static_cast<double>(it->second) / static_cast<double>(retained);
    }
};

inline FrequencyTable outcome_frequencies(const std::vector<ChainRecord>& records,
                                          std::size_t event) {
    FrequencyTable table;
    table.total = records.size();
    for (const auto& rec : records) {
        if (event >= rec.outcomes.size())
            throw std::invalid_argument("outcome_frequencies: event index out of range");
        ++table.counts[rec.outcomes[event]];
        ++table.retained;
    }
    return table;
}

/// Post-selection by discard: keeps records whose select_event outcome is
/// select_label, then tabulates target_event frequencies among the
/// survivors.
inline FrequencyTable post_selected_frequencies(const std::vector<ChainRecord>& records,
                                                std::size_t select_event,
                                                const std::string& select_label,
                                                std::size_t target_event) {
    if (select_event == target_event)
        throw std::invalid_argument("post_selected_frequencies: select and target must differ");
    FrequencyTable table;
    table.total = records.size();
    for (const auto& rec : records) {
        if (select_event >= rec.outcomes.size() || target_event >= rec.outcomes.size())
            throw std::invalid_argument("post_selected_frequencies: event index out of range");
        if (rec.outcomes[select_event] != select_label) continue;
        ++table.counts[rec.outcomes[target_event]];
        ++table.retained;
    }
    if (table.retained == 0)
        throw std::domain_error("post_selected_frequencies: empty post-selected ensemble");
    return table;
}

}  // namespace tsvf
