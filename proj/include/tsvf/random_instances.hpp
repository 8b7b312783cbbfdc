#pragma once

#include <string>
#include <vector>

#include "tsvf/measurement.hpp"
#include "tsvf/observable.hpp"
#include "tsvf/rng.hpp"
#include "tsvf/spectral.hpp"
#include "tsvf/state.hpp"
#include "tsvf/two_state.hpp"

namespace tsvf {

/// Haar-ish random state: complex Gaussian amplitudes, normalized.
inline StateVector random_state(std::size_t dim, RngStream& rng) {
    std::vector<cdouble> a(dim);
    for (auto& z : a) z = cdouble(rng.gaussian(), rng.gaussian());
    return StateVector::normalized(std::move(a));
}

/// Gaussian-ensemble Hermitian matrix with entries of order 1.
inline Observable random_hermitian(std::size_t dim, RngStream& rng) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cdouble z(0.5 * rng.gaussian(), 0.5 * rng.gaussian());
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return Observable(std::move(m));
}

/// Complete measurement from a random Hermitian; generically nondegenerate
/// (dim rank-1 outcomes).  With force_degenerate, the two lowest outcomes
/// are merged into one rank-2 outcome.
inline ProjectiveMeasurement random_measurement(std::size_t dim, RngStream& rng,
                                                bool force_degenerate = false) {
    SpectralForm form = spectral_decompose(random_hermitian(dim, rng));
    std::vector<MeasurementOutcome> outs;
    if (force_degenerate && form.size() >= 2) {
        Matrix merged = form.projectors[0] + form.projectors[1];
        outs.push_back({"merged", 0.0, std::move(merged)});
        for (std::size_t k = 2; k < form.size(); ++k)
            outs.push_back({"o" + std::to_string(k - 1), static_cast<double>(k - 1),
                            std::move(form.projectors[k])});
    } else {
        for (std::size_t k = 0; k < form.size(); ++k)
            outs.push_back({"o" + std::to_string(k), static_cast<double>(k),
                            std::move(form.projectors[k])});
    }
    return ProjectiveMeasurement("random", std::move(outs));
}

/// Random pre/post pair; redraws the post state until the overlap magnitude
/// clears min_overlap, so weak values stay well defined.
inline TwoStateVector random_tsv(std::size_t dim, RngStream& rng, double min_overlap = 1e-3) {
    StateVector pre = random_state(dim, rng);
    for (;;) {
        StateVector post = random_state(dim, rng);
        if (std::abs(inner(post, pre)) > min_overlap) return TwoStateVector(pre, post);
    }
}

}  // namespace tsvf
