#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tsvf/complexmat.hpp"

namespace tsvf {

/// Normalized complex amplitude vector over a finite-dimensional Hilbert
/// space.  Basis index 0 is spin-up along z for a single spin-1/2; composite
/// systems use big-endian indexing in particle order.
class StateVector {
  public:
    /// Basis state |k> in a dim-dimensional space.
    static StateVector basis(std::size_t dim, std::size_t k) {
        if (dim == 0) throw std::invalid_argument("StateVector: dim must be >= 1");
        if (k >= dim) throw std::invalid_argument("StateVector: basis index out of range");
        std::vector<cdouble> a(dim);
        a[k] = 1.0;
        return StateVector(std::move(a));
    }

    /// Normalizing constructor: scales the amplitudes to unit norm.
    static StateVector normalized(std::vector<cdouble> amplitudes) {
        if (amplitudes.empty()) throw std::invalid_argument("StateVector: dim must be >= 1");
        double n2 = 0.0;
        for (const auto& z : amplitudes) n2 += std::norm(z);
        if (n2 < 1e-300) throw std::invalid_argument("StateVector: cannot normalize zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : amplitudes) z *= inv;
        return StateVector(std::move(amplitudes));
    }

    std::size_t dim() const { return amp_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amp_; }
    const cdouble& operator[](std::size_t k) const { return amp_[k]; }

    double norm() const {
        double n2 = 0.0;
        for (const auto& z : amp_) n2 += std::norm(z);
        return std::sqrt(n2);
    }

  private:
    explicit StateVector(std::vector<cdouble> amp) : amp_(std::move(amp)) {}
    friend StateVector collapse(const StateVector&, const Matrix&);
    friend StateVector tensor_state(const StateVector&, const StateVector&);

    std::vector<cdouble> amp_;
};

/// <bra|ket>.
inline cdouble inner(const StateVector& bra, const StateVector& ket) {
    if (bra.dim() != ket.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cdouble acc = 0.0;
    for (std::size_t k = 0; k < bra.dim(); ++k) acc += std::conj(bra[k]) * ket[k];
    return acc;
}

/// Kronecker product of states, big-endian in particle order.  Entangled
/// states are not products; build those with StateVector::normalized.
inline StateVector tensor_state(const StateVector& a, const StateVector& b) {
    std::vector<cdouble> r(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) r[i * b.dim() + j] = a[i] * b[j];
    return StateVector::normalized(std::move(r));
}

/// Spin-up eigenstate of the spin component along (theta, phi):
/// (cos(theta/2), e^{i phi} sin(theta/2)).
inline StateVector spin_up(double theta, double phi = 0.0) {
    return StateVector::normalized(
        {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

/// Orthogonal spin-down eigenstate along (theta, phi).
inline StateVector spin_down(double theta, double phi = 0.0) {
    return StateVector::normalized(
        {-std::polar(std::sin(theta / 2), -phi), cdouble(std::cos(theta / 2))});
}

/// |psi><psi|.
inline Matrix projector_onto(const StateVector& psi) {
    Matrix p(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j) p(i, j) = psi[i] * std::conj(psi[j]);
    return p;
}

}  // namespace tsvf
