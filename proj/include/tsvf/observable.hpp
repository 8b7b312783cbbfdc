#pragma once

#include <cmath>
#include <stdexcept>

#include "tsvf/complexmat.hpp"
#include "tsvf/state.hpp"

namespace tsvf {

inline constexpr double kHermitianTol = 1e-12;

/// Hermitian operator on a finite-dimensional space.  Hermiticity is checked
/// entrywise at construction.
class Observable {
  public:
    explicit Observable(Matrix m) : m_(std::move(m)) {
        if (!is_hermitian(m_, kHermitianTol))
            throw std::invalid_argument("Observable: matrix is not Hermitian");
    }

    std::size_t dim() const { return m_.dim(); }
    const Matrix& matrix() const { return m_; }

    /// <psi| A |psi>, real for Hermitian A.
    double expectation(const StateVector& psi) const {
        if (psi.dim() != dim()) throw std::invalid_argument("expectation: dimension mismatch");
        return m_.quadratic_form(psi.amplitudes().data()).real();
    }

    friend Observable operator+(const Observable& a, const Observable& b) {
        return Observable(a.m_ + b.m_);
    }
    friend Observable operator-(const Observable& a, const Observable& b) {
        return Observable(a.m_ - b.m_);
    }
    friend Observable operator*(double s, const Observable& a) {
        return Observable(cdouble(s) * a.m_);
    }

  private:
    Matrix m_;
};

inline Observable identity_observable(std::size_t dim) {
    return Observable(Matrix::identity(dim));
}

inline Observable pauli_x() {
    Matrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return Observable(m);
}

inline Observable pauli_y() {
    Matrix m(2);
    m(0, 1) = cdouble(0.0, -1.0);
    m(1, 0) = cdouble(0.0, 1.0);
    return Observable(m);
}

inline Observable pauli_z() {
    Matrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return Observable(m);
}

/// Spin component along the unit direction with polar angle theta and
/// azimuth phi:  sin(t)cos(p) sx + sin(t)sin(p) sy + cos(t) sz.
/// Traceless with determinant -1, so the spectrum is exactly {-1, +1}.
inline Observable spin_observable(double theta, double phi = 0.0) {
    Matrix m(2);
    m(0, 0) = std::cos(theta);
    m(0, 1) = std::polar(std::sin(theta), -phi);
    m(1, 0) = std::polar(std::sin(theta), phi);
    m(1, 1) = -std::cos(theta);
    return Observable(m);
}

/// Kronecker product of observables (same index convention as kron).
inline Observable tensor_op(const Observable& a, const Observable& b) {
    return Observable(kron(a.matrix(), b.matrix()));
}

/// Projector observable |psi><psi| (eigenvalues 0 and 1).
inline Observable projector_observable(const StateVector& psi) {
    return Observable(projector_onto(psi));
}

/// Places a single-qubit observable on qubit `k` of an `n`-qubit register.
inline Observable qubit_op(const Observable& op, std::size_t k, std::size_t n) {
    if (op.dim() != 2) throw std::invalid_argument("qubit_op: expected a single-qubit operator");
    if (k >= n) throw std::invalid_argument("qubit_op: qubit index out of range");
    Matrix m = (k == 0) ? op.matrix() : Matrix::identity(2);
    for (std::size_t i = 1; i < n; ++i) m = kron(m, i == k ? op.matrix() : Matrix::identity(2));
    return Observable(std::move(m));
}

}  // namespace tsvf
