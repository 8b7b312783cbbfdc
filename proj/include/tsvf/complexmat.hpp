#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tsvf {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for small Hilbert spaces
/// (dim <= 64); no sparsity, no views.
class Matrix {
  public:
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
        if (dim == 0) throw std::invalid_argument("Matrix: dim must be >= 1");
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cdouble>& data() const { return a_; }

    Matrix adjoint() const {
        Matrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    /// out = M * in.  Buffers must not alias.
    void apply(const cdouble* in, cdouble* out) const {
        for (std::size_t i = 0; i < dim_; ++i) {
            cdouble acc = 0.0;
            const cdouble* row = a_.data() + i * dim_;
            for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * in[j];
            out[i] = acc;
        }
    }

    /// <v| M |v> without temporaries.
    cdouble quadratic_form(const cdouble* v) const {
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            cdouble rowdot = 0.0;
            const cdouble* row = a_.data() + i * dim_;
            for (std::size_t j = 0; j < dim_; ++j) rowdot += row[j] * v[j];
            acc += std::conj(v[i]) * rowdot;
        }
        return acc;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same_dim(x, y);
        Matrix r(x.dim_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same_dim(x, y);
        Matrix r(x.dim_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        check_same_dim(x, y);
        const std::size_t n = x.dim_;
        Matrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cdouble xik = x(i, k);
                if (xik == cdouble{}) continue;
                for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend Matrix operator*(cdouble s, const Matrix& x) {
        Matrix r(x.dim_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = s * x.a_[k];
        return r;
    }

  private:
    static void check_same_dim(const Matrix& x, const Matrix& y) {
        if (x.dim_ != y.dim_) throw std::invalid_argument("Matrix: dimension mismatch");
    }

    std::size_t dim_;
    std::vector<cdouble> a_;
};

/// Kronecker product; index convention is big-endian in factor order,
/// i.e. (a kron b)(i_a*db + i_b, j_a*db + j_b) = a(i_a,j_a) * b(i_b,j_b).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    Matrix r(da * db);
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ja = 0; ja < da; ++ja) {
            const cdouble f = a(ia, ja);
            if (f == cdouble{}) continue;
            for (std::size_t ib = 0; ib < db; ++ib)
                for (std::size_t jb = 0; jb < db; ++jb)
                    r(ia * db + ib, ja * db + jb) = f * b(ib, jb);
        }
    return r;
}

inline double max_abs_diff(const Matrix& x, const Matrix& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
    return m;
}

inline bool is_hermitian(const Matrix& m, double tol) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

}  // namespace tsvf
