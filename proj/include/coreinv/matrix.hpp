#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "coreinv/errors.hpp"

namespace coreinv {

using cplx = std::complex<double>;

/// Absolute/relative thresholds governing rank decisions and equality checks.
///
/// Normalized residuals are compared against atol + rtol; singular values are
/// kept when above max(atol, rtol * sigma_max).
struct Tolerance {
    double atol = 1e-12;
    double rtol = 1e-9;

    Tolerance() = default;
    Tolerance(double absolute, double relative) : atol(absolute), rtol(relative) {
        if (!(atol >= 0.0) || !(rtol >= 0.0))
            throw ParseError("tolerance components must be non-negative");
        if (atol == 0.0 && rtol == 0.0)
            throw ParseError("tolerance must not be identically zero");
    }

    /// Threshold applied to residuals that have already been scale-normalized.
    double zero_threshold() const { return atol + rtol; }
};

/// Dense complex matrix with value semantics. Entries are stored row-major.
///
/// Dimensions may be zero (empty factors of a rank-0 factorization); every
/// entry accepted at construction must be finite.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        check_dims(rows, cols);
        data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cplx(0.0, 0.0));
    }

    ComplexMatrix(int rows, int cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        check_dims(rows, cols);
        if (data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
            throw DimensionError("entry count does not match rows*cols");
        check_finite();
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        data_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw DimensionError("ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        check_finite();
    }

    static ComplexMatrix zeros(int rows, int cols) { return ComplexMatrix(rows, cols); }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const cplx& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    /// Exact (bitwise) equality; used by determinism checks.
    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    static void check_dims(int rows, int cols) {
        if (rows < 0 || cols < 0) throw DimensionError("negative dimension");
        if ((rows == 0) != (cols == 0) && rows * cols != 0)
            throw DimensionError("inconsistent empty dimensions");
    }

    void check_finite() const {
        for (const cplx& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw ParseError("non-finite matrix entry rejected");
    }

    int rows_;
    int cols_;
    std::vector<cplx> data_;
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("shape mismatch in addition");
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("shape mismatch in subtraction");
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
    return r;
}

inline ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const cplx& s) { return s * a; }

/// Standard matrix product. Inner dimension zero yields the zero matrix.
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("inner dimensions do not match");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }

/// Conjugate transpose; an exact entrywise involution, no tolerance involved.
inline ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

/// ||A - B||_F <= atol + rtol * max(||A||_F, ||B||_F)
inline bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
    if (!a.same_shape(b)) throw DimensionError("shape mismatch in approx_eq");
    const double scale = std::max(frobenius_norm(a), frobenius_norm(b));
    return frobenius_norm(a - b) <= tol.atol + tol.rtol * scale;
}

/// ||M||_F normalized by 1 + scale; the standard form for "M = 0" conditions.
inline double zero_residual(const ComplexMatrix& m, double scale) {
    return frobenius_norm(m) / (1.0 + scale);
}

/// Relative Frobenius distance; 0/0 is treated as exact agreement.
inline double relative_error(const ComplexMatrix& a, const ComplexMatrix& b) {
    const double scale = std::max(frobenius_norm(a), frobenius_norm(b));
    const double diff = frobenius_norm(a - b);
    return scale == 0.0 ? diff : diff / scale;
}

inline ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("row mismatch in hcat");
    ComplexMatrix r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

/// Copies src into dest starting at (row0, col0).
inline void place(ComplexMatrix& dest, int row0, int col0, const ComplexMatrix& src) {
    if (row0 + src.rows() > dest.rows() || col0 + src.cols() > dest.cols())
        throw DimensionError("placement exceeds destination");
    for (int i = 0; i < src.rows(); ++i)
        for (int j = 0; j < src.cols(); ++j) dest(row0 + i, col0 + j) = src(i, j);
}

inline ComplexMatrix submatrix(const ComplexMatrix& a, int row0, int col0, int rows, int cols) {
    if (row0 + rows > a.rows() || col0 + cols > a.cols())
        throw DimensionError("submatrix exceeds source");
    ComplexMatrix r(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r(i, j) = a(row0 + i, col0 + j);
    return r;
}

}  // namespace coreinv
