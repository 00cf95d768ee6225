#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coreinv/matrix.hpp"

namespace coreinv {

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix a(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    return a;
}

}  // namespace detail

/// Thin SVD, A = U diag(sigma) V*. Singular values are sorted descending.
struct SvdResult {
    ComplexMatrix u;
    std::vector<double> sigma;
    ComplexMatrix v;
};

inline SvdResult svd(const ComplexMatrix& a) {
    if (a.empty()) return {ComplexMatrix(a.rows(), 0), {}, ComplexMatrix(a.cols(), 0)};
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(detail::to_eigen(a),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult r;
    r.u = detail::from_eigen(dec.matrixU());
    r.v = detail::from_eigen(dec.matrixV());
    r.sigma.assign(dec.singularValues().data(),
                   dec.singularValues().data() + dec.singularValues().size());
    return r;
}

inline double rank_cutoff(const std::vector<double>& sigma, const Tolerance& tol) {
    const double smax = sigma.empty() ? 0.0 : sigma.front();
    return std::max(tol.atol, tol.rtol * smax);
}

/// Default rank tolerance: atol = 0, rtol = max(m, n) * eps * 64.
inline Tolerance default_rank_tolerance(const ComplexMatrix& a) {
    const double dim = static_cast<double>(std::max(std::max(a.rows(), a.cols()), 1));
    return Tolerance(0.0, dim * std::numeric_limits<double>::epsilon() * 64.0);
}

/// Number of singular values strictly above max(atol, rtol * sigma_max).
inline int rank(const ComplexMatrix& a, const Tolerance& tol) {
    const SvdResult s = svd(a);
    const double cut = rank_cutoff(s.sigma, tol);
    int r = 0;
    for (double v : s.sigma)
        if (v > cut) ++r;
    return r;
}

inline int rank(const ComplexMatrix& a) { return rank(a, default_rank_tolerance(a)); }

/// Rank together with a decisiveness flag: indecisive when any singular value
/// lands within a factor 10 of the cutoff, so the rank could flip under small
/// perturbations of the data or the tolerance.
struct RankDecision {
    int value = 0;
    bool decisive = true;
};

inline RankDecision rank_decision_from_sigma(const std::vector<double>& sigma,
                                             const Tolerance& tol) {
    const double cut = rank_cutoff(sigma, tol);
    RankDecision rd;
    for (double v : sigma) {
        if (v > cut) ++rd.value;
        if (v > cut / 10.0 && v < cut * 10.0) rd.decisive = false;
    }
    return rd;
}

inline RankDecision rank_decision(const ComplexMatrix& a, const Tolerance& tol) {
    return rank_decision_from_sigma(svd(a).sigma, tol);
}

/// A = F * G with F (m x r) of full column rank and G (r x n) of full row rank.
/// Computed from the SVD: F = U_r diag(sigma_r), G = V_r*.
struct RankFactorization {
    ComplexMatrix f;
    ComplexMatrix g;
    int rank = 0;
};

inline RankFactorization rank_factorization(const ComplexMatrix& a, const Tolerance& tol) {
    const SvdResult s = svd(a);
    const double cut = rank_cutoff(s.sigma, tol);
    int r = 0;
    for (double v : s.sigma)
        if (v > cut) ++r;
    RankFactorization rf;
    rf.rank = r;
    rf.f = ComplexMatrix(a.rows(), r);
    rf.g = ComplexMatrix(r, a.cols());
    for (int k = 0; k < r; ++k) {
        for (int i = 0; i < a.rows(); ++i) rf.f(i, k) = s.u(i, k) * s.sigma[k];
        for (int j = 0; j < a.cols(); ++j) rf.g(k, j) = std::conj(s.v(j, k));
    }
    return rf;
}

/// sigma_max / sigma_min; +inf for singular or empty input.
inline double condition_number(const ComplexMatrix& a) {
    const SvdResult s = svd(a);
    if (s.sigma.empty() || s.sigma.back() == 0.0)
        return std::numeric_limits<double>::infinity();
    return s.sigma.front() / s.sigma.back();
}

/// Ordinary inverse through the SVD; fails iff rank(A) < n at the tolerance.
inline ComplexMatrix inverse(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw DimensionError("inverse requires a square matrix");
    const int n = a.rows();
    if (n == 0) return a;
    const SvdResult s = svd(a);
    const double cut = rank_cutoff(s.sigma, tol);
    int r = 0;
    for (double v : s.sigma)
        if (v > cut) ++r;
    if (r < n)
        throw SingularError("singular at tolerance: rank " + std::to_string(r) + " of " +
                            std::to_string(n));
    ComplexMatrix x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc(0.0, 0.0);
            for (int k = 0; k < n; ++k) acc += s.v(i, k) * std::conj(s.u(j, k)) / s.sigma[k];
            x(i, j) = acc;
        }
    return x;
}

struct BoolDecision {
    bool value = false;
    bool decisive = true;
};

/// Column-space equality: rank([A | B]) = rank(A) = rank(B).
inline BoolDecision range_equal_decision(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const Tolerance& tol) {
    if (a.rows() != b.rows()) throw DimensionError("range_equal requires equal row counts");
    const RankDecision ra = rank_decision(a, tol);
    const RankDecision rb = rank_decision(b, tol);
    const RankDecision rab = rank_decision(hcat(a, b), tol);
    return {rab.value == ra.value && ra.value == rb.value,
            ra.decisive && rb.decisive && rab.decisive};
}

inline bool range_equal(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
    return range_equal_decision(a, b, tol).value;
}

}  // namespace coreinv
