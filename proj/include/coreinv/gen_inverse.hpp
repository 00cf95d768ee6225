#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coreinv/decomposition.hpp"
#include "coreinv/matrix.hpp"

namespace coreinv {

enum class InverseKind { MoorePenrose, OneThree, Group, Drazin, Core };

inline const char* to_string(InverseKind k) {
    switch (k) {
        case InverseKind::MoorePenrose: return "moore-penrose";
        case InverseKind::OneThree: return "one-three";
        case InverseKind::Group: return "group";
        case InverseKind::Drazin: return "drazin";
        case InverseKind::Core: return "core";
    }
    return "?";
}

struct AxiomResidual {
    std::string name;
    double residual = 0.0;
};

struct AxiomReport {
    bool ok = false;
    double max_residual = 0.0;
    std::vector<AxiomResidual> axioms;
};

/// Moore-Penrose inverse through the SVD; exists for every matrix.
inline ComplexMatrix moore_penrose(const ComplexMatrix& a, const Tolerance& tol) {
    if (a.empty()) return ComplexMatrix(a.cols(), a.rows());
    const SvdResult s = svd(a);
    const double cut = rank_cutoff(s.sigma, tol);
    ComplexMatrix x(a.cols(), a.rows());
    for (int i = 0; i < a.cols(); ++i)
        for (int j = 0; j < a.rows(); ++j) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < s.sigma.size(); ++k)
                if (s.sigma[k] > cut) acc += s.v(i, static_cast<int>(k)) *
                                              std::conj(s.u(j, static_cast<int>(k))) / s.sigma[k];
            x(i, j) = acc;
        }
    return x;
}

/// Outcome of the group-invertibility decision for a square matrix.
///
/// `decisive` is false when a rank decision was borderline or the r x r core
/// GF was conditioned worse than 1e12; such verdicts should be treated as
/// numerically ambiguous rather than trusted.
struct GroupDecision {
    bool invertible = false;
    bool decisive = true;
    int rank_a = 0;
    int rank_a2 = 0;
    double gf_condition = 1.0;
    std::optional<ComplexMatrix> inverse;
};

inline GroupDecision group_decision(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw DimensionError("group inverse requires a square matrix");
    GroupDecision d;
    const RankDecision rd = rank_decision(a, tol);
    d.rank_a = rd.value;
    d.decisive = rd.decisive;
    if (rd.value == 0) {
        // The zero matrix is its own group inverse.
        d.invertible = true;
        d.inverse = ComplexMatrix::zeros(a.rows(), a.cols());
        return d;
    }
    const RankFactorization rf = rank_factorization(a, tol);
    const ComplexMatrix gf = rf.g * rf.f;
    const SvdResult s = svd(gf);
    const RankDecision gd = rank_decision_from_sigma(s.sigma, tol);
    d.rank_a2 = gd.value;  // rank(A^2) = rank(GF): F injects, G surjects
    d.decisive = d.decisive && gd.decisive;
    if (gd.value < rf.rank) {
        d.invertible = false;
        return d;
    }
    d.gf_condition = s.sigma.front() / s.sigma.back();
    if (d.gf_condition > 1e12) d.decisive = false;
    const Eigen::MatrixXcd gfi = detail::to_eigen(gf).fullPivLu().inverse();
    d.invertible = true;
    d.inverse = rf.f * detail::from_eigen(gfi * gfi) * rf.g;
    return d;
}

inline std::optional<ComplexMatrix> try_group_inverse(const ComplexMatrix& a,
                                                      const Tolerance& tol) {
    return group_decision(a, tol).inverse;
}

inline bool is_group_invertible(const ComplexMatrix& a, const Tolerance& tol) {
    return group_decision(a, tol).invertible;
}

/// Group inverse via rank factorization A = FG: X = F (GF)^-2 G.
inline ComplexMatrix group_inverse(const ComplexMatrix& a, const Tolerance& tol) {
    GroupDecision d = group_decision(a, tol);
    if (!d.invertible)
        throw NotGroupInvertibleError("rank(A)=" + std::to_string(d.rank_a) +
                                      ", rank(A^2)=" + std::to_string(d.rank_a2) +
                                      ": not group invertible");
    return *std::move(d.inverse);
}

/// Spectral idempotent a^pi = I - a a^# of a group invertible matrix.
inline ComplexMatrix spectral_idempotent(const ComplexMatrix& a, const Tolerance& tol) {
    return ComplexMatrix::identity(a.rows()) - a * group_inverse(a, tol);
}

struct DrazinInverse {
    ComplexMatrix inverse;
    int index = 0;
};

/// Smallest k with rank(A^k) = rank(A^{k+1}); 0 iff A is invertible.
inline int matrix_index(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw DimensionError("matrix index requires a square matrix");
    ComplexMatrix power = ComplexMatrix::identity(a.rows());
    int prev = a.rows();
    for (int k = 0;; ++k) {
        power = power * a;
        const int cur = rank(power, tol);
        if (cur == prev) return k;
        prev = cur;
    }
}

/// Drazin inverse by index detection: the index is the smallest k with
/// rank(A^k) = rank(A^{k+1}); then X = A^k (A^{2k+1})^# A^k.
inline DrazinInverse drazin_inverse(const ComplexMatrix& a, const Tolerance& tol) {
    const int k = matrix_index(a, tol);
    if (k == 0) return {inverse(a, tol), 0};
    ComplexMatrix ak = ComplexMatrix::identity(a.rows());
    for (int i = 0; i < k; ++i) ak = ak * a;
    const ComplexMatrix high = ak * ak * a;  // A^{2k+1}
    return {ak * group_inverse(high, tol) * ak, k};
}

/// Group-invertibility decision extended with the core-inverse construction
/// and its axiom verification: "core invertible" means the rank test passes
/// and the constructed inverse verifies.
struct CoreDecision {
    bool invertible = false;
    bool decisive = true;
    int rank_a = 0;
    int rank_a2 = 0;
    double max_axiom_residual = 0.0;
    std::optional<ComplexMatrix> inverse;
};

inline AxiomReport verify_axioms(InverseKind kind, const ComplexMatrix& a,
                                 const ComplexMatrix& x, const Tolerance& tol);

inline CoreDecision core_decision(const ComplexMatrix& a, const Tolerance& tol) {
    GroupDecision gd = group_decision(a, tol);
    CoreDecision d;
    d.decisive = gd.decisive;
    d.rank_a = gd.rank_a;
    d.rank_a2 = gd.rank_a2;
    if (!gd.invertible) return d;
    const ComplexMatrix x = *gd.inverse * a * moore_penrose(a, tol);
    const AxiomReport rep = verify_axioms(InverseKind::Core, a, x, tol);
    d.max_axiom_residual = rep.max_residual;
    const double thr = tol.zero_threshold();
    if (rep.max_residual > thr / 10.0 && rep.max_residual < thr * 10.0) d.decisive = false;
    if (!rep.ok) {
        // Rank test and axiom check disagree; never trust such a verdict.
        d.decisive = false;
        return d;
    }
    d.invertible = true;
    d.inverse = x;
    return d;
}

inline std::optional<ComplexMatrix> try_core_inverse(const ComplexMatrix& a,
                                                     const Tolerance& tol) {
    return core_decision(a, tol).inverse;
}

inline bool is_core_invertible(const ComplexMatrix& a, const Tolerance& tol) {
    return core_decision(a, tol).invertible;
}

/// Core inverse a^(#)circ = a^# a a^dagger. Over C^{nxn} it exists iff the
/// group inverse does, because the Moore-Penrose inverse always supplies a
/// (1,3)-inverse.
inline ComplexMatrix core_inverse(const ComplexMatrix& a, const Tolerance& tol) {
    CoreDecision d = core_decision(a, tol);
    if (!d.invertible)
        throw NotCoreInvertibleError("rank(A)=" + std::to_string(d.rank_a) +
                                     ", rank(A^2)=" + std::to_string(d.rank_a2) +
                                     ": not core invertible");
    return *std::move(d.inverse);
}

/// Core inverse through the projection characterization: p = I - A A^dagger is
/// a projection with pA = 0; if A + p is invertible the core inverse equals
/// (A + p)^-1 (I - p).
inline ComplexMatrix core_inverse_via_projection(const ComplexMatrix& a, const Tolerance& tol) {
    if (!a.is_square()) throw DimensionError("core inverse requires a square matrix");
    const ComplexMatrix aap = a * moore_penrose(a, tol);
    const ComplexMatrix p = ComplexMatrix::identity(a.rows()) - aap;
    ComplexMatrix api;
    try {
        api = inverse(a + p, tol);
    } catch (const SingularError&) {
        throw NotCoreInvertibleError("A + p singular: not core invertible");
    }
    return api * aap;
}

inline bool is_idempotent(const ComplexMatrix& p, const Tolerance& tol) {
    if (!p.is_square()) throw DimensionError("idempotency requires a square matrix");
    const double np = frobenius_norm(p);
    return zero_residual(p * p - p, np * np) <= tol.zero_threshold();
}

/// p is a projection iff p^2 = p = p*.
inline bool is_projection(const ComplexMatrix& p, const Tolerance& tol) {
    if (!p.is_square()) throw DimensionError("projection test requires a square matrix");
    const double np = frobenius_norm(p);
    return is_idempotent(p, tol) &&
           zero_residual(conj_transpose(p) - p, np) <= tol.zero_threshold();
}

struct EpDecision {
    bool ep = false;
    bool decisive = true;
};

/// EP: group invertible with range(A) = range(A*).
inline EpDecision is_ep_decision(const ComplexMatrix& a, const Tolerance& tol) {
    const GroupDecision gd = group_decision(a, tol);
    if (!gd.invertible) return {false, gd.decisive};
    const BoolDecision re = range_equal_decision(a, conj_transpose(a), tol);
    return {re.value, gd.decisive && re.decisive};
}

inline bool is_ep(const ComplexMatrix& a, const Tolerance& tol) {
    return is_ep_decision(a, tol).ep;
}

/// Evaluates exactly the defining axiom set of the requested inverse kind.
/// Each residual is ||lhs - rhs||_F normalized by 1 + ||A||_F ||X||_F.
inline AxiomReport verify_axioms(InverseKind kind, const ComplexMatrix& a, const ComplexMatrix& x,
                                 const Tolerance& tol) {
    if (!a.is_square() || !x.same_shape(a))
        throw DimensionError("verify_axioms requires square A and X of equal shape");
    const double scale = frobenius_norm(a) * frobenius_norm(x);
    AxiomReport rep;
    auto add = [&](const std::string& name, const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
        const double r = zero_residual(lhs - rhs, scale);
        rep.axioms.push_back({name, r});
        rep.max_residual = std::max(rep.max_residual, r);
    };
    const ComplexMatrix ax = a * x;
    const ComplexMatrix xa = x * a;
    switch (kind) {
        case InverseKind::MoorePenrose:
            add("axa=a", ax * a, a);
            add("xax=x", xa * x, x);
            add("(ax)*=ax", conj_transpose(ax), ax);
            add("(xa)*=xa", conj_transpose(xa), xa);
            break;
        case InverseKind::OneThree:
            add("axa=a", ax * a, a);
            add("(ax)*=ax", conj_transpose(ax), ax);
            break;
        case InverseKind::Group:
            add("axa=a", ax * a, a);
            add("xax=x", xa * x, x);
            add("ax=xa", ax, xa);
            break;
        case InverseKind::Core:
            add("xa2=a", xa * a, a);
            add("ax2=x", ax * x, x);
            add("(ax)*=ax", conj_transpose(ax), ax);
            break;
        case InverseKind::Drazin: {
            const int k = matrix_index(a, tol);
            ComplexMatrix ak = ComplexMatrix::identity(a.rows());
            for (int i = 0; i < k; ++i) ak = ak * a;
            add("xa^{k+1}=a^k", x * ak * a, ak);
            add("xax=x", xa * x, x);
            add("ax=xa", ax, xa);
            break;
        }
    }
    rep.ok = rep.max_residual <= tol.zero_threshold();
    return rep;
}

}  // namespace coreinv
