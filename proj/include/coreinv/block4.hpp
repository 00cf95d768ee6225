#pragma once

#include <string>

#include "coreinv/gen_inverse.hpp"
#include "coreinv/matrix.hpp"
#include "coreinv/verdict.hpp"

namespace coreinv {

/// Four n x n blocks of M = [[A, B], [C, D]] in C^{2n x 2n}.
struct BlockMatrix2x2 {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix c;
    ComplexMatrix d;
};

inline ComplexMatrix assemble_block2x2(const BlockMatrix2x2& m) {
    const int n = m.a.rows();
    if (!m.a.is_square() || !m.b.same_shape(m.a) || !m.c.same_shape(m.a) || !m.d.same_shape(m.a))
        throw DimensionError("block matrix requires four square n x n blocks");
    ComplexMatrix r(2 * n, 2 * n);
    place(r, 0, 0, m.a);
    place(r, 0, n, m.b);
    place(r, n, 0, m.c);
    place(r, n, n, m.d);
    return r;
}

inline BlockMatrix2x2 split_block2x2(const ComplexMatrix& m, int n) {
    if (m.rows() != 2 * n || m.cols() != 2 * n)
        throw DimensionError("split requires a 2n x 2n matrix");
    return {submatrix(m, 0, 0, n, n), submatrix(m, 0, n, n, n), submatrix(m, n, 0, n, n),
            submatrix(m, n, n, n, n)};
}

/// Residual of the nilpotency test ||X^m||_F <= atol + rtol * ||X||_F^m with
/// m the first power of two at or above n, rescaled so that "residual <=
/// atol + rtol" is exactly the stated rule. The power is evaluated on
/// X / ||X||_F, which keeps the repeated squaring away from overflow, and the
/// absolute term keeps noise-level matrices (||X|| near machine zero, e.g. a
/// witness that is mathematically zero) classified as nilpotent.
inline double nilpotency_residual(const ComplexMatrix& x, const Tolerance& tol) {
    if (!x.is_square()) throw DimensionError("nilpotency test requires a square matrix");
    const int n = x.rows();
    if (n == 0) return 0.0;
    const double nx = frobenius_norm(x);
    if (nx == 0.0) return 0.0;
    ComplexMatrix y = (cplx(1.0 / nx, 0.0)) * x;
    int exponent = 1;
    while (exponent < n) {
        y = y * y;
        exponent *= 2;
    }
    const double scaled_power = frobenius_norm(y);  // = ||X^m|| / ||X||^m
    const double norm_power = std::pow(nx, static_cast<double>(exponent));
    const double threshold = tol.rtol + tol.atol / norm_power;  // inf on underflow
    if (std::isinf(threshold)) return 0.0;
    return scaled_power * tol.zero_threshold() / threshold;
}

inline bool is_nilpotent(const ComplexMatrix& x, const Tolerance& tol) {
    return nilpotency_residual(x, tol) <= tol.zero_threshold();
}

namespace detail {

/// Hypothesis data for the anti-diagonal construction. The spectral
/// idempotents of CB and BC are computed through the Drazin inverse, which
/// exists unconditionally; the hypotheses then force the index down to 1.
struct AntidiagParts {
    CoreDecision b_core;
    CoreDecision c_core;
    ComplexMatrix cb_drazin;
    ComplexMatrix bc_drazin;
    double b_condition_residual = 0.0;  // ||B (CB)^pi||, normalized
    double c_condition_residual = 0.0;  // ||C (BC)^pi||, normalized
};

inline AntidiagParts antidiag_parts(const ComplexMatrix& b, const ComplexMatrix& c,
                                    const Tolerance& tol) {
    if (!b.is_square() || !c.same_shape(b))
        throw DimensionError("anti-diagonal construction requires square B, C of equal size");
    AntidiagParts parts;
    parts.b_core = core_decision(b, tol);
    parts.c_core = core_decision(c, tol);
    const ComplexMatrix cb = c * b;
    const ComplexMatrix bc = b * c;
    const ComplexMatrix eye = ComplexMatrix::identity(b.rows());
    parts.cb_drazin = drazin_inverse(cb, tol).inverse;
    parts.bc_drazin = drazin_inverse(bc, tol).inverse;
    const ComplexMatrix cb_pi = eye - cb * parts.cb_drazin;
    const ComplexMatrix bc_pi = eye - bc * parts.bc_drazin;
    const double nb = frobenius_norm(b);
    const double nc = frobenius_norm(c);
    parts.b_condition_residual = zero_residual(b * cb_pi, nb * frobenius_norm(cb_pi));
    parts.c_condition_residual = zero_residual(c * bc_pi, nc * frobenius_norm(bc_pi));
    return parts;
}

}  // namespace detail

/// Core inverse of Q = [[0, B], [C, 0]] under B(CB)^pi = 0, C(BC)^pi = 0:
///
///   Q^core = [[0, (BC)^# BC C^core], [(CB)^# CB B^core, 0]].
///
/// Under the hypotheses the Drazin inverses of CB and BC are group inverses.
inline ComplexMatrix antidiag_core_inverse(const ComplexMatrix& b, const ComplexMatrix& c,
                                           const Tolerance& tol) {
    const auto parts = detail::antidiag_parts(b, c, tol);
    if (!parts.b_core.invertible) throw NotCoreInvertibleError("B is not core invertible");
    if (!parts.c_core.invertible) throw NotCoreInvertibleError("C is not core invertible");
    const double thr = tol.zero_threshold();
    if (parts.b_condition_residual > thr) throw HypothesisNotMetError("B (CB)^pi != 0");
    if (parts.c_condition_residual > thr) throw HypothesisNotMetError("C (BC)^pi != 0");
    const ComplexMatrix cb = c * b;
    const ComplexMatrix bc = b * c;
    const ComplexMatrix upper = parts.bc_drazin * bc * *parts.c_core.inverse;
    const ComplexMatrix lower = parts.cb_drazin * cb * *parts.b_core.inverse;
    const int n = b.rows();
    ComplexMatrix q(2 * n, 2 * n);
    place(q, 0, n, upper);
    place(q, n, 0, lower);
    return q;
}

/// Verifies the anti-diagonal lemma on a (B, C) pair: hypotheses, core
/// invertibility of Q, agreement of both published block forms of Q^core with
/// the direct core inverse, and the proof identity for Q^#.
inline TheoremVerdict check_lemma_4_1(const ComplexMatrix& b, const ComplexMatrix& c,
                                      const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "lem4.1";
    v.biconditional = false;
    const double thr = tol.zero_threshold();

    const auto parts = detail::antidiag_parts(b, c, tol);
    detail::add_hypothesis(v, "b_core_invertible", parts.b_core.invertible,
                           parts.b_core.decisive);
    detail::add_hypothesis(v, "c_core_invertible", parts.c_core.invertible,
                           parts.c_core.decisive);
    detail::add_hypothesis(v, "b_cb_pi_zero", parts.b_condition_residual, thr);
    detail::add_hypothesis(v, "c_bc_pi_zero", parts.c_condition_residual, thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const int n = b.rows();
    const ComplexMatrix q = [&] {
        ComplexMatrix m(2 * n, 2 * n);
        place(m, 0, n, b);
        place(m, n, 0, c);
        return m;
    }();
    const CoreDecision qd = core_decision(q, tol);
    bool ok = detail::side_core(v, "q_core_invertible", qd);
    if (ok) {
        const ComplexMatrix cb = c * b;
        const ComplexMatrix bc = b * c;
        // Stated form: off-diagonal blocks (BC)^# BC C^core and (CB)^# CB B^core.
        const ComplexMatrix form1 = antidiag_core_inverse(b, c, tol);
        // Pre-simplification form from the proof: B (CB)^# C C^core / C (BC)^# B B^core.
        ComplexMatrix form2(2 * n, 2 * n);
        place(form2, 0, n, b * parts.cb_drazin * c * *parts.c_core.inverse);
        place(form2, n, 0, c * parts.bc_drazin * b * *parts.b_core.inverse);
        const double qscale = 1.0 + frobenius_norm(*qd.inverse);
        ok = detail::side_zero(v, "stated_form_agrees",
                               zero_residual(form1 - *qd.inverse, qscale), thr) &&
             ok;
        ok = detail::side_zero(v, "proof_form_agrees",
                               zero_residual(form2 - *qd.inverse, qscale), thr) &&
             ok;
        // Proof identity Q^# = [[0, B (CB)^#], [C (BC)^#, 0]].
        const GroupDecision qg = group_decision(q, tol);
        if (qg.invertible) {
            ComplexMatrix qsharp(2 * n, 2 * n);
            place(qsharp, 0, n, b * parts.cb_drazin);
            place(qsharp, n, 0, c * parts.bc_drazin);
            ok = detail::side_zero(v, "group_identity_agrees",
                                   zero_residual(qsharp - *qg.inverse,
                                                 1.0 + frobenius_norm(*qg.inverse)),
                                   thr) &&
                 ok;
        } else {
            detail::add_condition(v, "q_group_invertible", false, qg.decisive);
            ok = false;
        }
        v.witnesses.emplace("q_core_inverse", *qd.inverse);
    }
    v.side1 = ok;
    return v;
}

namespace detail {

/// Shared body of the two block theorems; `starred_pair` selects between
/// {A*B = BD*, D*C = CA*} and {B*A = DB*}.
inline TheoremVerdict check_block_theorem(const BlockMatrix2x2& m, bool starred_pair,
                                          const std::string& id, const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = id;
    v.biconditional = false;
    const double thr = tol.zero_threshold();

    const CoreDecision ad = core_decision(m.a, tol);
    const CoreDecision bd = core_decision(m.b, tol);
    const CoreDecision cd = core_decision(m.c, tol);
    const CoreDecision dd = core_decision(m.d, tol);
    detail::add_hypothesis(v, "a_core_invertible", ad.invertible, ad.decisive);
    detail::add_hypothesis(v, "b_core_invertible", bd.invertible, bd.decisive);
    detail::add_hypothesis(v, "c_core_invertible", cd.invertible, cd.decisive);
    detail::add_hypothesis(v, "d_core_invertible", dd.invertible, dd.decisive);

    const double na = frobenius_norm(m.a), nb = frobenius_norm(m.b);
    const double nc = frobenius_norm(m.c), nd = frobenius_norm(m.d);
    detail::add_hypothesis(v, "ab=bd", zero_residual(m.a * m.b - m.b * m.d, na * nb + nb * nd),
                           thr);
    detail::add_hypothesis(v, "dc=ca", zero_residual(m.d * m.c - m.c * m.a, nd * nc + nc * na),
                           thr);
    if (starred_pair) {
        detail::add_hypothesis(
            v, "a*b=bd*",
            zero_residual(conj_transpose(m.a) * m.b - m.b * conj_transpose(m.d),
                          na * nb + nb * nd),
            thr);
        detail::add_hypothesis(
            v, "d*c=ca*",
            zero_residual(conj_transpose(m.d) * m.c - m.c * conj_transpose(m.a),
                          nd * nc + nc * na),
            thr);
    } else {
        detail::add_hypothesis(
            v, "b*a=db*",
            zero_residual(conj_transpose(m.b) * m.a - m.d * conj_transpose(m.b),
                          nb * na + nd * nb),
            thr);
    }

    const auto parts = detail::antidiag_parts(m.b, m.c, tol);
    detail::add_hypothesis(v, "b_cb_pi_zero", parts.b_condition_residual, thr);
    detail::add_hypothesis(v, "c_bc_pi_zero", parts.c_condition_residual, thr);

    if (ad.invertible && bd.invertible && cd.invertible && dd.invertible) {
        const ComplexMatrix witness = *ad.inverse * m.b * *dd.inverse * m.c;
        detail::add_hypothesis(v, "nilpotency_witness", nilpotency_residual(witness, tol),
                               thr);
        v.witnesses.emplace("nilpotency_witness", witness);
    } else {
        detail::add_hypothesis(v, "nilpotency_witness", false, true);
    }
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const int n = m.a.rows();
    const ComplexMatrix big = assemble_block2x2(m);
    const CoreDecision md = core_decision(big, tol);
    v.side1 = detail::side_core(v, "m_core_invertible", md);
    if (md.invertible) v.witnesses.emplace("m_core_inverse", *md.inverse);

    // Recorded proof-level observations on the splitting M = P + Q.
    ComplexMatrix p(2 * n, 2 * n), q(2 * n, 2 * n);
    place(p, 0, 0, m.a);
    place(p, n, n, m.d);
    place(q, 0, n, m.b);
    place(q, n, 0, m.c);
    const double npq = frobenius_norm(p) * frobenius_norm(q);
    detail::add_condition(v, "pq_commute", zero_residual(p * q - q * p, npq), thr);
    if (starred_pair) {
        detail::add_condition(
            v, "pstar_q_commute",
            zero_residual(conj_transpose(p) * q - q * conj_transpose(p), npq), thr);
        ComplexMatrix pcore(2 * n, 2 * n);
        place(pcore, 0, 0, *ad.inverse);
        place(pcore, n, n, *dd.inverse);
        const RankDecision rd =
            rank_decision(ComplexMatrix::identity(2 * n) + pcore * q, tol);
        detail::add_condition(v, "one_plus_pcore_q_invertible", rd.value == 2 * n, rd.decisive);
    } else {
        detail::add_condition(
            v, "qstar_p_commute",
            zero_residual(conj_transpose(q) * p - p * conj_transpose(q), npq), thr);
        const ComplexMatrix qcore = antidiag_core_inverse(m.b, m.c, tol);
        const RankDecision rd =
            rank_decision(ComplexMatrix::identity(2 * n) + qcore * p, tol);
        detail::add_condition(v, "one_plus_qcore_p_invertible", rd.value == 2 * n, rd.decisive);
    }
    return v;
}

}  // namespace detail

/// Block theorem with commutation set {AB=BD, DC=CA, A*B=BD*, D*C=CA*}.
inline TheoremVerdict check_thm_4_2(const BlockMatrix2x2& m, const Tolerance& tol) {
    return detail::check_block_theorem(m, true, "thm4.2", tol);
}

/// Block theorem with commutation set {AB=BD, DC=CA, B*A=DB*}.
inline TheoremVerdict check_thm_4_4(const BlockMatrix2x2& m, const Tolerance& tol) {
    return detail::check_block_theorem(m, false, "thm4.4", tol);
}

/// Swap variant: evaluates the theorem hypotheses on [[D, C], [B, A]] and the
/// conclusion on M itself; the anti-diagonal permutation is a unitary
/// *-congruence, so core invertibility transfers.
inline TheoremVerdict permuted_variant(const BlockMatrix2x2& m, const Tolerance& tol) {
    const BlockMatrix2x2 swapped{m.d, m.c, m.b, m.a};
    TheoremVerdict v = detail::check_block_theorem(swapped, true, "cor4.3", tol);
    if (!v.hypotheses_met) return v;
    const CoreDecision md = core_decision(assemble_block2x2(m), tol);
    v.side1 = detail::side_core(v, "original_m_core_invertible", md) && v.side1;
    return v;
}

}  // namespace coreinv
