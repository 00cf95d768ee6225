#pragma once

#include <string>

#include "coreinv/gen_inverse.hpp"
#include "coreinv/matrix.hpp"
#include "coreinv/verdict.hpp"

namespace coreinv {

namespace detail {

inline void add_commutation_hypotheses(TheoremVerdict& v, const ComplexMatrix& a,
                                       const ComplexMatrix& b, double thr) {
    const double scale = frobenius_norm(a) * frobenius_norm(b);
    add_hypothesis(v, "ab=ba", zero_residual(a * b - b * a, scale), thr);
    add_hypothesis(v, "a*b=ba*", zero_residual(conj_transpose(a) * b - b * conj_transpose(a), scale),
                   thr);
}

}  // namespace detail

/// Theorem: a EP, b and ba^pi core invertible, aba^pi = 0. Then
/// (1) a+b core invertible with a (a+b)^core a^pi = 0  iff
/// (2) a(1 + a^# b) core invertible with b^pi a^pi b = 0.
inline TheoremVerdict check_thm_2_4(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "thm2.4";
    const double thr = tol.zero_threshold();
    const double na = frobenius_norm(a);
    const double nb = frobenius_norm(b);

    const EpDecision epa = is_ep_decision(a, tol);
    detail::add_hypothesis(v, "a_ep", epa.ep, epa.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);

    const GroupDecision ga = group_decision(a, tol);
    if (!ga.invertible) {
        // a^pi is undefined; the dependent hypotheses cannot hold.
        detail::add_hypothesis(v, "ba_pi_core_invertible", false, ga.decisive);
        detail::add_hypothesis(v, "aba_pi_zero", false, ga.decisive);
        detail::finish_hypotheses(v);
        return v;
    }
    const ComplexMatrix eye = ComplexMatrix::identity(a.rows());
    const ComplexMatrix api = eye - a * *ga.inverse;
    const double napi = frobenius_norm(api);
    const CoreDecision cba = core_decision(b * api, tol);
    detail::add_hypothesis(v, "ba_pi_core_invertible", cba.invertible, cba.decisive);
    detail::add_hypothesis(v, "aba_pi_zero", zero_residual(a * b * api, na * nb * napi), thr);
    detail::finish_hypotheses(v);
    v.witnesses.emplace("a_pi", api);
    if (!v.hypotheses_met) return v;

    // Side (1)
    const CoreDecision sd = core_decision(a + b, tol);
    bool s1 = detail::side_core(v, "sum_core_invertible", sd);
    if (s1) {
        s1 = detail::side_zero(
            v, "a_sumcore_api_zero",
            zero_residual(a * *sd.inverse * api, na * frobenius_norm(*sd.inverse) * napi), thr);
        v.witnesses.emplace("sum_core_inverse", *sd.inverse);
    }
    v.side1 = s1;

    // Side (2)
    const ComplexMatrix m = a + a * *ga.inverse * b;  // a(1 + a^# b)
    const CoreDecision md = core_decision(m, tol);
    bool s2 = detail::side_core(v, "a_one_plus_core_invertible", md);
    const ComplexMatrix bpi = eye - b * group_inverse(b, tol);
    if (s2) {
        s2 = detail::side_zero(v, "bpi_api_b_zero",
                               zero_residual(bpi * api * b, frobenius_norm(bpi) * napi * nb), thr);
        v.witnesses.emplace("a_one_plus_core_inverse", *md.inverse);
    }
    v.side2 = s2;
    v.witnesses.emplace("b_pi", bpi);
    return v;
}

/// Corollary: a EP, b core invertible, ab = ba, a*b = ba*. Then a+b core
/// invertible iff a(1 + a^# b) core invertible.
inline TheoremVerdict check_cor_2_5(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "cor2.5";
    const double thr = tol.zero_threshold();

    const EpDecision epa = is_ep_decision(a, tol);
    detail::add_hypothesis(v, "a_ep", epa.ep, epa.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);
    detail::add_commutation_hypotheses(v, a, b, thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const ComplexMatrix ah = group_inverse(a, tol);
    v.side1 = detail::side_core(v, "sum_core_invertible", core_decision(a + b, tol));
    v.side2 = detail::side_core(v, "a_one_plus_core_invertible",
                                core_decision(a + a * ah * b, tol));
    return v;
}

/// Theorem: a, b EP, ab^pi and ba^pi core invertible, aba^pi = bab^pi = 0.
/// Then (1) a+b core invertible with the three annihilation conditions  iff
/// (2) aa^# b + bb^# a core invertible with a^pi b^pi a = b^pi a^pi b = 0.
inline TheoremVerdict check_thm_2_6(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "thm2.6";
    const double thr = tol.zero_threshold();
    const double na = frobenius_norm(a);
    const double nb = frobenius_norm(b);

    const EpDecision epa = is_ep_decision(a, tol);
    detail::add_hypothesis(v, "a_ep", epa.ep, epa.decisive);
    const EpDecision epb = is_ep_decision(b, tol);
    detail::add_hypothesis(v, "b_ep", epb.ep, epb.decisive);
    const GroupDecision ga = group_decision(a, tol);
    const GroupDecision gb = group_decision(b, tol);
    if (!ga.invertible || !gb.invertible) {
        detail::add_hypothesis(v, "ab_pi_core_invertible", false, ga.decisive && gb.decisive);
        detail::add_hypothesis(v, "ba_pi_core_invertible", false, ga.decisive && gb.decisive);
        detail::add_hypothesis(v, "aba_pi_zero", false, true);
        detail::add_hypothesis(v, "bab_pi_zero", false, true);
        detail::finish_hypotheses(v);
        return v;
    }
    const ComplexMatrix eye = ComplexMatrix::identity(a.rows());
    const ComplexMatrix api = eye - a * *ga.inverse;
    const ComplexMatrix bpi = eye - b * *gb.inverse;
    const double napi = frobenius_norm(api);
    const double nbpi = frobenius_norm(bpi);
    const CoreDecision cab = core_decision(a * bpi, tol);
    detail::add_hypothesis(v, "ab_pi_core_invertible", cab.invertible, cab.decisive);
    const CoreDecision cba = core_decision(b * api, tol);
    detail::add_hypothesis(v, "ba_pi_core_invertible", cba.invertible, cba.decisive);
    detail::add_hypothesis(v, "aba_pi_zero", zero_residual(a * b * api, na * nb * napi), thr);
    detail::add_hypothesis(v, "bab_pi_zero", zero_residual(b * a * bpi, na * nb * nbpi), thr);
    detail::finish_hypotheses(v);
    v.witnesses.emplace("a_pi", api);
    v.witnesses.emplace("b_pi", bpi);
    if (!v.hypotheses_met) return v;

    // Side (1)
    const CoreDecision sd = core_decision(a + b, tol);
    bool s1 = detail::side_core(v, "sum_core_invertible", sd);
    if (s1) {
        const ComplexMatrix& sc = *sd.inverse;
        const double nsc = frobenius_norm(sc);
        s1 = detail::side_zero(v, "a_sumcore_api_zero",
                               zero_residual(a * sc * api, na * nsc * napi), thr);
        s1 = detail::side_zero(v, "bapi_sumcore_bpi_zero",
                               zero_residual(b * api * sc * bpi, nb * napi * nsc * nbpi), thr) &&
             s1;
        s1 = detail::side_zero(v, "b_sumcore_bpi_zero",
                               zero_residual(b * sc * bpi, nb * nsc * nbpi), thr) &&
             s1;
        v.witnesses.emplace("sum_core_inverse", sc);
    }
    v.side1 = s1;

    // Side (2)
    const ComplexMatrix w = a * *ga.inverse * b + b * *gb.inverse * a;
    const CoreDecision wd = core_decision(w, tol);
    bool s2 = detail::side_core(v, "mixed_sum_core_invertible", wd);
    s2 = detail::side_zero(v, "api_bpi_a_zero", zero_residual(api * bpi * a, napi * nbpi * na),
                           thr) &&
         s2;
    s2 = detail::side_zero(v, "bpi_api_b_zero", zero_residual(bpi * api * b, nbpi * napi * nb),
                           thr) &&
         s2;
    v.side2 = s2;
    return v;
}

/// Corollary (one-directional): a, b EP, ab^pi and ba^pi core invertible,
/// aa^# b = bb^# a core invertible. Then a+b is core invertible.
inline TheoremVerdict check_cor_2_7(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "cor2.7";
    v.biconditional = false;
    const double thr = tol.zero_threshold();

    const EpDecision epa = is_ep_decision(a, tol);
    detail::add_hypothesis(v, "a_ep", epa.ep, epa.decisive);
    const EpDecision epb = is_ep_decision(b, tol);
    detail::add_hypothesis(v, "b_ep", epb.ep, epb.decisive);
    const GroupDecision ga = group_decision(a, tol);
    const GroupDecision gb = group_decision(b, tol);
    if (!ga.invertible || !gb.invertible) {
        detail::add_hypothesis(v, "ab_pi_core_invertible", false, ga.decisive && gb.decisive);
        detail::add_hypothesis(v, "ba_pi_core_invertible", false, ga.decisive && gb.decisive);
        detail::add_hypothesis(v, "aahb_equals_bbha", false, true);
        detail::add_hypothesis(v, "aahb_core_invertible", false, true);
        detail::finish_hypotheses(v);
        return v;
    }
    const ComplexMatrix eye = ComplexMatrix::identity(a.rows());
    const ComplexMatrix api = eye - a * *ga.inverse;
    const ComplexMatrix bpi = eye - b * *gb.inverse;
    const CoreDecision cab = core_decision(a * bpi, tol);
    detail::add_hypothesis(v, "ab_pi_core_invertible", cab.invertible, cab.decisive);
    const CoreDecision cba = core_decision(b * api, tol);
    detail::add_hypothesis(v, "ba_pi_core_invertible", cba.invertible, cba.decisive);
    const ComplexMatrix aahb = a * *ga.inverse * b;
    const ComplexMatrix bbha = b * *gb.inverse * a;
    detail::add_hypothesis(v, "aahb_equals_bbha",
                           zero_residual(aahb - bbha, frobenius_norm(aahb) + frobenius_norm(bbha)),
                           thr);
    const CoreDecision cm = core_decision(aahb, tol);
    detail::add_hypothesis(v, "aahb_core_invertible", cm.invertible, cm.decisive);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    v.side1 = detail::side_core(v, "sum_core_invertible", core_decision(a + b, tol));
    return v;
}

/// Lemma: core invertible a, b with ab = ba and a*b = ba* satisfy
/// a^core b = b a^core.
inline TheoremVerdict check_lemma_3_1(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "lem3.1";
    v.biconditional = false;
    const double thr = tol.zero_threshold();

    const CoreDecision ca = core_decision(a, tol);
    detail::add_hypothesis(v, "a_core_invertible", ca.invertible, ca.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);
    detail::add_commutation_hypotheses(v, a, b, thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const ComplexMatrix& ac = *ca.inverse;
    v.side1 = detail::side_zero(v, "acore_commutes_with_b",
                                zero_residual(ac * b - b * ac, frobenius_norm(ac) * frobenius_norm(b)),
                                thr);
    v.witnesses.emplace("a_core_inverse", ac);
    return v;
}

/// Lemma (one-directional): core invertible a, b with ab = 0 and a*b = 0
/// have a core invertible sum.
inline TheoremVerdict check_lemma_3_2(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "lem3.2";
    v.biconditional = false;
    const double thr = tol.zero_threshold();
    const double scale = frobenius_norm(a) * frobenius_norm(b);

    const CoreDecision ca = core_decision(a, tol);
    detail::add_hypothesis(v, "a_core_invertible", ca.invertible, ca.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);
    detail::add_hypothesis(v, "ab_zero", zero_residual(a * b, scale), thr);
    detail::add_hypothesis(v, "astar_b_zero", zero_residual(conj_transpose(a) * b, scale), thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const CoreDecision sd = core_decision(a + b, tol);
    v.side1 = detail::side_core(v, "sum_core_invertible", sd);
    if (sd.invertible) v.witnesses.emplace("sum_core_inverse", *sd.inverse);
    return v;
}

/// Lemma: under double commutation, (ab)^core = a^core b^core.
inline TheoremVerdict check_lemma_3_3(const ComplexMatrix& a, const ComplexMatrix& b,
                                      const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "lem3.3";
    v.biconditional = false;
    const double thr = tol.zero_threshold();

    const CoreDecision ca = core_decision(a, tol);
    detail::add_hypothesis(v, "a_core_invertible", ca.invertible, ca.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);
    detail::add_commutation_hypotheses(v, a, b, thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const CoreDecision cab = core_decision(a * b, tol);
    bool ok = detail::side_core(v, "product_core_invertible", cab);
    if (ok) {
        const ComplexMatrix expected = *ca.inverse * *cb.inverse;
        // Anchored to the factor scale so that near-zero products compare cleanly.
        const double scale = frobenius_norm(*ca.inverse) * frobenius_norm(*cb.inverse);
        ok = detail::side_zero(v, "product_formula",
                               zero_residual(*cab.inverse - expected, scale), thr);
        v.witnesses.emplace("product_core_inverse", *cab.inverse);
    }
    v.side1 = ok;
    return v;
}

/// Theorem: core invertible a, b with ab = ba, a*b = ba*. Then
/// (1) a+b core invertible and a^pi (a+b)^core a = 0  iff
/// (2) 1 + a^core b core invertible and (1 + a^core b)^pi a (1 - a a^core) = 0.
/// a^pi is the spectral idempotent 1 - a a^#; the explicit (1 - a a^core)
/// factor uses the core inverse, exactly as written.
inline TheoremVerdict check_thm_3_4(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "thm3.4";
    const double thr = tol.zero_threshold();
    const double na = frobenius_norm(a);

    const CoreDecision ca = core_decision(a, tol);
    detail::add_hypothesis(v, "a_core_invertible", ca.invertible, ca.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);
    detail::add_commutation_hypotheses(v, a, b, thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const ComplexMatrix eye = ComplexMatrix::identity(a.rows());
    const ComplexMatrix api = eye - a * group_inverse(a, tol);
    const double napi = frobenius_norm(api);
    v.witnesses.emplace("a_pi", api);

    // Side (1)
    const CoreDecision sd = core_decision(a + b, tol);
    bool s1 = detail::side_core(v, "sum_core_invertible", sd);
    if (s1) {
        s1 = detail::side_zero(
            v, "api_sumcore_a_zero",
            zero_residual(api * *sd.inverse * a, napi * frobenius_norm(*sd.inverse) * na), thr);
        v.witnesses.emplace("sum_core_inverse", *sd.inverse);
    }
    v.side1 = s1;

    // Side (2)
    const ComplexMatrix m = eye + *ca.inverse * b;
    const CoreDecision md = core_decision(m, tol);
    bool s2 = detail::side_core(v, "one_plus_core_invertible", md);
    if (s2) {
        const ComplexMatrix mpi = eye - m * group_inverse(m, tol);
        const ComplexMatrix tail = a * (eye - a * *ca.inverse);
        s2 = detail::side_zero(v, "mpi_a_tail_zero",
                               zero_residual(mpi * tail, frobenius_norm(mpi) * frobenius_norm(tail)),
                               thr);
        v.witnesses.emplace("one_plus_pi", mpi);
        v.witnesses.emplace("one_plus_core_inverse", *md.inverse);
    }
    v.side2 = s2;
    return v;
}

/// Corollary: a EP, b core invertible, double commutation. Then a+b core
/// invertible iff 1 + a^# b core invertible.
inline TheoremVerdict check_cor_3_5(const ComplexMatrix& a, const ComplexMatrix& b,
                                    const Tolerance& tol) {
    TheoremVerdict v;
    v.theorem_id = "cor3.5";
    const double thr = tol.zero_threshold();

    const EpDecision epa = is_ep_decision(a, tol);
    detail::add_hypothesis(v, "a_ep", epa.ep, epa.decisive);
    const CoreDecision cb = core_decision(b, tol);
    detail::add_hypothesis(v, "b_core_invertible", cb.invertible, cb.decisive);
    detail::add_commutation_hypotheses(v, a, b, thr);
    detail::finish_hypotheses(v);
    if (!v.hypotheses_met) return v;

    const ComplexMatrix eye = ComplexMatrix::identity(a.rows());
    v.side1 = detail::side_core(v, "sum_core_invertible", core_decision(a + b, tol));
    v.side2 = detail::side_core(v, "one_plus_core_invertible",
                                core_decision(eye + group_inverse(a, tol) * b, tol));
    return v;
}

}  // namespace coreinv
