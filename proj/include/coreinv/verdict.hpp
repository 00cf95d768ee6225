#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "coreinv/gen_inverse.hpp"
#include "coreinv/matrix.hpp"

namespace coreinv {

struct NamedResidual {
    std::string name;
    bool ok = false;
    double residual = 0.0;
};

enum class Outcome { Pass, Fail, HypothesesNotMet, Ambiguous };

/// Structured outcome of one theorem check.
///
/// A check never throws: hypothesis failures land in `hypotheses` and suppress
/// any claim about the sides. `ambiguous` marks instances whose tolerance-based
/// decisions were borderline (residual within a factor 10 of the threshold, or
/// an indecisive rank test); those are excluded from biconditional statistics.
struct TheoremVerdict {
    std::string theorem_id;
    std::vector<NamedResidual> hypotheses;
    std::vector<NamedResidual> conditions;  // recorded, non-gating observations
    bool hypotheses_met = false;
    bool ambiguous = false;
    bool biconditional = true;  // false: one-directional, side2 carries no claim
    bool side1 = false;
    bool side2 = false;
    double max_residual = 0.0;
    std::map<std::string, ComplexMatrix> witnesses;

    bool biconditional_ok() const {
        return hypotheses_met && (!biconditional || side1 == side2);
    }

    Outcome outcome() const {
        if (!hypotheses_met) return Outcome::HypothesesNotMet;
        if (ambiguous) return Outcome::Ambiguous;
        const bool ok = biconditional ? side1 == side2 : side1;
        return ok ? Outcome::Pass : Outcome::Fail;
    }

    bool pass() const { return outcome() == Outcome::Pass; }
};

namespace detail {

/// Books a residual-based hypothesis; flags the ambiguity band around thr.
inline void add_hypothesis(TheoremVerdict& v, const std::string& name, double residual,
                           double thr) {
    v.hypotheses.push_back({name, residual <= thr, residual});
    if (residual > thr / 10.0 && residual < thr * 10.0) v.ambiguous = true;
    v.max_residual = std::max(v.max_residual, residual);
}

/// Books a boolean hypothesis (rank-test style); residual is 0 or 1.
inline void add_hypothesis(TheoremVerdict& v, const std::string& name, bool ok, bool decisive) {
    v.hypotheses.push_back({name, ok, ok ? 0.0 : 1.0});
    if (!decisive) v.ambiguous = true;
}

inline void add_condition(TheoremVerdict& v, const std::string& name, double residual,
                          double thr) {
    v.conditions.push_back({name, residual <= thr, residual});
    if (residual > thr / 10.0 && residual < thr * 10.0) v.ambiguous = true;
    v.max_residual = std::max(v.max_residual, residual);
}

inline void add_condition(TheoremVerdict& v, const std::string& name, bool ok, bool decisive) {
    v.conditions.push_back({name, ok, ok ? 0.0 : 1.0});
    if (!decisive) v.ambiguous = true;
}

inline void finish_hypotheses(TheoremVerdict& v) {
    v.hypotheses_met = std::all_of(v.hypotheses.begin(), v.hypotheses.end(),
                                   [](const NamedResidual& h) { return h.ok; });
}

/// A tolerance-based side condition; returns its truth and tracks ambiguity.
inline bool side_zero(TheoremVerdict& v, const std::string& name, double residual, double thr) {
    v.conditions.push_back({name, residual <= thr, residual});
    if (residual > thr / 10.0 && residual < thr * 10.0) v.ambiguous = true;
    v.max_residual = std::max(v.max_residual, residual);
    return residual <= thr;
}

/// Records a "x is core invertible" side decision and its decisiveness.
inline bool side_core(TheoremVerdict& v, const std::string& name, const CoreDecision& d) {
    v.conditions.push_back({name, d.invertible, d.invertible ? 0.0 : 1.0});
    if (!d.decisive) v.ambiguous = true;
    return d.invertible;
}

}  // namespace detail

}  // namespace coreinv
