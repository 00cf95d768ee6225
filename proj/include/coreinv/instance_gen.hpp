#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coreinv/block4.hpp"
#include "coreinv/decomposition.hpp"
#include "coreinv/pierce.hpp"
#include "coreinv/theorems.hpp"
#include "coreinv/gen_inverse.hpp"
#include "coreinv/matrix.hpp"

namespace coreinv {

/// Controls deterministic instance generation. Identical configs produce
/// bit-identical instance streams; per-instance seeds are derived from
/// (seed, family, index) with no global generator state. The rank range is
/// clipped to the drawn dimension.
struct GenConfig {
    std::uint64_t seed = 0;
    int dim_lo = 1;
    int dim_hi = 8;
    int rank_lo = 0;
    int rank_hi = 1 << 20;
    int count = 100;
};

namespace rng {

/// Stateless 64-bit scrambler (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Derivation of per-instance seeds: mixes master seed, family tag, index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t family,
                                 std::uint64_t index) {
    std::uint64_t x = mix64(master + 0x9E3779B97F4A7C15ull);
    x = mix64(x ^ (family + 0xD1B54A32D192ED03ull));
    x = mix64(x ^ (index + 0x8CB92BA72F3D8DD7ull));
    return x;
}

}  // namespace rng

/// Deterministic splitmix64 stream with Box-Muller gaussians. Avoids the
/// standard-library distributions so streams are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return rng::mix64(state_);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        if (hi < lo) throw Error("empty integer range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    cplx cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cplx(re, im);
    }

private:
    std::uint64_t state_;
};

namespace detail {

inline ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
    return m;
}

// Condition cap for invertible cores. Tighter than strictly necessary so that
// downstream residuals stay far from the verdict thresholds.
constexpr double kConditionCap = 100.0;
constexpr int kRedrawBudget = 256;

inline ComplexMatrix random_invertible(int n, Rng& rng, double cap = kConditionCap) {
    if (n == 0) return ComplexMatrix(0, 0);
    for (int attempt = 0; attempt < kRedrawBudget; ++attempt) {
        ComplexMatrix m = random_gaussian(n, n, rng);
        if (condition_number(m) <= cap) return m;
    }
    throw GenerationExhaustedError("no invertible draw within the condition cap");
}

inline ComplexMatrix random_unitary(int n, Rng& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    const Eigen::MatrixXcd g = to_eigen(random_gaussian(n, n, rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return from_eigen(q);
}

/// Invertible block with exactly controlled spectrum: U diag(sigma) V* with
/// log-uniform singular values in [lo, hi]. Keeps downstream products and
/// powers decisively away from the rank cutoffs.
inline ComplexMatrix random_well_conditioned(int k, Rng& rng, double lo = 1.0,
                                             double hi = 3.0) {
    if (k == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix u = random_unitary(k, rng);
    const ComplexMatrix v = random_unitary(k, rng);
    ComplexMatrix d(k, k);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (int i = 0; i < k; ++i)
        d(i, i) = std::exp(log_lo + (log_hi - log_lo) * rng.uniform());
    return u * d * conj_transpose(v);
}

/// Group invertible k x k block with a single, mildly conditioned similarity
/// frame and a well-conditioned invertible core.
inline ComplexMatrix structured_group_invertible(int k, int r, Rng& rng) {
    if (k == 0) return ComplexMatrix(0, 0);
    if (r == 0) return ComplexMatrix::zeros(k, k);
    const ComplexMatrix w = random_invertible(k, rng, 10.0);
    const ComplexMatrix core = random_well_conditioned(r, rng);
    ComplexMatrix t(k, k);
    place(t, 0, 0, core);
    const Tolerance tol;
    return w * t * inverse(w, tol);
}

/// U * blkdiag(blocks...) * V for given frames; blocks are placed on the
/// diagonal in order with the stated sizes.
inline ComplexMatrix framed_blockdiag(const ComplexMatrix& u,
                                      const std::vector<ComplexMatrix>& blocks,
                                      const ComplexMatrix& v) {
    const int n = u.rows();
    ComplexMatrix d(n, n);
    int off = 0;
    for (const ComplexMatrix& b : blocks) {
        place(d, off, off, b);
        off += b.rows();
    }
    return u * d * v;
}

/// Random block-lower-triangular core of a group invertible matrix in a given
/// frame: [[K, 0], [R, L]] where K is k x k group invertible, L is group
/// invertible and the coupling R = L L^# R0 keeps the whole matrix group
/// invertible.
struct TriangularCore {
    ComplexMatrix k;
    ComplexMatrix r;
    ComplexMatrix l;
};

inline ComplexMatrix assemble_triangular(int n, const TriangularCore& t) {
    ComplexMatrix m(n, n);
    const int k = t.k.rows();
    place(m, 0, 0, t.k);
    place(m, k, 0, t.r);
    place(m, k, k, t.l);
    return m;
}

}  // namespace detail

/// A = S blkdiag(K, 0) S^-1 with K invertible r x r: rank(A) = rank(A^2) = r.
inline ComplexMatrix gen_core_invertible(int n, int r, std::uint64_t seed) {
    if (r < 0 || r > n) throw Error("rank out of range");
    Rng rng(seed);
    if (r == 0) return ComplexMatrix::zeros(n, n);
    const ComplexMatrix s = detail::random_invertible(n, rng);
    const ComplexMatrix k = detail::random_invertible(r, rng);
    const Tolerance tol;
    return detail::framed_blockdiag(s, {k, ComplexMatrix::zeros(n - r, n - r)}, inverse(s, tol));
}

/// A = U blkdiag(K, 0) U* with U unitary: EP of rank r by construction.
inline ComplexMatrix gen_ep(int n, int r, std::uint64_t seed) {
    if (r < 0 || r > n) throw Error("rank out of range");
    Rng rng(seed);
    if (r == 0) return ComplexMatrix::zeros(n, n);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    const ComplexMatrix k = detail::random_invertible(r, rng);
    return detail::framed_blockdiag(u, {k, ComplexMatrix::zeros(n - r, n - r)},
                                    conj_transpose(u));
}

/// Commuting pair a = U D1 U*, b = U D2 U* with diagonal D1, D2 whose entries
/// are zero with probability 1/4, otherwise complex gaussians bounded away
/// from zero. Guarantees ab = ba, a*b = ba*, both core invertible. This family
/// is normal by construction (see the generator notes in the README).
inline std::pair<ComplexMatrix, ComplexMatrix> gen_double_commuting_pair(int n,
                                                                         std::uint64_t seed) {
    Rng rng(seed);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    auto draw_diag = [&] {
        ComplexMatrix d(n, n);
        for (int i = 0; i < n; ++i) {
            if (rng.bernoulli(0.25)) continue;
            cplx z = rng.cgaussian();
            while (std::abs(z) < 0.05) z = rng.cgaussian();
            d(i, i) = z;
        }
        return d;
    };
    const ComplexMatrix ustar = conj_transpose(u);
    return {u * draw_diag() * ustar, u * draw_diag() * ustar};
}

/// Instance for the EP-plus-core-invertible sum theorem: a EP of rank r, b
/// block-lower-triangular in the same unitary frame. The structure forces
/// a b a^pi = 0 and makes b a^pi core invertible; b itself is redrawn until
/// the group-invertibility rank test passes.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_thm_2_4_instance(int n, std::uint64_t seed) {
    Rng rng(seed);
    const Tolerance tol;
    const int r = rng.uniform_int(0, n);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    const ComplexMatrix ustar = conj_transpose(u);
    const ComplexMatrix k = r > 0 ? detail::random_invertible(r, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix a =
        detail::framed_blockdiag(u, {k, ComplexMatrix::zeros(n - r, n - r)}, ustar);

    for (int attempt = 0; attempt < detail::kRedrawBudget; ++attempt) {
        // b1: invertible, strictly singular group invertible, or the
        // degenerate draw b1 = N - K that makes K + b1 nilpotent.
        ComplexMatrix b1(r, r);
        const double flavor = rng.uniform();
        if (r > 0 && flavor < 0.55) {
            b1 = detail::random_well_conditioned(r, rng);
        } else if (r > 0 && flavor < 0.8) {
            b1 = detail::structured_group_invertible(r, rng.uniform_int(0, r), rng);
        } else if (r >= 2) {
            ComplexMatrix nilp(r, r);
            for (int i = 0; i + 1 < r; ++i)
                if (rng.bernoulli(0.7)) nilp(i, i + 1) = rng.cgaussian();
            b1 = nilp - k;
        }
        const ComplexMatrix b4 =
            detail::structured_group_invertible(n - r, rng.uniform_int(0, n - r), rng);
        ComplexMatrix b3 = detail::random_gaussian(n - r, r, rng);
        if (n - r > 0 && r > 0) {
            const GroupDecision g4 = group_decision(b4, tol);
            b3 = b4 * *g4.inverse * b3;  // forces b4^pi b3 = 0
        }
        const ComplexMatrix b =
            u * detail::assemble_triangular(n, {b1, b3, b4}) * ustar;
        if (group_decision(b, tol).invertible) return {a, b};
    }
    throw GenerationExhaustedError("no group invertible b within budget");
}

/// Orthogonal pair a = W blkdiag(K, 0) W*, b = W blkdiag(0, L) W* with W
/// unitary and K, L invertible: ab = 0 and a*b = 0 by construction.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_orthogonal_pair(int n, std::uint64_t seed) {
    Rng rng(seed);
    const int r = rng.uniform_int(0, n);
    const ComplexMatrix w = detail::random_unitary(n, rng);
    const ComplexMatrix wstar = conj_transpose(w);
    const ComplexMatrix k = r > 0 ? detail::random_invertible(r, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix l =
        n - r > 0 ? detail::random_invertible(n - r, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix a =
        detail::framed_blockdiag(w, {k, ComplexMatrix::zeros(n - r, n - r)}, wstar);
    const ComplexMatrix b =
        detail::framed_blockdiag(w, {ComplexMatrix::zeros(r, r), l}, wstar);
    return {a, b};
}

namespace detail {

/// Four-way index partition used by the aligned-support EP families.
struct Partition4 {
    int k1 = 0, k2 = 0, k3 = 0, k4 = 0;
};

inline Partition4 random_partition4(int n, Rng& rng) {
    Partition4 p;
    for (int i = 0; i < n; ++i) {
        switch (rng.uniform_int(0, 3)) {
            case 0: ++p.k1; break;
            case 1: ++p.k2; break;
            case 2: ++p.k3; break;
            default: ++p.k4; break;
        }
    }
    return p;
}

/// Draws the shared block for the EP-sum families: either a generic
/// invertible block or an invertible block whose sum with `other` is
/// deliberately degenerate (nilpotent or singular-but-group-invertible), to
/// exercise the false/false branch of the biconditionals.
inline ComplexMatrix draw_summand_block(const ComplexMatrix& other, Rng& rng,
                                        const Tolerance& tol) {
    const int k = other.rows();
    if (k == 0) return ComplexMatrix(0, 0);
    const double flavor = rng.uniform();
    for (int attempt = 0; attempt < kRedrawBudget; ++attempt) {
        ComplexMatrix candidate;
        if (flavor < 0.55) {
            candidate = random_invertible(k, rng);
        } else if (flavor < 0.8 && k >= 2) {
            ComplexMatrix nilp(k, k);
            for (int i = 0; i + 1 < k; ++i)
                if (rng.bernoulli(0.7)) nilp(i, i + 1) = rng.cgaussian();
            candidate = nilp - other;
        } else {
            const int rr = rng.uniform_int(0, k);
            const ComplexMatrix s = random_invertible(k, rng);
            const ComplexMatrix kk = rr > 0 ? random_invertible(rr, rng) : ComplexMatrix(0, 0);
            candidate = framed_blockdiag(s, {kk, ComplexMatrix::zeros(k - rr, k - rr)},
                                         inverse(s, tol)) -
                        other;
        }
        if (k == 0 || condition_number(candidate) < 1e8) {
            const SvdResult sv = svd(candidate);
            if (!sv.sigma.empty() && sv.sigma.back() > 1e-6 * (1.0 + sv.sigma.front()))
                return candidate;
        }
    }
    return random_invertible(k, rng);
}

}  // namespace detail

/// EP pair for the two-sided sum theorem: in a common unitary frame,
/// a = blkdiag(A1, A2, 0, 0) and b = blkdiag(B1, 0, B3, 0). The aligned
/// supports force aba^pi = bab^pi = 0 and keep ab^pi, ba^pi core invertible;
/// B1 is sometimes drawn so that A1 + B1 is nilpotent, which makes both sides
/// of the biconditional genuinely false.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_thm_2_6_instance(int n, std::uint64_t seed) {
    Rng rng(seed);
    const Tolerance tol;
    const auto part = detail::random_partition4(n, rng);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    const ComplexMatrix ustar = conj_transpose(u);
    const ComplexMatrix a1 =
        part.k1 > 0 ? detail::random_invertible(part.k1, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix a2 =
        part.k2 > 0 ? detail::random_invertible(part.k2, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix b1 = detail::draw_summand_block(a1, rng, tol);
    const ComplexMatrix b3 =
        part.k3 > 0 ? detail::random_invertible(part.k3, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix z2 = ComplexMatrix::zeros(part.k2, part.k2);
    const ComplexMatrix z3 = ComplexMatrix::zeros(part.k3, part.k3);
    const ComplexMatrix z4 = ComplexMatrix::zeros(part.k4, part.k4);
    const ComplexMatrix a = detail::framed_blockdiag(u, {a1, a2, z3, z4}, ustar);
    const ComplexMatrix b = detail::framed_blockdiag(u, {b1, z2, b3, z4}, ustar);
    return {a, b};
}

/// EP pair with aa^# b = bb^# a by construction: the two matrices share the
/// leading block A1 in a common unitary frame.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_cor_2_7_instance(int n, std::uint64_t seed) {
    Rng rng(seed);
    const auto part = detail::random_partition4(n, rng);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    const ComplexMatrix ustar = conj_transpose(u);
    const ComplexMatrix a1 =
        part.k1 > 0 ? detail::random_invertible(part.k1, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix a2 =
        part.k2 > 0 ? detail::random_invertible(part.k2, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix b3 =
        part.k3 > 0 ? detail::random_invertible(part.k3, rng) : ComplexMatrix(0, 0);
    const ComplexMatrix z2 = ComplexMatrix::zeros(part.k2, part.k2);
    const ComplexMatrix z3 = ComplexMatrix::zeros(part.k3, part.k3);
    const ComplexMatrix z4 = ComplexMatrix::zeros(part.k4, part.k4);
    const ComplexMatrix a = detail::framed_blockdiag(u, {a1, a2, z3, z4}, ustar);
    const ComplexMatrix b = detail::framed_blockdiag(u, {a1, z2, b3, z4}, ustar);
    return {a, b};
}

/// Pair (a, b) for the annihilation lemma: b is either unrelated to a (both
/// sides of the biconditional false) or of the form a w (both sides true).
inline std::pair<ComplexMatrix, ComplexMatrix> gen_lemma_2_2_instance(int n,
                                                                      std::uint64_t seed) {
    Rng rng(seed);
    const int r = rng.uniform_int(0, n);
    const ComplexMatrix a = gen_core_invertible(n, r, rng.next_u64());
    ComplexMatrix b = detail::random_gaussian(n, n, rng);
    if (rng.bernoulli(0.5)) b = a * b;
    return {a, b};
}

/// Pair (p, a) for the corner-identity lemma: p = S blkdiag(I, 0) S^-1 is a
/// (generally non-Hermitian) idempotent and a is block lower triangular in
/// the same frame with corners K group invertible and L group invertible,
/// coupled through R = L L^# R0.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_lemma_2_1_instance(int n,
                                                                      std::uint64_t seed) {
    Rng rng(seed);
    const Tolerance tol;
    const int k = rng.uniform_int(0, n);
    const ComplexMatrix s = detail::random_invertible(n, rng, 10.0);
    const ComplexMatrix sinv = inverse(s, tol);
    const ComplexMatrix p = detail::framed_blockdiag(
        s, {ComplexMatrix::identity(k), ComplexMatrix::zeros(n - k, n - k)}, sinv);

    const ComplexMatrix kblock =
        detail::structured_group_invertible(k, rng.uniform_int(0, k), rng);
    const ComplexMatrix lblock =
        detail::structured_group_invertible(n - k, rng.uniform_int(0, n - k), rng);
    ComplexMatrix r0 = detail::random_gaussian(n - k, k, rng);
    if (n - k > 0 && k > 0) r0 = lblock * group_inverse(lblock, tol) * r0;
    const ComplexMatrix a = s * detail::assemble_triangular(n, {kblock, r0, lblock}) * sinv;
    return {p, a};
}

/// Pair (p, a) for the triangular core-inverse lemma: as the corner-identity
/// family but with a unitary frame, so p is a projection.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_lemma_2_3_instance(int n,
                                                                      std::uint64_t seed) {
    Rng rng(seed);
    const Tolerance tol;
    const int k = rng.uniform_int(0, n);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    const ComplexMatrix ustar = conj_transpose(u);
    const ComplexMatrix p = detail::framed_blockdiag(
        u, {ComplexMatrix::identity(k), ComplexMatrix::zeros(n - k, n - k)}, ustar);

    const ComplexMatrix kblock =
        detail::structured_group_invertible(k, rng.uniform_int(0, k), rng);
    const ComplexMatrix lblock =
        detail::structured_group_invertible(n - k, rng.uniform_int(0, n - k), rng);
    ComplexMatrix r0 = detail::random_gaussian(n - k, k, rng);
    if (n - k > 0 && k > 0) r0 = lblock * group_inverse(lblock, tol) * r0;
    const ComplexMatrix a = u * detail::assemble_triangular(n, {kblock, r0, lblock}) * ustar;
    return {p, a};
}

/// (B, C) for the anti-diagonal lemma: invertible blocks on a shared support
/// in a unitary frame; C = B* for a fraction of the draws.
inline std::pair<ComplexMatrix, ComplexMatrix> gen_antidiag_pair(int n, std::uint64_t seed) {
    Rng rng(seed);
    const int k = rng.uniform_int(0, n);
    const ComplexMatrix u = detail::random_unitary(n, rng);
    const ComplexMatrix ustar = conj_transpose(u);
    // Controlled spectra: the hypothesis check passes (CB)^D through the cube
    // of the core, so the product spread has to stay small.
    const ComplexMatrix bs = detail::random_well_conditioned(k, rng);
    const ComplexMatrix cs =
        rng.bernoulli(0.4) ? conj_transpose(bs) : detail::random_well_conditioned(k, rng);
    const ComplexMatrix zk = ComplexMatrix::zeros(n - k, n - k);
    return {detail::framed_blockdiag(u, {bs, zk}, ustar),
            detail::framed_blockdiag(u, {cs, zk}, ustar)};
}

/// Hypothesis-satisfying 2x2 block instance. Structured families: aligned
/// supports in a common unitary frame (B, C invertible on the support where A
/// and D vanish), swap-symmetric C = B*, and zero off-diagonal blocks with
/// free core invertible A, D. Every candidate is re-verified by direct
/// computation of the theorem hypotheses; rejection sampling is bounded.
inline BlockMatrix2x2 gen_block4_instance(int n, std::uint64_t seed,
                                          int max_attempts = detail::kRedrawBudget) {
    Rng rng(seed);
    const Tolerance tol;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        BlockMatrix2x2 m;
        const double flavor = rng.uniform();
        if (flavor < 0.3) {
            // zero off-diagonals, free core invertible diagonal blocks
            m.b = ComplexMatrix::zeros(n, n);
            m.c = ComplexMatrix::zeros(n, n);
            m.a = gen_core_invertible(n, rng.uniform_int(0, n), rng.next_u64());
            m.d = gen_core_invertible(n, rng.uniform_int(0, n), rng.next_u64());
        } else {
            const int k = rng.uniform_int(0, n);
            const ComplexMatrix u = detail::random_unitary(n, rng);
            const ComplexMatrix ustar = conj_transpose(u);
            const ComplexMatrix bs = detail::random_well_conditioned(k, rng);
            const ComplexMatrix cs = rng.bernoulli(0.5)
                                         ? conj_transpose(bs)
                                         : detail::random_well_conditioned(k, rng);
            const int rest = n - k;
            const int ra = rng.uniform_int(0, rest);
            const int rd = rng.uniform_int(0, rest);
            const ComplexMatrix ax =
                rest > 0 ? gen_core_invertible(rest, ra, rng.next_u64()) : ComplexMatrix(0, 0);
            const ComplexMatrix dx =
                rest > 0 ? gen_core_invertible(rest, rd, rng.next_u64()) : ComplexMatrix(0, 0);
            const ComplexMatrix zk = ComplexMatrix::zeros(k, k);
            const ComplexMatrix zrest = ComplexMatrix::zeros(rest, rest);
            m.a = detail::framed_blockdiag(u, {zk, ax}, ustar);
            m.d = detail::framed_blockdiag(u, {zk, dx}, ustar);
            m.b = detail::framed_blockdiag(u, {bs, zrest}, ustar);
            m.c = detail::framed_blockdiag(u, {cs, zrest}, ustar);
        }
        const TheoremVerdict v42 = check_thm_4_2(m, tol);
        const TheoremVerdict v44 = check_thm_4_4(m, tol);
        if (v42.hypotheses_met && v44.hypotheses_met && !v42.ambiguous && !v44.ambiguous)
            return m;
    }
    throw GenerationExhaustedError("no hypothesis-satisfying block instance within budget");
}

/// Unstructured randomized search for block instances, kept separate from the
/// structured families: candidates are drawn wide (independent core invertible
/// blocks, shared-frame mixtures) and accepted only if all hypotheses verify.
/// Exhausts its budget when the family cannot produce a satisfying candidate.
inline BlockMatrix2x2 gen_block4_search(int n, std::uint64_t seed, int max_attempts) {
    Rng rng(seed);
    const Tolerance tol;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        BlockMatrix2x2 m;
        m.a = gen_core_invertible(n, rng.uniform_int(0, n), rng.next_u64());
        m.d = rng.bernoulli(0.5) ? m.a
                                 : gen_core_invertible(n, rng.uniform_int(0, n), rng.next_u64());
        m.b = detail::random_gaussian(n, n, rng);
        m.c = rng.bernoulli(0.5) ? conj_transpose(m.b) : detail::random_gaussian(n, n, rng);
        const TheoremVerdict v = check_thm_4_2(m, tol);
        if (v.hypotheses_met && !v.ambiguous) return m;
    }
    throw GenerationExhaustedError("block search exhausted its attempt budget");
}

/// One near-miss instance: violates exactly the named hypothesis of its base
/// family. For pair families the members are (a, b); for the triangular
/// family they are (p, a); block families fill `blocks`.
struct NearMiss {
    std::string family;
    std::string violated;
    ComplexMatrix a;
    ComplexMatrix b;
    std::optional<BlockMatrix2x2> blocks;
};

inline NearMiss gen_near_miss(const std::string& family, const std::string& which, int n,
                              std::uint64_t seed) {
    Rng rng(seed);
    const Tolerance tol;
    NearMiss out;
    out.family = family;
    out.violated = which;

    if (family == "thm2.4" && which == "aba_pi_zero") {
        // Add an upper-right block to b in the frame of a; everything else
        // stays intact because b4 remains the (2,2) corner.
        for (int attempt = 0; attempt < detail::kRedrawBudget; ++attempt) {
            auto [a, b] = gen_thm_2_4_instance(n, rng.next_u64());
            const GroupDecision ga = group_decision(a, tol);
            const ComplexMatrix api = ComplexMatrix::identity(n) - a * *ga.inverse;
            if (ga.rank_a == 0 || ga.rank_a == n) continue;  // needs both corners
            const ComplexMatrix bump = a * detail::random_gaussian(n, n, rng) * api;
            const ComplexMatrix b2 = b + bump;
            const TheoremVerdict v = check_thm_2_4(a, b2, tol);
            bool only_target = v.hypotheses.size() == 4;
            for (const auto& h : v.hypotheses)
                only_target = only_target && (h.name == which ? !h.ok : h.ok);
            if (only_target) {
                out.a = a;
                out.b = b2;
                return out;
            }
        }
        throw GenerationExhaustedError("near-miss search exhausted");
    }
    if (family == "thm2.4" && which == "a_ep") {
        if (n < 2) throw NotApplicableError("needs n >= 2 to break EP-ness");
        ComplexMatrix a(n, n);
        a(0, 0) = 1.0;
        a(0, 1) = 1.0;  // group invertible idempotent, not EP
        out.a = a;
        out.b = ComplexMatrix::zeros(n, n);
        return out;
    }
    if (family == "commuting" && which == "a*b=ba*") {
        // b = 2a commutes with a exactly; the starred commutation fails iff a
        // is non-normal.
        for (int attempt = 0; attempt < detail::kRedrawBudget; ++attempt) {
            const int r = rng.uniform_int(1, n);
            const ComplexMatrix a = gen_core_invertible(n, r, rng.next_u64());
            const ComplexMatrix astar = conj_transpose(a);
            const double nn = frobenius_norm(a) * frobenius_norm(a);
            if (zero_residual(a * astar - astar * a, nn) > 100.0 * tol.zero_threshold()) {
                out.a = a;
                out.b = cplx(2.0, 0.0) * a;
                return out;
            }
        }
        throw GenerationExhaustedError("no non-normal draw");
    }
    if (family == "orthogonal" && which == "ab_zero")
        throw NotApplicableError(
            "a is EP in this family, so ab = 0 and a*b = 0 cannot be separated");
    if (family == "orthogonal" && which == "b_core_invertible") {
        if (n < 3) throw NotApplicableError("needs n >= 3 for a nilpotent complement block");
        const int r = rng.uniform_int(1, n - 2);
        const ComplexMatrix w = detail::random_unitary(n, rng);
        const ComplexMatrix wstar = conj_transpose(w);
        const ComplexMatrix k = detail::random_invertible(r, rng);
        ComplexMatrix l(n - r, n - r);
        l(0, 1) = 1.0;  // nilpotent: not group invertible
        out.a = detail::framed_blockdiag(w, {k, ComplexMatrix::zeros(n - r, n - r)}, wstar);
        out.b = detail::framed_blockdiag(w, {ComplexMatrix::zeros(r, r), l}, wstar);
        return out;
    }
    if (family == "block4" && which == "b_cb_pi_zero") {
        BlockMatrix2x2 m;
        m.a = ComplexMatrix::zeros(n, n);
        m.d = ComplexMatrix::zeros(n, n);
        m.b = gen_ep(n, std::max(1, n / 2), rng.next_u64());
        m.c = ComplexMatrix::zeros(n, n);
        out.blocks = m;
        return out;
    }
    if (family == "block4" && which == "nilpotency_witness") {
        BlockMatrix2x2 m;
        m.a = ComplexMatrix::identity(n);
        m.d = ComplexMatrix::identity(n);
        m.b = ComplexMatrix::identity(n);
        m.c = ComplexMatrix::identity(n);
        out.blocks = m;
        return out;
    }
    if (family == "lem2.3" && which == "statement_condition") {
        if (n < 2) throw NotApplicableError("needs n >= 2 for a singular complement corner");
        for (int attempt = 0; attempt < detail::kRedrawBudget; ++attempt) {
            const int k = rng.uniform_int(0, n - 2);
            const ComplexMatrix u = detail::random_unitary(n, rng);
            const ComplexMatrix ustar = conj_transpose(u);
            const ComplexMatrix p = detail::framed_blockdiag(
                u, {ComplexMatrix::identity(k), ComplexMatrix::zeros(n - k, n - k)}, ustar);
            const ComplexMatrix kb =
                k > 0 ? detail::random_invertible(k, rng) : ComplexMatrix(0, 0);
            const int rest = n - k;
            const int rl = rng.uniform_int(1, rest - 1);
            const ComplexMatrix sl = detail::random_invertible(rest, rng);
            const ComplexMatrix ll = detail::random_invertible(rl, rng);
            const ComplexMatrix lblock = detail::framed_blockdiag(
                sl, {ll, ComplexMatrix::zeros(rest - rl, rest - rl)}, inverse(sl, tol));
            const ComplexMatrix r0 = detail::random_gaussian(rest, k, rng);
            const ComplexMatrix a = u * detail::assemble_triangular(n, {kb, r0, lblock}) * ustar;
            const TheoremVerdict v = check_lemma_2_3(p, a, tol);
            bool only_target = true;
            for (const auto& h : v.hypotheses)
                only_target = only_target && (h.name == which ? !h.ok : h.ok);
            if (only_target && !v.hypotheses_met) {
                out.a = p;
                out.b = a;
                return out;
            }
        }
        throw GenerationExhaustedError("near-miss search exhausted");
    }
    throw NotApplicableError("no near-miss construction for " + family + "/" + which);
}

}  // namespace coreinv
