#pragma once

#include <span>
#include <vector>

#include "criteria.hpp"

namespace cycstab {

// Characteristic-p data for Frobenius pushforward computations on a
// surface X: the prime, the lattice model of X, its cotangent invariants.
// Degree convention for the Frobenius pullback: deg(F^*E) = p * deg(E)
// with the polarization held fixed, which makes the canonical filtration
// ranks and degrees sum to well-defined invariants of F_*W.
class FrobeniusContext {
public:
    FrobeniusContext(long long p, SurfaceModel surface);

    long long p() const { return p_; }
    const SurfaceModel& surface() const { return surface_; }
    const FormalSheaf& cotangent() const { return cotangent_; }
    const Rational& canonical_degree() const { return canonical_degree_; }

    // Number of graded pieces of the canonical filtration: l = 0..2(p-1).
    int piece_count() const { return 2 * static_cast<int>(p_) - 1; }

private:
    long long p_;
    SurfaceModel surface_;
    FormalSheaf cotangent_;
    Rational canonical_degree_;
};

// Graded piece V_l/V_{l+1} of the canonical filtration of F^*(F_*W) on a
// surface:
//   l <  p: W (x) Sym^l Omega_X
//   l >= p: W (x) Sym^{2(p-1)-l} Omega_X (x) omega_X^{l-(p-1)}
FormalSheaf graded_piece(const FrobeniusContext& ctx, const FormalSheaf& w, int l);

struct FiltrationPiece {
    int level;
    int rank;
    Rational degree;
    Rational slope;
};

// All graded pieces of the canonical filtration; ranks always sum to
// p^2 * rank W.
struct FiltrationProfile {
    std::vector<FiltrationPiece> pieces;

    int total_rank() const;
    Rational total_degree() const;
};

FiltrationProfile filtration_profile(const FrobeniusContext& ctx, const FormalSheaf& w);

struct PushforwardInvariants {
    int rank;         // p^2 * rank W
    Rational degree;  // (1/p) * sum of piece degrees
    Rational slope;
};

PushforwardInvariants pushforward_invariants(const FrobeniusContext& ctx, const FormalSheaf& w);

// I(W,X): the maximum of the supplied instabilities of W (x) T^l(Omega_X),
// one entry per l = 0..2(p-1). Instability of the non-split twists is not
// decidable in this model, so the entries are inputs; entries must be
// nonnegative.
Rational instability_budget(const FrobeniusContext& ctx, const FormalSheaf& w,
                            std::span<const Rational> assumed_instabilities);

// The one auto-discharged case: for rank-1 W with Omega_X stable, every
// twist W (x) T^l(Omega_X) is semistable (Sym^l of a stable rank-2 bundle
// for l < p, then a rank-1 twist), so the budget is 0.
Rational instability_budget_rank1_stable_cotangent(const FrobeniusContext& ctx,
                                                   const FormalSheaf& w);

// Frobenius pushforward certificate (Thm4.3): K_X.H >= 0 and budget 0 give
// semistability of F_*W; K_X.H > 0 plus stable twists upgrade to stable.
// Always records the slope-drop bound -budget/p.
Certificate frobenius_certificate(const FrobeniusContext& ctx, const FormalSheaf& w,
                                  const Rational& budget, bool twists_stable = false);

// Claimed regions of Cor4.5 for the degree-n cover of P2 branched in
// degree d (reported alongside the computed certificate).
bool cor45_claimed_semistable(int n, int d);
bool cor45_claimed_stable(int n, int d);

// Cor4.5 evaluation: builds the P2 cover in characteristic p, discharges
// the stability of Omega_X through Cor3.8, sets the rank-1 budget to 0 and
// runs the Thm4.3 check; reports the claimed region next to the computed
// sign of K_X.H, flagging the known erratum at (n=2, d=6).
Certificate cor45_certificate(int n, int d, long long p);

}  // namespace cycstab
