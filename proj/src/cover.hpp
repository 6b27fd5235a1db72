#pragma once

#include <utility>
#include <vector>

#include "sheaf.hpp"

namespace cycstab {

// An n-cyclic covering pi: X -> Y determined by a line bundle class L with
// branch divisor B = n*L (effectiveness and smoothness of B are modeling
// assumptions recorded in certificates, never checked here). X is modeled
// on the pulled-back sublattice pi^*NS(Y): same generators, pairing scaled
// by n, polarization pi^*H.
class CyclicCover {
public:
    CyclicCover(SurfaceModel base, DivisorClass l_class, int degree, long long char_p = 0);

    const SurfaceModel& base() const { return base_; }
    // The derived model of X restricted to the pulled-back lattice.
    const SurfaceModel& cover_surface() const { return cover_; }
    const DivisorClass& l_class() const { return l_class_; }
    int degree() const { return degree_; }
    long long characteristic() const { return char_p_; }

    // B = n*L on Y.
    DivisorClass branch_class() const;
    // B_1 = pi^*L on X (the reduced preimage of B).
    DivisorClass branch_class_upstairs() const;

    // Coefficients are unchanged; the class is reinterpreted in the
    // n-scaled lattice, so deg_X(pi^*D) = n*deg_Y(D).
    DivisorClass pullback_class(const DivisorClass& d) const;
    FormalSheaf pullback_sheaf(const FormalSheaf& f) const;
    SplitBundle pullback_bundle(const SplitBundle& b) const;

    // K_X = pi^*(K_Y + (n-1)L).
    DivisorClass canonical_x() const;
    // Omega_X as a formal sheaf: rank 2, c1 = K_X.
    FormalSheaf cotangent_x() const;

    // pi_*O_X = O + O(-L) + ... + O(-(n-1)L) on Y.
    SplitBundle pushforward_structure_sheaf() const;

    // pi_*pi^*F = F + F(-L) + ... + F(-(n-1)L) on Y: the summand list and
    // their direct sum.
    std::vector<FormalSheaf> pushforward_pullback_pieces(const FormalSheaf& f) const;
    FormalSheaf pushforward_pullback_sum(const FormalSheaf& f) const;

    // Degree of pi_*E for E on X, by the Grothendieck-Riemann-Roch rule
    //   deg(pi_*E) = rank(pi_*E)/2 * deg Omega_Y - rank(E)/2 * deg Omega_X + deg E
    // with rank(pi_*E) = n*rank(E); X-degrees against pi^*H, Y-degrees
    // against H. This is the normative definition; the simplified slope
    // constant below is derived from it.
    Rational pushforward_degree(const FormalSheaf& e_on_x) const;
    // pushforward_degree / (n*rank E); equals mu(E)/n - (n-1)/2 * deg L.
    Rational pushforward_slope(const FormalSheaf& e_on_x) const;

    // (deg_Y B, deg_X B_1); always equal, both n*(L.H).
    std::pair<Rational, Rational> branch_degrees() const;

private:
    SurfaceModel base_;
    DivisorClass l_class_;
    int degree_;
    long long char_p_;
    SurfaceModel cover_;
};

}  // namespace cycstab
