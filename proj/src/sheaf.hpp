#pragma once

#include <span>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace cycstab {

// A locally free sheaf remembered only through its slope-relevant
// invariants: rank and first Chern class. Torsion sheaves are never
// represented as values; they enter only as degree corrections recorded
// in certificate notes.
struct FormalSheaf {
    int rank;
    DivisorClass c1;
    std::string label;

    FormalSheaf(int rank, DivisorClass c1, std::string label = "");
};

// A direct sum of line bundles O(D_1) + ... + O(D_r), kept as the list of
// summand classes. rank and c1 are derived.
class SplitBundle {
public:
    explicit SplitBundle(std::vector<DivisorClass> summands);

    const std::vector<DivisorClass>& summands() const { return summands_; }
    int rank() const { return static_cast<int>(summands_.size()); }
    DivisorClass c1() const;
    FormalSheaf as_formal_sheaf(std::string label = "") const;

private:
    std::vector<DivisorClass> summands_;
};

// slope = deg / rank against the surface polarization.
Rational slope(const FormalSheaf& sheaf, const SurfaceModel& surface);
Rational slope(const SplitBundle& bundle, const SurfaceModel& surface);

struct HNLevel {
    Rational slope;
    std::vector<size_t> summand_indices;  // ascending
};

// Harder-Narasimhan data of a split bundle: summands grouped by equal
// degree, groups ordered by strictly decreasing degree. The level-i
// sub-bundle is the sum of all summands of slope >= levels[i].slope.
struct HNFiltration {
    std::vector<HNLevel> levels;
    Rational mu_max;
    Rational mu_min;
    Rational instability;  // mu_max - mu_min, zero iff one level

    bool semistable() const { return levels.size() == 1; }
};

HNFiltration hn_filtration(const SplitBundle& bundle, const SurfaceModel& surface);
Rational instability(const SplitBundle& bundle, const SurfaceModel& surface);

// Jordan-Hoelder factors of a semistable split bundle: the multiset of its
// line summands (the filtration is not unique, the factors are). Throws
// PreconditionFailed naming mu_max and mu_min on non-semistable input.
std::vector<DivisorClass> jh_factors(const SplitBundle& bundle, const SurfaceModel& surface);

// Twist by a line bundle class: rank unchanged, c1 += rank * d.
FormalSheaf twist(const FormalSheaf& sheaf, const DivisorClass& d);
SplitBundle twist(const SplitBundle& bundle, const DivisorClass& d);

FormalSheaf direct_sum(std::span<const FormalSheaf> sheaves);
FormalSheaf direct_sum(std::initializer_list<FormalSheaf> sheaves);

// c1-level tensor rule: rank multiplies, c1 = rG*c1(F) + rF*c1(G).
FormalSheaf tensor(const FormalSheaf& f, const FormalSheaf& g);

// Symmetric power of a rank-2 sheaf: rank l+1, c1 = l(l+1)/2 * c1.
FormalSheaf sym_power_rank2(const FormalSheaf& f, int l);

}  // namespace cycstab
