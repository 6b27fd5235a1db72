#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace cycstab {

// A divisor class up to numerical equivalence, written in the generator
// basis of some surface lattice: one exact rational coefficient per
// generator. Two classes are numerically equivalent iff their coefficient
// vectors are equal.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<Rational> coefficients);
    DivisorClass(std::initializer_list<Rational> coefficients);
    static DivisorClass zero(size_t dimension);

    size_t dimension() const { return coefficients_.size(); }
    const std::vector<Rational>& coefficients() const { return coefficients_; }
    const Rational& operator[](size_t i) const { return coefficients_[i]; }
    bool is_zero() const;

    DivisorClass& operator+=(const DivisorClass& other);
    DivisorClass& operator-=(const DivisorClass& other);
    DivisorClass& operator*=(const Rational& scale);

    friend DivisorClass operator+(DivisorClass lhs, const DivisorClass& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend DivisorClass operator-(DivisorClass lhs, const DivisorClass& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend DivisorClass operator*(const Rational& scale, DivisorClass rhs) {
        rhs *= scale;
        return rhs;
    }
    friend DivisorClass operator-(DivisorClass value) {
        value *= Rational(-1);
        return value;
    }
    bool operator==(const DivisorClass&) const = default;

    // Renders as a combination of generator labels, e.g. "-3h" or "2a + b".
    std::string to_string(const std::vector<std::string>& generators) const;

private:
    std::vector<Rational> coefficients_;
};

// A smooth projective surface presented at Neron-Severi level: named
// generators, their integer intersection matrix, the canonical class and
// the ample polarization all degrees are measured against. Ampleness
// itself is a modeling assumption; only H.H > 0 is machine-checked.
class SurfaceModel {
public:
    SurfaceModel(std::string name, std::vector<std::string> generators,
                 std::vector<std::vector<long long>> intersection,
                 DivisorClass canonical, DivisorClass polarization);

    // Projective plane: one generator h with h.h = 1, K = -3h, H = h.
    static SurfaceModel p2();
    // Rank-2 product lattice: a.a = 0, b.b = 0, a.b = 1, H = a + b,
    // canonical class configurable (default 0).
    static SurfaceModel product_lattice();
    static SurfaceModel product_lattice(DivisorClass canonical);
    static SurfaceModel product_lattice(DivisorClass canonical, DivisorClass polarization);
    static std::optional<SurfaceModel> preset(std::string_view name);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& generators() const { return generators_; }
    size_t rank() const { return generators_.size(); }
    const std::vector<std::vector<long long>>& intersection_matrix() const {
        return intersection_;
    }
    const DivisorClass& canonical() const { return canonical_; }
    const DivisorClass& polarization() const { return polarization_; }

    // Unit class of generator i.
    DivisorClass generator_class(size_t i) const;
    DivisorClass zero_class() const { return DivisorClass::zero(rank()); }

    // The bilinear intersection pairing D.E; exact, symmetric.
    Rational intersect(const DivisorClass& d, const DivisorClass& e) const;
    // deg D = D.H against the polarization.
    Rational degree(const DivisorClass& d) const;

    // Structural identity with the built-in P2 preset; used to discharge
    // the stability of Omega_P2 in certificates.
    bool is_p2_preset() const;

private:
    std::string name_;
    std::vector<std::string> generators_;
    std::vector<std::vector<long long>> intersection_;
    DivisorClass canonical_;
    DivisorClass polarization_;
};

// Exact coefficient-wise proportionality: the rational l with d = l*e if
// one exists. e must be nonzero.
std::optional<Rational> proportional_to(const DivisorClass& d, const DivisorClass& e);

// Degree of the conormal class of a smooth curve in class b against the
// curve itself: -b.b. When H = l*b this equals -deg(b)/l.
Rational conormal_degree(const DivisorClass& b, const SurfaceModel& surface);

}  // namespace cycstab
