#include "lattice.hpp"

#include <sstream>

#include "errors.hpp"

namespace cycstab {

DivisorClass::DivisorClass(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {}

DivisorClass::DivisorClass(std::initializer_list<Rational> coefficients)
    : coefficients_(coefficients) {}

DivisorClass DivisorClass::zero(size_t dimension) {
    return DivisorClass(std::vector<Rational>(dimension, Rational(0)));
}

bool DivisorClass::is_zero() const {
    for (const auto& c : coefficients_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

namespace {

void require_same_dimension(size_t lhs, size_t rhs, const char* what) {
    if (lhs != rhs) {
        std::ostringstream msg;
        msg << what << ": coefficient vectors have lengths " << lhs << " and " << rhs;
        throw DimensionMismatch(msg.str());
    }
}

}  // namespace

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
    require_same_dimension(dimension(), other.dimension(), "divisor class sum");
    for (size_t i = 0; i < coefficients_.size(); ++i) {
        coefficients_[i] += other.coefficients_[i];
    }
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
    require_same_dimension(dimension(), other.dimension(), "divisor class difference");
    for (size_t i = 0; i < coefficients_.size(); ++i) {
        coefficients_[i] -= other.coefficients_[i];
    }
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& scale) {
    for (auto& c : coefficients_) {
        c *= scale;
    }
    return *this;
}

std::string DivisorClass::to_string(const std::vector<std::string>& generators) const {
    if (generators.size() != dimension()) {
        throw DimensionMismatch("divisor class rendering: generator list length mismatch");
    }
    if (is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coefficients_.size(); ++i) {
        const Rational& c = coefficients_[i];
        if (c == 0) {
            continue;
        }
        if (!first) {
            out << (c > 0 ? " + " : " - ");
        } else if (c < 0) {
            out << "-";
        }
        Rational mag = abs(c);
        if (mag != 1) {
            out << rational_to_string(mag) << "*";
        }
        out << generators[i];
        first = false;
    }
    return out.str();
}

SurfaceModel::SurfaceModel(std::string name, std::vector<std::string> generators,
                           std::vector<std::vector<long long>> intersection,
                           DivisorClass canonical, DivisorClass polarization)
    : name_(std::move(name)),
      generators_(std::move(generators)),
      intersection_(std::move(intersection)),
      canonical_(std::move(canonical)),
      polarization_(std::move(polarization)) {
    const size_t n = generators_.size();
    if (n == 0) {
        throw InvalidArgument("surface model needs at least one generator");
    }
    if (intersection_.size() != n) {
        throw DimensionMismatch("intersection matrix is not square of generator rank");
    }
    for (const auto& row : intersection_) {
        if (row.size() != n) {
            throw DimensionMismatch("intersection matrix is not square of generator rank");
        }
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (intersection_[i][j] != intersection_[j][i]) {
                throw InvalidArgument("intersection matrix must be symmetric");
            }
        }
    }
    require_same_dimension(canonical_.dimension(), n, "canonical class");
    require_same_dimension(polarization_.dimension(), n, "polarization class");
    if (intersect(polarization_, polarization_) <= 0) {
        throw InvalidArgument("polarization must have positive self-intersection");
    }
}

SurfaceModel SurfaceModel::p2() {
    DivisorClass h{Rational(1)};
    DivisorClass k{Rational(-3)};
    return SurfaceModel("P2", {"h"}, {{1}}, k, h);
}

SurfaceModel SurfaceModel::product_lattice() {
    return product_lattice(DivisorClass::zero(2));
}

SurfaceModel SurfaceModel::product_lattice(DivisorClass canonical) {
    DivisorClass h{Rational(1), Rational(1)};
    return product_lattice(std::move(canonical), std::move(h));
}

SurfaceModel SurfaceModel::product_lattice(DivisorClass canonical, DivisorClass polarization) {
    return SurfaceModel("product", {"a", "b"}, {{0, 1}, {1, 0}}, std::move(canonical),
                        std::move(polarization));
}

std::optional<SurfaceModel> SurfaceModel::preset(std::string_view name) {
    if (name == "p2" || name == "P2") {
        return p2();
    }
    if (name == "product") {
        return product_lattice();
    }
    return std::nullopt;
}

DivisorClass SurfaceModel::generator_class(size_t i) const {
    if (i >= rank()) {
        throw InvalidArgument("generator index out of range");
    }
    std::vector<Rational> coeffs(rank(), Rational(0));
    coeffs[i] = 1;
    return DivisorClass(std::move(coeffs));
}

Rational SurfaceModel::intersect(const DivisorClass& d, const DivisorClass& e) const {
    require_same_dimension(d.dimension(), rank(), "intersection pairing");
    require_same_dimension(e.dimension(), rank(), "intersection pairing");
    Rational total(0);
    for (size_t i = 0; i < rank(); ++i) {
        if (d[i] == 0) {
            continue;
        }
        Rational row(0);
        for (size_t j = 0; j < rank(); ++j) {
            if (intersection_[i][j] != 0 && e[j] != 0) {
                row += rational_from_integer(intersection_[i][j]) * e[j];
            }
        }
        total += d[i] * row;
    }
    return total;
}

Rational SurfaceModel::degree(const DivisorClass& d) const {
    return intersect(d, polarization_);
}

bool SurfaceModel::is_p2_preset() const {
    if (rank() != 1 || intersection_[0][0] != 1) {
        return false;
    }
    return canonical_[0] == -3 && polarization_[0] == 1;
}

std::optional<Rational> proportional_to(const DivisorClass& d, const DivisorClass& e) {
    require_same_dimension(d.dimension(), e.dimension(), "proportionality");
    if (e.is_zero()) {
        throw InvalidArgument("proportional_to: reference class must be nonzero");
    }
    Rational ratio(0);
    bool have_ratio = false;
    for (size_t i = 0; i < e.dimension(); ++i) {
        if (e[i] == 0) {
            if (d[i] != 0) {
                return std::nullopt;
            }
            continue;
        }
        Rational r = d[i] / e[i];
        if (have_ratio && r != ratio) {
            return std::nullopt;
        }
        ratio = r;
        have_ratio = true;
    }
    return ratio;
}

Rational conormal_degree(const DivisorClass& b, const SurfaceModel& surface) {
    return -surface.intersect(b, b);
}

}  // namespace cycstab
