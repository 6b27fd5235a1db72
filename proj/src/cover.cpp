#include "cover.hpp"

#include <cassert>
#include <sstream>

#include "errors.hpp"

namespace cycstab {

namespace {

SurfaceModel derive_cover_surface(const SurfaceModel& base, const DivisorClass& l_class,
                                  int degree) {
    if (degree < 2) {
        throw InvalidArgument("cyclic cover degree must be >= 2");
    }
    if (l_class.dimension() != base.rank()) {
        throw DimensionMismatch("cover line bundle class does not match the base lattice");
    }
    std::vector<std::vector<long long>> scaled = base.intersection_matrix();
    for (auto& row : scaled) {
        for (auto& entry : row) {
            entry *= degree;
        }
    }
    DivisorClass canonical = base.canonical() + Rational(degree - 1) * l_class;
    std::ostringstream name;
    name << "cover(" << base.name() << ", n=" << degree << ")";
    return SurfaceModel(name.str(), base.generators(), std::move(scaled), std::move(canonical),
                        base.polarization());
}

}  // namespace

CyclicCover::CyclicCover(SurfaceModel base, DivisorClass l_class, int degree, long long char_p)
    : base_(std::move(base)),
      l_class_(std::move(l_class)),
      degree_(degree),
      char_p_(char_p),
      cover_(derive_cover_surface(base_, l_class_, degree_)) {
    if (char_p_ != 0) {
        if (!is_prime(char_p_)) {
            throw InvalidArgument("characteristic must be 0 or a prime");
        }
        if (degree_ % char_p_ == 0) {
            std::ostringstream msg;
            msg << "characteristic " << char_p_ << " divides the covering degree " << degree_;
            throw InvalidArgument(msg.str());
        }
    }
}

DivisorClass CyclicCover::branch_class() const {
    return Rational(degree_) * l_class_;
}

DivisorClass CyclicCover::branch_class_upstairs() const {
    return pullback_class(l_class_);
}

DivisorClass CyclicCover::pullback_class(const DivisorClass& d) const {
    if (d.dimension() != base_.rank()) {
        throw DimensionMismatch("pullback of a class from a different lattice");
    }
    return d;
}

FormalSheaf CyclicCover::pullback_sheaf(const FormalSheaf& f) const {
    return FormalSheaf(f.rank, pullback_class(f.c1), f.label);
}

SplitBundle CyclicCover::pullback_bundle(const SplitBundle& b) const {
    std::vector<DivisorClass> summands;
    summands.reserve(b.summands().size());
    for (const auto& s : b.summands()) {
        summands.push_back(pullback_class(s));
    }
    return SplitBundle(std::move(summands));
}

DivisorClass CyclicCover::canonical_x() const {
    return cover_.canonical();
}

FormalSheaf CyclicCover::cotangent_x() const {
    return FormalSheaf(2, canonical_x(), "Omega_X");
}

SplitBundle CyclicCover::pushforward_structure_sheaf() const {
    std::vector<DivisorClass> summands;
    summands.reserve(degree_);
    for (int i = 0; i < degree_; ++i) {
        summands.push_back(Rational(-i) * l_class_);
    }
    return SplitBundle(std::move(summands));
}

std::vector<FormalSheaf> CyclicCover::pushforward_pullback_pieces(const FormalSheaf& f) const {
    if (f.c1.dimension() != base_.rank()) {
        throw DimensionMismatch("pushforward_pullback of a sheaf from a different lattice");
    }
    std::vector<FormalSheaf> pieces;
    pieces.reserve(degree_);
    for (int i = 0; i < degree_; ++i) {
        pieces.push_back(twist(f, Rational(-i) * l_class_));
    }
    return pieces;
}

FormalSheaf CyclicCover::pushforward_pullback_sum(const FormalSheaf& f) const {
    auto pieces = pushforward_pullback_pieces(f);
    return direct_sum(std::span<const FormalSheaf>(pieces.data(), pieces.size()));
}

Rational CyclicCover::pushforward_degree(const FormalSheaf& e_on_x) const {
    if (e_on_x.c1.dimension() != cover_.rank()) {
        throw DimensionMismatch("pushforward of a sheaf from a different lattice");
    }
    Rational deg_omega_y = base_.degree(base_.canonical());
    Rational deg_omega_x = cover_.degree(cover_.canonical());
    Rational pushforward_rank(static_cast<long>(degree_) * e_on_x.rank);
    return pushforward_rank / 2 * deg_omega_y - Rational(e_on_x.rank) / 2 * deg_omega_x +
           cover_.degree(e_on_x.c1);
}

Rational CyclicCover::pushforward_slope(const FormalSheaf& e_on_x) const {
    return pushforward_degree(e_on_x) / Rational(static_cast<long>(degree_) * e_on_x.rank);
}

std::pair<Rational, Rational> CyclicCover::branch_degrees() const {
    Rational on_base = base_.degree(branch_class());
    Rational upstairs = cover_.degree(branch_class_upstairs());
    assert(on_base == upstairs);
    return {on_base, upstairs};
}

}  // namespace cycstab
