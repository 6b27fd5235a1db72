#include "sheaf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace cycstab {

FormalSheaf::FormalSheaf(int rank_in, DivisorClass c1_in, std::string label_in)
    : rank(rank_in), c1(std::move(c1_in)), label(std::move(label_in)) {
    if (rank < 1) {
        throw InvalidArgument("formal sheaf rank must be >= 1");
    }
}

SplitBundle::SplitBundle(std::vector<DivisorClass> summands) : summands_(std::move(summands)) {
    if (summands_.empty()) {
        throw InvalidArgument("split bundle needs at least one summand");
    }
    for (const auto& s : summands_) {
        if (s.dimension() != summands_.front().dimension()) {
            throw DimensionMismatch("split bundle summands live in different lattices");
        }
    }
}

DivisorClass SplitBundle::c1() const {
    DivisorClass total = DivisorClass::zero(summands_.front().dimension());
    for (const auto& s : summands_) {
        total += s;
    }
    return total;
}

FormalSheaf SplitBundle::as_formal_sheaf(std::string label) const {
    return FormalSheaf(rank(), c1(), std::move(label));
}

Rational slope(const FormalSheaf& sheaf, const SurfaceModel& surface) {
    return surface.degree(sheaf.c1) / sheaf.rank;
}

Rational slope(const SplitBundle& bundle, const SurfaceModel& surface) {
    return surface.degree(bundle.c1()) / bundle.rank();
}

HNFiltration hn_filtration(const SplitBundle& bundle, const SurfaceModel& surface) {
    // Group summands by exact degree; ties are grouped, never broken.
    std::map<Rational, std::vector<size_t>, std::greater<Rational>> groups;
    for (size_t i = 0; i < bundle.summands().size(); ++i) {
        groups[surface.degree(bundle.summands()[i])].push_back(i);
    }
    HNFiltration result;
    for (auto& [deg, indices] : groups) {
        result.levels.push_back(HNLevel{deg, std::move(indices)});
    }
    result.mu_max = result.levels.front().slope;
    result.mu_min = result.levels.back().slope;
    result.instability = result.mu_max - result.mu_min;
    return result;
}

Rational instability(const SplitBundle& bundle, const SurfaceModel& surface) {
    return hn_filtration(bundle, surface).instability;
}

std::vector<DivisorClass> jh_factors(const SplitBundle& bundle, const SurfaceModel& surface) {
    HNFiltration hn = hn_filtration(bundle, surface);
    if (!hn.semistable()) {
        std::ostringstream msg;
        msg << "jh_factors requires a semistable bundle: mu_max = "
            << rational_to_string(hn.mu_max) << ", mu_min = " << rational_to_string(hn.mu_min);
        throw PreconditionFailed(msg.str());
    }
    return bundle.summands();
}

FormalSheaf twist(const FormalSheaf& sheaf, const DivisorClass& d) {
    return FormalSheaf(sheaf.rank, sheaf.c1 + Rational(sheaf.rank) * d, sheaf.label);
}

SplitBundle twist(const SplitBundle& bundle, const DivisorClass& d) {
    std::vector<DivisorClass> summands;
    summands.reserve(bundle.summands().size());
    for (const auto& s : bundle.summands()) {
        summands.push_back(s + d);
    }
    return SplitBundle(std::move(summands));
}

FormalSheaf direct_sum(std::span<const FormalSheaf> sheaves) {
    if (sheaves.empty()) {
        throw InvalidArgument("direct sum of no sheaves");
    }
    int rank = 0;
    DivisorClass c1 = DivisorClass::zero(sheaves.front().c1.dimension());
    for (const auto& f : sheaves) {
        rank += f.rank;
        c1 += f.c1;
    }
    return FormalSheaf(rank, std::move(c1));
}

FormalSheaf direct_sum(std::initializer_list<FormalSheaf> sheaves) {
    return direct_sum(std::span<const FormalSheaf>(sheaves.begin(), sheaves.size()));
}

FormalSheaf tensor(const FormalSheaf& f, const FormalSheaf& g) {
    DivisorClass c1 = Rational(g.rank) * f.c1 + Rational(f.rank) * g.c1;
    return FormalSheaf(f.rank * g.rank, std::move(c1));
}

FormalSheaf sym_power_rank2(const FormalSheaf& f, int l) {
    if (f.rank != 2) {
        throw InvalidArgument("sym_power_rank2 requires a rank-2 sheaf");
    }
    if (l < 0) {
        throw InvalidArgument("symmetric power exponent must be >= 0");
    }
    Rational factor = Rational(static_cast<long>(l) * (l + 1)) / 2;
    return FormalSheaf(l + 1, factor * f.c1);
}

}  // namespace cycstab
