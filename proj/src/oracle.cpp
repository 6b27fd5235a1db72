#include "oracle.hpp"

#include <cstdint>
#include <sstream>

#include "errors.hpp"

namespace cycstab {

Rational brute_force_mu_max(const SplitBundle& bundle, const SurfaceModel& surface) {
    const auto& summands = bundle.summands();
    if (summands.size() > 20) {
        throw InvalidArgument("brute force subset enumeration limited to 20 summands");
    }
    std::vector<Rational> degrees;
    degrees.reserve(summands.size());
    for (const auto& s : summands) {
        degrees.push_back(surface.degree(s));
    }
    bool have = false;
    Rational best(0);
    const uint32_t total = 1u << summands.size();
    for (uint32_t mask = 1; mask < total; ++mask) {
        Rational sum(0);
        int count = 0;
        for (size_t i = 0; i < summands.size(); ++i) {
            if (mask & (1u << i)) {
                sum += degrees[i];
                ++count;
            }
        }
        Rational average = sum / count;
        if (!have || average > best) {
            best = average;
            have = true;
        }
    }
    return best;
}

bool grr_consistency(const CyclicCover& cover, const FormalSheaf& f) {
    Rational via_grr = cover.pushforward_degree(cover.pullback_sheaf(f));
    FormalSheaf decomposition = cover.pushforward_pullback_sum(f);
    Rational via_decomposition = cover.base().degree(decomposition.c1);
    return via_grr == via_decomposition;
}

SplitBundle sym_split_expand(const DivisorClass& d, const DivisorClass& e, int l) {
    if (l < 0) {
        throw InvalidArgument("symmetric power exponent must be >= 0");
    }
    if (d.dimension() != e.dimension()) {
        throw DimensionMismatch("sym_split_expand: classes live in different lattices");
    }
    std::vector<DivisorClass> summands;
    summands.reserve(l + 1);
    for (int i = 0; i <= l; ++i) {
        summands.push_back(Rational(i) * d + Rational(l - i) * e);
    }
    return SplitBundle(std::move(summands));
}

namespace {

// Minimal deterministic PRNG (xorshift64*) so the randomized suites are
// reproducible everywhere.
class Prng {
public:
    explicit Prng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dull;
    }

    // Uniform in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

void record_failure(SelfTestResult& result, const std::string& message) {
    result.passed = false;
    if (result.failures.size() < 20) {
        result.failures.push_back(message);
    }
}

// Every multiset of summand degrees in [lo, hi] of size <= max_summands,
// as h-multiples on the P2 preset: hn must agree with the subset oracle,
// and instability must vanish exactly on constant multisets.
void selftest_hn_grid(SelfTestResult& result) {
    SurfaceModel p2 = SurfaceModel::p2();
    const long lo = -4;
    const long hi = 4;
    const int max_summands = 6;

    std::vector<long> degrees;
    auto run_case = [&] {
        std::vector<DivisorClass> summands;
        summands.reserve(degrees.size());
        bool all_equal = true;
        for (long deg : degrees) {
            summands.push_back(DivisorClass{Rational(deg)});
            all_equal = all_equal && deg == degrees.front();
        }
        SplitBundle bundle(std::move(summands));
        HNFiltration hn = hn_filtration(bundle, p2);
        Rational oracle_mu_max = brute_force_mu_max(bundle, p2);
        ++result.checks_run;
        if (hn.mu_max != oracle_mu_max) {
            std::ostringstream msg;
            msg << "hn mu_max " << rational_to_string(hn.mu_max) << " != subset oracle "
                << rational_to_string(oracle_mu_max);
            record_failure(result, msg.str());
        }
        if ((hn.instability == 0) != all_equal) {
            record_failure(result, "instability zero-test disagrees with constant-degree test");
        }
    };

    // Non-decreasing sequences enumerate each multiset once.
    auto recurse = [&](auto&& self, long min_value) -> void {
        if (!degrees.empty()) {
            run_case();
        }
        if (degrees.size() == max_summands) {
            return;
        }
        for (long v = min_value; v <= hi; ++v) {
            degrees.push_back(v);
            self(self, v);
            degrees.pop_back();
        }
    };
    recurse(recurse, lo);
}

void selftest_grr_randomized(SelfTestResult& result) {
    Prng prng(0x5eedu);
    SurfaceModel p2 = SurfaceModel::p2();
    SurfaceModel product = SurfaceModel::product_lattice(
        DivisorClass{Rational(-2), Rational(2)});

    for (int i = 0; i < 1000; ++i) {
        const SurfaceModel& base = (i % 2 == 0) ? p2 : product;
        int n = static_cast<int>(prng.range(2, 6));
        std::vector<Rational> l_coeffs;
        for (size_t g = 0; g < base.rank(); ++g) {
            l_coeffs.push_back(Rational(prng.range(-3, 3)));
        }
        std::vector<Rational> c1_coeffs;
        for (size_t g = 0; g < base.rank(); ++g) {
            c1_coeffs.push_back(Rational(prng.range(-5, 5)));
        }
        int rank = static_cast<int>(prng.range(1, 4));
        CyclicCover cover(base, DivisorClass(std::move(l_coeffs)), n);
        FormalSheaf f(rank, DivisorClass(std::move(c1_coeffs)));
        ++result.checks_run;
        if (!grr_consistency(cover, f)) {
            std::ostringstream msg;
            msg << "GRR pushforward degree mismatch: base " << base.name() << ", n = " << n
                << ", rank = " << rank;
            record_failure(result, msg.str());
        }
    }

    // Mean summand degree of pi_*O_X must match the GRR slope on presets.
    for (const SurfaceModel& base : {p2, product}) {
        for (int n = 2; n <= 6; ++n) {
            std::vector<Rational> ones(base.rank(), Rational(1));
            CyclicCover cover(base, DivisorClass(std::move(ones)), n);
            SplitBundle structure = cover.pushforward_structure_sheaf();
            FormalSheaf trivial(1, cover.cover_surface().zero_class());
            ++result.checks_run;
            if (cover.pushforward_slope(trivial) != slope(structure, base)) {
                record_failure(result, "pi_*O slope disagrees with its summand mean");
            }
        }
    }
}

void selftest_sym_expand(SelfTestResult& result) {
    SurfaceModel product = SurfaceModel::product_lattice();
    DivisorClass a = product.generator_class(0);
    DivisorClass b = product.generator_class(1);
    for (int l = 0; l <= 6; ++l) {
        SplitBundle expanded = sym_split_expand(a, b, l);
        FormalSheaf rank2(2, a + b);
        FormalSheaf sym = sym_power_rank2(rank2, l);
        ++result.checks_run;
        if (expanded.rank() != sym.rank || expanded.c1() != sym.c1) {
            std::ostringstream msg;
            msg << "sym_power_rank2 disagrees with split expansion at l = " << l;
            record_failure(result, msg.str());
        }
    }
}

}  // namespace

SelfTestResult run_selftest() {
    SelfTestResult result;
    selftest_hn_grid(result);
    selftest_grr_randomized(result);
    selftest_sym_expand(result);
    return result;
}

}  // namespace cycstab
