#include <doctest.h>

#include "errors.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace cycstab;

namespace {

SplitBundle p2_split(std::initializer_list<long> degrees) {
    std::vector<DivisorClass> summands;
    for (long d : degrees) {
        summands.push_back(DivisorClass{Rational(d)});
    }
    return SplitBundle(std::move(summands));
}

}  // namespace

TEST_SUITE("sheaf") {

TEST_CASE("slopes") {
    SurfaceModel p2 = SurfaceModel::p2();
    FormalSheaf omega(2, DivisorClass{Rational(-3)}, "Omega_P2");
    CHECK(slope(omega, p2) == rational(-3, 2));

    FormalSheaf trivial(4, p2.zero_class());
    CHECK(slope(trivial, p2) == 0);

    FormalSheaf line(1, DivisorClass{Rational(5)});
    CHECK(slope(line, p2) == 5);
}

TEST_CASE("rank must be positive") {
    CHECK_THROWS_AS(FormalSheaf(0, DivisorClass{Rational(1)}), InvalidArgument);
    CHECK_THROWS_AS(FormalSheaf(-2, DivisorClass{Rational(1)}), InvalidArgument);
}

TEST_CASE("split bundle derived invariants") {
    SplitBundle b = p2_split({2, 2, 0, -1});
    CHECK(b.rank() == 4);
    CHECK(b.c1() == DivisorClass{Rational(3)});
    CHECK(b.as_formal_sheaf().rank == 4);
    CHECK_THROWS_AS(SplitBundle(std::vector<DivisorClass>{}), InvalidArgument);
}

TEST_CASE("hn groups equal degrees and orders strictly") {
    SurfaceModel p2 = SurfaceModel::p2();
    SplitBundle b = p2_split({2, 2, 0, -1});
    HNFiltration hn = hn_filtration(b, p2);

    REQUIRE(hn.levels.size() == 3);
    CHECK(hn.levels[0].slope == 2);
    CHECK(hn.levels[0].summand_indices == std::vector<size_t>{0, 1});
    CHECK(hn.levels[1].slope == 0);
    CHECK(hn.levels[1].summand_indices == std::vector<size_t>{2});
    CHECK(hn.levels[2].slope == -1);
    CHECK(hn.levels[2].summand_indices == std::vector<size_t>{3});
    CHECK(hn.mu_max == 2);
    CHECK(hn.mu_min == -1);
    CHECK(hn.instability == 3);
    // Matches the subset-enumeration oracle.
    CHECK(hn.mu_max == brute_force_mu_max(b, p2));
}

TEST_CASE("hn on semistable input") {
    SurfaceModel p2 = SurfaceModel::p2();
    SplitBundle single = p2_split({3});
    HNFiltration hn_single = hn_filtration(single, p2);
    CHECK(hn_single.levels.size() == 1);
    CHECK(hn_single.instability == 0);

    SplitBundle equal = p2_split({1, 1, 1});
    HNFiltration hn_equal = hn_filtration(equal, p2);
    CHECK(hn_equal.levels.size() == 1);
    CHECK(hn_equal.semistable());
    CHECK(hn_equal.instability == 0);
}

TEST_CASE("hn level slopes strictly decrease and partition the summands") {
    testing::Prng prng(11);
    SurfaceModel p2 = SurfaceModel::p2();
    for (int i = 0; i < 300; ++i) {
        int count = static_cast<int>(prng.range(1, 6));
        std::vector<DivisorClass> summands;
        for (int j = 0; j < count; ++j) {
            summands.push_back(DivisorClass{Rational(prng.range(-4, 4))});
        }
        SplitBundle b(std::move(summands));
        HNFiltration hn = hn_filtration(b, p2);

        size_t total = 0;
        for (size_t level = 0; level < hn.levels.size(); ++level) {
            total += hn.levels[level].summand_indices.size();
            if (level > 0) {
                CHECK(hn.levels[level].slope < hn.levels[level - 1].slope);
            }
        }
        CHECK(total == static_cast<size_t>(b.rank()));
        CHECK(hn.instability >= 0);
        CHECK((hn.instability == 0) == (hn.levels.size() == 1));
        CHECK(hn.mu_max == brute_force_mu_max(b, p2));

        // mu_max and mu_min are the extreme summand degrees.
        Rational max_degree = p2.degree(b.summands()[0]);
        Rational min_degree = max_degree;
        for (const auto& s : b.summands()) {
            Rational deg = p2.degree(s);
            max_degree = deg > max_degree ? deg : max_degree;
            min_degree = deg < min_degree ? deg : min_degree;
        }
        CHECK(hn.mu_max == max_degree);
        CHECK(hn.mu_min == min_degree);
    }
}

TEST_CASE("jh factors of a semistable split bundle") {
    SurfaceModel p2 = SurfaceModel::p2();
    DivisorClass h = p2.generator_class(0);
    SplitBundle b({h, h});
    auto factors = jh_factors(b, p2);
    REQUIRE(factors.size() == 2);
    CHECK(factors[0] == h);
    CHECK(factors[1] == h);

    SurfaceModel s = SurfaceModel::product_lattice();
    SplitBundle mixed({s.generator_class(0), s.generator_class(1)});
    // Both degree 1 against H = a + b.
    auto mixed_factors = jh_factors(mixed, s);
    CHECK(mixed_factors.size() == 2);

    CHECK_THROWS_WITH_AS(jh_factors(p2_split({1, 0}), p2),
                         "jh_factors requires a semistable bundle: mu_max = 1, mu_min = 0",
                         PreconditionFailed);
}

TEST_CASE("twist") {
    SurfaceModel p2 = SurfaceModel::p2();
    DivisorClass h = p2.generator_class(0);
    FormalSheaf f(2, p2.zero_class());

    FormalSheaf twisted = twist(f, Rational(-3) * h);
    CHECK(twisted.rank == 2);
    CHECK(twisted.c1 == Rational(-6) * h);

    CHECK(twist(f, p2.zero_class()).c1 == f.c1);

    testing::Prng prng(5);
    for (int i = 0; i < 100; ++i) {
        FormalSheaf g(static_cast<int>(prng.range(1, 5)), prng.divisor(1));
        DivisorClass d = prng.divisor(1);
        CHECK(slope(twist(g, d), p2) - slope(g, p2) == p2.degree(d));
    }
}

TEST_CASE("twist invariance of instability") {
    testing::Prng prng(13);
    SurfaceModel p2 = SurfaceModel::p2();
    for (int i = 0; i < 100; ++i) {
        int count = static_cast<int>(prng.range(1, 5));
        std::vector<DivisorClass> summands;
        for (int j = 0; j < count; ++j) {
            summands.push_back(prng.divisor(1));
        }
        SplitBundle b(std::move(summands));
        DivisorClass d = prng.divisor(1);
        CHECK(instability(twist(b, d), p2) == instability(b, p2));
    }
}

TEST_CASE("direct sum adds ranks and chern classes") {
    SurfaceModel p2 = SurfaceModel::p2();
    DivisorClass h = p2.generator_class(0);
    FormalSheaf f(2, Rational(3) * h);
    FormalSheaf g(3, Rational(-1) * h);

    FormalSheaf sum = direct_sum({f, g});
    CHECK(sum.rank == 5);
    CHECK(sum.c1 == Rational(2) * h);
    CHECK(slope(direct_sum({f, f}), p2) == slope(f, p2));
}

TEST_CASE("tensor") {
    SurfaceModel p2 = SurfaceModel::p2();
    DivisorClass h = p2.generator_class(0);
    FormalSheaf f(2, Rational(3) * h);
    FormalSheaf trivial_line(1, p2.zero_class());

    FormalSheaf same = tensor(f, trivial_line);
    CHECK(same.rank == f.rank);
    CHECK(same.c1 == f.c1);

    FormalSheaf line_sum = tensor(FormalSheaf(1, Rational(2) * h), FormalSheaf(1, Rational(5) * h));
    CHECK(line_sum.rank == 1);
    CHECK(line_sum.c1 == Rational(7) * h);

    testing::Prng prng(17);
    for (int i = 0; i < 100; ++i) {
        FormalSheaf x(static_cast<int>(prng.range(1, 4)), prng.divisor(1));
        FormalSheaf y(static_cast<int>(prng.range(1, 4)), prng.divisor(1));
        CHECK(slope(tensor(x, y), p2) == slope(x, p2) + slope(y, p2));
    }
}

TEST_CASE("symmetric powers of rank-2 sheaves") {
    SurfaceModel p2 = SurfaceModel::p2();
    FormalSheaf omega(2, DivisorClass{Rational(-3)});

    FormalSheaf sym0 = sym_power_rank2(omega, 0);
    CHECK(sym0.rank == 1);
    CHECK(sym0.c1.is_zero());

    FormalSheaf sym1 = sym_power_rank2(omega, 1);
    CHECK(sym1.rank == 2);
    CHECK(sym1.c1 == omega.c1);

    for (int l = 0; l <= 6; ++l) {
        CHECK(slope(sym_power_rank2(omega, l), p2) == Rational(l) * slope(omega, p2));
    }

    CHECK_THROWS_AS(sym_power_rank2(FormalSheaf(3, DivisorClass{Rational(1)}), 2),
                    InvalidArgument);
    CHECK_THROWS_AS(sym_power_rank2(omega, -1), InvalidArgument);
}

TEST_CASE("symmetric powers match the split expansion") {
    SurfaceModel s = SurfaceModel::product_lattice();
    DivisorClass d = Rational(2) * s.generator_class(0);
    DivisorClass e = Rational(-1) * s.generator_class(1);
    for (int l = 0; l <= 6; ++l) {
        SplitBundle expanded = sym_split_expand(d, e, l);
        FormalSheaf sym = sym_power_rank2(FormalSheaf(2, d + e), l);
        CHECK(expanded.rank() == sym.rank);
        CHECK(expanded.c1() == sym.c1);
    }

    // Sym^3(O(D) + O(E)) has the four summands 3D, 2D+E, D+2E, 3E.
    SplitBundle cubic = sym_split_expand(d, e, 3);
    REQUIRE(cubic.summands().size() == 4);
    CHECK(cubic.summands()[0] == Rational(3) * e);
    CHECK(cubic.summands()[1] == d + Rational(2) * e);
    CHECK(cubic.summands()[2] == Rational(2) * d + e);
    CHECK(cubic.summands()[3] == Rational(3) * d);
    CHECK(cubic.c1() == Rational(6) * (d + e));
}

}  // TEST_SUITE
