#include <doctest.h>

#include "errors.hpp"
#include "frobenius.hpp"
#include "test_support.hpp"

using namespace cycstab;

namespace {

// The K3 double plane: K_X = 0 on the cover lattice.
FrobeniusContext k3_context(long long p) {
    return FrobeniusContext(p, p2_cover_build(2, 6).cover_surface());
}

// A canonically nontrivial surface with deg K = 2: product lattice with
// K = a + b, H = a + b.
FrobeniusContext positive_canonical_context(long long p) {
    SurfaceModel surface = SurfaceModel::product_lattice(
        DivisorClass{Rational(1), Rational(1)});
    return FrobeniusContext(p, surface);
}

}  // namespace

TEST_SUITE("frobenius") {

TEST_CASE("context requires a prime") {
    CHECK_THROWS_AS(FrobeniusContext(4, SurfaceModel::p2()), InvalidArgument);
    CHECK_THROWS_AS(FrobeniusContext(1, SurfaceModel::p2()), InvalidArgument);
    FrobeniusContext ctx(3, SurfaceModel::p2());
    CHECK(ctx.cotangent().rank == 2);
    CHECK(ctx.cotangent().c1 == SurfaceModel::p2().canonical());
    CHECK(ctx.canonical_degree() == -3);
    CHECK(ctx.piece_count() == 5);
}

TEST_CASE("graded piece branches") {
    FrobeniusContext ctx = positive_canonical_context(3);
    FormalSheaf w(1, ctx.surface().zero_class(), "O");

    // l = 0 is W itself.
    FormalSheaf piece0 = graded_piece(ctx, w, 0);
    CHECK(piece0.rank == w.rank);
    CHECK(piece0.c1 == w.c1);

    // l = 2(p-1) = 4: W (x) Sym^0 (x) omega^2 -> rank W, c1 + 2*rank W*K.
    FormalSheaf piece4 = graded_piece(ctx, w, 4);
    CHECK(piece4.rank == 1);
    CHECK(piece4.c1 == Rational(2) * ctx.surface().canonical());

    // l = 2: W (x) Sym^2 Omega -> rank 3.
    FormalSheaf piece2 = graded_piece(ctx, w, 2);
    CHECK(piece2.rank == 3);

    CHECK_THROWS_AS(graded_piece(ctx, w, -1), InvalidArgument);
    CHECK_THROWS_AS(graded_piece(ctx, w, 5), InvalidArgument);
}

TEST_CASE("graded pieces on a K3 cover are all degree zero") {
    FrobeniusContext ctx = k3_context(3);
    FormalSheaf w(1, ctx.surface().zero_class(), "O");
    FiltrationProfile profile = filtration_profile(ctx, w);
    REQUIRE(profile.pieces.size() == 5);
    for (const auto& piece : profile.pieces) {
        CHECK(piece.degree == 0);
        CHECK(piece.slope == 0);
    }
    // rank pattern 1,2,3,2,1.
    CHECK(profile.pieces[0].rank == 1);
    CHECK(profile.pieces[1].rank == 2);
    CHECK(profile.pieces[2].rank == 3);
    CHECK(profile.pieces[3].rank == 2);
    CHECK(profile.pieces[4].rank == 1);
}

TEST_CASE("canonically trivial surfaces scale piece degrees by rank") {
    // K_X = 0 makes every twist by T^l degree-neutral: deg(piece l) is
    // rank(T^l) * deg W.
    testing::Prng prng(79);
    FrobeniusContext ctx = k3_context(3);
    for (int i = 0; i < 50; ++i) {
        FormalSheaf w(static_cast<int>(prng.range(1, 3)), prng.integral_divisor(1));
        Rational deg_w = ctx.surface().degree(w.c1);
        FiltrationProfile profile = filtration_profile(ctx, w);
        for (const auto& piece : profile.pieces) {
            CHECK(piece.degree == Rational(piece.rank / w.rank) * deg_w);
        }
    }
}

TEST_CASE("rank conservation over p and rank W") {
    SurfaceModel surface = SurfaceModel::product_lattice(
        DivisorClass{Rational(2), Rational(-1)});
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
        FrobeniusContext ctx(p, surface);
        for (int rank = 1; rank <= 3; ++rank) {
            FormalSheaf w(rank, DivisorClass{Rational(1), Rational(2)});
            FiltrationProfile profile = filtration_profile(ctx, w);
            CHECK(profile.total_rank() == p * p * rank);
            CHECK(static_cast<int>(profile.pieces.size()) == 2 * p - 1);
        }
    }
}

TEST_CASE("pushforward invariants") {
    // p = 2 with deg K_X = 2: piece degrees 0, 2, 2 so deg F_*O = 2,
    // rank 4, slope 1/2.
    FrobeniusContext ctx = positive_canonical_context(2);
    FormalSheaf w(1, ctx.surface().zero_class(), "O");
    CHECK(ctx.canonical_degree() == 2);

    FiltrationProfile profile = filtration_profile(ctx, w);
    REQUIRE(profile.pieces.size() == 3);
    CHECK(profile.pieces[0].degree == 0);
    CHECK(profile.pieces[1].degree == 2);
    CHECK(profile.pieces[2].degree == 2);

    PushforwardInvariants inv = pushforward_invariants(ctx, w);
    CHECK(inv.rank == 4);
    CHECK(inv.degree == 2);
    CHECK(inv.slope == rational(1, 2));

    // K3 cover: degree and slope vanish for any p.
    for (long long p : {3LL, 5LL, 7LL}) {
        FrobeniusContext k3 = k3_context(p);
        FormalSheaf o(1, k3.surface().zero_class());
        PushforwardInvariants k3_inv = pushforward_invariants(k3, o);
        CHECK(k3_inv.rank == p * p);
        CHECK(k3_inv.degree == 0);
        CHECK(k3_inv.slope == 0);
    }
}

TEST_CASE("degree convention: p * deg(F_*W) equals the piece degree sum") {
    testing::Prng prng(71);
    SurfaceModel surface = SurfaceModel::product_lattice(
        DivisorClass{Rational(3), Rational(-2)});
    for (long long p : {2LL, 3LL, 5LL}) {
        FrobeniusContext ctx(p, surface);
        for (int i = 0; i < 30; ++i) {
            FormalSheaf w(static_cast<int>(prng.range(1, 3)), prng.integral_divisor(2));
            FiltrationProfile profile = filtration_profile(ctx, w);
            PushforwardInvariants inv = pushforward_invariants(ctx, w);
            CHECK(rational_from_integer(p) * inv.degree == profile.total_degree());
        }
    }
}

TEST_CASE("instability budget") {
    FrobeniusContext ctx = positive_canonical_context(2);  // 2p-1 = 3 entries
    FormalSheaf w(1, ctx.surface().zero_class());

    std::vector<Rational> zeros(3, Rational(0));
    CHECK(instability_budget(ctx, w, zeros) == 0);

    std::vector<Rational> mixed = {Rational(0), Rational(3), Rational(1)};
    CHECK(instability_budget(ctx, w, mixed) == 3);

    std::vector<Rational> short_list(2, Rational(0));
    CHECK_THROWS_AS(instability_budget(ctx, w, short_list), InvalidArgument);

    std::vector<Rational> negative = {Rational(0), Rational(-1), Rational(0)};
    CHECK_THROWS_AS(instability_budget(ctx, w, negative), InvalidArgument);

    CHECK(instability_budget_rank1_stable_cotangent(ctx, w) == 0);
    FormalSheaf rank2(2, ctx.surface().zero_class());
    CHECK_THROWS_AS(instability_budget_rank1_stable_cotangent(ctx, rank2), PreconditionFailed);
}

TEST_CASE("frobenius certificate") {
    // K3 cover: K_X.H = 0, budget 0 -> Semistable, never upgraded.
    FrobeniusContext k3 = k3_context(5);
    FormalSheaf o(1, k3.surface().zero_class());
    Certificate boundary = frobenius_certificate(k3, o, Rational(0), true);
    CHECK(boundary.theorem() == "Thm4.3");
    CHECK(boundary.conclusion() == Conclusion::Semistable);

    // Negative K_X.H: inconclusive regardless of budget.
    FrobeniusContext negative(5, SurfaceModel::p2());
    FormalSheaf o_p2(1, SurfaceModel::p2().zero_class());
    Certificate inconclusive = frobenius_certificate(negative, o_p2, Rational(0), true);
    CHECK(inconclusive.conclusion() == Conclusion::Inconclusive);

    // Positive budget records the slope-drop bound and stays inconclusive.
    Certificate budget3 = frobenius_certificate(negative, o_p2, Rational(3), false);
    CHECK(budget3.conclusion() == Conclusion::Inconclusive);
    CHECK(*budget3.value("slope_drop_bound") == "-3/5");

    // Strictly positive canonical degree with stable twists: Stable.
    FrobeniusContext positive = positive_canonical_context(3);
    FormalSheaf o_pos(1, positive.surface().zero_class());
    Certificate stable = frobenius_certificate(positive, o_pos, Rational(0), true);
    CHECK(stable.conclusion() == Conclusion::Stable);
    // Without the stability of the twists: semistable only.
    Certificate semi = frobenius_certificate(positive, o_pos, Rational(0), false);
    CHECK(semi.conclusion() == Conclusion::Semistable);

    CHECK_THROWS_AS(frobenius_certificate(positive, o_pos, Rational(-1), false),
                    InvalidArgument);
}

TEST_CASE("cor4.5 certificates on quoted instances") {
    Certificate stable = cor45_certificate(3, 6, 5);
    CHECK(stable.theorem() == "Cor4.5");
    CHECK(stable.conclusion() == Conclusion::Stable);
    CHECK(*stable.value("K_X.H") == "3");

    Certificate quartic = cor45_certificate(4, 4, 3);
    CHECK(quartic.conclusion() == Conclusion::Semistable);
    CHECK(*quartic.value("K_X.H") == "0");

    // The erratum point: claimed Stable, certified Semistable.
    Certificate erratum = cor45_certificate(2, 6, 5);
    CHECK(erratum.conclusion() == Conclusion::Semistable);
    CHECK(*erratum.value("K_X.H") == "0");
    CHECK(*erratum.value("claimed_region_stable") == "true");
    bool has_erratum = false;
    for (const auto& note : erratum.notes()) {
        if (note.find("erratum") != std::string::npos) {
            has_erratum = true;
        }
    }
    CHECK(has_erratum);

    CHECK_THROWS_AS(cor45_certificate(3, 6, 3), InvalidArgument);  // p | n
    CHECK_THROWS_AS(cor45_certificate(3, 4, 5), InvalidArgument);  // n does not divide d
}

TEST_CASE("cor4.5 canonical degree closed form over the grid") {
    for (int n = 2; n <= 6; ++n) {
        for (int d = n; d <= 30; d += n) {
            for (long long p : {3LL, 5LL, 7LL}) {
                if (n % p == 0) {
                    continue;
                }
                Certificate cert = cor45_certificate(n, d, p);
                CHECK(*cert.value("K_X.H") == rational_to_string(Rational(-3 * n + (n - 1) * d)));
            }
        }
    }
}

}  // TEST_SUITE
