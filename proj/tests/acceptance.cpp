// Acceptance suite: runs every criterion at its stated tolerance (all are
// exact) and prints one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria. argv[1] is the CLI binary used by the
// determinism criterion.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "frobenius.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "runner.hpp"

using namespace cycstab;

namespace {

std::string g_cli_path;

struct Criterion {
    int number;
    std::string name;
    std::function<bool(std::string&)> run;
};

bool expect(bool condition, const std::string& message, std::string& detail) {
    if (!condition && detail.empty()) {
        detail = message;
    }
    return condition;
}

// --- criterion 1 -----------------------------------------------------------

bool k3_identification(std::string& detail) {
    bool ok = true;
    for (auto [n, d] : {std::pair{2, 6}, std::pair{4, 4}}) {
        CyclicCover cover = p2_cover_build(n, d);
        std::ostringstream tag;
        tag << "(n=" << n << ", d=" << d << ")";
        ok &= expect(cover.canonical_x().is_zero(), tag.str() + ": K_X != 0", detail);
        ok &= expect(slope(cover.cotangent_x(), cover.cover_surface()) == 0,
                     tag.str() + ": mu(Omega_X) != 0", detail);
        ok &= expect(k3_check(cover).is_k3, tag.str() + ": k3_check false", detail);
    }
    return ok;
}

// --- criterion 2 -----------------------------------------------------------

bool cor38_region_table(std::string& detail) {
    bool ok = true;
    int cases = 0;
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= 5; ++k) {
            int d = n * k;
            ++cases;
            Certificate cert = p2_cover_certificate(n, d);
            Conclusion expected =
                cor38_region_stable(n, d) ? Conclusion::Stable : Conclusion::Semistable;
            std::ostringstream tag;
            tag << "(n=" << n << ", d=" << d << ")";
            ok &= expect(cert.conclusion() == expected,
                         tag.str() + ": numeric conclusion differs from the region", detail);
        }
    }
    ok &= expect(cases == 25, "expected 25 grid cases", detail);
    return ok;
}

// --- criterion 3 -----------------------------------------------------------

bool grr_oracle(std::string& detail) {
    bool ok = true;
    // A self-contained randomized suite, independent of the selftest path.
    class Prng {
    public:
        explicit Prng(uint64_t seed) : state_(seed) {}
        uint64_t next() {
            state_ ^= state_ >> 12;
            state_ ^= state_ << 25;
            state_ ^= state_ >> 27;
            return state_ * 0x2545f4914f6cdd1dull;
        }
        long range(long lo, long hi) {
            return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
        }

    private:
        uint64_t state_;
    } prng(0xacce97ed);

    SurfaceModel p2 = SurfaceModel::p2();
    SurfaceModel product =
        SurfaceModel::product_lattice(DivisorClass{Rational(-2), Rational(1)});
    for (int i = 0; i < 1000 && ok; ++i) {
        const SurfaceModel& base = (i % 2 == 0) ? p2 : product;
        int n = static_cast<int>(prng.range(2, 6));
        std::vector<Rational> l_coeffs;
        std::vector<Rational> c1_coeffs;
        for (size_t g = 0; g < base.rank(); ++g) {
            l_coeffs.push_back(Rational(prng.range(-3, 3)));
            c1_coeffs.push_back(Rational(prng.range(-5, 5)));
        }
        CyclicCover cover(base, DivisorClass(std::move(l_coeffs)), n);
        FormalSheaf f(static_cast<int>(prng.range(1, 4)), DivisorClass(std::move(c1_coeffs)));
        std::ostringstream tag;
        tag << "case " << i << " (base " << base.name() << ", n=" << n << ")";
        ok &= expect(grr_consistency(cover, f), tag.str() + ": GRR degree mismatch", detail);
    }

    for (const SurfaceModel& base : {p2, product}) {
        for (int n = 2; n <= 6 && ok; ++n) {
            std::vector<Rational> ones(base.rank(), Rational(1));
            CyclicCover cover(base, DivisorClass(std::move(ones)), n);
            FormalSheaf trivial(1, cover.cover_surface().zero_class());
            ok &= expect(cover.pushforward_slope(trivial) ==
                             slope(cover.pushforward_structure_sheaf(), base),
                         "mu(pi_*O) differs from the summand mean", detail);
        }
    }
    return ok;
}

// --- criterion 4 -----------------------------------------------------------

bool erratum_detection(std::string& detail) {
    bool ok = true;
    SurfaceModel p2 = SurfaceModel::p2();
    int nonzero = 0;
    for (int n = 2; n <= 6; ++n) {
        for (long l = -3; l <= 3; ++l) {
            CyclicCover cover(p2, DivisorClass{Rational(l)}, n);
            FormalSheaf f(2, DivisorClass{Rational(1)});
            Rational decomposition = slope(cover.pushforward_pullback_sum(f), p2);
            Rational mu_pullback = slope(cover.pullback_sheaf(f), cover.cover_surface());
            Rational derived = mu_pullback / n - Rational(n - 1) / 2 * p2.degree(cover.l_class());
            Rational printed = mu_pullback / n - Rational(n - 1) * p2.degree(cover.l_class());

            std::ostringstream tag;
            tag << "(n=" << n << ", L=" << l << "h)";
            ok &= expect(derived == decomposition,
                         tag.str() + ": derived constant fails the decomposition", detail);
            ok &= expect(cover.pushforward_slope(cover.pullback_sheaf(f)) == decomposition,
                         tag.str() + ": pushforward_slope disagrees with the decomposition",
                         detail);
            if (l != 0) {
                ++nonzero;
                ok &= expect(printed != decomposition,
                             tag.str() + ": printed constant unexpectedly passes", detail);
            }
        }
    }
    ok &= expect(nonzero == 30, "expected 30 nonzero-L cases", detail);
    return ok;
}

// --- criterion 5 -----------------------------------------------------------

bool hn_oracle_equivalence(std::string& detail) {
    bool ok = true;
    SurfaceModel p2 = SurfaceModel::p2();
    std::vector<long> degrees;
    long cases = 0;

    std::function<void(long)> recurse = [&](long min_value) {
        if (!ok) {
            return;
        }
        if (!degrees.empty()) {
            ++cases;
            std::vector<DivisorClass> summands;
            bool all_equal = true;
            for (long deg : degrees) {
                summands.push_back(DivisorClass{Rational(deg)});
                all_equal = all_equal && deg == degrees.front();
            }
            SplitBundle bundle(std::move(summands));
            HNFiltration hn = hn_filtration(bundle, p2);
            std::ostringstream tag;
            tag << "degrees {";
            for (long deg : degrees) {
                tag << deg << " ";
            }
            tag << "}";
            ok &= expect(hn.mu_max == brute_force_mu_max(bundle, p2),
                         tag.str() + ": mu_max differs from the subset oracle", detail);
            ok &= expect((hn.instability == 0) == all_equal,
                         tag.str() + ": semistability differs from the all-equal test", detail);
        }
        if (degrees.size() == 6) {
            return;
        }
        for (long v = min_value; v <= 4; ++v) {
            degrees.push_back(v);
            recurse(v);
            degrees.pop_back();
        }
    };
    recurse(-4);
    ok &= expect(cases == 5004, "expected 5004 multisets", detail);
    return ok;
}

// --- criterion 6 -----------------------------------------------------------

bool frobenius_rank_conservation(std::string& detail) {
    bool ok = true;
    SurfaceModel surface =
        SurfaceModel::product_lattice(DivisorClass{Rational(2), Rational(-1)});
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
        FrobeniusContext ctx(p, surface);
        for (int rank = 1; rank <= 3; ++rank) {
            FormalSheaf w(rank, DivisorClass{Rational(1), Rational(1)});
            FiltrationProfile profile = filtration_profile(ctx, w);
            std::ostringstream tag;
            tag << "(p=" << p << ", rank=" << rank << ")";
            ok &= expect(profile.total_rank() == p * p * rank,
                         tag.str() + ": rank sum is not p^2 * rank W", detail);
        }
    }
    return ok;
}

// --- criterion 7 -----------------------------------------------------------

bool cor45_region(std::string& detail) {
    bool ok = true;
    int erratum_points = 0;
    for (int n = 2; n <= 6; ++n) {
        for (int d = n; d <= 30; d += n) {
            for (long long p : {3LL, 5LL, 7LL}) {
                if (n % p == 0) {
                    continue;
                }
                Certificate cert = cor45_certificate(n, d, p);
                Rational k_dot_h(-3 * n + (n - 1) * d);
                std::ostringstream tag;
                tag << "(n=" << n << ", d=" << d << ", p=" << p << ")";

                ok &= expect(*cert.value("K_X.H") == rational_to_string(k_dot_h),
                             tag.str() + ": K_X.H differs from -3n + (n-1)d", detail);

                bool certified = cert.conclusion() != Conclusion::Inconclusive;
                ok &= expect(certified == (k_dot_h >= 0),
                             tag.str() + ": semistable region is not {K_X.H >= 0}", detail);
                if (cert.conclusion() == Conclusion::Stable) {
                    ok &= expect(k_dot_h > 0, tag.str() + ": stable without K_X.H > 0", detail);
                }

                if (n == 2 && d == 6) {
                    ++erratum_points;
                    bool noted = false;
                    for (const auto& note : cert.notes()) {
                        if (note.find("erratum") != std::string::npos) {
                            noted = true;
                        }
                    }
                    ok &= expect(cert.conclusion() == Conclusion::Semistable,
                                 tag.str() + ": boundary point not Semistable", detail);
                    ok &= expect(noted, tag.str() + ": boundary point missing erratum note",
                                 detail);
                } else {
                    // Everywhere else the claimed regions agree with the
                    // computed conclusion.
                    bool claimed_stable = cor45_claimed_stable(n, d);
                    bool claimed_semi = cor45_claimed_semistable(n, d);
                    if (claimed_stable) {
                        ok &= expect(cert.conclusion() == Conclusion::Stable,
                                     tag.str() + ": claimed-stable point not certified stable",
                                     detail);
                    } else if (claimed_semi) {
                        ok &= expect(cert.conclusion() != Conclusion::Inconclusive,
                                     tag.str() + ": claimed-semistable point inconclusive",
                                     detail);
                    }
                }
            }
        }
    }
    ok &= expect(erratum_points == 3, "expected the boundary point at each p in {3,5,7}", detail);
    return ok;
}

// --- criterion 8 -----------------------------------------------------------

bool pullback_slope_scaling(std::string& detail) {
    bool ok = true;
    class Prng {
    public:
        explicit Prng(uint64_t seed) : state_(seed) {}
        uint64_t next() {
            state_ ^= state_ >> 12;
            state_ ^= state_ << 25;
            state_ ^= state_ >> 27;
            return state_ * 0x2545f4914f6cdd1dull;
        }
        long range(long lo, long hi) {
            return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
        }

    private:
        uint64_t state_;
    } prng(0x5ca1ab1e);

    SurfaceModel p2 = SurfaceModel::p2();
    SurfaceModel product =
        SurfaceModel::product_lattice(DivisorClass{Rational(1), Rational(-1)});
    for (int i = 0; i < 500 && ok; ++i) {
        const SurfaceModel& base = (i % 2 == 0) ? p2 : product;
        int n = static_cast<int>(prng.range(2, 6));
        std::vector<Rational> l_coeffs;
        std::vector<Rational> c1_coeffs;
        for (size_t g = 0; g < base.rank(); ++g) {
            l_coeffs.push_back(Rational(prng.range(-2, 2)));
            c1_coeffs.push_back(rational(prng.range(-8, 8), prng.range(1, 3)));
        }
        CyclicCover cover(base, DivisorClass(std::move(l_coeffs)), n);
        FormalSheaf f(static_cast<int>(prng.range(1, 5)), DivisorClass(std::move(c1_coeffs)));

        std::ostringstream tag;
        tag << "case " << i;
        ok &= expect(slope(cover.pullback_sheaf(f), cover.cover_surface()) ==
                         Rational(n) * slope(f, base),
                     tag.str() + ": mu(pullback F) != n*mu(F)", detail);

        Certificate stable = pullback_stability(cover, f, StabilityAssumption::Stable);
        Certificate semi = pullback_stability(cover, f, StabilityAssumption::Semistable);
        ok &= expect(stable.conclusion() == Conclusion::Stable &&
                         semi.conclusion() == Conclusion::Semistable,
                     tag.str() + ": conclusion does not mirror the assumption", detail);
    }
    return ok;
}

// --- criterion 9 -----------------------------------------------------------

bool boundary_behavior(std::string& detail) {
    bool ok = true;
    CyclicCover boundary = p2_cover_build(2, 2);
    Certificate semi = cotangent_semistability(boundary);
    Certificate strict = cotangent_stability(boundary);
    ok &= expect(*semi.value("criterion_value") == "0", "(n=2, d=2): criterion value != 0",
                 detail);
    ok &= expect(semi.conclusion() == Conclusion::Semistable,
                 "(n=2, d=2): Thm3.5 does not conclude Semistable", detail);
    ok &= expect(strict.conclusion() == Conclusion::Inconclusive,
                 "(n=2, d=2): Thm3.6 should be Inconclusive", detail);

    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= 5; ++k) {
            int d = n * k;
            CyclicCover cover = p2_cover_build(n, d);
            const SurfaceModel& base = cover.base();
            Rational evaluated = Rational(n) * base.degree(base.canonical()) +
                                 Rational(n + 1) * base.degree(cover.branch_class());
            std::ostringstream tag;
            tag << "(n=" << n << ", d=" << d << ")";
            ok &= expect(evaluated == Rational(-3 * n + (n + 1) * d),
                         tag.str() + ": intersection evaluation differs from -3n + (n+1)d",
                         detail);
            ok &= expect(*cotangent_semistability(cover).value("criterion_value") ==
                             rational_to_string(evaluated),
                         tag.str() + ": certificate value differs from the evaluation", detail);
        }
    }
    return ok;
}

// --- criterion 10 ----------------------------------------------------------

std::string run_cli(const std::string& arguments, bool& ok, std::string& detail) {
    std::string command = "'" + g_cli_path + "' " + arguments;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        ok = expect(false, "failed to spawn the CLI", detail);
        return "";
    }
    std::string output;
    char buffer[4096];
    size_t count;
    while ((count = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        output.append(buffer, count);
    }
    int status = pclose(pipe);
    ok &= expect(status == 0, "CLI exited nonzero for: " + arguments, detail);
    return output;
}

bool cli_determinism(std::string& detail) {
    bool ok = true;
    if (g_cli_path.empty()) {
        return expect(false, "CLI path not supplied on the command line", detail);
    }
    std::string first = run_cli("region cor3.8 --json", ok, detail);
    std::string second = run_cli("region cor3.8 --json", ok, detail);
    if (!ok) {
        return false;
    }
    ok &= expect(!first.empty(), "empty CLI output", detail);
    ok &= expect(first == second, "two runs are not byte-identical", detail);

    // Re-parse and compare exact values against criterion 2's certificates.
    try {
        Json parsed = Json::parse(first);
        const Json& rows = parsed.at("results").at(0).at("rows");
        ok &= expect(rows.size() == 25, "expected 25 rows in the region table", detail);
        for (const auto& row : rows) {
            Certificate reparsed = certificate_from_json(row.at("certificate"));
            Certificate direct =
                p2_cover_certificate(row.at("n").get<int>(), row.at("d").get<int>());
            std::ostringstream tag;
            tag << "(n=" << row.at("n").get<int>() << ", d=" << row.at("d").get<int>() << ")";
            ok &= expect(reparsed.conclusion() == direct.conclusion(),
                         tag.str() + ": conclusion changed through the round trip", detail);
            ok &= expect(reparsed.values() == direct.values(),
                         tag.str() + ": values changed through the round trip", detail);
        }
    } catch (const std::exception& e) {
        ok = expect(false, std::string("failed to re-parse the JSON report: ") + e.what(),
                    detail);
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_cli_path = argv[1];
    }

    std::vector<Criterion> criteria = {
        {1, "K3 identification (n=2,d=6) and (n=4,d=4)", k3_identification},
        {2, "Cor3.8 region table over 25 grid cases", cor38_region_table},
        {3, "GRR/decomposition oracle, 1000 randomized covers", grr_oracle},
        {4, "erratum detection for the pushforward slope constant", erratum_detection},
        {5, "HN oracle equivalence, exhaustive split bundles", hn_oracle_equivalence},
        {6, "Frobenius rank conservation", frobenius_rank_conservation},
        {7, "Cor4.5 region with the (n=2,d=6) erratum pinned", cor45_region},
        {8, "pullback slope scaling and assumption passthrough", pullback_slope_scaling},
        {9, "Thm3.5/Thm3.6 boundary behavior", boundary_behavior},
        {10, "CLI determinism and certificate round trip", cli_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool passed = false;
        try {
            passed = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (passed) {
            std::printf("PASS  %2d  %s\n", criterion.number, criterion.name.c_str());
        } else {
            ++failures;
            std::printf("FAIL  %2d  %s%s%s\n", criterion.number, criterion.name.c_str(),
                        detail.empty() ? "" : " -- ", detail.c_str());
        }
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("acceptance: %d of %zu criteria failed\n", failures, criteria.size());
    }
    return failures;
}
