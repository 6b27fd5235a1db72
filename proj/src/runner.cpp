#include "runner.hpp"

#include <cctype>
#include <iomanip>
#include <optional>
#include <sstream>

#include "errors.hpp"
#include "frobenius.hpp"
#include "oracle.hpp"

namespace cycstab {

namespace {

// Scenario declarations promoted to domain objects.
class Session {
public:
    explicit Session(const Scenario& scenario) : scenario_(scenario) {
        if (scenario.surface.has_value()) {
            surface_ = build_surface(*scenario.surface);
        }
        if (scenario.cover.has_value()) {
            const CoverDecl& decl = *scenario.cover;
            if (!surface_.has_value()) {
                throw ParseError(scenario.source_name + ": [cover] requires a [surface] section",
                                 decl.line, 1);
            }
            if (decl.n == 0) {
                throw ParseError(scenario.source_name + ": [cover] is missing 'n'", decl.line, 1);
            }
            if (decl.l_coefficients.empty()) {
                throw ParseError(scenario.source_name + ": [cover] is missing 'L'", decl.line, 1);
            }
            cover_.emplace(*surface_, DivisorClass(decl.l_coefficients), decl.n, decl.char_p);
        }
        for (const auto& decl : scenario.bundles) {
            validate_bundle(decl);
        }
    }

    const SurfaceModel& surface() const {
        if (!surface_.has_value()) {
            throw UnresolvedName("this query needs a [surface] section");
        }
        return *surface_;
    }

    const CyclicCover& cover() const {
        if (!cover_.has_value()) {
            throw UnresolvedName("this query needs a [cover] section");
        }
        return *cover_;
    }

    bool has_cover() const { return cover_.has_value(); }

    // Lattice the declared classes of `decl` live on.
    const SurfaceModel& lattice_of(const BundleDecl& decl) const {
        if (decl.on_cover) {
            return cover().cover_surface();
        }
        return surface();
    }

    const BundleDecl& bundle(const std::string& name) const {
        const BundleDecl* decl = scenario_.find_bundle(name);
        if (decl == nullptr) {
            throw UnresolvedName("no bundle or split named '" + name + "' is declared");
        }
        return *decl;
    }

    FormalSheaf formal_sheaf(const BundleDecl& decl) const {
        const SurfaceModel& lattice = lattice_of(decl);
        if (decl.kind == BundleDecl::Kind::Split) {
            return split_bundle(decl).as_formal_sheaf(decl.name);
        }
        FormalSheaf sheaf(decl.rank, DivisorClass(decl.c1), decl.name);
        if (sheaf.c1.dimension() != lattice.rank()) {
            throw DimensionMismatch("bundle '" + decl.name + "' does not match its lattice rank");
        }
        return sheaf;
    }

    SplitBundle split_bundle(const BundleDecl& decl) const {
        if (decl.kind != BundleDecl::Kind::Split) {
            throw InvalidArgument("'" + decl.name + "' is not a split bundle");
        }
        const SurfaceModel& lattice = lattice_of(decl);
        std::vector<DivisorClass> summands;
        for (const auto& row : decl.summands) {
            summands.emplace_back(row);
        }
        SplitBundle bundle(std::move(summands));
        if (bundle.summands().front().dimension() != lattice.rank()) {
            throw DimensionMismatch("split '" + decl.name + "' does not match its lattice rank");
        }
        return bundle;
    }

private:
    static SurfaceModel build_surface(const SurfaceDecl& decl) {
        if (decl.preset.has_value()) {
            if (*decl.preset == "p2" || *decl.preset == "P2") {
                if (decl.canonical.has_value() || decl.polarization.has_value() ||
                    !decl.generators.empty() || !decl.intersection.empty()) {
                    throw ParseError("the p2 preset takes no overrides", decl.line, 1);
                }
                return SurfaceModel::p2();
            }
            // product preset: canonical/polarization may be overridden.
            if (!decl.generators.empty() || !decl.intersection.empty()) {
                throw ParseError("presets fix the generators and intersection matrix", decl.line,
                                 1);
            }
            DivisorClass canonical = decl.canonical.has_value() ? DivisorClass(*decl.canonical)
                                                                : DivisorClass::zero(2);
            DivisorClass polarization =
                decl.polarization.has_value()
                    ? DivisorClass(*decl.polarization)
                    : DivisorClass{Rational(1), Rational(1)};
            return SurfaceModel::product_lattice(std::move(canonical), std::move(polarization));
        }
        if (decl.generators.empty() || decl.intersection.empty() || !decl.canonical.has_value() ||
            !decl.polarization.has_value()) {
            throw ParseError(
                "inline surfaces need generators, intersection, canonical and polarization",
                decl.line, 1);
        }
        std::string name = decl.name.value_or("surface");
        return SurfaceModel(name, decl.generators, decl.intersection,
                            DivisorClass(*decl.canonical), DivisorClass(*decl.polarization));
    }

    void validate_bundle(const BundleDecl& decl) const {
        if (decl.kind == BundleDecl::Kind::Formal) {
            if (decl.rank == 0) {
                throw ParseError("bundle '" + decl.name + "' is missing 'rank'", decl.line, 1);
            }
            if (decl.c1.empty()) {
                throw ParseError("bundle '" + decl.name + "' is missing 'c1'", decl.line, 1);
            }
        } else if (decl.summands.empty()) {
            throw ParseError("split '" + decl.name + "' is missing 'summands'", decl.line, 1);
        }
        if (decl.on_cover && !cover_.has_value()) {
            throw ParseError("'" + decl.name + "' is declared on X but there is no [cover]",
                             decl.line, 1);
        }
    }

    const Scenario& scenario_;
    std::optional<SurfaceModel> surface_;
    std::optional<CyclicCover> cover_;
};

void usage_error(const Query& query, const std::string& message) {
    throw ParseError("query '" + query.raw + "': " + message, query.line, 1);
}

std::string rational_list(const std::vector<Rational>& values) {
    std::ostringstream out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out << ", ";
        }
        out << rational_to_string(values[i]);
    }
    return out.str();
}

Json json_rational_array(const std::vector<Rational>& values) {
    Json array = Json::array();
    for (const auto& v : values) {
        array.push_back(rational_to_string(v));
    }
    return array;
}

Json json_class(const DivisorClass& divisor) {
    Json array = Json::array();
    for (const auto& c : divisor.coefficients()) {
        array.push_back(rational_to_string(c));
    }
    return array;
}

QueryResult certificate_result(const Query& query, Certificate certificate) {
    QueryResult result;
    result.query = query.raw;
    result.kind = "certificate";
    result.payload["certificate"] = certificate_to_json(certificate);
    result.text = certificate_to_text(certificate);
    return result;
}

QueryResult run_invariants(const Session& session, const Query& query) {
    const CyclicCover& cover = session.cover();
    const SurfaceModel& base = cover.base();
    const SurfaceModel& x = cover.cover_surface();

    DivisorClass k_x = cover.canonical_x();
    Rational deg_k_x = x.degree(k_x);
    Rational mu_omega_x = slope(cover.cotangent_x(), x);
    auto [deg_b, deg_b1] = cover.branch_degrees();
    SplitBundle structure = cover.pushforward_structure_sheaf();
    std::vector<Rational> structure_degrees;
    for (const auto& s : structure.summands()) {
        structure_degrees.push_back(base.degree(s));
    }
    Rational mu_structure = slope(structure, base);

    QueryResult result;
    result.query = query.raw;
    result.kind = "invariants";
    result.payload["n"] = cover.degree();
    result.payload["char"] = cover.characteristic();
    result.payload["L"] = json_class(cover.l_class());
    result.payload["K_X"] = json_class(k_x);
    result.payload["deg_K_X"] = rational_to_string(deg_k_x);
    result.payload["mu_Omega_X"] = rational_to_string(mu_omega_x);
    result.payload["deg_B"] = rational_to_string(deg_b);
    result.payload["deg_B1"] = rational_to_string(deg_b1);
    result.payload["pushforward_O_degrees"] = json_rational_array(structure_degrees);
    result.payload["mu_pushforward_O"] = rational_to_string(mu_structure);

    result.text.push_back("covering degree n = " + std::to_string(cover.degree()));
    result.text.push_back("characteristic = " + std::to_string(cover.characteristic()));
    result.text.push_back("K_X = " + k_x.to_string(x.generators()) +
                          ", deg K_X = " + rational_to_string(deg_k_x));
    result.text.push_back("mu(Omega_X) = " + rational_to_string(mu_omega_x));
    result.text.push_back("deg B = " + rational_to_string(deg_b) +
                          ", deg B1 = " + rational_to_string(deg_b1));
    result.text.push_back("pi_*O_X summand degrees = {" + rational_list(structure_degrees) +
                          "}, mu = " + rational_to_string(mu_structure));
    return result;
}

QueryResult run_certify(const Session& session, const Query& query) {
    if (query.args.empty()) {
        usage_error(query, "expected a theorem id (thm3.2, thm3.5, thm3.6, cor3.8, cor4.5)");
    }
    std::string thm = query.args[0];
    for (auto& c : thm) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (thm == "thm3.2") {
        if (query.args.size() != 3) {
            usage_error(query, "usage: certify thm3.2 <bundle> <stable|semistable>");
        }
        const BundleDecl& decl = session.bundle(query.args[1]);
        if (decl.on_cover) {
            throw InvalidArgument("certify thm3.2: '" + decl.name + "' must live on the base Y");
        }
        StabilityAssumption assumed;
        if (query.args[2] == "stable") {
            assumed = StabilityAssumption::Stable;
        } else if (query.args[2] == "semistable") {
            assumed = StabilityAssumption::Semistable;
        } else {
            usage_error(query, "assumption must be 'stable' or 'semistable'");
            return {};
        }
        return certificate_result(query,
                                  pullback_stability(session.cover(), session.formal_sheaf(decl),
                                                     assumed));
    }
    if (thm == "thm3.5") {
        if (query.args.size() != 1) {
            usage_error(query, "usage: certify thm3.5");
        }
        return certificate_result(query, cotangent_semistability(session.cover()));
    }
    if (thm == "thm3.6") {
        if (query.args.size() != 1) {
            usage_error(query, "usage: certify thm3.6");
        }
        return certificate_result(query, cotangent_stability(session.cover()));
    }
    if (thm == "cor3.8" || thm == "cor4.5") {
        const CyclicCover& cover = session.cover();
        if (!cover.base().is_p2_preset()) {
            throw InvalidArgument("certify " + thm + ": the cover base must be the p2 preset");
        }
        Rational d_rat = cover.base().degree(cover.branch_class());
        if (!is_integer(d_rat) || d_rat < 1) {
            throw InvalidArgument("certify " + thm + ": deg B must be a positive integer");
        }
        int d = static_cast<int>(d_rat.get_num().get_si());
        if (thm == "cor3.8") {
            return certificate_result(query, p2_cover_certificate(cover.degree(), d));
        }
        long long p = cover.characteristic();
        if (p == 0) {
            throw InvalidArgument(
                "certify cor4.5: the cover must declare a positive characteristic");
        }
        return certificate_result(query, cor45_certificate(cover.degree(), d, p));
    }
    usage_error(query, "unknown theorem id '" + query.args[0] + "'");
    return {};
}

QueryResult run_hn(const Session& session, const Query& query) {
    if (query.args.size() != 1) {
        usage_error(query, "usage: hn <split>");
    }
    const BundleDecl& decl = session.bundle(query.args[0]);
    const SurfaceModel& lattice = session.lattice_of(decl);
    SplitBundle bundle = session.split_bundle(decl);
    HNFiltration hn = hn_filtration(bundle, lattice);

    QueryResult result;
    result.query = query.raw;
    result.kind = "hn";
    Json levels = Json::array();
    for (const auto& level : hn.levels) {
        Json entry;
        entry["slope"] = rational_to_string(level.slope);
        entry["summands"] = level.summand_indices;
        levels.push_back(std::move(entry));
    }
    result.payload["levels"] = std::move(levels);
    result.payload["mu_max"] = rational_to_string(hn.mu_max);
    result.payload["mu_min"] = rational_to_string(hn.mu_min);
    result.payload["instability"] = rational_to_string(hn.instability);
    result.payload["semistable"] = hn.semistable();

    for (const auto& level : hn.levels) {
        std::ostringstream line;
        line << "slope " << rational_to_string(level.slope) << ": summands {";
        for (size_t i = 0; i < level.summand_indices.size(); ++i) {
            if (i > 0) {
                line << ", ";
            }
            line << level.summand_indices[i];
        }
        line << "}";
        result.text.push_back(line.str());
    }
    result.text.push_back("mu_max = " + rational_to_string(hn.mu_max) +
                          ", mu_min = " + rational_to_string(hn.mu_min) +
                          ", instability = " + rational_to_string(hn.instability));
    if (hn.semistable()) {
        Json jh = Json::array();
        std::ostringstream line;
        line << "jh factors: ";
        auto factors = jh_factors(bundle, lattice);
        for (size_t i = 0; i < factors.size(); ++i) {
            jh.push_back(json_class(factors[i]));
            if (i > 0) {
                line << ", ";
            }
            line << factors[i].to_string(lattice.generators());
        }
        result.payload["jh_factors"] = std::move(jh);
        result.text.push_back(line.str());
    }
    return result;
}

QueryResult run_pushforward(const Session& session, const Query& query) {
    if (query.args.size() != 1) {
        usage_error(query, "usage: pushforward <bundle>");
    }
    const CyclicCover& cover = session.cover();
    const BundleDecl& decl = session.bundle(query.args[0]);
    FormalSheaf sheaf = session.formal_sheaf(decl);

    QueryResult result;
    result.query = query.raw;
    result.kind = "pushforward";
    if (decl.on_cover) {
        // E on X: Grothendieck-Riemann-Roch invariants of pi_*E.
        Rational degree = cover.pushforward_degree(sheaf);
        Rational mu = cover.pushforward_slope(sheaf);
        int rank = cover.degree() * sheaf.rank;
        result.payload["on"] = "X";
        result.payload["rank"] = rank;
        result.payload["degree"] = rational_to_string(degree);
        result.payload["slope"] = rational_to_string(mu);
        result.text.push_back("pi_*" + decl.name + ": rank " + std::to_string(rank) +
                              ", deg = " + rational_to_string(degree) +
                              ", mu = " + rational_to_string(mu));
        return result;
    }
    // F on Y: decomposition pi_*pi^*F = F + F(-L) + ... + F(-(n-1)L).
    auto pieces = cover.pushforward_pullback_pieces(sheaf);
    FormalSheaf sum = cover.pushforward_pullback_sum(sheaf);
    Rational sum_slope = slope(sum, cover.base());
    Rational grr_degree = cover.pushforward_degree(cover.pullback_sheaf(sheaf));
    result.payload["on"] = "Y";
    Json json_pieces = Json::array();
    for (const auto& piece : pieces) {
        Json entry;
        entry["rank"] = piece.rank;
        entry["c1"] = json_class(piece.c1);
        entry["slope"] = rational_to_string(slope(piece, cover.base()));
        json_pieces.push_back(std::move(entry));
    }
    result.payload["pieces"] = std::move(json_pieces);
    result.payload["rank"] = sum.rank;
    result.payload["degree"] = rational_to_string(cover.base().degree(sum.c1));
    result.payload["slope"] = rational_to_string(sum_slope);
    result.payload["grr_degree"] = rational_to_string(grr_degree);
    result.payload["grr_consistent"] = grr_degree == cover.base().degree(sum.c1);

    result.text.push_back("pi_*pi^*" + decl.name + " = sum of " + std::to_string(pieces.size()) +
                          " twists:");
    for (size_t i = 0; i < pieces.size(); ++i) {
        result.text.push_back("  " + decl.name + "(-" + std::to_string(i) + "L): mu = " +
                              rational_to_string(slope(pieces[i], cover.base())));
    }
    result.text.push_back("total: rank " + std::to_string(sum.rank) +
                          ", mu = " + rational_to_string(sum_slope));
    result.text.push_back("GRR degree of pi_*(pi^*" + decl.name +
                          ") = " + rational_to_string(grr_degree) +
                          (grr_degree == cover.base().degree(sum.c1) ? " (consistent)"
                                                                     : " (MISMATCH)"));
    return result;
}

QueryResult run_frobenius(const Session& session, const Query& query) {
    if (query.args.empty() || query.args.size() > 2) {
        usage_error(query, "usage: frobenius <p> [<bundle>]");
    }
    auto p_rat = parse_rational(query.args[0]);
    if (!p_rat.has_value() || !is_integer(*p_rat) || *p_rat < 2 ||
        !p_rat->get_num().fits_slong_p()) {
        usage_error(query, "p must be a prime >= 2");
    }
    long long p = p_rat->get_num().get_si();

    const SurfaceModel* x = nullptr;
    bool on_cover = false;
    if (session.has_cover()) {
        const CyclicCover& cover = session.cover();
        if (cover.characteristic() != 0 && cover.characteristic() != p) {
            throw InvalidArgument("frobenius: p = " + std::to_string(p) +
                                  " conflicts with the cover characteristic " +
                                  std::to_string(cover.characteristic()));
        }
        if (cover.degree() % p == 0) {
            throw InvalidArgument("frobenius: p divides the covering degree n");
        }
        x = &cover.cover_surface();
        on_cover = true;
    } else {
        x = &session.surface();
    }
    FrobeniusContext ctx(p, *x);

    FormalSheaf w(1, x->zero_class(), "O");
    bool discharged = false;
    if (query.args.size() == 2) {
        const BundleDecl& decl = session.bundle(query.args[1]);
        if (decl.on_cover != on_cover) {
            throw InvalidArgument("frobenius: '" + decl.name + "' must live on " +
                                  (on_cover ? "X" : "the declared surface"));
        }
        w = session.formal_sheaf(decl);
    }

    // The zero budget is discharged only for rank-1 W over a P2 cover
    // whose cotangent bundle Cor3.8 certifies stable; otherwise it is an
    // input assumption and the certificate says so.
    bool omega_stable = false;
    if (on_cover && session.cover().base().is_p2_preset() && w.rank == 1) {
        Rational d_rat = session.cover().base().degree(session.cover().branch_class());
        if (is_integer(d_rat) && d_rat >= 1) {
            int d = static_cast<int>(d_rat.get_num().get_si());
            omega_stable = cor38_region_stable(session.cover().degree(), d);
            discharged = omega_stable;
        }
    }
    Rational budget(0);
    Certificate certificate = frobenius_certificate(ctx, w, budget, omega_stable);
    FiltrationProfile profile = filtration_profile(ctx, w);
    PushforwardInvariants invariants = pushforward_invariants(ctx, w);

    QueryResult result;
    result.query = query.raw;
    result.kind = "frobenius";
    result.payload["p"] = p;
    result.payload["W"] = w.label.empty() ? "O" : w.label;
    Json pieces = Json::array();
    for (const auto& piece : profile.pieces) {
        Json entry;
        entry["l"] = piece.level;
        entry["rank"] = piece.rank;
        entry["degree"] = rational_to_string(piece.degree);
        entry["slope"] = rational_to_string(piece.slope);
        pieces.push_back(std::move(entry));
    }
    result.payload["graded_pieces"] = std::move(pieces);
    result.payload["rank_FW"] = invariants.rank;
    result.payload["deg_FW"] = rational_to_string(invariants.degree);
    result.payload["mu_FW"] = rational_to_string(invariants.slope);
    result.payload["budget_discharged"] = discharged;
    result.payload["certificate"] = certificate_to_json(certificate);

    result.text.push_back("canonical filtration of F^*(F_*" + result.payload["W"].get<std::string>() +
                          "), p = " + std::to_string(p) + ":");
    for (const auto& piece : profile.pieces) {
        std::ostringstream line;
        line << "  l = " << piece.level << ": rank " << piece.rank << ", deg "
             << rational_to_string(piece.degree) << ", mu " << rational_to_string(piece.slope);
        result.text.push_back(line.str());
    }
    result.text.push_back("F_*W: rank " + std::to_string(invariants.rank) + ", deg " +
                          rational_to_string(invariants.degree) + ", mu " +
                          rational_to_string(invariants.slope));
    if (!discharged) {
        result.text.push_back(
            "instability budget 0 is an input assumption here (not discharged)");
    }
    auto cert_text = certificate_to_text(certificate);
    result.text.insert(result.text.end(), cert_text.begin(), cert_text.end());
    return result;
}

QueryResult run_k3(const Session& session, const Query& query) {
    K3Report report = k3_check(session.cover());
    QueryResult result;
    result.query = query.raw;
    result.kind = "k3";
    result.payload["is_k3"] = report.is_k3;
    result.payload["description"] = report.description;
    result.text.push_back(std::string("k3: ") + (report.is_k3 ? "true" : "false"));
    result.text.push_back(report.description);
    return result;
}

QueryResult run_region(const Query& query) {
    if (query.args.size() != 1 || (query.args[0] != "cor3.8" && query.args[0] != "cor4.5")) {
        usage_error(query, "usage: region cor3.8|cor4.5");
    }
    QueryResult result;
    result.query = query.raw;
    result.kind = "region";
    result.payload["region"] = query.args[0];
    Json rows = Json::array();
    if (query.args[0] == "cor3.8") {
        result.text.push_back("   n   d  conclusion  region        criterion");
        for (int n = 2; n <= 6; ++n) {
            for (int k = 1; k <= 5; ++k) {
                int d = n * k;
                Certificate certificate = p2_cover_certificate(n, d);
                Json row;
                row["n"] = n;
                row["d"] = d;
                row["certificate"] = certificate_to_json(certificate);
                rows.push_back(std::move(row));
                std::ostringstream line;
                const std::string* region = certificate.value("region_conclusion");
                const std::string* criterion = certificate.value("criterion_value");
                line << "  " << std::setw(2) << n << "  " << std::setw(2) << d << "  "
                     << std::setw(12) << std::left << to_string(certificate.conclusion())
                     << std::setw(12) << (region ? *region : "") << "  " << std::right
                     << (criterion ? *criterion : "");
                result.text.push_back(line.str());
            }
        }
    } else {
        result.text.push_back("   n   d  p  K_X.H  conclusion    claimed");
        for (int n = 2; n <= 6; ++n) {
            for (int d = n; d <= 30; d += n) {
                for (long long p : {3LL, 5LL, 7LL}) {
                    if (n % p == 0) {
                        continue;
                    }
                    Certificate certificate = cor45_certificate(n, d, p);
                    Json row;
                    row["n"] = n;
                    row["d"] = d;
                    row["p"] = p;
                    row["certificate"] = certificate_to_json(certificate);
                    rows.push_back(std::move(row));
                    std::ostringstream line;
                    const std::string* k_dot_h = certificate.value("K_X.H");
                    const std::string* claimed_stable =
                        certificate.value("claimed_region_stable");
                    const std::string* claimed_semi =
                        certificate.value("claimed_region_semistable");
                    std::string claimed = "none";
                    if (claimed_stable != nullptr && *claimed_stable == "true") {
                        claimed = "Stable";
                    } else if (claimed_semi != nullptr && *claimed_semi == "true") {
                        claimed = "Semistable";
                    }
                    line << "  " << std::setw(2) << n << "  " << std::setw(2) << d << "  " << p
                         << "  " << std::setw(5) << (k_dot_h ? *k_dot_h : "") << "  "
                         << std::setw(12) << std::left << to_string(certificate.conclusion())
                         << "  " << claimed << std::right;
                    result.text.push_back(line.str());
                }
            }
        }
    }
    result.payload["rows"] = std::move(rows);
    return result;
}

QueryResult run_selftest_query(const Query& query) {
    SelfTestResult selftest = run_selftest();
    QueryResult result;
    result.query = query.raw;
    result.kind = "selftest";
    result.failed = !selftest.passed;
    result.payload["passed"] = selftest.passed;
    result.payload["checks_run"] = selftest.checks_run;
    result.payload["failures"] = selftest.failures;
    result.text.push_back(std::string("selftest: ") + (selftest.passed ? "PASS" : "FAIL") + " (" +
                          std::to_string(selftest.checks_run) + " checks)");
    for (const auto& failure : selftest.failures) {
        result.text.push_back("  failure: " + failure);
    }
    return result;
}

QueryResult dispatch(const Session& session, const Query& query) {
    if (query.verb == "invariants") {
        if (!query.args.empty()) {
            usage_error(query, "usage: invariants");
        }
        return run_invariants(session, query);
    }
    if (query.verb == "certify") {
        return run_certify(session, query);
    }
    if (query.verb == "hn") {
        return run_hn(session, query);
    }
    if (query.verb == "pushforward") {
        return run_pushforward(session, query);
    }
    if (query.verb == "frobenius") {
        return run_frobenius(session, query);
    }
    if (query.verb == "k3") {
        if (!query.args.empty()) {
            usage_error(query, "usage: k3");
        }
        return run_k3(session, query);
    }
    if (query.verb == "region") {
        return run_region(query);
    }
    if (query.verb == "selftest") {
        if (!query.args.empty()) {
            usage_error(query, "usage: selftest");
        }
        return run_selftest_query(query);
    }
    usage_error(query, "unknown query verb '" + query.verb + "'");
    return {};
}

// Inner-module failures get re-raised with the query that triggered them;
// parse errors already carry their own position.
[[noreturn]] void rethrow_with_query_context(const Query& query) {
    std::string prefix = "query '" + query.raw + "'";
    if (query.line > 0) {
        prefix += " (line " + std::to_string(query.line) + ")";
    }
    prefix += ": ";
    try {
        throw;
    } catch (const ParseError&) {
        throw;
    } catch (const DimensionMismatch& e) {
        throw DimensionMismatch(prefix + e.what());
    } catch (const UnresolvedName& e) {
        throw UnresolvedName(prefix + e.what());
    } catch (const PreconditionFailed& e) {
        throw PreconditionFailed(prefix + e.what());
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(prefix + e.what());
    }
}

QueryResult dispatch_with_context(const Session& session, const Query& query) {
    try {
        return dispatch(session, query);
    } catch (...) {
        rethrow_with_query_context(query);
    }
}

}  // namespace

Report run_scenario(const Scenario& scenario, const Query* override_query) {
    Session session(scenario);
    Report report;
    report.scenario_name = scenario.source_name;
    if (override_query != nullptr) {
        report.results.push_back(dispatch_with_context(session, *override_query));
        return report;
    }
    for (const auto& query : scenario.queries) {
        report.results.push_back(dispatch_with_context(session, query));
    }
    return report;
}

}  // namespace cycstab
