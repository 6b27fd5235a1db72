#include "criteria.hpp"

#include <sstream>

#include "errors.hpp"

namespace cycstab {

std::string_view to_string(Conclusion c) {
    switch (c) {
        case Conclusion::Stable:
            return "Stable";
        case Conclusion::Semistable:
            return "Semistable";
        case Conclusion::Inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

std::string_view to_string(HypothesisMode m) {
    return m == HypothesisMode::Computed ? "computed" : "asserted";
}

Certificate::Certificate(std::string theorem, std::vector<Hypothesis> hypotheses,
                         Conclusion conclusion,
                         std::vector<std::pair<std::string, std::string>> values,
                         std::vector<std::string> notes)
    : theorem_(std::move(theorem)),
      hypotheses_(std::move(hypotheses)),
      conclusion_(conclusion),
      values_(std::move(values)),
      notes_(std::move(notes)) {
    if (!all_hypotheses_hold() && conclusion_ != Conclusion::Inconclusive) {
        throw InvalidArgument("certificate conclusion exceeds what its failed hypotheses permit");
    }
}

bool Certificate::all_hypotheses_hold() const {
    for (const auto& h : hypotheses_) {
        if (!h.satisfied) {
            return false;
        }
    }
    return true;
}

const std::string* Certificate::value(std::string_view key) const {
    for (const auto& [k, v] : values_) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

namespace {

std::string characteristic_note(const CyclicCover& cover) {
    std::ostringstream out;
    if (cover.characteristic() == 0) {
        out << "char k = 0";
    } else {
        out << "char k = " << cover.characteristic() << ", coprime to n = " << cover.degree();
    }
    return out.str();
}

}  // namespace

Certificate pullback_stability(const CyclicCover& cover, const FormalSheaf& f,
                               StabilityAssumption assumed) {
    if (f.c1.dimension() != cover.base().rank()) {
        throw DimensionMismatch("pullback_stability: sheaf does not live on the base lattice");
    }
    const bool stable = assumed == StabilityAssumption::Stable;
    const std::string level = stable ? "stable" : "semistable";

    std::vector<Hypothesis> hypotheses;
    hypotheses.push_back(
        {"char k does not divide n", HypothesisMode::Computed, characteristic_note(cover), true});
    hypotheses.push_back({"branch divisor B smooth and effective", HypothesisMode::Asserted,
                          "modeling assumption", true});
    hypotheses.push_back({"F locally free", HypothesisMode::Asserted, "modeling assumption", true});
    hypotheses.push_back(
        {"F " + level + " w.r.t. H", HypothesisMode::Asserted, "input assumption", true});

    Rational mu_f = slope(f, cover.base());
    Rational mu_pullback = slope(cover.pullback_sheaf(f), cover.cover_surface());

    std::vector<std::pair<std::string, std::string>> values;
    values.emplace_back("mu_F", rational_to_string(mu_f));
    values.emplace_back("mu_pullback_F", rational_to_string(mu_pullback));
    values.emplace_back("covering_degree", std::to_string(cover.degree()));

    std::vector<std::string> notes;
    notes.push_back("mu(pullback F) = n*mu(F): " + rational_to_string(mu_pullback) + " = " +
                    std::to_string(cover.degree()) + " * " + rational_to_string(mu_f));
    notes.push_back(
        "descent of the maximal destabilizing subsheaf along the Galois action (Thm3.1) is "
        "assumed, not executed");

    return Certificate("Thm3.2", std::move(hypotheses),
                       stable ? Conclusion::Stable : Conclusion::Semistable, std::move(values),
                       std::move(notes));
}

namespace {

// Shared evaluation of the Thm3.5/Thm3.6 hypothesis ledger; `strict`
// selects the strict inequality and the Stable conclusion.
Certificate cotangent_criterion(const CyclicCover& cover, bool strict) {
    const SurfaceModel& base = cover.base();
    const int n = cover.degree();

    std::vector<Hypothesis> hypotheses;
    hypotheses.push_back({"H ample", HypothesisMode::Asserted, "modeling assumption", true});

    // H = l*B for a positive rational l.
    DivisorClass branch = cover.branch_class();
    std::vector<std::string> notes;
    bool proportional_ok = false;
    std::string l_value = "none";
    if (branch.is_zero()) {
        notes.push_back(
            "branch class is numerically trivial; no positive l with H = l*B exists for ample H, "
            "criterion not applicable");
    } else {
        auto l = proportional_to(base.polarization(), branch);
        if (l.has_value() && *l > 0) {
            proportional_ok = true;
            l_value = rational_to_string(*l);
        } else if (l.has_value()) {
            l_value = rational_to_string(*l) + " (not positive)";
        }
    }
    hypotheses.push_back(
        {"H = l*B for some rational l > 0", HypothesisMode::Computed, l_value, proportional_ok});

    if (base.is_p2_preset()) {
        hypotheses.push_back({"Omega_Y semistable w.r.t. H", HypothesisMode::Computed,
                              "discharged: Omega_P2 is stable w.r.t. O(1) (Thm3.7)", true});
    } else {
        hypotheses.push_back(
            {"Omega_Y semistable w.r.t. H", HypothesisMode::Asserted, "input assumption", true});
    }

    Rational deg_omega_y = base.degree(base.canonical());
    Rational deg_branch = base.degree(branch);
    Rational criterion = Rational(n) * deg_omega_y + Rational(n + 1) * deg_branch;
    bool inequality_ok = strict ? criterion > 0 : criterion >= 0;
    {
        std::ostringstream name;
        name << "n*deg Omega_Y + (n+1)*deg B " << (strict ? ">" : ">=") << " 0";
        hypotheses.push_back({name.str(), HypothesisMode::Computed, rational_to_string(criterion),
                              inequality_ok});
    }

    std::vector<std::pair<std::string, std::string>> values;
    values.emplace_back("criterion_value", rational_to_string(criterion));
    values.emplace_back("deg_Omega_Y", rational_to_string(deg_omega_y));
    values.emplace_back("deg_B", rational_to_string(deg_branch));
    values.emplace_back("mu_Omega_X",
                        rational_to_string(slope(cover.cotangent_x(), cover.cover_surface())));

    notes.push_back(
        "B = n*L smooth and effective is a modeling assumption of the covering datum");
    if (strict) {
        notes.push_back(
            "strictness source: the encoded argument makes the slope bound for a destabilizing "
            "line sub-bundle strict via an injection into a twist with torsion quotient; the "
            "torsion sheaf is never materialized, only the strictness is recorded");
        notes.push_back(
            "pushforward slopes in this check use the constant (n-1)/2 * deg L forced by the "
            "Grothendieck-Riemann-Roch degree formula and Lemma2.1(3); the simplified constant "
            "(n-1)*deg L printed alongside Thm3.6 is inconsistent with both and is not used");
    }

    bool all_ok = proportional_ok && inequality_ok;
    Conclusion conclusion = Conclusion::Inconclusive;
    if (all_ok) {
        conclusion = strict ? Conclusion::Stable : Conclusion::Semistable;
    }
    return Certificate(strict ? "Thm3.6" : "Thm3.5", std::move(hypotheses), conclusion,
                       std::move(values), std::move(notes));
}

}  // namespace

Certificate cotangent_semistability(const CyclicCover& cover) {
    return cotangent_criterion(cover, false);
}

Certificate cotangent_stability(const CyclicCover& cover) {
    return cotangent_criterion(cover, true);
}

CyclicCover p2_cover_build(int n, int d, long long char_p) {
    if (n < 2) {
        throw InvalidArgument("p2_cover: covering degree must be >= 2");
    }
    if (d < 1) {
        throw InvalidArgument("p2_cover: branch curve degree must be >= 1");
    }
    if (d % n != 0) {
        std::ostringstream msg;
        msg << "p2_cover: no line bundle L with n*L = d*h; " << n << " does not divide " << d;
        throw InvalidArgument(msg.str());
    }
    SurfaceModel base = SurfaceModel::p2();
    DivisorClass l{Rational(d / n)};
    return CyclicCover(std::move(base), std::move(l), n, char_p);
}

bool cor38_region_stable(int n, int d) {
    return (n == 2 && d >= 4) || n > 2;
}

Certificate p2_cover_certificate(int n, int d) {
    CyclicCover cover = p2_cover_build(n, d);
    Certificate strict = cotangent_stability(cover);
    Certificate weak = cotangent_semistability(cover);

    Conclusion conclusion = Conclusion::Inconclusive;
    if (strict.conclusion() == Conclusion::Stable) {
        conclusion = Conclusion::Stable;
    } else if (weak.conclusion() == Conclusion::Semistable) {
        conclusion = Conclusion::Semistable;
    }

    std::vector<Hypothesis> hypotheses;
    for (const auto& h : strict.hypotheses()) {
        // Keep the full ledger but relax the strict inequality entry to the
        // delegated pair: it alone decides Stable vs Semistable.
        if (h.name.starts_with("n*deg Omega_Y")) {
            Hypothesis copy = h;
            copy.satisfied = conclusion != Conclusion::Inconclusive;
            copy.name = "n*deg Omega_Y + (n+1)*deg B >= 0 (strict for stability)";
            hypotheses.push_back(std::move(copy));
        } else {
            hypotheses.push_back(h);
        }
    }

    std::vector<std::pair<std::string, std::string>> values;
    values.emplace_back("n", std::to_string(n));
    values.emplace_back("d", std::to_string(d));
    if (const std::string* v = strict.value("criterion_value")) {
        values.emplace_back("criterion_value", *v);
    }
    bool region_stable = cor38_region_stable(n, d);
    values.emplace_back("region_semistable", "true");
    values.emplace_back("region_stable", region_stable ? "true" : "false");
    values.emplace_back("region_conclusion", region_stable ? "Stable" : "Semistable");

    std::vector<std::string> notes = strict.notes();
    notes.push_back("closed-form region: semistable always; stable iff (n = 2 and deg B >= 4) or n > 2");

    return Certificate("Cor3.8", std::move(hypotheses), conclusion, std::move(values),
                       std::move(notes));
}

K3Report k3_check(const CyclicCover& cover) {
    K3Report report;
    report.is_k3 = cover.canonical_x().is_zero();
    std::ostringstream out;
    if (report.is_k3) {
        Rational degree =
            cover.cover_surface().intersect(cover.cover_surface().polarization(),
                                            cover.cover_surface().polarization());
        out << "canonical class of X is numerically trivial; X is a K3 surface of degree "
            << rational_to_string(degree) << " (polarization self-intersection)";
        if (cover.base().is_p2_preset()) {
            Rational d = cover.base().degree(cover.branch_class());
            if (cover.degree() == 2 && d == 6) {
                out << "; the double plane branched along a sextic";
            } else if (cover.degree() == 4 && d == 4) {
                out << "; the 4-cyclic cover of the plane branched along a quartic";
            }
        }
    } else {
        out << "canonical class of X is not numerically trivial: K_X = "
            << cover.canonical_x().to_string(cover.cover_surface().generators())
            << ", deg K_X = "
            << rational_to_string(cover.cover_surface().degree(cover.canonical_x()));
    }
    report.description = out.str();
    return report;
}

}  // namespace cycstab
