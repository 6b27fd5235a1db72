#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cover.hpp"

namespace cycstab {

// The theorems implemented here are one-directional sufficient conditions,
// so a failed hypothesis can only ever yield Inconclusive, never an
// "unstable" verdict.
enum class Conclusion { Stable, Semistable, Inconclusive };

std::string_view to_string(Conclusion c);

enum class HypothesisMode { Computed, Asserted };

std::string_view to_string(HypothesisMode m);

// One ledger entry of a certificate: either a value this library computed
// exactly, or an assumption the numerical model cannot verify and records
// at face value.
struct Hypothesis {
    std::string name;
    HypothesisMode mode;
    std::string value;
    bool satisfied;
};

// A theorem-checker result: the hypothesis ledger, the licensed conclusion,
// named exact values, and free-form annotations (erratum flags, where a
// strict inequality comes from). Construction enforces that the conclusion
// is Inconclusive whenever any hypothesis failed.
class Certificate {
public:
    Certificate(std::string theorem, std::vector<Hypothesis> hypotheses, Conclusion conclusion,
                std::vector<std::pair<std::string, std::string>> values = {},
                std::vector<std::string> notes = {});

    const std::string& theorem() const { return theorem_; }
    const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
    Conclusion conclusion() const { return conclusion_; }
    const std::vector<std::pair<std::string, std::string>>& values() const { return values_; }
    const std::vector<std::string>& notes() const { return notes_; }

    bool all_hypotheses_hold() const;
    // nullptr when the key is absent.
    const std::string* value(std::string_view key) const;

private:
    std::string theorem_;
    std::vector<Hypothesis> hypotheses_;
    Conclusion conclusion_;
    std::vector<std::pair<std::string, std::string>> values_;
    std::vector<std::string> notes_;
};

enum class StabilityAssumption { Stable, Semistable };

// Pullback stability (Thm3.2): a locally free F on Y that is assumed
// (semi)stable w.r.t. H pulls back to a (semi)stable sheaf w.r.t. pi^*H.
// The descent step is recorded as an assumption note, never executed.
Certificate pullback_stability(const CyclicCover& cover, const FormalSheaf& f,
                               StabilityAssumption assumed);

// Cotangent semistability criterion (Thm3.5): requires H = l*B for some
// positive rational l, Omega_Y semistable, and
//   n*deg Omega_Y + (n+1)*deg B >= 0.
Certificate cotangent_semistability(const CyclicCover& cover);

// Strict-inequality variant (Thm3.6): same hypotheses with > 0, concluding
// stability of Omega_X.
Certificate cotangent_stability(const CyclicCover& cover);

// Builds the degree-n cover of P2 branched along a degree-d curve
// (L = (d/n)h, so n must divide d).
CyclicCover p2_cover_build(int n, int d, long long char_p = 0);

// Closed-form stable region of Cor3.8: semistable always, stable iff
// (n == 2 and d >= 4) or n > 2.
bool cor38_region_stable(int n, int d);

// P2 covering certificate (Cor3.8): delegates to the Thm3.5/Thm3.6
// criteria and reports the closed-form region alongside.
Certificate p2_cover_certificate(int n, int d);

struct K3Report {
    bool is_k3;  // canonical class of X numerically trivial
    std::string description;
};

K3Report k3_check(const CyclicCover& cover);

}  // namespace cycstab
