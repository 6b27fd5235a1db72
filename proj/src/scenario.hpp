#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace cycstab {

// Parsed scenario declarations. Parsing is purely syntactic; domain
// objects (surfaces, covers, bundles) are constructed by the runner so
// that syntax errors and invariant violations stay distinguishable.

struct SurfaceDecl {
    std::optional<std::string> preset;  // "p2" | "product"
    std::optional<std::string> name;
    std::vector<std::string> generators;
    std::vector<std::vector<long long>> intersection;
    std::optional<std::vector<Rational>> canonical;
    std::optional<std::vector<Rational>> polarization;
    int line = 0;
};

struct CoverDecl {
    std::vector<Rational> l_coefficients;
    int n = 0;
    long long char_p = 0;
    int line = 0;
};

// A named FormalSheaf or SplitBundle declaration. `on_cover` places the
// classes in the pulled-back lattice of X instead of the base.
struct BundleDecl {
    enum class Kind { Formal, Split };
    Kind kind = Kind::Formal;
    std::string name;
    bool on_cover = false;
    int rank = 0;                                  // Formal
    std::vector<Rational> c1;                      // Formal
    std::vector<std::vector<Rational>> summands;   // Split
    int line = 0;
};

struct Query {
    std::string verb;
    std::vector<std::string> args;
    std::string raw;
    int line = 0;
};

struct Scenario {
    std::string source_name;
    std::optional<SurfaceDecl> surface;
    std::optional<CoverDecl> cover;
    std::vector<BundleDecl> bundles;  // declaration order
    std::vector<Query> queries;

    const BundleDecl* find_bundle(const std::string& name) const;
};

// Parses the line-oriented scenario format (see docs/scenario.md).
// Throws ParseError with 1-based line/column on malformed input.
Scenario parse_scenario(std::string_view text, std::string source_name = "<scenario>");

// Convenience: parse a single query line (the CLI uses this for
// command-line queries).
Query parse_query_line(std::string_view text);

}  // namespace cycstab
