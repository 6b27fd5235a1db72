#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "criteria.hpp"

namespace cycstab {

// Machine-readable payloads use ordered JSON so identical runs serialize
// byte-identically. All rationals cross as reduced "p/q" strings.
using Json = nlohmann::ordered_json;

struct QueryResult {
    std::string query;  // raw query text
    std::string kind;   // certificate | invariants | hn | pushforward | frobenius | k3 | region | selftest | empty
    Json payload;
    std::vector<std::string> text;  // human-readable rendering

    // Content-level failure (currently only a failed selftest); the CLI
    // surfaces it through the exit code.
    bool failed = false;
};

struct Report {
    std::string scenario_name;
    std::vector<QueryResult> results;

    bool any_failed() const;
};

Json certificate_to_json(const Certificate& certificate);
// Inverse of certificate_to_json; throws ParseError on malformed input.
Certificate certificate_from_json(const Json& json);

std::vector<std::string> certificate_to_text(const Certificate& certificate);

std::string render_text(const Report& report);
std::string render_json(const Report& report);

}  // namespace cycstab
