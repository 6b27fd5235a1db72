#include "report.hpp"

#include <sstream>

#include "errors.hpp"

namespace cycstab {

bool Report::any_failed() const {
    for (const auto& result : results) {
        if (result.failed) {
            return true;
        }
    }
    return false;
}

Json certificate_to_json(const Certificate& certificate) {
    Json json;
    json["theorem"] = certificate.theorem();
    Json hypotheses = Json::array();
    for (const auto& h : certificate.hypotheses()) {
        Json entry;
        entry["name"] = h.name;
        entry["mode"] = std::string(to_string(h.mode));
        entry["value"] = h.value;
        entry["satisfied"] = h.satisfied;
        hypotheses.push_back(std::move(entry));
    }
    json["hypotheses"] = std::move(hypotheses);
    json["conclusion"] = std::string(to_string(certificate.conclusion()));
    Json values = Json::object();
    for (const auto& [key, value] : certificate.values()) {
        values[key] = value;
    }
    json["values"] = std::move(values);
    json["notes"] = certificate.notes();
    return json;
}

namespace {

Conclusion conclusion_from_string(const std::string& text) {
    if (text == "Stable") {
        return Conclusion::Stable;
    }
    if (text == "Semistable") {
        return Conclusion::Semistable;
    }
    if (text == "Inconclusive") {
        return Conclusion::Inconclusive;
    }
    throw ParseError("unknown conclusion '" + text + "'", 0, 0);
}

HypothesisMode mode_from_string(const std::string& text) {
    if (text == "computed") {
        return HypothesisMode::Computed;
    }
    if (text == "asserted") {
        return HypothesisMode::Asserted;
    }
    throw ParseError("unknown hypothesis mode '" + text + "'", 0, 0);
}

}  // namespace

Certificate certificate_from_json(const Json& json) {
    try {
        std::vector<Hypothesis> hypotheses;
        for (const auto& entry : json.at("hypotheses")) {
            hypotheses.push_back({entry.at("name").get<std::string>(),
                                  mode_from_string(entry.at("mode").get<std::string>()),
                                  entry.at("value").get<std::string>(),
                                  entry.at("satisfied").get<bool>()});
        }
        std::vector<std::pair<std::string, std::string>> values;
        for (const auto& [key, value] : json.at("values").items()) {
            values.emplace_back(key, value.get<std::string>());
        }
        std::vector<std::string> notes;
        for (const auto& note : json.at("notes")) {
            notes.push_back(note.get<std::string>());
        }
        return Certificate(json.at("theorem").get<std::string>(), std::move(hypotheses),
                           conclusion_from_string(json.at("conclusion").get<std::string>()),
                           std::move(values), std::move(notes));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed certificate JSON: ") + e.what(), 0, 0);
    }
}

std::vector<std::string> certificate_to_text(const Certificate& certificate) {
    std::vector<std::string> lines;
    lines.push_back("theorem: " + certificate.theorem());
    lines.push_back("hypotheses:");
    for (const auto& h : certificate.hypotheses()) {
        std::ostringstream line;
        line << "  [" << (h.satisfied ? "ok" : "FAILED") << "] (" << to_string(h.mode) << ") "
             << h.name;
        if (!h.value.empty()) {
            line << " = " << h.value;
        }
        lines.push_back(line.str());
    }
    lines.push_back("conclusion: " + std::string(to_string(certificate.conclusion())));
    if (!certificate.values().empty()) {
        lines.push_back("values:");
        for (const auto& [key, value] : certificate.values()) {
            lines.push_back("  " + key + " = " + value);
        }
    }
    for (const auto& note : certificate.notes()) {
        lines.push_back("note: " + note);
    }
    return lines;
}

std::string render_text(const Report& report) {
    std::ostringstream out;
    bool first = true;
    for (const auto& result : report.results) {
        if (!first) {
            out << "\n";
        }
        first = false;
        out << "== " << result.query << " ==\n";
        for (const auto& line : result.text) {
            out << line << "\n";
        }
    }
    return out.str();
}

std::string render_json(const Report& report) {
    Json json;
    json["scenario"] = report.scenario_name;
    Json results = Json::array();
    for (const auto& result : report.results) {
        Json entry;
        entry["query"] = result.query;
        entry["kind"] = result.kind;
        for (const auto& [key, value] : result.payload.items()) {
            entry[key] = value;
        }
        results.push_back(std::move(entry));
    }
    json["results"] = std::move(results);
    return json.dump(2) + "\n";
}

}  // namespace cycstab
