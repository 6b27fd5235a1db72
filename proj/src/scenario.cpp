#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "errors.hpp"

namespace cycstab {

const BundleDecl* Scenario::find_bundle(const std::string& name) const {
    for (const auto& b : bundles) {
        if (b.name == name) {
            return &b;
        }
    }
    return nullptr;
}

namespace {

std::string_view trim(std::string_view s) {
    size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::istringstream in{std::string(s)};
    std::string word;
    while (in >> word) {
        words.push_back(word);
    }
    return words;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-') {
            return false;
        }
    }
    return true;
}

class Parser {
public:
    Parser(std::string_view text, std::string source_name) : text_(text) {
        scenario_.source_name = std::move(source_name);
    }

    Scenario run() {
        int line_number = 0;
        size_t pos = 0;
        while (pos <= text_.size()) {
            size_t eol = text_.find('\n', pos);
            std::string_view raw_line = (eol == std::string_view::npos)
                                            ? text_.substr(pos)
                                            : text_.substr(pos, eol - pos);
            ++line_number;
            handle_line(raw_line, line_number);
            if (eol == std::string_view::npos) {
                break;
            }
            pos = eol + 1;
        }
        return std::move(scenario_);
    }

private:
    enum class Section { None, Surface, Cover, Bundle, Split, Queries };

    void fail(const std::string& message, int line, int column) {
        throw ParseError(scenario_.source_name + ":" + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message,
                         line, column);
    }

    void handle_line(std::string_view raw_line, int line) {
        // Strip comments; '#' cannot occur inside any token of the grammar.
        std::string_view content = raw_line;
        if (size_t hash = content.find('#'); hash != std::string_view::npos) {
            content = content.substr(0, hash);
        }
        content = trim(content);
        if (content.empty()) {
            return;
        }
        if (content.front() == '[') {
            open_section(content, line);
            return;
        }
        switch (section_) {
            case Section::None:
                fail("content outside any section", line, column_of(raw_line, content));
                break;
            case Section::Queries:
                append_query(content, line);
                break;
            default:
                append_entry(content, raw_line, line);
                break;
        }
    }

    static int column_of(std::string_view raw_line, std::string_view token) {
        if (token.empty()) {
            return 1;
        }
        size_t offset = token.data() - raw_line.data();
        return static_cast<int>(offset) + 1;
    }

    void open_section(std::string_view content, int line) {
        if (content.back() != ']') {
            fail("unterminated section header", line, static_cast<int>(content.size()));
        }
        std::string_view inner = trim(content.substr(1, content.size() - 2));
        std::vector<std::string> words = split_words(inner);
        if (words.empty()) {
            fail("empty section header", line, 1);
        }
        const std::string& kind = words[0];
        if (kind == "surface") {
            if (words.size() != 1) {
                fail("[surface] takes no name", line, 1);
            }
            if (scenario_.surface.has_value()) {
                fail("duplicate [surface] section", line, 1);
            }
            scenario_.surface = SurfaceDecl{};
            scenario_.surface->line = line;
            section_ = Section::Surface;
        } else if (kind == "cover") {
            if (words.size() != 1) {
                fail("[cover] takes no name", line, 1);
            }
            if (scenario_.cover.has_value()) {
                fail("duplicate [cover] section", line, 1);
            }
            scenario_.cover = CoverDecl{};
            scenario_.cover->line = line;
            section_ = Section::Cover;
        } else if (kind == "bundle" || kind == "split") {
            if (words.size() != 2 || !valid_identifier(words[1])) {
                fail("[" + kind + "] needs a single identifier name", line, 1);
            }
            if (scenario_.find_bundle(words[1]) != nullptr) {
                fail("duplicate declaration of '" + words[1] + "'", line, 1);
            }
            BundleDecl decl;
            decl.kind = (kind == "bundle") ? BundleDecl::Kind::Formal : BundleDecl::Kind::Split;
            decl.name = words[1];
            decl.line = line;
            scenario_.bundles.push_back(std::move(decl));
            section_ = (kind == "bundle") ? Section::Bundle : Section::Split;
        } else if (kind == "queries") {
            section_ = Section::Queries;
        } else {
            fail("unknown section '" + kind + "'", line, 1);
        }
    }

    Rational parse_rational_or_fail(std::string_view token, int line, int column) {
        auto q = parse_rational(token);
        if (!q.has_value()) {
            fail("expected a rational 'p/q' or integer, got '" + std::string(token) + "'", line,
                 column);
        }
        return *q;
    }

    std::vector<Rational> parse_vector(std::string_view value, int line, int column) {
        std::vector<Rational> result;
        for (const std::string& token : split_words(value)) {
            result.push_back(parse_rational_or_fail(token, line, column));
        }
        if (result.empty()) {
            fail("expected at least one rational", line, column);
        }
        return result;
    }

    std::vector<std::vector<Rational>> parse_rows(std::string_view value, int line, int column) {
        std::vector<std::vector<Rational>> rows;
        size_t pos = 0;
        while (true) {
            size_t semi = value.find(';', pos);
            std::string_view part =
                (semi == std::string_view::npos) ? value.substr(pos) : value.substr(pos, semi - pos);
            rows.push_back(parse_vector(trim(part), line, column));
            if (semi == std::string_view::npos) {
                break;
            }
            pos = semi + 1;
        }
        return rows;
    }

    long long parse_integer(std::string_view value, int line, int column) {
        Rational q = parse_rational_or_fail(value, line, column);
        if (!is_integer(q)) {
            fail("expected an integer, got '" + std::string(value) + "'", line, column);
        }
        if (!q.get_num().fits_slong_p()) {
            fail("integer out of range", line, column);
        }
        return q.get_num().get_si();
    }

    void append_entry(std::string_view content, std::string_view raw_line, int line) {
        size_t eq = content.find('=');
        if (eq == std::string_view::npos) {
            fail("expected 'key = value'", line, column_of(raw_line, content));
        }
        std::string key{trim(content.substr(0, eq))};
        std::string_view value = trim(content.substr(eq + 1));
        int value_column = value.empty() ? column_of(raw_line, content)
                                         : column_of(raw_line, value);
        if (key.empty()) {
            fail("missing key before '='", line, column_of(raw_line, content));
        }
        if (value.empty()) {
            fail("missing value for '" + key + "'", line, value_column);
        }
        switch (section_) {
            case Section::Surface:
                surface_entry(key, value, line, value_column);
                break;
            case Section::Cover:
                cover_entry(key, value, line, value_column);
                break;
            case Section::Bundle:
            case Section::Split:
                bundle_entry(key, value, line, value_column);
                break;
            default:
                fail("entry outside a declaration section", line, 1);
        }
    }

    void surface_entry(const std::string& key, std::string_view value, int line, int column) {
        SurfaceDecl& decl = *scenario_.surface;
        if (key == "preset") {
            std::string name{value};
            if (name != "p2" && name != "P2" && name != "product") {
                fail("unknown preset '" + name + "' (expected p2 or product)", line, column);
            }
            decl.preset = name;
        } else if (key == "name") {
            decl.name = std::string(value);
        } else if (key == "generators") {
            for (const std::string& label : split_words(value)) {
                if (!valid_identifier(label)) {
                    fail("invalid generator label '" + label + "'", line, column);
                }
                decl.generators.push_back(label);
            }
        } else if (key == "intersection") {
            for (const auto& row : parse_rows(value, line, column)) {
                std::vector<long long> int_row;
                for (const auto& q : row) {
                    if (!is_integer(q) || !q.get_num().fits_slong_p()) {
                        fail("intersection matrix entries must be machine integers", line, column);
                    }
                    int_row.push_back(q.get_num().get_si());
                }
                decl.intersection.push_back(std::move(int_row));
            }
        } else if (key == "canonical") {
            decl.canonical = parse_vector(value, line, column);
        } else if (key == "polarization") {
            decl.polarization = parse_vector(value, line, column);
        } else {
            fail("unknown surface key '" + key + "'", line, column);
        }
    }

    void cover_entry(const std::string& key, std::string_view value, int line, int column) {
        CoverDecl& decl = *scenario_.cover;
        if (key == "L") {
            decl.l_coefficients = parse_vector(value, line, column);
        } else if (key == "n") {
            long long n = parse_integer(value, line, column);
            if (n < 2 || n > 1000000) {
                fail("covering degree n must be an integer >= 2", line, column);
            }
            decl.n = static_cast<int>(n);
        } else if (key == "char") {
            decl.char_p = parse_integer(value, line, column);
            if (decl.char_p < 0) {
                fail("characteristic must be 0 or a prime", line, column);
            }
        } else {
            fail("unknown cover key '" + key + "'", line, column);
        }
    }

    void bundle_entry(const std::string& key, std::string_view value, int line, int column) {
        BundleDecl& decl = scenario_.bundles.back();
        if (key == "on") {
            if (value == "X") {
                decl.on_cover = true;
            } else if (value == "Y") {
                decl.on_cover = false;
            } else {
                fail("'on' must be X or Y", line, column);
            }
            return;
        }
        if (decl.kind == BundleDecl::Kind::Formal) {
            if (key == "rank") {
                long long rank = parse_integer(value, line, column);
                if (rank < 1 || rank > 1000000) {
                    fail("rank must be a positive integer", line, column);
                }
                decl.rank = static_cast<int>(rank);
            } else if (key == "c1") {
                decl.c1 = parse_vector(value, line, column);
            } else {
                fail("unknown bundle key '" + key + "'", line, column);
            }
        } else {
            if (key == "summands") {
                decl.summands = parse_rows(value, line, column);
            } else {
                fail("unknown split key '" + key + "'", line, column);
            }
        }
    }

    void append_query(std::string_view content, int line) {
        Query q;
        q.raw = std::string(content);
        q.line = line;
        std::vector<std::string> words = split_words(content);
        q.verb = words.front();
        q.args.assign(words.begin() + 1, words.end());
        scenario_.queries.push_back(std::move(q));
    }

    std::string_view text_;
    Scenario scenario_;
    Section section_ = Section::None;
};

}  // namespace

Scenario parse_scenario(std::string_view text, std::string source_name) {
    return Parser(text, std::move(source_name)).run();
}

Query parse_query_line(std::string_view text) {
    std::string_view content = trim(text);
    if (content.empty()) {
        throw ParseError("empty query", 1, 1);
    }
    Query q;
    q.raw = std::string(content);
    q.line = 0;
    std::vector<std::string> words = split_words(content);
    q.verb = words.front();
    q.args.assign(words.begin() + 1, words.end());
    return q;
}

}  // namespace cycstab
