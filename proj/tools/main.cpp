// Command-line driver for the cyclic-covering stability calculator. All
// functionality goes through the public C API in cycstab/cycstab.h; this
// file only parses flags, loads scenario files and maps statuses to exit
// codes.

#include <cycstab/cycstab.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;

void print_usage(std::FILE* stream) {
    std::fputs(
        "usage: cycstab [<query> ...] [--scenario <path>] [--json] [--quiet]\n"
        "\n"
        "Runs the queries of a scenario file, or a single query given on the\n"
        "command line against the scenario's declarations.\n"
        "\n"
        "queries:\n"
        "  invariants                          cover invariant table\n"
        "  certify thm3.2 <bundle> <stable|semistable>\n"
        "  certify thm3.5 | thm3.6 | cor3.8 | cor4.5\n"
        "  hn <split>                          Harder-Narasimhan filtration\n"
        "  pushforward <bundle>                pushforward invariants\n"
        "  frobenius <p> [<bundle>]            canonical filtration and F_* data\n"
        "  k3                                  canonical triviality check\n"
        "  region cor3.8|cor4.5                certificate tables over (n, d[, p])\n"
        "  selftest                            run the oracle suite\n"
        "\n"
        "flags:\n"
        "  --scenario <path>   scenario file (see docs/scenario.md)\n"
        "  --json              machine-readable report\n"
        "  --quiet             suppress the report text\n"
        "  --version           print the library version\n"
        "\n"
        "exit codes: 0 success, 1 usage or parse error, 2 invariant violation\n"
        "or failed selftest\n",
        stream);
}

int exit_code_for(cycstab_status status) {
    switch (status) {
        case CYCSTAB_OK:
            return kExitOk;
        case CYCSTAB_ERROR_PARSE:
            return kExitUsage;
        default:
            return kExitInvariant;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::string scenario_path;
    bool json = false;
    bool quiet = false;
    std::vector<std::string> query_words;

    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            print_usage(stdout);
            return kExitOk;
        }
        if (arg == "--version") {
            std::printf("cycstab %s\n", cycstab_version());
            return kExitOk;
        }
        if (arg == "--json") {
            json = true;
        } else if (arg == "--quiet") {
            quiet = true;
        } else if (arg == "--scenario") {
            if (i + 1 >= argc) {
                std::fputs("error: --scenario needs a path\n\n", stderr);
                print_usage(stderr);
                return kExitUsage;
            }
            scenario_path = argv[++i];
        } else if (arg.rfind("--", 0) == 0) {
            std::fprintf(stderr, "error: unknown flag '%s'\n\n", arg.c_str());
            print_usage(stderr);
            return kExitUsage;
        } else {
            query_words.push_back(arg);
        }
    }

    std::string scenario_text;
    std::string source_name = "<cli>";
    if (!scenario_path.empty()) {
        std::ifstream in(scenario_path);
        if (!in) {
            std::fprintf(stderr, "error: cannot open scenario file '%s'\n", scenario_path.c_str());
            return kExitUsage;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        scenario_text = buffer.str();
        source_name = scenario_path;
    } else if (query_words.empty()) {
        // No scenario and no query: nothing to do.
        print_usage(stderr);
        return kExitUsage;
    }

    std::string query;
    for (size_t i = 0; i < query_words.size(); ++i) {
        if (i > 0) {
            query += ' ';
        }
        query += query_words[i];
    }

    char* report = nullptr;
    int content_failed = 0;
    cycstab_status status = cycstab_run_scenario(
        scenario_text.c_str(), source_name.c_str(), query.empty() ? nullptr : query.c_str(),
        json ? CYCSTAB_REPORT_JSON : CYCSTAB_REPORT_TEXT, &report, &content_failed);

    if (status != CYCSTAB_OK) {
        std::fprintf(stderr, "error: %s\n", cycstab_last_error());
        if (status == CYCSTAB_ERROR_PARSE && !query.empty()) {
            std::fputs("\n", stderr);
            print_usage(stderr);
        }
        return exit_code_for(status);
    }
    if (!quiet && report != nullptr && report[0] != '\0') {
        std::fputs(report, stdout);
    }
    cycstab_string_free(report);
    return content_failed ? kExitInvariant : kExitOk;
}
