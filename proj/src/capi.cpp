#include "cycstab/cycstab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "errors.hpp"
#include "frobenius.hpp"
#include "oracle.hpp"
#include "report.hpp"
#include "runner.hpp"

using namespace cycstab;

// Opaque handle definitions: each wraps exactly one core value.
struct cycstab_surface {
    SurfaceModel value;
};
struct cycstab_divisor {
    DivisorClass value;
};
struct cycstab_sheaf {
    FormalSheaf value;
};
struct cycstab_split {
    SplitBundle value;
};
struct cycstab_cover {
    CyclicCover value;
};
struct cycstab_frobenius {
    FrobeniusContext value;
};
struct cycstab_certificate {
    Certificate value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) {
    g_last_error = message;
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out != nullptr) {
        std::memcpy(out, text.c_str(), text.size() + 1);
    }
    return out;
}

// Runs `body` translating exceptions into status codes.
template <typename Body>
cycstab_status guarded(Body&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_PARSE;
    } catch (const DimensionMismatch& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_DIMENSION;
    } catch (const UnresolvedName& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_UNRESOLVED;
    } catch (const InvalidArgument& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_ARGUMENT;
    } catch (const PreconditionFailed& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_ARGUMENT;
    } catch (const Error& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_INTERNAL;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return CYCSTAB_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return CYCSTAB_ERROR_INTERNAL;
    }
}

cycstab_status require(bool condition, const char* message) {
    if (!condition) {
        set_error(message);
        return CYCSTAB_ERROR_ARGUMENT;
    }
    return CYCSTAB_OK;
}

Rational parse_rational_arg(const char* text, const char* what) {
    if (text == nullptr) {
        throw InvalidArgument(std::string(what) + " is null");
    }
    auto q = parse_rational(text);
    if (!q.has_value()) {
        throw ParseError(std::string(what) + ": '" + text + "' is not a rational", 0, 0);
    }
    return *q;
}

std::vector<Rational> parse_rational_array(const char* const* values, size_t count,
                                           const char* what) {
    if (values == nullptr && count > 0) {
        throw InvalidArgument(std::string(what) + " is null");
    }
    std::vector<Rational> result;
    result.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        result.push_back(parse_rational_arg(values[i], what));
    }
    return result;
}

cycstab_status return_string(const std::string& text, char** out) {
    *out = copy_string(text);
    if (*out == nullptr) {
        set_error("out of memory");
        return CYCSTAB_ERROR_INTERNAL;
    }
    return CYCSTAB_OK;
}

cycstab_status return_rational(const Rational& value, char** out) {
    return return_string(rational_to_string(value), out);
}

Json hn_to_json(const SurfaceModel& surface, const SplitBundle& split) {
    HNFiltration hn = hn_filtration(split, surface);
    Json json;
    Json levels = Json::array();
    for (const auto& level : hn.levels) {
        Json entry;
        entry["slope"] = rational_to_string(level.slope);
        entry["summands"] = level.summand_indices;
        levels.push_back(std::move(entry));
    }
    json["levels"] = std::move(levels);
    json["mu_max"] = rational_to_string(hn.mu_max);
    json["mu_min"] = rational_to_string(hn.mu_min);
    json["instability"] = rational_to_string(hn.instability);
    json["semistable"] = hn.semistable();
    if (hn.semistable()) {
        Json factors = Json::array();
        for (const auto& factor : jh_factors(split, surface)) {
            Json coeffs = Json::array();
            for (const auto& c : factor.coefficients()) {
                coeffs.push_back(rational_to_string(c));
            }
            factors.push_back(std::move(coeffs));
        }
        json["jh_factors"] = std::move(factors);
    }
    return json;
}

}  // namespace

extern "C" {

const char* cycstab_version(void) {
    return "1.0.0";
}

const char* cycstab_last_error(void) {
    return g_last_error.c_str();
}

void cycstab_string_free(char* text) {
    std::free(text);
}

cycstab_status cycstab_surface_preset(const char* name, cycstab_surface** out) {
    if (auto status = require(name != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        auto surface = SurfaceModel::preset(name);
        if (!surface.has_value()) {
            throw InvalidArgument(std::string("unknown preset '") + name + "'");
        }
        *out = new cycstab_surface{std::move(*surface)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_surface_create(const char* name, const char* const* generators,
                                      size_t generator_count, const long long* intersection,
                                      const char* const* canonical,
                                      const char* const* polarization, cycstab_surface** out) {
    if (auto status = require(name != nullptr && generators != nullptr && intersection != nullptr &&
                                  canonical != nullptr && polarization != nullptr &&
                                  out != nullptr && generator_count > 0,
                              "null argument")) {
        return status;
    }
    return guarded([&] {
        std::vector<std::string> labels;
        labels.reserve(generator_count);
        for (size_t i = 0; i < generator_count; ++i) {
            if (generators[i] == nullptr) {
                throw InvalidArgument("generator label is null");
            }
            labels.emplace_back(generators[i]);
        }
        std::vector<std::vector<long long>> matrix(generator_count,
                                                   std::vector<long long>(generator_count));
        for (size_t i = 0; i < generator_count; ++i) {
            for (size_t j = 0; j < generator_count; ++j) {
                matrix[i][j] = intersection[i * generator_count + j];
            }
        }
        DivisorClass k(parse_rational_array(canonical, generator_count, "canonical"));
        DivisorClass h(parse_rational_array(polarization, generator_count, "polarization"));
        *out = new cycstab_surface{
            SurfaceModel(name, std::move(labels), std::move(matrix), std::move(k), std::move(h))};
        return CYCSTAB_OK;
    });
}

void cycstab_surface_free(cycstab_surface* surface) {
    delete surface;
}

cycstab_status cycstab_surface_rank(const cycstab_surface* surface, size_t* out) {
    if (auto status = require(surface != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    *out = surface->value.rank();
    return CYCSTAB_OK;
}

cycstab_status cycstab_divisor_create(const cycstab_surface* surface,
                                      const char* const* coefficients, size_t count,
                                      cycstab_divisor** out) {
    if (auto status = require(surface != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        if (count != surface->value.rank()) {
            throw DimensionMismatch("coefficient count does not match the surface rank");
        }
        *out = new cycstab_divisor{
            DivisorClass(parse_rational_array(coefficients, count, "coefficient"))};
        return CYCSTAB_OK;
    });
}

void cycstab_divisor_free(cycstab_divisor* divisor) {
    delete divisor;
}

cycstab_status cycstab_intersect(const cycstab_surface* surface, const cycstab_divisor* d,
                                 const cycstab_divisor* e, char** out) {
    if (auto status = require(surface != nullptr && d != nullptr && e != nullptr && out != nullptr,
                              "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_rational(surface->value.intersect(d->value, e->value), out); });
}

cycstab_status cycstab_degree(const cycstab_surface* surface, const cycstab_divisor* d,
                              char** out) {
    if (auto status =
            require(surface != nullptr && d != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] { return return_rational(surface->value.degree(d->value), out); });
}

cycstab_status cycstab_proportional_to(const cycstab_divisor* d, const cycstab_divisor* e,
                                       char** out) {
    if (auto status =
            require(d != nullptr && e != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        auto l = proportional_to(d->value, e->value);
        if (!l.has_value()) {
            *out = nullptr;
            return CYCSTAB_OK;
        }
        return return_rational(*l, out);
    });
}

cycstab_status cycstab_conormal_degree(const cycstab_surface* surface, const cycstab_divisor* b,
                                       char** out) {
    if (auto status =
            require(surface != nullptr && b != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] { return return_rational(conormal_degree(b->value, surface->value), out); });
}

cycstab_status cycstab_sheaf_create(int rank, const cycstab_divisor* c1, const char* label,
                                    cycstab_sheaf** out) {
    if (auto status = require(c1 != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_sheaf{FormalSheaf(rank, c1->value, label ? label : "")};
        return CYCSTAB_OK;
    });
}

void cycstab_sheaf_free(cycstab_sheaf* sheaf) {
    delete sheaf;
}

cycstab_status cycstab_sheaf_rank(const cycstab_sheaf* sheaf, int* out) {
    if (auto status = require(sheaf != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    *out = sheaf->value.rank;
    return CYCSTAB_OK;
}

cycstab_status cycstab_slope(const cycstab_surface* surface, const cycstab_sheaf* sheaf,
                             char** out) {
    if (auto status =
            require(surface != nullptr && sheaf != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] { return return_rational(slope(sheaf->value, surface->value), out); });
}

cycstab_status cycstab_twist(const cycstab_sheaf* sheaf, const cycstab_divisor* d,
                             cycstab_sheaf** out) {
    if (auto status =
            require(sheaf != nullptr && d != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_sheaf{twist(sheaf->value, d->value)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_direct_sum(const cycstab_sheaf* const* sheaves, size_t count,
                                  cycstab_sheaf** out) {
    if (auto status =
            require(sheaves != nullptr && count > 0 && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        std::vector<FormalSheaf> values;
        values.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (sheaves[i] == nullptr) {
                throw InvalidArgument("sheaf handle is null");
            }
            values.push_back(sheaves[i]->value);
        }
        *out = new cycstab_sheaf{direct_sum(std::span<const FormalSheaf>(values))};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_tensor(const cycstab_sheaf* f, const cycstab_sheaf* g,
                              cycstab_sheaf** out) {
    if (auto status = require(f != nullptr && g != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_sheaf{tensor(f->value, g->value)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_sym_power_rank2(const cycstab_sheaf* f, int l, cycstab_sheaf** out) {
    if (auto status = require(f != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_sheaf{sym_power_rank2(f->value, l)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_split_create(const cycstab_divisor* const* summands, size_t count,
                                    cycstab_split** out) {
    if (auto status =
            require(summands != nullptr && count > 0 && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        std::vector<DivisorClass> classes;
        classes.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (summands[i] == nullptr) {
                throw InvalidArgument("summand handle is null");
            }
            classes.push_back(summands[i]->value);
        }
        *out = new cycstab_split{SplitBundle(std::move(classes))};
        return CYCSTAB_OK;
    });
}

void cycstab_split_free(cycstab_split* split) {
    delete split;
}

cycstab_status cycstab_hn_json(const cycstab_surface* surface, const cycstab_split* split,
                               char** out) {
    if (auto status =
            require(surface != nullptr && split != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_string(hn_to_json(surface->value, split->value).dump(2), out); });
}

cycstab_status cycstab_instability(const cycstab_surface* surface, const cycstab_split* split,
                                   char** out) {
    if (auto status =
            require(surface != nullptr && split != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_rational(instability(split->value, surface->value), out); });
}

cycstab_status cycstab_cover_create(const cycstab_surface* base, const cycstab_divisor* l_class,
                                    int n, long long char_p, cycstab_cover** out) {
    if (auto status =
            require(base != nullptr && l_class != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_cover{CyclicCover(base->value, l_class->value, n, char_p)};
        return CYCSTAB_OK;
    });
}

void cycstab_cover_free(cycstab_cover* cover) {
    delete cover;
}

cycstab_status cycstab_cover_surface(const cycstab_cover* cover, cycstab_surface** out) {
    if (auto status = require(cover != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_surface{cover->value.cover_surface()};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_pullback_class(const cycstab_cover* cover, const cycstab_divisor* d,
                                      cycstab_divisor** out) {
    if (auto status =
            require(cover != nullptr && d != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_divisor{cover->value.pullback_class(d->value)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_canonical_x(const cycstab_cover* cover, cycstab_divisor** out) {
    if (auto status = require(cover != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_divisor{cover->value.canonical_x()};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_cotangent_x(const cycstab_cover* cover, cycstab_sheaf** out) {
    if (auto status = require(cover != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_sheaf{cover->value.cotangent_x()};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_pushforward_structure(const cycstab_cover* cover, cycstab_split** out) {
    if (auto status = require(cover != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_split{cover->value.pushforward_structure_sheaf()};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_pushforward_degree(const cycstab_cover* cover, const cycstab_sheaf* e_on_x,
                                          char** out) {
    if (auto status =
            require(cover != nullptr && e_on_x != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_rational(cover->value.pushforward_degree(e_on_x->value), out); });
}

cycstab_status cycstab_pushforward_slope(const cycstab_cover* cover, const cycstab_sheaf* e_on_x,
                                         char** out) {
    if (auto status =
            require(cover != nullptr && e_on_x != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_rational(cover->value.pushforward_slope(e_on_x->value), out); });
}

cycstab_status cycstab_branch_degrees(const cycstab_cover* cover, char** out_base,
                                      char** out_cover) {
    if (auto status = require(cover != nullptr && out_base != nullptr && out_cover != nullptr,
                              "null argument")) {
        return status;
    }
    return guarded([&] {
        auto [on_base, upstairs] = cover->value.branch_degrees();
        if (auto status = return_rational(on_base, out_base)) {
            return status;
        }
        if (auto status = return_rational(upstairs, out_cover)) {
            cycstab_string_free(*out_base);
            *out_base = nullptr;
            return status;
        }
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_certify_pullback(const cycstab_cover* cover, const cycstab_sheaf* f,
                                        int assume_stable, cycstab_certificate** out) {
    if (auto status =
            require(cover != nullptr && f != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_certificate{pullback_stability(
            cover->value, f->value,
            assume_stable ? StabilityAssumption::Stable : StabilityAssumption::Semistable)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_certify_cotangent(const cycstab_cover* cover, int strict,
                                         cycstab_certificate** out) {
    if (auto status = require(cover != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_certificate{strict ? cotangent_stability(cover->value)
                                              : cotangent_semistability(cover->value)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_certify_p2_cover(int n, int d, cycstab_certificate** out) {
    if (auto status = require(out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_certificate{p2_cover_certificate(n, d)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_certify_cor45(int n, int d, long long p, cycstab_certificate** out) {
    if (auto status = require(out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_certificate{cor45_certificate(n, d, p)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_k3_check(const cycstab_cover* cover, int* out_is_k3, char** out_report) {
    if (auto status = require(cover != nullptr && out_is_k3 != nullptr && out_report != nullptr,
                              "null argument")) {
        return status;
    }
    return guarded([&] {
        K3Report report = k3_check(cover->value);
        *out_is_k3 = report.is_k3 ? 1 : 0;
        return return_string(report.description, out_report);
    });
}

void cycstab_certificate_free(cycstab_certificate* certificate) {
    delete certificate;
}

cycstab_status cycstab_certificate_conclusion(const cycstab_certificate* certificate, char** out) {
    if (auto status = require(certificate != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_string(std::string(to_string(certificate->value.conclusion())), out); });
}

cycstab_status cycstab_certificate_json(const cycstab_certificate* certificate, char** out) {
    if (auto status = require(certificate != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded(
        [&] { return return_string(certificate_to_json(certificate->value).dump(2), out); });
}

cycstab_status cycstab_certificate_text(const cycstab_certificate* certificate, char** out) {
    if (auto status = require(certificate != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        std::string text;
        for (const auto& line : certificate_to_text(certificate->value)) {
            text += line;
            text += '\n';
        }
        return return_string(text, out);
    });
}

cycstab_status cycstab_frobenius_create(long long p, const cycstab_surface* surface,
                                        cycstab_frobenius** out) {
    if (auto status = require(surface != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_frobenius{FrobeniusContext(p, surface->value)};
        return CYCSTAB_OK;
    });
}

void cycstab_frobenius_free(cycstab_frobenius* context) {
    delete context;
}

cycstab_status cycstab_frobenius_graded_piece(const cycstab_frobenius* context,
                                              const cycstab_sheaf* w, int l, cycstab_sheaf** out) {
    if (auto status =
            require(context != nullptr && w != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        *out = new cycstab_sheaf{graded_piece(context->value, w->value, l)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_frobenius_profile_json(const cycstab_frobenius* context,
                                              const cycstab_sheaf* w, char** out) {
    if (auto status =
            require(context != nullptr && w != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        FiltrationProfile profile = filtration_profile(context->value, w->value);
        Json json;
        Json pieces = Json::array();
        for (const auto& piece : profile.pieces) {
            Json entry;
            entry["l"] = piece.level;
            entry["rank"] = piece.rank;
            entry["degree"] = rational_to_string(piece.degree);
            entry["slope"] = rational_to_string(piece.slope);
            pieces.push_back(std::move(entry));
        }
        json["pieces"] = std::move(pieces);
        return return_string(json.dump(2), out);
    });
}

cycstab_status cycstab_frobenius_pushforward_json(const cycstab_frobenius* context,
                                                  const cycstab_sheaf* w, char** out) {
    if (auto status =
            require(context != nullptr && w != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        PushforwardInvariants invariants = pushforward_invariants(context->value, w->value);
        Json json;
        json["rank"] = invariants.rank;
        json["degree"] = rational_to_string(invariants.degree);
        json["slope"] = rational_to_string(invariants.slope);
        return return_string(json.dump(2), out);
    });
}

cycstab_status cycstab_instability_budget(const cycstab_frobenius* context,
                                          const cycstab_sheaf* w,
                                          const char* const* instabilities, size_t count,
                                          char** out) {
    if (auto status =
            require(context != nullptr && w != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        std::vector<Rational> values = parse_rational_array(instabilities, count, "instability");
        return return_rational(
            instability_budget(context->value, w->value,
                               std::span<const Rational>(values.data(), values.size())),
            out);
    });
}

cycstab_status cycstab_frobenius_certificate(const cycstab_frobenius* context,
                                             const cycstab_sheaf* w, const char* budget,
                                             int twists_stable, cycstab_certificate** out) {
    if (auto status =
            require(context != nullptr && w != nullptr && out != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        Rational budget_value = parse_rational_arg(budget, "budget");
        *out = new cycstab_certificate{
            frobenius_certificate(context->value, w->value, budget_value, twists_stable != 0)};
        return CYCSTAB_OK;
    });
}

cycstab_status cycstab_run_scenario(const char* text, const char* source_name,
                                    const char* override_query, int report_format,
                                    char** out_report, int* out_content_failed) {
    if (auto status = require(text != nullptr && out_report != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        Scenario scenario =
            parse_scenario(text, source_name != nullptr ? source_name : "<scenario>");
        Report report;
        if (override_query != nullptr) {
            Query query = parse_query_line(override_query);
            report = run_scenario(scenario, &query);
        } else {
            report = run_scenario(scenario);
        }
        if (out_content_failed != nullptr) {
            *out_content_failed = report.any_failed() ? 1 : 0;
        }
        return return_string(
            report_format == CYCSTAB_REPORT_JSON ? render_json(report) : render_text(report),
            out_report);
    });
}

cycstab_status cycstab_region_table(const char* which, int report_format, char** out_report) {
    if (auto status = require(which != nullptr && out_report != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        Scenario empty;
        empty.source_name = "<region>";
        Query query = parse_query_line(std::string("region ") + which);
        Report report = run_scenario(empty, &query);
        return return_string(
            report_format == CYCSTAB_REPORT_JSON ? render_json(report) : render_text(report),
            out_report);
    });
}

cycstab_status cycstab_selftest(int* out_passed, char** out_report) {
    if (auto status = require(out_passed != nullptr && out_report != nullptr, "null argument")) {
        return status;
    }
    return guarded([&] {
        SelfTestResult result = run_selftest();
        *out_passed = result.passed ? 1 : 0;
        std::string text = std::string("selftest: ") + (result.passed ? "PASS" : "FAIL") + " (" +
                           std::to_string(result.checks_run) + " checks)\n";
        for (const auto& failure : result.failures) {
            text += "  failure: " + failure + "\n";
        }
        return return_string(text, out_report);
    });
}

}  // extern "C"
