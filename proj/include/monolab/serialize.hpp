#pragma once

// JSON forms of descriptors, points and reports. Non-finite reals are
// written as the strings "inf", "-inf" and "nan".

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "monolab/errors.hpp"
#include "monolab/lemmas.hpp"
#include "monolab/nfunc.hpp"
#include "monolab/pairspace.hpp"
#include "monolab/sharp.hpp"

namespace monolab::json_io {

using json = nlohmann::ordered_json;

inline json real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline double real_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw DomainError("expected a real number, got " + j.dump());
}

// -- NFunc --------------------------------------------------------------

inline json to_json(const NFunc& f) {
    switch (f.kind()) {
        case FamilyKind::power: return {{"family", "power"}, {"p", real(f.as_power()->p)}};
        case FamilyKind::zygmund:
            return {{"family", "zygmund"}, {"p", real(f.as_zygmund()->p)}, {"alpha", real(f.as_zygmund()->alpha)}};
        case FamilyKind::compose:
            return {{"family", "compose"}, {"outer", to_json(f.as_compose()->outer)},
                    {"inner", to_json(f.as_compose()->inner)}};
        case FamilyKind::product:
            return {{"family", "product"}, {"left", to_json(f.as_product()->left)},
                    {"right", to_json(f.as_product()->right)}};
        case FamilyKind::sum:
            return {{"family", "sum"}, {"left", to_json(f.as_sum()->left)}, {"right", to_json(f.as_sum()->right)}};
        case FamilyKind::scale:
            return {{"family", "scale"}, {"c", real(f.as_scale()->c)}, {"inner", to_json(f.as_scale()->inner)}};
    }
    throw DomainError("unknown family kind");
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\" in " + j.dump());
    return j.at(key);
}

inline NFunc nfunc_from_json(const json& j) {
    const auto& fam = field(j, "family");
    if (!fam.is_string()) throw DomainError("\"family\" must be a string");
    const auto name = fam.get<std::string>();
    if (name == "power") return NFunc::power(real_from(field(j, "p")));
    if (name == "zygmund") return NFunc::zygmund(real_from(field(j, "p")), real_from(field(j, "alpha")));
    if (name == "compose") return NFunc::compose(nfunc_from_json(field(j, "outer")), nfunc_from_json(field(j, "inner")));
    if (name == "product") return NFunc::product(nfunc_from_json(field(j, "left")), nfunc_from_json(field(j, "right")));
    if (name == "sum") return NFunc::sum(nfunc_from_json(field(j, "left")), nfunc_from_json(field(j, "right")));
    if (name == "scale") return NFunc::scale(real_from(field(j, "c")), nfunc_from_json(field(j, "inner")));
    throw DomainError("unknown family \"" + name + "\"");
}

/// Parses a descriptor string; malformed JSON becomes a DomainError.
inline NFunc parse_nfunc(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("malformed family JSON: ") + e.what());
    }
    return nfunc_from_json(j);
}

// -- points and quantities ------------------------------------------------

inline json to_json(const PairPoint& pt) {
    return {{"r", real(pt.r())}, {"s", real(pt.s())}, {"lambda", real(pt.lambda())}};
}

inline PairPoint point_from_json(const json& j) {
    return PairPoint::make(real_from(field(j, "r")), real_from(field(j, "s")), real_from(field(j, "lambda")));
}

inline const char* shape_name(quantity::PowerShape s) {
    using quantity::PowerShape;
    switch (s) {
        case PowerShape::inv_sum_pow: return "inv_sum_pow";
        case PowerShape::sum_pow_weighted: return "sum_pow_weighted";
        case PowerShape::sum_weighted: return "sum_weighted";
        case PowerShape::quad_weighted: return "quad_weighted";
        case PowerShape::shifted_quad: return "shifted_quad";
    }
    return "?";
}

inline quantity::PowerShape shape_from(const std::string& s) {
    using quantity::PowerShape;
    for (auto v : {PowerShape::inv_sum_pow, PowerShape::sum_pow_weighted, PowerShape::sum_weighted,
                   PowerShape::quad_weighted, PowerShape::shifted_quad})
        if (s == shape_name(v)) return v;
    throw DomainError("unknown power shape \"" + s + "\"");
}

inline json to_json(const QuantityId& q) {
    using namespace quantity;
    return std::visit(
        overloaded{
            [](const Jp& x) -> json { return {{"q", "Jp"}, {"p", real(x.p)}}; },
            [](const JG& x) -> json { return {{"q", "JG"}, {"f", to_json(x.f)}}; },
            [](const VpDiffSq& x) -> json { return {{"q", "VpDiffSq"}, {"p", real(x.p)}}; },
            [](const VbarDiffSq& x) -> json { return {{"q", "VbarDiffSq"}, {"p", real(x.p)}, {"mu", real(x.mu)}}; },
            [](const VGDiffSq& x) -> json { return {{"q", "VGDiffSq"}, {"f", to_json(x.f)}}; },
            [](const CalG& x) -> json { return {{"q", "CalG"}, {"f", to_json(x.f)}}; },
            [](const GShiftForm& x) -> json { return {{"q", "GShiftForm"}, {"f", to_json(x.f)}}; },
            [](const GFracForm& x) -> json { return {{"q", "GFracForm"}, {"f", to_json(x.f)}}; },
            [](const RhsPowerForm& x) -> json {
                return {{"q", "RhsPowerForm"}, {"p", real(x.p)}, {"shape", shape_name(x.shape)}, {"mu", real(x.mu)}};
            },
            [](const SumNorm& x) -> json { return {{"q", "SumNorm"}, {"power", real(x.power)}}; },
            [](const GOfDiff& x) -> json { return {{"q", "GOfDiff"}, {"f", to_json(x.f)}}; },
            [](const GSlopeOfDiff& x) -> json { return {{"q", "GSlopeOfDiff"}, {"f", to_json(x.f)}}; },
            [](const GSlopeSqForm& x) -> json { return {{"q", "GSlopeSqForm"}, {"f", to_json(x.f)}}; },
            [](const GVGForm& x) -> json { return {{"q", "GVGForm"}, {"f", to_json(x.f)}}; },
        },
        q);
}

inline QuantityId quantity_from_json(const json& j) {
    using namespace quantity;
    const auto q = field(j, "q").get<std::string>();
    auto f = [&] { return nfunc_from_json(field(j, "f")); };
    auto p = [&] { return real_from(field(j, "p")); };
    if (q == "Jp") return Jp{p()};
    if (q == "JG") return JG{f()};
    if (q == "VpDiffSq") return VpDiffSq{p()};
    if (q == "VbarDiffSq") return VbarDiffSq{p(), real_from(field(j, "mu"))};
    if (q == "VGDiffSq") return VGDiffSq{f()};
    if (q == "CalG") return CalG{f()};
    if (q == "GShiftForm") return GShiftForm{f()};
    if (q == "GFracForm") return GFracForm{f()};
    if (q == "RhsPowerForm")
        return RhsPowerForm{p(), shape_from(field(j, "shape").get<std::string>()), real_from(field(j, "mu"))};
    if (q == "SumNorm") return SumNorm{real_from(field(j, "power"))};
    if (q == "GOfDiff") return GOfDiff{f()};
    if (q == "GSlopeOfDiff") return GSlopeOfDiff{f()};
    if (q == "GSlopeSqForm") return GSlopeSqForm{f()};
    if (q == "GVGForm") return GVGForm{f()};
    throw DomainError("unknown quantity \"" + q + "\"");
}

// -- indices --------------------------------------------------------------

inline json to_json(const IndexExtreme& e) {
    json j{{"value", real(e.value)}};
    j["arg"] = e.arg ? real(*e.arg) : json(nullptr);
    json lim = json::array();
    if (e.limits.at_zero) lim.push_back("t->0");
    if (e.limits.at_infinity) lim.push_back("t->inf");
    j["limits"] = lim;
    return j;
}

inline json to_json(const Indices& ix) {
    return {{"i_G", real(ix.i_G)},
            {"s_G", real(ix.s_G)},
            {"inf", to_json(ix.inf)},
            {"sup", to_json(ix.sup)},
            {"grid", {{"t_min", real(ix.grid.t_min)}, {"t_max", real(ix.grid.t_max)}, {"n", ix.grid.n}}},
            {"samples", ix.samples}};
}

// -- search results -------------------------------------------------------

inline json to_json(const SkipCounts& s) {
    return {{"inadmissible", s.inadmissible}, {"degenerate", s.degenerate}, {"small_denominator", s.small_denominator}};
}

inline json to_json(const RatioBound& b) {
    return {{"inf_est", real(b.inf_est)},
            {"sup_est", real(b.sup_est)},
            {"arg_inf", to_json(b.arg_inf)},
            {"arg_sup", to_json(b.arg_sup)},
            {"refined", b.refined},
            {"n_evals", b.n_evals},
            {"grid_inf", real(b.grid_inf)},
            {"grid_sup", real(b.grid_sup)},
            {"inf_extended", real(b.inf_extended)},
            {"sup_extended", real(b.sup_extended)},
            {"skipped", to_json(b.skipped)}};
}

inline json to_json(const SharpRow& r) {
    return {{"p", real(r.p)},
            {"estimated", real(r.estimated)},
            {"reference", real(r.reference)},
            {"deviation", real(r.deviation)},
            {"exact_reference", r.exact_reference},
            {"flagged", r.flagged},
            {"bound", to_json(r.bound)}};
}

inline json to_json(const ProbeRow& r) {
    return {{"c", real(r.c)},
            {"num", real(r.num)},
            {"den", real(r.den)},
            {"ratio", real(r.ratio)},
            {"zero_numerator", r.zero_numerator}};
}

// -- claim reports ----------------------------------------------------------

inline json to_json(const ClaimReport& r) {
    json m = json::object();
    for (const auto& [k, v] : r.measured) m[k] = real(v);
    json pts = json::array();
    for (const auto& p : r.worst_points) pts.push_back(to_json(p));
    return {{"claim_id", r.claim_id},  {"kind", kind_name(r.kind)}, {"status", status_name(r.status)},
            {"measured", m},           {"worst_points", pts},       {"tolerance", real(r.tolerance)},
            {"detail", r.detail}};
}

inline ClaimStatus status_from(const std::string& s) {
    for (auto v : {ClaimStatus::pass, ClaimStatus::fail, ClaimStatus::baseline_recorded, ClaimStatus::not_applicable})
        if (s == status_name(v)) return v;
    throw DomainError("unknown status \"" + s + "\"");
}

inline ClaimKind kind_from(const std::string& s) {
    using K = ClaimKind;
    for (auto v : {K::ExactConstantInequality, K::TwoSidedEquivalence, K::SharpnessCheck, K::CounterexampleCheck,
                   K::ScalarInequality, K::IdentityCheck})
        if (s == kind_name(v)) return v;
    throw DomainError("unknown claim kind \"" + s + "\"");
}

inline ClaimReport report_from_json(const json& j) {
    ClaimReport r;
    r.claim_id = field(j, "claim_id").get<std::string>();
    r.kind = kind_from(field(j, "kind").get<std::string>());
    r.status = status_from(field(j, "status").get<std::string>());
    for (const auto& [k, v] : field(j, "measured").items()) r.measured[k] = real_from(v);
    for (const auto& p : field(j, "worst_points")) r.worst_points.push_back(point_from_json(p));
    r.tolerance = real_from(field(j, "tolerance"));
    r.detail = field(j, "detail").get<std::string>();
    return r;
}

inline json to_json(const ReportSummary& s) {
    return {{"total", s.total},
            {"pass", s.pass},
            {"fail", s.fail},
            {"baseline_recorded", s.baseline_recorded},
            {"not_applicable", s.not_applicable}};
}

/// {"reports": [...], "summary": {...}}; run times are left out so that
/// bundles from identical runs compare equal byte for byte.
inline json bundle(const std::vector<ClaimReport>& reps) {
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    return {{"reports", arr}, {"summary", to_json(summarize(reps))}};
}

inline std::vector<ClaimReport> bundle_from_json(const json& j) {
    std::vector<ClaimReport> out;
    for (const auto& r : field(j, "reports")) out.push_back(report_from_json(r));
    return out;
}

// -- domain ---------------------------------------------------------------

inline json to_json(const AxisRange& a) { return {{"lo", real(a.lo)}, {"hi", real(a.hi)}, {"n", a.n}}; }

inline AxisRange axis_from_json(const json& j) {
    AxisRange a;
    a.lo = real_from(field(j, "lo"));
    a.hi = real_from(field(j, "hi"));
    a.n = field(j, "n").get<std::size_t>();
    return a;
}

inline json to_json(const SearchDomain& d) {
    return {{"r", to_json(d.r)},
            {"s", to_json(d.s)},
            {"n_lambda", d.n_lambda},
            {"scale_invariant", d.scale_invariant},
            {"ratio_min", real(d.ratio_min)},
            {"n_ratio", d.n_ratio},
            {"include_axes", d.include_axes}};
}

/// Missing keys keep their defaults.
inline SearchDomain domain_from_json(const json& j, SearchDomain d = {}) {
    if (!j.is_object()) throw DomainError("domain must be a JSON object");
    if (j.contains("r")) d.r = axis_from_json(j.at("r"));
    if (j.contains("s")) d.s = axis_from_json(j.at("s"));
    if (j.contains("n_lambda")) d.n_lambda = j.at("n_lambda").get<std::size_t>();
    if (j.contains("scale_invariant")) d.scale_invariant = j.at("scale_invariant").get<bool>();
    if (j.contains("ratio_min")) d.ratio_min = real_from(j.at("ratio_min"));
    if (j.contains("n_ratio")) d.n_ratio = j.at("n_ratio").get<std::size_t>();
    if (j.contains("include_axes")) d.include_axes = j.at("include_axes").get<bool>();
    return d;
}

}  // namespace monolab::json_io
