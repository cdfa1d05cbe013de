#pragma once

// Command-line front end. `run` is the whole program; tools/monolab.cpp
// only forwards argv to it.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monolab/lemmas.hpp"
#include "monolab/parallel.hpp"
#include "monolab/serialize.hpp"
#include "monolab/sharp.hpp"

namespace monolab::cli {

using json_io::json;

enum ExitCode : int { kOk = 0, kClaimFailure = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::optional<std::string> family;  // JSON descriptor or a family name
    std::optional<double> alpha;
    std::optional<std::string> p_spec;  // "x", "lo:hi:step" or "a,b,c"
    std::vector<std::string> claims;
    bool all = false;
    std::optional<std::string> out;
    std::string format = "json";
    std::uint64_t seed = 20240601;
    unsigned threads = 0;  // 0 = auto
    SearchDomain domain;
    bool refine = true;
    std::string path = "xi=c*eta";

    bool operator==(const RunConfig&) const = default;
};

/// Expands a p grid spec. Values are rounded to 12 significant digits so
/// that 1.1:1.9:0.1 yields exactly 1.1, 1.2, ..., 1.9.
inline std::vector<double> parse_p_spec(const std::string& spec) {
    auto to_real = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UsageError("invalid p grid \"" + spec + "\"");
        }
        if (used != s.size() || !std::isfinite(v)) throw UsageError("invalid p grid \"" + spec + "\"");
        return v;
    };
    auto tidy = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.12g", v);
        return std::stod(b);
    };
    std::vector<std::string> parts;
    const char sep = spec.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    if (spec.empty() || (!spec.empty() && spec.back() == sep)) throw UsageError("invalid p grid \"" + spec + "\"");
    std::vector<double> out;
    if (sep == ':') {
        if (parts.size() != 3) throw UsageError("p grid must be lo:hi:step, got \"" + spec + "\"");
        const double lo = to_real(parts[0]), hi = to_real(parts[1]), step = to_real(parts[2]);
        if (!(step > 0) || hi < lo) throw UsageError("p grid needs lo <= hi and step > 0, got \"" + spec + "\"");
        for (std::size_t k = 0;; ++k) {
            const double v = lo + static_cast<double>(k) * step;
            if (v > hi + 1e-9 * step) break;
            out.push_back(tidy(v));
            if (out.size() > 100000) throw UsageError("p grid too long");
        }
    } else {
        for (const auto& p : parts) out.push_back(to_real(p));
    }
    return out;
}

// -- config round trip ----------------------------------------------------------

inline json to_json(const RunConfig& c) {
    json j{{"command", c.command}};
    if (c.family) j["family"] = *c.family;
    if (c.alpha) j["alpha"] = *c.alpha;
    if (c.p_spec) j["p"] = *c.p_spec;
    j["claims"] = c.claims;
    j["all"] = c.all;
    if (c.out) j["out"] = *c.out;
    j["format"] = c.format;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["domain"] = json_io::to_json(c.domain);
    j["refine"] = c.refine;
    j["path"] = c.path;
    return j;
}

/// Fills `base` from a config object; absent keys are left untouched.
inline RunConfig config_from_json(const json& j, RunConfig base = {}) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    try {
        if (j.contains("command")) base.command = j.at("command").get<std::string>();
        if (j.contains("family")) {
            const auto& f = j.at("family");
            base.family = f.is_string() ? f.get<std::string>() : f.dump();
        }
        if (j.contains("alpha")) base.alpha = j.at("alpha").get<double>();
        if (j.contains("p")) {
            const auto& p = j.at("p");
            base.p_spec = p.is_string() ? p.get<std::string>() : p.dump();
        }
        if (j.contains("claims")) base.claims = j.at("claims").get<std::vector<std::string>>();
        if (j.contains("all")) base.all = j.at("all").get<bool>();
        if (j.contains("out")) base.out = j.at("out").get<std::string>();
        if (j.contains("format")) base.format = j.at("format").get<std::string>();
        if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
        if (j.contains("domain")) base.domain = json_io::domain_from_json(j.at("domain"), base.domain);
        if (j.contains("refine")) base.refine = j.at("refine").get<bool>();
        if (j.contains("path")) base.path = j.at("path").get<std::string>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config: ") + e.what());
    }
    return base;
}

// -- resolution ---------------------------------------------------------------

inline std::optional<NFunc> resolve_family(const RunConfig& c) {
    if (!c.family) return std::nullopt;
    const std::string& f = *c.family;
    if (!f.empty() && (f.front() == '{' || f.front() == '[')) return json_io::parse_nfunc(f);
    auto single_p = [&]() {
        if (!c.p_spec) throw UsageError("--family " + f + " needs --p");
        const auto ps = parse_p_spec(*c.p_spec);
        if (ps.size() != 1) throw UsageError("--family " + f + " needs a single --p value");
        return ps.front();
    };
    if (f == "power") return NFunc::power(single_p());
    if (f == "zygmund") {
        if (!c.alpha) throw UsageError("--family zygmund needs --alpha");
        return NFunc::zygmund(single_p(), *c.alpha);
    }
    throw UsageError("unknown family \"" + f + "\" (use power, zygmund or a JSON descriptor)");
}

inline std::optional<ProbePath> parse_path(const std::string& s) {
    if (s == "xi=c*eta") return ProbePath::xi_eq_c_eta;
    if (s == "eta=c*xi") return ProbePath::eta_eq_c_xi;
    return std::nullopt;
}

// -- output -------------------------------------------------------------------

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (!c.out) {
        out << text;
        return;
    }
    std::ofstream f(*c.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + *c.out);
    f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// -- commands -----------------------------------------------------------------

inline int cmd_indices(const RunConfig& c, std::ostream& out) {
    const auto f = resolve_family(c);
    if (!f) throw UsageError("indices needs --family");
    const auto ix = compute_indices(*f);
    if (c.format == "csv") {
        auto lim = [](const IndexExtreme& e) {
            std::string s = e.limits.at_zero ? "t->0" : "";
            if (e.limits.at_infinity) s += s.empty() ? "t->inf" : ";t->inf";
            return s;
        };
        auto arg = [](const IndexExtreme& e) { return e.arg ? csv::num(*e.arg) : std::string(); };
        emit(c,
             "i_G,s_G,arg_inf,arg_sup,limits_inf,limits_sup\n" + csv::num(ix.i_G) + "," + csv::num(ix.s_G) + "," +
                 arg(ix.inf) + "," + arg(ix.sup) + "," + lim(ix.inf) + "," + lim(ix.sup) + "\n",
             out);
    } else {
        json j{{"family", json_io::to_json(*f)}, {"indices", json_io::to_json(ix)}};
        emit(c, dump(j), out);
    }
    return kOk;
}

inline RunContext context_of(const RunConfig& c) {
    RunContext ctx;
    ctx.domain = c.domain;
    ctx.threads = c.threads;
    ctx.seed = c.seed;
    return ctx;
}

inline int cmd_check(const RunConfig& c, std::ostream& out) {
    RegistryOptions ro;
    if (c.p_spec) ro.p_grid = parse_p_spec(*c.p_spec);
    ro.family = resolve_family(c);
    const auto reg = registry(ro);
    std::vector<Claim> chosen;
    if (c.all) {
        chosen = reg;
    } else {
        if (c.claims.empty()) throw UsageError("check needs --claim or --all");
        for (const auto& id : c.claims) {
            auto cl = find_claim(reg, id);
            if (!cl) {
                std::string ids;
                for (const auto& r : reg) ids += "\n  " + r.id;
                throw UsageError("unknown claim \"" + id + "\"; valid ids:" + ids);
            }
            chosen.push_back(*cl);
        }
    }
    const auto reps = run_claims(chosen, context_of(c));
    if (c.format == "csv") {
        std::string s = "claim_id,status,key,value\n";
        for (const auto& r : reps) {
            s += r.claim_id + "," + status_name(r.status) + ",,\n";
            for (const auto& [k, v] : r.measured) {
                std::string key = k;
                if (key.find_first_of(",\"") != std::string::npos) {
                    std::string esc = "\"";
                    for (char ch : key) {
                        if (ch == '"') esc += '"';
                        esc += ch;
                    }
                    key = esc + "\"";
                }
                s += r.claim_id + "," + status_name(r.status) + "," + key + "," + csv::num(v) + "\n";
            }
        }
        emit(c, s, out);
    } else {
        emit(c, dump(json_io::bundle(reps)), out);
    }
    return summarize(reps).fail > 0 ? kClaimFailure : kOk;
}

inline int cmd_sharp(const RunConfig& c, std::ostream& out) {
    if (c.claims.size() != 1) throw UsageError("sharp needs exactly one --claim");
    const auto sc = parse_sharp_claim(c.claims.front());
    if (!sc) throw UsageError("unknown sharp claim \"" + c.claims.front() +
                              "\"; valid: p-small-lower, p-small-upper, p-large-lower, vp-lower");
    if (!c.p_spec) throw UsageError("sharp needs --p");
    const auto ps = parse_p_spec(*c.p_spec);
    for (double p : ps)
        if (!sharp_claim_accepts(*sc, p))
            throw UsageError(std::string("sharp claim ") + sharp_claim_name(*sc) + " needs " + sharp_claim_range(*sc) +
                             ", got p = " + csv::num(p));
    SweepOptions o;
    o.refine = c.refine;
    o.threads = c.threads;
    const auto rows = sharp_constant_sweep(*sc, ps, c.domain, o);
    if (c.format == "csv") {
        emit(c, csv::sharp_table(rows), out);
    } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(json_io::to_json(r));
        emit(c, dump(json{{"claim", sharp_claim_name(*sc)}, {"rows", arr}}), out);
    }
    for (const auto& r : rows)
        if (r.flagged) return kClaimFailure;
    return kOk;
}

inline int cmd_probe(const RunConfig& c, std::ostream& out) {
    if (!c.p_spec) throw UsageError("probe needs --p");
    const auto ps = parse_p_spec(*c.p_spec);
    if (ps.size() != 1 || !(ps.front() > 0)) throw UsageError("probe needs a single --p > 0");
    const double p = ps.front();
    const auto path = parse_path(c.path);
    if (!path) throw UsageError("unknown probe path \"" + c.path + "\" (use xi=c*eta or eta=c*xi)");
    const auto rows =
        unboundedness_probe(quantity::Jp{p}, quantity::RhsPowerForm{p, quantity::PowerShape::sum_weighted}, *path);
    if (c.format == "csv") {
        emit(c, csv::probe_table(rows), out);
    } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(json_io::to_json(r));
        emit(c, dump(json{{"p", p}, {"path", c.path}, {"rows", arr}}), out);
    }
    return kOk;
}

inline int dispatch(const RunConfig& c, std::ostream& out) {
    if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
    c.domain.validate();
    if (c.p_spec) parse_p_spec(*c.p_spec);  // reject bad grids before any work
    if (c.command == "indices") return cmd_indices(c, out);
    if (c.command == "check") return cmd_check(c, out);
    if (c.command == "sharp") return cmd_sharp(c, out);
    if (c.command == "probe") return cmd_probe(c, out);
    throw UsageError("missing command (indices, check, sharp or probe)");
}

// -- argument parsing -----------------------------------------------------------

struct Flags {
    std::string config;
    std::string family, p, out, format, path;
    double alpha = 0;
    std::vector<std::string> claims;
    bool all = false, no_refine = false, scale_invariant = false, no_axes = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double r_lo = 0, r_hi = 0, s_lo = 0, s_hi = 0;
    std::size_t n_r = 0, n_s = 0, n_lambda = 0;
};

inline const char* kHelpFooter =
    "Precedence: command-line flags override --config values, which override built-in defaults.\n"
    "Without --format, an --out path ending in .csv selects CSV.\n"
    "MONOLAB_THREADS sets the worker count when --threads is absent or 0.\n"
    "Exit status: 0 success, 1 claim failure, 2 usage or configuration error.";

/// Parses and runs. Never throws; errors go to `err` with exit status 2.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"monolab: monotonicity inequalities lab"};
    app.footer(kHelpFooter);
    app.require_subcommand(1);
    Flags fl;

    struct Opts {
        CLI::Option *config, *family, *alpha, *p, *claim, *all, *out, *format, *seed, *threads, *r_lo, *r_hi, *n_r,
            *s_lo, *s_hi, *n_s, *n_lambda, *no_refine, *scale_inv, *no_axes, *path;
    };
    std::map<std::string, Opts> opts;
    for (const char* name : {"indices", "check", "sharp", "probe"}) {
        const char* desc = std::string(name) == "indices" ? "compute the indices i_G and s_G of a family"
                           : std::string(name) == "check" ? "run encoded claims and write a report bundle"
                           : std::string(name) == "sharp" ? "estimate sharp constants over a p grid"
                                                          : "ratio along a degenerating path";
        auto* sub = app.add_subcommand(name, desc);
        Opts o{};
        o.config = sub->add_option("--config", fl.config, "JSON config file");
        o.family = sub->add_option("--family", fl.family, "power, zygmund or a JSON descriptor");
        o.alpha = sub->add_option("--alpha", fl.alpha, "log exponent for --family zygmund");
        o.p = sub->add_option("--p", fl.p, "p value or grid lo:hi:step");
        o.claim = sub->add_option("--claim", fl.claims, "claim id (repeatable)");
        o.all = sub->add_flag("--all", fl.all, "run every claim");
        o.out = sub->add_option("--out", fl.out, "output file (default stdout)");
        o.format = sub->add_option("--format", fl.format, "json or csv");
        o.seed = sub->add_option("--seed", fl.seed, "seed for sampled checks");
        o.threads = sub->add_option("--threads", fl.threads, "worker threads (0 = auto)");
        o.r_lo = sub->add_option("--r-lo", fl.r_lo, "smallest |xi|");
        o.r_hi = sub->add_option("--r-hi", fl.r_hi, "largest |xi|");
        o.n_r = sub->add_option("--n-r", fl.n_r, "|xi| grid size");
        o.s_lo = sub->add_option("--s-lo", fl.s_lo, "smallest |eta|");
        o.s_hi = sub->add_option("--s-hi", fl.s_hi, "largest |eta|");
        o.n_s = sub->add_option("--n-s", fl.n_s, "|eta| grid size");
        o.n_lambda = sub->add_option("--n-lambda", fl.n_lambda, "cosine grid size");
        o.no_refine = sub->add_flag("--no-refine", fl.no_refine, "grid sweep only");
        o.scale_inv = sub->add_flag("--scale-invariant", fl.scale_invariant, "sweep ratio and cosine only");
        o.no_axes = sub->add_flag("--no-axes", fl.no_axes, "skip zero-norm points");
        o.path = sub->add_option("--path", fl.path, "probe path: xi=c*eta or eta=c*xi");
        opts[name] = o;
    }

    std::vector<const char*> argv{"monolab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        std::string command;
        for (auto* s : app.get_subcommands()) command = s->get_name();
        const Opts& o = opts.at(command);
        RunConfig cfg;
        bool format_given = false;
        if (o.config->count()) {
            std::ifstream f(fl.config);
            if (!f) throw UsageError("cannot read config " + fl.config);
            json j;
            try {
                j = json::parse(f);
            } catch (const json::parse_error& e) {
                throw UsageError(std::string("malformed config: ") + e.what());
            }
            cfg = config_from_json(j, cfg);
            format_given = j.is_object() && j.contains("format");
        }
        cfg.command = command;
        if (o.family->count()) cfg.family = fl.family;
        if (o.alpha->count()) cfg.alpha = fl.alpha;
        if (o.p->count()) cfg.p_spec = fl.p;
        if (o.claim->count()) cfg.claims = fl.claims;
        if (o.all->count()) cfg.all = true;
        if (o.out->count()) cfg.out = fl.out;
        if (o.format->count()) cfg.format = fl.format;
        format_given = format_given || o.format->count() > 0;
        if (!format_given && cfg.out && cfg.out->size() > 4 && cfg.out->substr(cfg.out->size() - 4) == ".csv")
            cfg.format = "csv";
        if (o.seed->count()) cfg.seed = fl.seed;
        if (o.threads->count()) cfg.threads = fl.threads;
        if (o.r_lo->count()) cfg.domain.r.lo = fl.r_lo;
        if (o.r_hi->count()) cfg.domain.r.hi = fl.r_hi;
        if (o.n_r->count()) cfg.domain.r.n = fl.n_r;
        if (o.s_lo->count()) cfg.domain.s.lo = fl.s_lo;
        if (o.s_hi->count()) cfg.domain.s.hi = fl.s_hi;
        if (o.n_s->count()) cfg.domain.s.n = fl.n_s;
        if (o.n_lambda->count()) cfg.domain.n_lambda = fl.n_lambda;
        if (o.no_refine->count()) cfg.refine = false;
        if (o.scale_inv->count()) cfg.domain.scale_invariant = true;
        if (o.no_axes->count()) cfg.domain.include_axes = false;
        if (o.path->count()) cfg.path = fl.path;
        cfg.threads = resolve_threads(cfg.threads);
        return dispatch(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace monolab::cli
