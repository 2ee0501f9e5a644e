#include "olk/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"

#include "olk/duality.hpp"
#include "olk/io.hpp"
#include "olk/level.hpp"
#include "olk/modular.hpp"
#include "olk/orlicz.hpp"
#include "olk/pathology.hpp"
#include "olk/suite.hpp"

namespace olk {
namespace {

real parse_real(const std::string& s, const char* what) {
    std::size_t pos = 0;
    real v = 0.0;
    try {
        v = std::stold(s, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != s.size() || s.empty())
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t from = 0;
    while (true) {
        const std::size_t at = s.find(sep, from);
        parts.push_back(s.substr(from, at - from));
        if (at == std::string::npos) return parts;
        from = at + 1;
    }
}

OrliczFunction parse_phi(const std::string& expr) {
    const auto parts = split(expr, ':');
    if (parts[0] == "power") {
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("phi: expected power:p or power:p:c, got '" + expr + "'");
        const real p = parse_real(parts[1], "phi exponent");
        const real c = parts.size() == 3 ? parse_real(parts[2], "phi constant") : 1.0L;
        return OrliczFunction::power(p, c);
    }
    if (expr == "exp_n") return OrliczFunction::exp_n();
    if (expr == "exp_plain") return OrliczFunction::exp_plain();
    throw std::invalid_argument("phi: expected power:p[:c], exp_n, or exp_plain; got '" + expr + "'");
}

StepFunction parse_step(const std::string& expr, const char* what) {
    if (expr.rfind("chi:", 0) == 0) {
        const auto parts = split(expr, ':');
        if (parts.size() != 3)
            throw std::invalid_argument(std::string(what) + ": expected chi:a:b, got '" + expr + "'");
        const real a = parse_real(parts[1], what);
        const real b = parse_real(parts[2], what);
        if (!(0.0L <= a && a < b))
            throw std::invalid_argument(std::string(what) + ": chi needs 0 <= a < b");
        return StepFunction::indicator(1.0, a, b);
    }
    return load_step(expr);
}

// const:c spans [0, horizon]; a file-backed weight keeps its own domain.
Weight parse_weight(const std::string& expr, real horizon) {
    if (expr.rfind("const:", 0) == 0) {
        const auto parts = split(expr, ':');
        if (parts.size() != 2)
            throw std::invalid_argument("w: expected const:c, got '" + expr + "'");
        const real c = parse_real(parts[1], "weight level");
        if (!(c > 0.0L)) throw std::invalid_argument("w: const level must be positive");
        return Weight({0.0L, horizon}, {c});
    }
    return load_weight(expr);
}

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        quoted += c;
        if (c == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
}

// Flattened key,value rows; nested objects use dotted paths and arrays
// stay JSON-encoded in the value cell.  Object keys are already sorted,
// so the row order is as deterministic as the JSON dump.
std::string to_csv(const json& j) {
    std::string out = "key,value\n";
    std::function<void(const json&, const std::string&)> walk =
        [&](const json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (const auto& [k, v] : node.items())
                    walk(v, prefix.empty() ? k : prefix + "." + k);
            } else {
                out += prefix + "," + csv_cell(node) + "\n";
            }
        };
    walk(j, "");
    return out;
}

void emit(const json& j, const RunConfig& cfg) {
    const std::string text = cfg.format == "csv" ? to_csv(j) : j.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out);
    if (!os) throw std::invalid_argument("cannot open --out path '" + cfg.out + "'");
    os << text;
}

using Outcome = std::pair<json, bool>; // report, all verdicts true

Outcome cmd_rearrange(const RunConfig& cfg) {
    return {to_json(rearrange(parse_step(cfg.f, "f"))), true};
}

Outcome cmd_level(const RunConfig& cfg) {
    const StepFunction f = parse_step(cfg.f, "f");
    const Weight w = parse_weight(cfg.w, std::max(cfg.horizon, f.domain_end()));
    json j = to_json(halperin_level(f, w));
    const LevelCrosscheck cross = crosscheck_level(f, w, cfg.tol);
    j["crosscheck"] = to_json(cross);
    return {j, cross.ok};
}

Outcome cmd_modular(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const StepFunction f = parse_step(cfg.f, "f");
    const Weight w = parse_weight(cfg.w, std::max(cfg.horizon, f.domain_end()));
    json j;
    j["rho"] = double(rho_modular(phi, w, f));
    j["q"] = double(q_modular(phi, w, f));
    j["theta_bar"] = double(theta_bar(phi.ext(), w, f));
    if (cfg.p_mode != "none") {
        PMode mode;
        if (cfg.p_mode == "via_q")
            mode = PMode::via_q;
        else if (cfg.p_mode == "convex_opt")
            mode = PMode::convex_opt;
        else if (cfg.p_mode == "grid_oracle")
            mode = PMode::grid_oracle;
        else
            throw std::invalid_argument("p-mode: via_q, convex_opt, grid_oracle, or none");
        j["p"] = to_json(p_modular(phi, w, f, mode));
    }
    return {j, true};
}

Outcome cmd_norm(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const StepFunction f = parse_step(cfg.f, "f");
    const Weight w = parse_weight(cfg.w, std::max(cfg.horizon, f.domain_end()));
    Space space;
    if (cfg.space == "lambda")
        space = Space::lambda;
    else if (cfg.space == "m")
        space = Space::m;
    else
        throw std::invalid_argument("space: lambda or m");
    if (cfg.kind == "lux" || cfg.kind == "luxemburg")
        return {to_json(luxemburg_norm(phi, w, f, space)), true};
    if (cfg.kind == "orlicz") return {to_json(orlicz_norm(phi, w, f, space)), true};
    throw std::invalid_argument("kind: lux or orlicz");
}

Outcome cmd_fundamental(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const Weight w = parse_weight(cfg.w, std::max(cfg.horizon, cfg.t_point));
    return {to_json(fundamental(phi, w, cfg.t_point)), true};
}

Outcome cmd_dualnorm(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const StepFunction f = parse_step(cfg.f, "f");
    const Weight w = parse_weight(cfg.w, std::max(cfg.horizon, f.domain_end()));
    const DualNormCertificate cert = dual_norm_oracle(phi, w, f, cfg.budget);
    const OrliczNormResult norm = orlicz_norm(phi, w, f, Space::m);
    json j = to_json(cert);
    j["orlicz_norm"] = double(norm.value);
    j["deficit"] = double(norm.value - cert.value);
    // the certificate is a lower witness inside the modular ball; a
    // value above the norm or an infeasible witness is a broken run
    const bool ok =
        cert.witness_modular <= 1.0L + 1e-9L && norm.value - cert.value >= -1e-9L;
    return {j, ok};
}

Outcome cmd_holder_audit(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const StepFunction f = parse_step(cfg.f, "f");
    const StepFunction g = parse_step(cfg.g, "g");
    const Weight w = parse_weight(
        cfg.w, std::max({cfg.horizon, f.domain_end(), g.domain_end()}));
    const HolderReport r = holder_audit(phi, w, f, g);
    return {to_json(r), r.holds};
}

// A failed growth probe is the finding, not a malfunction: the report
// carries pass/witness either way and the exit code stays 0.
Outcome cmd_delta2(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const Delta2Report r =
        delta2_probe(phi, cfg.k_big, cfg.lo, cfg.hi, cfg.samples, cfg.ell);
    return {to_json(r), true};
}

Outcome cmd_compare(const RunConfig& cfg) {
    const OrliczFunction phi1 = parse_phi(cfg.phi);
    const OrliczFunction phi2 = parse_phi(cfg.phi2);
    const Weight w = parse_weight(cfg.w, cfg.horizon);
    std::vector<real> eps(cfg.eps_list.begin(), cfg.eps_list.end());
    if (eps.empty()) eps = {0.1L};
    const ComparisonReport r =
        comparison_counterexample(phi1, phi2, w, cfg.n_max, eps, cfg.threshold);
    // either outcome is valid content; only a counterexample whose
    // small modular leaked past 1 is corrupt
    return {to_json(r), r.order_holds || r.q2 < 1.0L};
}

Outcome cmd_pathology(const RunConfig& cfg) {
    const OrliczFunction phi = parse_phi(cfg.phi);
    const Weight w = parse_weight(cfg.w, cfg.horizon);
    const int n_max =
        cfg.witnesses > 0 ? cfg.witnesses : cfg.blocks + cfg.depth + 4;
    const WitnessSequence ws =
        delta2_witness_sequence(phi, n_max, cfg.wit_lo, cfg.wit_hi);
    json ladder;
    ladder["complete"] = ws.complete;
    ladder["failed_at"] = ws.failed_at;
    ladder["u"] = json::array();
    for (real u : ws.u) ladder["u"].push_back(double(u));
    if (!ws.complete) {
        // no ladder, no family: the requested construction has nothing
        // to verify, which the exit code reflects
        json j;
        j["witness_ladder"] = ladder;
        return {j, false};
    }
    const PathologyFamily fam =
        build_disjoint_family(phi, w, ws.u, cfg.blocks, cfg.depth);
    const FamilyReport rep = verify_family(fam, cfg.s, cfg.threshold);
    json j;
    j["witness_ladder"] = ladder;
    j["family"] = to_json(fam);
    j["report"] = to_json(rep);
    return {j, rep.norm_in_window};
}

Outcome cmd_suite(const RunConfig& cfg) {
    const SuiteReport rep = run_suite(cfg.seed, cfg.cases);
    return {to_json(rep), rep.all_passed()};
}

Outcome run_command(const RunConfig& cfg) {
    if (cfg.command == "rearrange") return cmd_rearrange(cfg);
    if (cfg.command == "level") return cmd_level(cfg);
    if (cfg.command == "modular") return cmd_modular(cfg);
    if (cfg.command == "norm") return cmd_norm(cfg);
    if (cfg.command == "fundamental") return cmd_fundamental(cfg);
    if (cfg.command == "dualnorm") return cmd_dualnorm(cfg);
    if (cfg.command == "holder-audit") return cmd_holder_audit(cfg);
    if (cfg.command == "delta2") return cmd_delta2(cfg);
    if (cfg.command == "compare") return cmd_compare(cfg);
    if (cfg.command == "pathology") return cmd_pathology(cfg);
    if (cfg.command == "suite") return cmd_suite(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

} // namespace

int dispatch(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Orlicz-Lorentz space and Kothe-dual calculator over exact step functions"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "write the report to this path instead of stdout");
        sub->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol", cfg.tol, "audit tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--T", cfg.horizon, "domain end for const: weights")
            ->check(CLI::PositiveNumber);
    };
    const auto add_phi = [&](CLI::App* sub) {
        sub->add_option("--phi", cfg.phi, "power:p[:c], exp_n, or exp_plain")->required();
    };
    const auto add_w = [&](CLI::App* sub) {
        sub->add_option("--w", cfg.w, "const:c or weight JSON path")->required();
    };
    const auto add_f = [&](CLI::App* sub) {
        sub->add_option("--f", cfg.f, "chi:a:b or step JSON path")->required();
    };

    CLI::App* rearrange = app.add_subcommand("rearrange", "nonincreasing rearrangement of a step function");
    add_f(rearrange);
    add_common(rearrange);

    CLI::App* level = app.add_subcommand("level", "level decomposition of f against w, with dual-route crosscheck");
    add_f(level);
    add_w(level);
    add_common(level);

    CLI::App* modular = app.add_subcommand("modular", "rho, Q, and down-modular P of f");
    add_phi(modular);
    add_w(modular);
    add_f(modular);
    modular->add_option("--p-mode", cfg.p_mode, "via_q | convex_opt | grid_oracle | none");
    add_common(modular);

    CLI::App* norm = app.add_subcommand("norm", "Luxemburg or Orlicz norm of f");
    norm->add_option("--space", cfg.space, "lambda | m");
    norm->add_option("--kind", cfg.kind, "lux | orlicz");
    add_phi(norm);
    add_w(norm);
    add_f(norm);
    add_common(norm);

    CLI::App* fund = app.add_subcommand("fundamental", "fundamental function values at t");
    add_phi(fund);
    add_w(fund);
    fund->add_option("--t", cfg.t_point, "evaluation point")->check(CLI::PositiveNumber);
    add_common(fund);

    CLI::App* dualnorm = app.add_subcommand("dualnorm", "lower witness for the dual pairing supremum");
    add_phi(dualnorm);
    add_w(dualnorm);
    add_f(dualnorm);
    dualnorm->add_option("--budget", cfg.budget, "random candidates to score")
        ->check(CLI::NonNegativeNumber);
    add_common(dualnorm);

    CLI::App* holder = app.add_subcommand("holder-audit", "pairing chain int fg <= int f*g* <= norm products");
    add_phi(holder);
    add_w(holder);
    add_f(holder);
    holder->add_option("--g", cfg.g, "chi:a:b or step JSON path")->required();
    add_common(holder);

    CLI::App* delta2 = app.add_subcommand("delta2", "scan for a growth-condition violation phi(l u) > K phi(u)");
    add_phi(delta2);
    delta2->add_option("--K", cfg.k_big, "growth constant")->check(CLI::PositiveNumber);
    delta2->add_option("--l", cfg.ell, "dilation factor")->check(CLI::PositiveNumber);
    delta2->add_option("--lo", cfg.lo, "scan range start")->check(CLI::PositiveNumber);
    delta2->add_option("--hi", cfg.hi, "scan range end")->check(CLI::PositiveNumber);
    delta2->add_option("--samples", cfg.samples, "grid size")->check(CLI::PositiveNumber);
    add_common(delta2);

    CLI::App* compare = app.add_subcommand("compare", "one-sided comparison counterexample for phi1 vs phi2");
    add_phi(compare);
    compare->add_option("--phi2", cfg.phi2, "power:p[:c], exp_n, or exp_plain")->required();
    add_w(compare);
    compare->add_option("--n-max", cfg.n_max, "witness ladder length")->check(CLI::PositiveNumber);
    compare->add_option("--eps", cfg.eps_list, "scales for the divergent modular");
    compare->add_option("--threshold", cfg.threshold, "partial-sum crossing target")
        ->check(CLI::PositiveNumber);
    add_common(compare);

    CLI::App* pathology = app.add_subcommand("pathology", "disjoint block family with small modulars and unit sum norm");
    add_phi(pathology);
    add_w(pathology);
    pathology->add_option("--blocks", cfg.blocks, "family width")->check(CLI::PositiveNumber);
    pathology->add_option("--depth", cfg.depth, "cells per block")->check(CLI::PositiveNumber);
    pathology->add_option("--s", cfg.s, "scale-up for the divergence audit");
    pathology->add_option("--threshold", cfg.threshold, "partial-sum crossing target")
        ->check(CLI::PositiveNumber);
    pathology->add_option("--witnesses", cfg.witnesses, "ladder length, 0 = blocks+depth+4")
        ->check(CLI::NonNegativeNumber);
    pathology->add_option("--lo", cfg.wit_lo, "witness scan start")
        ->check(CLI::PositiveNumber);
    pathology->add_option("--hi", cfg.wit_hi, "witness scan end")
        ->check(CLI::PositiveNumber);
    add_common(pathology);

    CLI::App* suite = app.add_subcommand("suite", "seeded property-suite run over every module invariant");
    suite->add_option("--seed", cfg.seed, "64-bit generator seed");
    suite->add_option("--cases", cfg.cases, "instances per check before per-check striding")
        ->check(CLI::NonNegativeNumber);
    add_common(suite);

    try {
        app.parse(argc, argv);
        for (const CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        if (const char* env = std::getenv("OLS_SEED")) {
            const std::string text = env;
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(text, &pos);
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (text.empty() || pos != text.size())
                throw std::invalid_argument("OLS_SEED: bad integer '" + text + "'");
            cfg.seed = v;
        }
        const auto [report, verified] = run_command(cfg);
        emit(report, cfg);
        return verified ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    }
}

} // namespace olk
