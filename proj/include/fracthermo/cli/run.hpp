#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "fracthermo/caputo.hpp"
#include "fracthermo/cli/config.hpp"
#include "fracthermo/green.hpp"
#include "fracthermo/hypotheses.hpp"
#include "fracthermo/solver.hpp"
#include "fracthermo/theorem_lab.hpp"

namespace fracthermo::cli {

using nlohmann::json;

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_hypotheses = 2 };

/// Closed-form constants of the Green's function for (alpha, beta, eta).
struct BoundsSummary {
    double wellposedness = 0.0;
    double cond_i = 0.0;
    double k = 0.0;
    double k1 = 0.0;
    double inv_k = 0.0;
    double sup_integral = 0.0;
    double inf_integral = 0.0;
};

inline BoundsSummary compute_bounds(const ModelParams& p) {
    BoundsSummary b;
    b.wellposedness = p.wellposedness();
    b.cond_i = condition_i_value(p);
    b.k = bound_k(p);
    b.k1 = bound_k1(p);
    b.inv_k = 1.0 / b.k;
    b.sup_integral = sup_integral(p);
    b.inf_integral = b.k;
    return b;
}

inline void print_bounds(std::ostream& os, const BoundsSummary& b) {
    const auto line = [&](const char* name, double v) {
        os << name << " = " << detail::format_real(v) << '\n';
    };
    line("wellposedness", b.wellposedness);
    line("cond_i", b.cond_i);
    line("k", b.k);
    line("k1", b.k1);
    line("inv_k", b.inv_k);
    line("sup_integral", b.sup_integral);
    line("inf_integral", b.inf_integral);
}

// Non-finite doubles become null.
inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const ModelParams& p) {
    return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"eta", p.eta()}, {"lambda", p.lambda()}};
}

inline json to_json(const HypothesisReport& h) {
    return {
        {"wellposed", h.wellposed},
        {"wellposed_value", number(h.wellposed_value)},
        {"cond_i", h.cond_i},
        {"cond_i_value", number(h.cond_i_value)},
        {"cond_ii", h.cond_ii},
        {"cond_ii_samples", h.cond_ii_samples},
        {"cond_ii_inapplicable", h.cond_ii_inapplicable},
        {"cond_ii_violations", h.cond_ii_violations},
        {"cond_ii_violations_u_reading", h.cond_ii_violations_u},
        {"cond_ii_worst_margin", number(h.cond_ii_worst_margin)},
        {"contraction_violations", h.contraction_violations},
        {"contraction_worst_margin", number(h.contraction_worst_margin)},
        {"cond_iii", h.cond_iii},
        {"cond_iii_applicable", h.cond_iii_applicable},
        {"cond_iii_integral", number(h.cond_iii_integral)},
        {"cond_iii_bound", number(h.cond_iii_bound)},
        {"monotone_f", h.monotone_f},
        {"monotone_checked", h.monotone_checked},
        {"monotone_violations", h.monotone_violations},
        {"f_positive_somewhere", h.f_positive_somewhere},
        {"f_positive_at", number(h.f_positive_at)},
        {"k", number(h.k)},
        {"k1", number(h.k1)},
        {"lambda_threshold", number(h.lambda_threshold)},
        {"lambda_ok", h.lambda_ok},
        {"R", number(h.R)},
        {"seed", h.seed},
    };
}

inline json to_json(const SolveResult& s) {
    return {
        {"converged", s.converged},
        {"iterations", s.iterations},
        {"final_step", number(s.final_step)},
        {"fixed_point_residual", number(s.fixed_point_residual)},
        {"step_history", s.step_history},
        {"min_value", number(s.solution.min())},
        {"max_value", number(s.solution.max())},
        {"grid_n", s.solution.intervals()},
    };
}

inline json to_json(const ResidualReport& r) {
    return {
        {"ode_residual_sup", number(r.ode_residual_sup)},
        {"bc1_residual", number(r.bc1_residual)},
        {"bc2_residual", number(r.bc2_residual)},
        {"grid_n", r.grid_n},
    };
}

/// Same keys as `filled`, every value null.
inline json null_like(const json& filled) {
    json out = json::object();
    for (const auto& [key, value] : filled.items()) {
        out[key] = nullptr;
    }
    return out;
}

/// Writes `contents` to `path` via a temporary file in the same directory
/// and a rename.
inline void write_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path +
                                 "': " + ec.message());
    }
}

/// `t,u` header followed by one row per grid node, 17 significant digits.
inline std::string solution_csv(const GridFunction& u) {
    std::string out = "t,u\n";
    char buf[64];
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.t(i), u[i]);
        out += buf;
    }
    return out;
}

/// Everything one `solve` run produced; absent parts serialize as nulls.
struct SolveOutcome {
    int exit_code = exit_failure;
    std::string message;
    std::optional<ModelParams> params;
    std::optional<HypothesisReport> hypotheses;
    std::optional<SolveResult> solve;
    std::optional<ResidualReport> residuals;
    bool hypotheses_pass = true;
};

inline json report_json(const RunConfig& cfg, const SolveOutcome& o) {
    json params = o.params ? to_json(*o.params)
                           : json{{"alpha", number(cfg.alpha.value_or(NAN))},
                                  {"beta", number(cfg.beta.value_or(NAN))},
                                  {"eta", number(cfg.eta.value_or(NAN))},
                                  {"lambda", number(cfg.lambda.value_or(NAN))}};
    params["f"] = cfg.f_spec ? json(*cfg.f_spec) : json(nullptr);
    params["grid_n"] = cfg.grid_n;
    params["tol"] = cfg.tol;
    params["max_iter"] = cfg.max_iter;
    params["panels_per_segment"] = cfg.quad.panels_per_segment;
    params["grading_levels"] = cfg.quad.grading_levels;

    const json hyp_template = to_json(HypothesisReport{});
    const json solve_template = to_json(SolveResult{GridFunction::constant(2, 0.0)});
    const json res_template = to_json(ResidualReport{});

    return {
        {"params", params},
        {"hypotheses", o.hypotheses ? to_json(*o.hypotheses) : null_like(hyp_template)},
        {"solve", o.solve ? to_json(*o.solve) : null_like(solve_template)},
        {"residuals", o.residuals ? to_json(*o.residuals) : null_like(res_template)},
        {"status",
         {{"exit_code", o.exit_code},
          {"message", o.message},
          {"check_hypotheses", to_string(cfg.check_hypotheses)},
          {"hypotheses_pass", o.hypotheses_pass}}},
    };
}

/// Runs hypotheses, Picard solve and (optionally) residual verification.
///
/// Exit codes: 0 converged with all requested checks passing; 2 hypotheses
/// failed under strict checking; 1 otherwise (non-convergence, source
/// domain breach, bad configuration, I/O failure).
inline SolveOutcome execute_solve(const RunConfig& cfg, std::ostream& log) {
    SolveOutcome o;
    try {
        o.params = cfg.params();
        const SourceFunction f = cfg.source();
        const QuadSpec q = cfg.quad;
        q.validate();

        if (cfg.check_hypotheses != HypothesisMode::off) {
            o.hypotheses = check_all(*o.params, f, cfg.R, cfg.seed, q);
            o.hypotheses_pass = o.hypotheses->all_pass();
            if (!o.hypotheses_pass) {
                log << "warning: sufficient conditions not all satisfied (lambda_threshold="
                    << detail::format_real(o.hypotheses->lambda_threshold) << ")\n";
            }
        }

        bool solved = false;
        try {
            o.solve = picard_solve(*o.params, f, GridFunction::constant(cfg.grid_n, 0.0),
                                   SolveOptions{cfg.tol, cfg.max_iter}, q);
            solved = o.solve->converged;
            if (!solved) {
                o.message = "Picard iteration did not converge in " + std::to_string(cfg.max_iter) +
                            " iterations";
            }
        } catch (const EvaluationError& e) {
            o.message = std::string("evaluation error: ") + e.what();
        }

        if (solved && cfg.verify_residual) {
            o.residuals = verify_solution(*o.params, f, o.solve->solution);
        }

        if (cfg.check_hypotheses == HypothesisMode::strict && !o.hypotheses_pass) {
            o.exit_code = exit_hypotheses;
            if (o.message.empty()) {
                o.message = "hypotheses failed (strict)";
            }
        } else if (!solved) {
            o.exit_code = exit_failure;
        } else {
            o.exit_code = exit_ok;
            o.message = "converged";
        }
    } catch (const ConfigError& e) {
        o.exit_code = exit_failure;
        o.message = std::string("configuration error: ") + e.what();
    } catch (const DomainError& e) {
        o.exit_code = exit_failure;
        o.message = std::string("invalid parameters: ") + e.what();
    }
    return o;
}

/// execute_solve plus outputs: CSV (when a solution exists) and JSON report.
inline int run_solve(const RunConfig& cfg, std::ostream& log) {
    SolveOutcome o = execute_solve(cfg, log);
    try {
        if (o.solve) {
            write_atomic(cfg.out, solution_csv(o.solve->solution));
        }
        write_atomic(cfg.report, report_json(cfg, o).dump(2) + "\n");
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_failure;
    }
    log << o.message << '\n';
    return o.exit_code;
}

inline int run_lab(std::size_t sample_count, std::uint64_t seed, std::ostream& log) {
    const lab::LabReport rep = lab::example_verify(sample_count, seed);
    log << "pairs = " << rep.pairs << '\n'
        << "violations = " << rep.violations << '\n'
        << "order_violations = " << rep.order_violations << '\n'
        << "worst_defect = " << detail::format_real(rep.worst_defect) << '\n'
        << "orbit_starts = " << rep.orbit_starts << '\n'
        << "orbit_failures = " << rep.orbit_failures << '\n'
        << "max_orbit_length = " << rep.max_orbit_length << '\n';
    return rep.ok() ? exit_ok : exit_failure;
}

}  // namespace fracthermo::cli
