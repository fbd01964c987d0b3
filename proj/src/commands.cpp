#include "blmhd/commands.hpp"

#include "blmhd/cancellation.hpp"
#include "blmhd/corpus.hpp"
#include "blmhd/energy.hpp"
#include "blmhd/experiments.hpp"
#include "blmhd/manufactured.hpp"
#include "blmhd/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#ifndef BLMHD_VERSION
#define BLMHD_VERSION "dev"
#endif

namespace blmhd {

namespace fs = std::filesystem;

namespace {

class Outcome {
public:
    void check(const std::string& suite, bool ok, const std::string& subject, const std::string& detail = "") {
        auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& p) { return p.first == suite; });
        if (it == suites.end()) {
            suites.emplace_back(suite, true);
            it = suites.end() - 1;
        }
        if (!ok) {
            it->second = false;
            failures.push_back({{"suite", suite}, {"subject", subject}, {"detail", detail}});
        }
    }
    void warn(const std::string& suite, const std::string& subject, const std::string& detail) {
        warnings.push_back({{"suite", suite}, {"subject", subject}, {"detail", detail}});
    }

    std::vector<std::pair<std::string, bool>> suites;
    Json failures = Json::array();
    Json warnings = Json::array();
};

struct Job {
    const RunConfig& cfg;
    fs::path out;
    const CommandOptions& opts;
    Outcome& oc;
    Json& summary;
    std::vector<std::string>& outputs;

    void csv(const std::string& name, const CsvTable& t) {
        write_csv(out / name, t);
        outputs.push_back(name);
    }
};

std::string num(double v) { return format_double(v); }

GridPtr config_grid(const RunConfig& cfg) {
    cfg.grid.validate();
    return Grid::make(cfg.grid);
}

State initial_state(const RunConfig& cfg, const GridPtr& grid) {
    return state_from_physical(grid, preset(cfg.experiment.data, cfg.experiment.amplitude), cfg.solver.physics,
                               cfg.solver.delta0);
}

State perturbed_state(const RunConfig& cfg, const GridPtr& grid) {
    InitialData d = preset(cfg.experiment.data, cfg.experiment.amplitude);
    const double p = cfg.experiment.perturbation;
    auto base = d.rho;
    d.rho = [base, p](double x, double y) { return base(x, y) + p * std::exp(-y * y) * std::cos(x); };
    return state_from_physical(grid, d, cfg.solver.physics, cfg.solver.delta0);
}

std::shared_ptr<const SourceBundle> sources_for(const State& s, int m) {
    return std::make_shared<const SourceBundle>(bootstrap_time_derivatives(s, m));
}

template <class T>
void shuffle_if(std::vector<T>& v, const CommandOptions& o, std::uint64_t salt) {
    if (!o.seed) return;
    std::mt19937_64 rng(*o.seed ^ salt);
    std::shuffle(v.begin(), v.end(), rng);
}

Json monitor_json(const MonitorStatus& m) {
    return {{"time", m.time},          {"h_floor", m.h_floor},   {"rho_sup", m.rho_sup},
            {"shear_sup", m.shear_sup}, {"breached", m.breached}, {"reason", m.reason}};
}

// ---------------------------------------------------------------- simulate

void simulate(Job& job) {
    const RunConfig& cfg = job.cfg;
    const std::string subject = cfg.experiment.data;
    const int m = cfg.experiment.m;
    const State s0 = initial_state(cfg, config_grid(cfg));
    Trajectory tr;
    try {
        tr = run(s0, cfg.solver, sources_for(s0, m));
    } catch (const SolverDivergence& e) {
        job.oc.check("solver", false, subject, e.what());
        return;
    } catch (const DensityGuard& e) {
        job.oc.check("solver", false, subject, e.what());
        return;
    }
    job.oc.check("solver", true, subject);

    const auto reps = trajectory_report(tr, EnergySpec{m, cfg.solver.l, cfg.solver.delta0});
    std::vector<std::vector<double>> rows;
    for (const auto& r : reps) rows.push_back(energy_row(r));
    job.csv("simulate.csv", numeric_table(energy_columns(), rows));

    bool nonneg = true, monotone = true;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        const auto& r = reps[k];
        for (double v : {r.E, r.Q, r.Q_sup, r.Dx, r.Dy, r.theta_rate, r.xi_rate, r.theta_int, r.xi_int})
            nonneg = nonneg && v >= 0.0;
        nonneg = nonneg && r.X >= 1.0 && r.Y >= 1.0;
        if (k > 0) monotone = monotone && r.Theta >= reps[k - 1].Theta && r.Xi >= reps[k - 1].Xi;
    }
    job.oc.check("functionals_nonnegative", nonneg, subject);
    job.oc.check("theta_monotone", monotone, subject);
    if (tr.breached)
        job.oc.warn("monitors", subject,
                    "monitor breach at t = " + num(tr.breach.time) + " (" + tr.breach.reason + ")");
    if (reps.size() < tr.states.size())
        job.oc.warn("energy", subject, "energy series stops where h + 1 drops below delta0/2");

    if (cfg.experiment.snapshots) {
        fs::create_directories(job.out / "snapshots");
        for (std::size_t k = 0; k < tr.states.size(); ++k) {
            char name[48];
            std::snprintf(name, sizeof name, "snapshots/state_%05zu.bin", k);
            write_snapshot(job.out / name, tr.states[k]);
            job.outputs.push_back(name);
        }
    }

    Json fin = Json::object();
    if (!rows.empty())
        for (std::size_t c = 0; c < energy_columns().size(); ++c) fin[energy_columns()[c]] = rows.back()[c];
    Json hist = Json::array();
    for (const auto& ms : tr.monitor_history) hist.push_back(monitor_json(ms));
    job.summary["data"] = subject;
    job.summary["steps"] = tr.steps;
    job.summary["substeps"] = tr.substeps;
    job.summary["breached"] = tr.breached;
    job.summary["unbreached_until"] = tr.unbreached_until;
    job.summary["final"] = fin;
    job.summary["monitor_history"] = hist;
}

// ----------------------------------------------------- verify-inequalities

void verify_inequalities(Job& job) {
    const RunConfig& cfg = job.cfg;
    const GridPtr grid = config_grid(cfg);
    CsvTable t;
    t.header = {"inequality", "subject", "parameter", "lhs", "rhs", "ratio", "tolerance", "passed", "hypotheses_met"};
    auto add = [&](const InequalityReport& r, const std::string& param) {
        t.rows.push_back({r.inequality, r.subject, param, num(r.lhs), num(r.rhs), num(r.ratio), num(r.tolerance),
                          r.passed ? "true" : "false", r.hypotheses_met ? "true" : "false"});
        job.oc.check(r.inequality, r.passed, r.subject + " " + param, "ratio " + num(r.ratio));
        if (!r.hypotheses_met)
            job.oc.warn(r.inequality, r.subject + " " + param, "hypotheses hold only approximately");
    };

    auto hardy = hardy_corpus();
    shuffle_if(hardy, job.opts, 1);
    double sobolev_sup = 0.0;
    for (const auto& c : hardy) {
        const Field f = Field::from_function(grid, c.f);
        for (double lam : {0.0, 1.0, 2.0}) {
            try {
                add(hardy_check(f, lam, 1e-2, c.name), "lambda=" + num(lam));
            } catch (const PreconditionError& e) {
                job.oc.check("hardy", false, c.name, e.what());
            }
        }
        const auto s = sobolev_check(f, 2.0, c.name);
        sobolev_sup = std::max(sobolev_sup, s.ratio);
        add(s, "c_star=2");
    }

    auto equiv = equivalence_corpus();
    shuffle_if(equiv, job.opts, 2);
    for (const auto& d : equiv) {
        const State s = state_from_physical(grid, d, cfg.solver.physics, cfg.solver.delta0);
        for (const MultiIndex a : {MultiIndex{0, 1, 0}, MultiIndex{0, 2, 0}, MultiIndex{1, 0, 0}}) {
            try {
                for (const auto& r : norm_equivalence_check(s, a, 2.0, 0.5, {}, 1e-2, d.name))
                    add(r, "alpha=" + a.label() + ";l=2;delta=0.5");
            } catch (const PreconditionError& e) {
                job.oc.check("equivalence", false, d.name, e.what());
            }
        }
    }

    auto heat = heat_corpus();
    shuffle_if(heat, job.opts, 3);
    const std::vector<double> eps_grid = {1e-1, 1e-2, 1e-3, 1e-4};
    for (const auto& p : heat) {
        const HeatBoundResult r = heat_bound_check(p, eps_grid, 0.5);
        for (const auto& rep : to_reports(r)) {
            std::string param;
            for (const auto& [k, v] : rep.metadata) param += (param.empty() ? "" : ";") + k + "=" + num(v);
            add(rep, param);
        }
        job.oc.check("heat_spread", r.spread <= 4.0, p.name, "spread " + num(r.spread));
        if (!p.g) job.oc.check("maximum_principle", r.max_principle_excess <= 1e-10, p.name,
                               "excess " + num(r.max_principle_excess));
    }
    job.csv("verify-inequalities.csv", t);
    job.summary["rows"] = t.rows.size();
    job.summary["sobolev_observed_sup"] = sobolev_sup;
}

// ------------------------------------------------------------ cancellation

void cancellation(Job& job) {
    const RunConfig& cfg = job.cfg;
    const MultiIndex a = parse_alpha(cfg.experiment.alpha);
    const SignConvention sign = cfg.experiment.sign == "corrected" ? SignConvention::corrected
                                                                   : SignConvention::as_printed;
    if (sign == SignConvention::as_printed)
        job.oc.warn("sign", "as-printed", "the printed sign of the psi transport term leaves an O(1) residual");

    // Reconstruction Z w = w_m + eta Z psi on the configured data.
    const State s0 = initial_state(cfg, config_grid(cfg));
    const auto src = sources_for(s0, std::max(1, a.t_count));
    const GoodUnknowns gu = good_unknowns(s0, a, 0.0, PdeContext{src.get(), nullptr});
    double recon = 0.0, scale = 1e-300;
    for (auto [w, wm, eta] : {std::tuple{&gu.z_rho, &gu.rho_m, &gu.eta_rho}, std::tuple{&gu.z_u, &gu.u_m, &gu.eta_u},
                              std::tuple{&gu.z_h, &gu.h_m, &gu.eta_h}}) {
        recon = std::max(recon, (*wm + *eta * gu.z_psi - *w).max_abs());
        scale = std::max(scale, w->max_abs());
    }
    job.oc.check("reconstruction", recon <= 1e-13 * scale, cfg.experiment.data, "max defect " + num(recon));

    // Refinement study: manufactured fields for spatial indices, solver runs otherwise.
    const bool mms = a.t_count == 0;
    const Physics phys = cfg.solver.physics;
    const int levels = 3;
    CsvTable t;
    t.header = {"study", "equation", "level", "nx", "ny", "residual", "order"};
    const char* study = mms ? "manufactured" : "solver";
    Json res = Json::object();
    for (GoodEquation which : {GoodEquation::rho_m, GoodEquation::u_m, GoodEquation::h_m}) {
        std::vector<double> r;
        for (int lev = 0; lev < levels; ++lev) {
            const auto g = Grid::make(GridSpec{16 << lev, 32 << lev, 12.0, 1.0});
            if (mms) {
                auto ms = std::make_shared<GaussianManufactured>(0.05, 0.3, 0.3);
                const ManufacturedForcing f(ms, phys);
                const State s = manufactured_state(g, *ms, 0.3, phys);
                r.push_back(cancellation_residual(s, a, which, PdeContext{nullptr, &f}, sign).max_abs());
            } else {
                const State s = initial_state(cfg, g);
                SolverConfig c = cfg.solver;
                c.dt = 0.02 / (1 << lev);
                c.t_end = 0.1;
                c.output_stride = 1;
                c.enforce_monitors = false;
                const Trajectory tr = run(s, c, sources_for(s, std::max(2, a.t_count + 1)));
                r.push_back(cancellation_residual(tr, a, which, sign).sup.back());
            }
        }
        std::vector<double> orders;
        for (int lev = 0; lev < levels; ++lev) {
            double ord = std::nan("");
            if (lev > 0) {
                ord = std::log2(r[lev - 1] / r[lev]);
                orders.push_back(ord);
            }
            t.rows.push_back({study, equation_name(which), std::to_string(lev), std::to_string(16 << lev),
                              std::to_string(32 << lev), num(r[lev]), num(ord)});
        }
        const double min_ord = *std::min_element(orders.begin(), orders.end());
        const double mean_ord = std::log2(r.front() / r.back()) / (levels - 1);
        const bool ok = mms ? min_ord >= 1.8 : mean_ord >= 1.5;
        job.oc.check("convergence", ok, equation_name(which),
                     "orders " + num(orders[0]) + ", " + num(orders[1]));
        res[equation_name(which)] = {{"residuals", r}, {"orders", orders}};
    }
    job.csv("cancellation.csv", t);
    job.summary["alpha"] = a.label();
    job.summary["sign"] = cfg.experiment.sign;
    job.summary["study"] = study;
    job.summary["reconstruction_defect"] = recon;
    job.summary["equations"] = res;
}

// ------------------------------------------------------------------- sweep

void sweep(Job& job) {
    const RunConfig& cfg = job.cfg;
    const State s0 = initial_state(cfg, config_grid(cfg));
    const auto& ladder = cfg.experiment.ladder;
    const SweepResult r = eps_sweep(s0, cfg.solver, ladder, cfg.experiment.threads, cfg.experiment.m);

    CsvTable t;
    t.header = {"time"};
    for (std::size_t k = 0; k < r.pairwise_diffs.size(); ++k)
        t.header.push_back("diff_" + num(ladder[k]) + "_" + num(ladder[k + 1]));
    for (std::size_t n = 0; n < r.times.size(); ++n) {
        std::vector<std::string> row = {num(r.times[n])};
        for (const auto& d : r.pairwise_diffs) row.push_back(num(d[n]));
        t.rows.push_back(std::move(row));
    }
    job.csv("sweep.csv", t);

    for (std::size_t k = 0; k < ladder.size(); ++k)
        job.oc.check("rungs_valid", r.valid[k], "eps=" + num(ladder[k]),
                     "monitor breach, unbreached until t = " + num(r.unbreached_until[k]));
    if (r.sup_diffs.size() >= 2)
        job.oc.check("cauchy_decreasing", r.cauchy_decreasing(), cfg.experiment.data);

    job.summary["data"] = cfg.experiment.data;
    job.summary["eps_ladder"] = ladder;
    job.summary["sup_diffs"] = r.sup_diffs;
    if (r.rates_computed)
        job.summary["rates"] = r.rates;
    else
        job.summary["rates"] = "not computed";
    job.summary["valid"] = r.valid;
    job.summary["unbreached_until"] = r.unbreached_until;
}

// --------------------------------------------------------------- stability

void stability(Job& job) {
    const RunConfig& cfg = job.cfg;
    const int m = cfg.experiment.m, threads = cfg.experiment.threads;
    const std::string subject = cfg.experiment.data;
    const GridPtr grid = config_grid(cfg);
    const State s1 = initial_state(cfg, grid);

    const StabilityResult same = stability_pair(s1, s1, cfg.solver, m, 0.5, threads);
    job.oc.check("identical_data", same.max_raw_diff <= 1e-12, subject, "max raw diff " + num(same.max_raw_diff));

    const StabilityResult pert = stability_pair(s1, perturbed_state(cfg, grid), cfg.solver, m, 0.5, threads);
    job.oc.check("envelope", pert.envelope_ok, subject, "excess " + num(pert.envelope_excess));
    const double bound = 100.0 * std::abs(cfg.experiment.perturbation);
    job.oc.check("difference_bound", pert.max_norm <= bound, subject,
                 "max norm " + num(pert.max_norm) + " against " + num(bound));

    RunConfig fine = cfg;
    fine.grid.nx *= 2;
    fine.grid.ny *= 2;
    const GridPtr fgrid = config_grid(fine);
    const StabilityResult pf =
        stability_pair(initial_state(fine, fgrid), perturbed_state(fine, fgrid), cfg.solver, m, 0.5, threads);
    const double rel = std::abs(pf.gronwall_c - pert.gronwall_c) / std::max(std::abs(pert.gronwall_c), 1e-300);
    job.oc.check("refinement", std::isfinite(rel) && rel <= 0.3, subject,
                 "C " + num(pert.gronwall_c) + " vs " + num(pf.gronwall_c));
    job.oc.warn("norm_weight", subject, "difference norm taken in unweighted L^2 (l = 0)");

    CsvTable t;
    t.header = {"time", "norm_sq", "rho_i", "u_i", "h_i", "phi_bar_max"};
    for (const auto& d : pert.series)
        t.rows.push_back({num(d.time), num(d.norm_sq), num(weighted_l2(d.rho_i, 0.0)), num(weighted_l2(d.u_i, 0.0)),
                          num(weighted_l2(d.h_i, 0.0)), num(d.phi_bar.max_abs())});
    job.csv("stability.csv", t);

    job.summary["data"] = subject;
    job.summary["perturbation"] = cfg.experiment.perturbation;
    job.summary["identical_max_raw_diff"] = same.max_raw_diff;
    job.summary["gronwall_c"] = pert.gronwall_c;
    job.summary["gronwall_c_min"] = pert.gronwall_c_min;
    job.summary["gronwall_c_refined"] = pf.gronwall_c;
    job.summary["envelope_excess"] = pert.envelope_excess;
    job.summary["max_norm"] = pert.max_norm;
    job.summary["unbreached_until"] = pert.unbreached_until;
}

// ------------------------------------------------------------------- norms

void norms(Job& job) {
    const RunConfig& cfg = job.cfg;
    const int m = cfg.experiment.m;
    const double l = cfg.solver.l;
    const State s = initial_state(cfg, config_grid(cfg));
    const auto src = sources_for(s, m);
    const PdeContext ctx{src.get(), nullptr};

    CsvTable t;
    t.header = {"quantity", "field", "mode", "m", "l", "value"};
    bool finite = true;
    auto row = [&](const std::string& q, const std::string& f, const std::string& mode, double v) {
        finite = finite && std::isfinite(v) && v >= 0.0;
        t.rows.push_back({q, f, mode, std::to_string(m), num(l), num(v)});
    };
    double capped_sq = 0.0;
    for (FieldId id : {FieldId::rho, FieldId::u, FieldId::h})
        for (NormMode mode : {NormMode::full, NormMode::tangential_capped, NormMode::tangential_only}) {
            const double v = conormal_norm(s, id, NormSpec{m, l, mode}, ctx);
            if (mode == NormMode::tangential_capped) capped_sq += v * v;
            row("conormal", field_name(id), mode_name(mode), v);
        }
    const auto phys = physical_fields(s);
    const BNorms b = b_norms(phys.rho, phys.u, phys.h, m, l, cfg.solver.physics);
    row("b_bar", "", "", b.b_bar);
    row("b_hat", "", "", b.b_hat);
    row("b_hat_restricted", "", "", b.b_hat_restricted);

    const EnergyReport e = instantaneous_functionals(s, EnergySpec{m, l, cfg.solver.delta0}, ctx);
    Json fun = Json::object();
    const auto vals = energy_row(e);
    for (std::size_t c = 0; c < energy_columns().size(); ++c) {
        const std::string& name = energy_columns()[c];
        if (name == "time" || name == "breached") continue;
        row("functional", "", name, vals[c]);
        fun[name] = vals[c];
    }
    job.csv("norms.csv", t);

    job.oc.check("finite_nonnegative", finite, cfg.experiment.data);
    const double rel = std::abs(e.E - capped_sq) / std::max(e.E, 1e-300);
    job.oc.check("energy_additivity", rel <= 1e-12, cfg.experiment.data,
                 "E " + num(e.E) + " vs sum of capped norms " + num(capped_sq));
    job.oc.warn("q_sup", cfg.experiment.data, "Q is reported both instantaneous and as a running sup");
    job.summary["data"] = cfg.experiment.data;
    job.summary["functionals"] = fun;
}

}  // namespace

const std::vector<std::string>& command_verbs() {
    static const std::vector<std::string> v = {"simulate", "verify-inequalities", "cancellation",
                                               "sweep",    "stability",           "norms"};
    return v;
}

CommandResult run_command(const std::string& verb, const RunConfig& cfg, const fs::path& out_dir,
                          const CommandOptions& opts) {
    using Fn = void (*)(Job&);
    static const std::vector<std::pair<std::string, Fn>> table = {
        {"simulate", simulate}, {"verify-inequalities", verify_inequalities}, {"cancellation", cancellation},
        {"sweep", sweep},       {"stability", stability},                     {"norms", norms}};
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& p) { return p.first == verb; });
    if (it == table.end()) throw std::invalid_argument("unknown verb '" + verb + "'");

    fs::create_directories(out_dir);
    CommandResult res;
    res.manifest.verb = verb;
    res.manifest.config_digest = config_digest(cfg);
    res.manifest.version = BLMHD_VERSION;
    res.manifest.started = utc_timestamp();

    Outcome oc;
    Json body = Json::object();
    Job job{cfg, out_dir, opts, oc, body, res.manifest.outputs};
    try {
        it->second(job);
    } catch (const std::exception& e) {
        oc.check("execution", false, verb, e.what());
    }
    if (opts.strict && !oc.warnings.empty()) {
        for (const auto& w : oc.warnings) oc.check("strict", false, w["subject"], w["detail"]);
    }

    res.manifest.finished = utc_timestamp();
    res.manifest.suites = oc.suites;
    res.summary = Json::object();
    res.summary["verb"] = verb;
    res.summary["config_digest"] = res.manifest.config_digest;
    res.summary["passed"] = res.manifest.passed();
    res.summary["result"] = body;
    res.summary["failures"] = oc.failures;
    res.summary["warnings"] = oc.warnings;
    res.manifest.outputs.push_back("summary.json");
    res.manifest.outputs.push_back("manifest.json");
    write_json(out_dir / "summary.json", res.summary);
    write_json(out_dir / "manifest.json", res.manifest.to_json());
    res.exit_code = res.manifest.passed() ? 0 : 1;
    return res;
}

}  // namespace blmhd
