// Experiment runner for circumscribed random polytopes: samples the primal
// halfspace model and the polar point model, estimates mean-width/volume
// gaps, face counts, T_q* and simplex-volume moments, and checks the
// identities and asymptotic laws against their predicted constants.

#include <chrono>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcp/asymptotics.hpp"
#include "rcp/io.hpp"

using nlohmann::json;
using namespace rcp;

namespace {

struct CommonFlags {
    std::string body = "ball";
    int dim = 2;
    std::vector<long> n_values;
    long trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = available parallelism
    std::string out;
};

int effective_threads(int flag) {
    if (flag > 0) return flag;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ExperimentConfig to_config(const CommonFlags& f) {
    ExperimentConfig cfg;
    cfg.body_spec = f.body;
    cfg.dim = f.dim;
    cfg.n_values = f.n_values;
    cfg.trials = f.trials;
    cfg.seed = f.seed;
    cfg.threads = effective_threads(f.threads);
    return cfg;
}

std::string join_ns(const std::vector<long>& ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ns[i]);
    }
    return s;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool need_n = true) {
    cmd->add_option("--body", f.body, "ball|simplex|cube|polygon:k|file:PATH")
        ->required();
    cmd->add_option("--dim", f.dim, "ambient dimension d >= 2")->required();
    if (need_n)
        cmd->add_option("--n", f.n_values, "halfspace/point counts")
            ->required()
            ->delimiter(',');
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per n");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
    cmd->add_option("--out", f.out, "output file")->required();
}

json estimate_to_json(const Estimate& e) {
    return json{{"mean", e.mean},
                {"stderr", e.stderr_},
                {"count", e.count},
                {"rejected", e.rejected}};
}

void write_json_out(const std::string& path, const RunManifest& man, json j,
                    double wall) {
    j["manifest"] = {{"version", kArtifactVersion},
                     {"command", man.command},
                     {"body", man.body},
                     {"dim", man.dim},
                     {"seed", man.seed},
                     {"generator", kGeneratorName}};
    write_file_atomic(path, j.dump(2) + "\n");
    write_manifest_sidecar(path, man, wall);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circumscribed random polytope experiments"};
    app.require_subcommand(1);

    CommonFlags gap_f, faces_f, tq_f, check_f, ballmax_f;
    std::string gap_functional = "width";
    int tq_q = 1;
    long tq_budget = 2000;
    std::string check_which = "eq14";
    long check_m = 4000;
    long check_budget = 2000;
    std::string check_shape = "square";
    int check_q = 1;
    long check_samples = 1000000;

    int mom_dim = 2, mom_q = 1;
    long mom_samples = 2000000;
    std::uint64_t mom_seed = 1;
    std::string mom_out;

    std::string fit_in, fit_law = "width", fit_body, fit_out;
    int fit_dim = 2;

    std::string bm_bodies = "ball,square,triangle";
    long bm_n = 20;

    auto* gap = app.add_subcommand("gap", "mean-width or volume gap per n");
    add_common(gap, gap_f);
    gap->add_option("--functional", gap_functional, "width|volume");

    auto* faces = app.add_subcommand("faces", "proper vertex/facet counts per n");
    add_common(faces, faces_f);

    auto* tq = app.add_subcommand("tq", "T_q* of the dual model per n");
    add_common(tq, tq_f);
    tq->add_option("--q", tq_q, "exponent q in {0,1,2}");
    tq->add_option("--budget", tq_budget, "points per S_F integration");

    auto* moments = app.add_subcommand("moments", "M_q simplex-volume moment");
    moments->add_option("--dim", mom_dim)->required();
    moments->add_option("--q", mom_q);
    moments->add_option("--samples", mom_samples);
    moments->add_option("--seed", mom_seed);
    moments->add_option("--out", mom_out)->required();

    auto* check = app.add_subcommand("check", "identity/inequality verdicts");
    add_common(check, check_f);
    check->add_option("--which", check_which, "eq14|efron|lemma41|bound16");
    check->add_option("--m", check_m, "fresh samples per complement estimate");
    check->add_option("--budget", check_budget, "points per S_F integration");
    check->add_option("--shape", check_shape, "square|disk (bound16)");
    check->add_option("--q", check_q, "moment exponent (bound16)");
    check->add_option("--samples", check_samples, "samples (bound16)");

    auto* fit = app.add_subcommand("fit", "fit a law to a gap/faces CSV");
    fit->add_option("--in", fit_in, "input CSV")->required();
    fit->add_option("--law", fit_law, "width|f0|fd1|exponent");
    fit->add_option("--body", fit_body, "body for predicted constants");
    fit->add_option("--dim", fit_dim);
    fit->add_option("--out", fit_out, "output JSON")->required();

    auto* ballmax = app.add_subcommand("ballmax", "ball-maximality comparison");
    ballmax->add_option("--bodies", bm_bodies, "comma-separated body specs")
        ->required();
    ballmax->add_option("--dim", ballmax_f.dim)->required();
    ballmax->add_option("--n", bm_n);
    ballmax->add_option("--trials", ballmax_f.trials);
    ballmax->add_option("--seed", ballmax_f.seed);
    ballmax->add_option("--threads", ballmax_f.threads);
    ballmax->add_option("--out", ballmax_f.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    const auto t_start = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t_start)
            .count();
    };

    try {
        if (gap->parsed()) {
            if (gap_functional != "width" && gap_functional != "volume") {
                std::cerr << "error: --functional must be width or volume\n";
                return 2;
            }
            ExperimentConfig cfg = to_config(gap_f);
            Body K = make_body(cfg.body_spec, cfg.dim);
            auto ests = estimate_gap(cfg, K,
                                     gap_functional == "width"
                                         ? GapFunctional::Width
                                         : GapFunctional::Volume);
            RunManifest man{"gap --functional " + gap_functional + " --n " +
                                join_ns(cfg.n_values) + " --trials " +
                                std::to_string(cfg.trials),
                            cfg.body_spec, cfg.dim, cfg.seed};
            std::vector<CsvRow> rows;
            for (std::size_t i = 0; i < ests.size(); ++i) {
                rows.push_back({cfg.n_values[i], ests[i].mean, ests[i].stderr_,
                                cfg.trials, ests[i].rejected, gap_functional});
                if (ests[i].count == 0)
                    std::cerr << "note: all trials rejected at n="
                              << cfg.n_values[i] << "\n";
            }
            write_csv(gap_f.out, man, rows);
            write_manifest_sidecar(gap_f.out, man, wall());
            return 0;
        }

        if (faces->parsed()) {
            ExperimentConfig cfg = to_config(faces_f);
            Body K = make_body(cfg.body_spec, cfg.dim);
            auto rows_est = estimate_face_counts(cfg, K);
            RunManifest man{"faces --n " + join_ns(cfg.n_values) + " --trials " +
                                std::to_string(cfg.trials),
                            cfg.body_spec, cfg.dim, cfg.seed};
            std::vector<CsvRow> rows;
            for (std::size_t i = 0; i < rows_est.size(); ++i) {
                rows.push_back({cfg.n_values[i], rows_est[i].f0.mean,
                                rows_est[i].f0.stderr_, cfg.trials,
                                rows_est[i].f0.rejected, "f0"});
                rows.push_back({cfg.n_values[i], rows_est[i].fd1.mean,
                                rows_est[i].fd1.stderr_, cfg.trials,
                                rows_est[i].fd1.rejected, "fd1"});
            }
            write_csv(faces_f.out, man, rows);
            write_manifest_sidecar(faces_f.out, man, wall());
            return 0;
        }

        if (tq->parsed()) {
            ExperimentConfig cfg = to_config(tq_f);
            cfg.simplex_budget = tq_budget;
            Body K = make_body(cfg.body_spec, cfg.dim);
            auto ests = estimate_T_q(cfg, K, tq_q);
            RunManifest man{"tq --q " + std::to_string(tq_q) + " --n " +
                                join_ns(cfg.n_values) + " --trials " +
                                std::to_string(cfg.trials) + " --budget " +
                                std::to_string(tq_budget),
                            cfg.body_spec, cfg.dim, cfg.seed};
            std::vector<CsvRow> rows;
            for (std::size_t i = 0; i < ests.size(); ++i)
                rows.push_back({cfg.n_values[i], ests[i].mean, ests[i].stderr_,
                                cfg.trials, ests[i].rejected,
                                "tq" + std::to_string(tq_q)});
            write_csv(tq_f.out, man, rows);
            write_manifest_sidecar(tq_f.out, man, wall());
            return 0;
        }

        if (moments->parsed()) {
            Estimate e = estimate_Mq(mom_dim, mom_q, mom_samples, mom_seed);
            RunManifest man{"moments --q " + std::to_string(mom_q) +
                                " --samples " + std::to_string(mom_samples),
                            "simplex", mom_dim, mom_seed};
            write_csv(mom_out, man,
                      {{mom_samples, e.mean, e.stderr_, mom_samples, 0,
                        "M" + std::to_string(mom_q)}});
            write_manifest_sidecar(mom_out, man, wall());
            return 0;
        }

        if (check->parsed()) {
            ExperimentConfig cfg = to_config(check_f);
            cfg.complement_samples = check_m;
            cfg.simplex_budget = check_budget;
            RunManifest man{"check --which " + check_which, cfg.body_spec,
                            cfg.dim, cfg.seed};
            json j;
            bool pass = true;
            if (check_which == "eq14") {
                Body K = make_body(cfg.body_spec, cfg.dim);
                auto rows = check_eq14(cfg, K);
                j["which"] = "eq14";
                j["rows"] = json::array();
                for (const auto& r : rows) {
                    j["rows"].push_back({{"n", r.n},
                                         {"primal", estimate_to_json(r.primal)},
                                         {"dual", estimate_to_json(r.dual)},
                                         {"difference",
                                          estimate_to_json(r.difference)},
                                         {"pass", r.pass}});
                    pass = pass && r.pass;
                }
            } else if (check_which == "efron") {
                Body K = make_body(cfg.body_spec, cfg.dim);
                auto rows = check_efron(cfg, K);
                j["which"] = "efron";
                j["rows"] = json::array();
                for (const auto& r : rows) {
                    j["rows"].push_back(
                        {{"n", r.n},
                         {"facets_primal", estimate_to_json(r.facets_primal)},
                         {"n_mu_complement",
                          estimate_to_json(r.n_mu_complement)},
                         {"combined_stderr", r.combined_stderr},
                         {"pass", r.pass}});
                    pass = pass && r.pass;
                }
            } else if (check_which == "lemma41") {
                Body K = make_body(cfg.body_spec, cfg.dim);
                j["which"] = "lemma41";
                j["rows"] = json::array();
                for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
                    const long n = cfg.n_values[ni];
                    long accepted = 0, violations = 0;
                    for (long t = 0; t < cfg.trials; ++t) {
                        RngStream rng(cfg.seed, ni * cfg.trials + t);
                        TrialOutcome tr = build_dual(K, n, rng);
                        if (!tr.accepted()) continue;
                        ++accepted;
                        MeanStderr t1 = T_q_star(tr, K.polar, K, 1,
                                                 cfg.simplex_budget, rng);
                        MeanStderr c = mu_star_complement(
                            tr.poly, K, cfg.complement_samples, rng);
                        const double slack =
                            3.0 * std::hypot(t1.stderr_, c.stderr_);
                        if (t1.value > c.value + slack) ++violations;
                    }
                    const bool row_pass = violations == 0 && accepted > 0;
                    j["rows"].push_back({{"n", n},
                                         {"accepted", accepted},
                                         {"violations", violations},
                                         {"pass", row_pass}});
                    pass = pass && row_pass;
                }
            } else if (check_which == "bound16") {
                auto rep = check_simplex_extremality_bound(
                    cfg.dim, check_q, check_samples, check_shape, cfg.seed);
                j["which"] = "bound16";
                j["shape"] = rep.shape;
                j["M_shape"] = estimate_to_json(rep.M_shape);
                j["bound"] = rep.bound;
                j["pass"] = rep.pass;
                pass = rep.pass;
            } else {
                std::cerr << "error: unknown --which " << check_which << "\n";
                return 2;
            }
            j["pass"] = pass;
            write_json_out(check_f.out, man, j, wall());
            return pass ? 0 : 1;
        }

        if (fit->parsed()) {
            auto rows = read_csv(fit_in);
            std::vector<std::pair<long, Estimate>> pts;
            const std::string want =
                fit_law == "f0" ? "f0" : fit_law == "fd1" ? "fd1" : "";
            for (const CsvRow& r : rows) {
                if (!want.empty() && r.functional != want) continue;
                if (want.empty() && (r.functional == "f0" || r.functional == "fd1"))
                    continue;
                Estimate e;
                e.mean = r.mean;
                e.stderr_ = r.stderr_;
                e.count = r.trials - r.rejected;
                pts.push_back({r.n, e});
            }
            json j;
            RunManifest man{"fit --law " + fit_law, fit_body, fit_dim, 0};
            if (fit_law == "exponent") {
                j["law"] = "exponent";
                j["slope"] = exponent_fit(pts);
            } else {
                const bool scale = fit_law == "width";
                FitResult fr = fit_log_law(pts, fit_dim, scale);
                j["law"] = fit_law;
                j["coefficient"] = fr.coefficient;
                j["intercept"] = fr.intercept;
                j["residual"] = fr.residual;
                j["n_min"] = fr.n_min;
                j["n_max"] = fr.n_max;
                if (!fit_body.empty()) {
                    Body K = make_body(fit_body, fit_dim);
                    const Estimate M1 =
                        estimate_Mq(fit_dim, 1, 2000000, 12345);
                    PredictedConstants pc =
                        predicted_constants(K.poly, fit_dim, M1.mean);
                    const double pred = fit_law == "width" ? pc.width
                                        : fit_law == "f0" ? pc.f0
                                                          : pc.fd1;
                    j["predicted"] = pred;
                    j["ratio"] = fr.coefficient / pred;
                }
            }
            write_json_out(fit_out, man, j, wall());
            return 0;
        }

        if (ballmax->parsed()) {
            std::vector<Body> bodies;
            std::stringstream ss(bm_bodies);
            std::string spec;
            while (std::getline(ss, spec, ','))
                bodies.push_back(make_body(spec, ballmax_f.dim));
            auto rep = ball_max_test(bodies, bm_n, ballmax_f.trials,
                                     ballmax_f.seed,
                                     effective_threads(ballmax_f.threads));
            json j;
            j["n"] = bm_n;
            j["entries"] = json::array();
            for (const auto& e : rep.entries)
                j["entries"].push_back({{"body", e.body},
                                        {"ratio", estimate_to_json(e.ratio)},
                                        {"ball_radius", e.ball_radius},
                                        {"ball_ratio",
                                         estimate_to_json(e.ball_ratio)},
                                        {"dominated", e.dominated}});
            j["comparison_done"] = rep.comparison_done;
            j["pass"] = rep.pass;
            RunManifest man{"ballmax --bodies " + bm_bodies, bm_bodies,
                            ballmax_f.dim, ballmax_f.seed};
            write_json_out(ballmax_f.out, man, j, wall());
            return rep.pass ? 0 : 1;
        }
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
