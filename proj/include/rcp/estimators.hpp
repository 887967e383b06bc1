#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rcp/body.hpp"
#include "rcp/models.hpp"
#include "rcp/sampling.hpp"

namespace rcp {

/// Monte Carlo scalar with sample count and normal-approximation stderr.
/// Built from per-trial values in trial-index order, so the result is
/// independent of how trials were scheduled across threads.
struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long count = 0;
    long rejected = 0;

    static Estimate from_values(const std::vector<std::optional<double>>& vals) {
        Estimate e;
        double sum = 0.0;
        for (const auto& v : vals) {
            if (!v) {
                ++e.rejected;
                continue;
            }
            ++e.count;
            sum += *v;
        }
        if (e.count == 0) return e;
        e.mean = sum / static_cast<double>(e.count);
        double ss = 0.0;
        for (const auto& v : vals)
            if (v) ss += (*v - e.mean) * (*v - e.mean);
        if (e.count > 1)
            e.stderr_ = std::sqrt(ss / static_cast<double>(e.count - 1) /
                                  static_cast<double>(e.count));
        return e;
    }
};

struct AllTrialsRejected : GeometryError {
    using GeometryError::GeometryError;
};

struct ExperimentConfig {
    std::string body_spec = "ball";
    int dim = 2;
    std::vector<long> n_values;
    long trials = 1000;
    std::uint64_t seed = 1;
    long simplex_budget = 2000;    // points per S_F integration
    long complement_samples = 4000; // fresh points per mu* complement estimate
    int threads = 1;
};

namespace detail {

template <class F>
void parallel_for(long count, int threads, F&& fn) {
    if (threads <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
}

}  // namespace detail

/// Runs `trials` independent trials; trial t owns RngStream(seed, base + t).
/// Returns per-trial values in index order (nullopt = rejected trial).
template <class F>
std::vector<std::optional<double>> run_trials(long trials, int threads,
                                              std::uint64_t seed,
                                              std::uint64_t stream_base, F&& fn) {
    std::vector<std::optional<double>> vals(trials);
    detail::parallel_for(trials, threads, [&](long t) {
        RngStream rng(seed, stream_base + static_cast<std::uint64_t>(t));
        vals[t] = fn(rng);
    });
    return vals;
}

enum class GapFunctional { Width, Volume };

/// Per-n estimate of E_1[F(K^(n))] - F(K) over accepted primal trials.
inline std::vector<Estimate> estimate_gap(const ExperimentConfig& cfg, const Body& K,
                                          GapFunctional functional) {
    const double ref = functional == GapFunctional::Width ? K.mean_width_exact()
                                                          : K.volume_exact();
    std::vector<Estimate> out;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const long n = cfg.n_values[ni];
        const std::uint64_t base = static_cast<std::uint64_t>(ni) * cfg.trials;
        auto vals = run_trials(cfg.trials, cfg.threads, cfg.seed, base,
                               [&](RngStream& rng) -> std::optional<double> {
                                   TrialOutcome t = build_primal(K, n, rng);
                                   if (!t.accepted()) return std::nullopt;
                                   const double f =
                                       functional == GapFunctional::Width
                                           ? mean_width(t.poly)
                                           : volume(t.poly);
                                   return f - ref;
                               });
        out.push_back(Estimate::from_values(vals));
    }
    return out;
}

inline std::vector<Estimate> estimate_width_gap(const ExperimentConfig& cfg,
                                                const Body& K) {
    return estimate_gap(cfg, K, GapFunctional::Width);
}

inline std::vector<Estimate> estimate_volume_gap(const ExperimentConfig& cfg,
                                                 const Body& K) {
    return estimate_gap(cfg, K, GapFunctional::Volume);
}

struct FaceCountRow {
    Estimate f0;
    Estimate fd1;
};

/// Proper vertex and facet counts of the primal polytope per n.
inline std::vector<FaceCountRow> estimate_face_counts(const ExperimentConfig& cfg,
                                                      const Body& K) {
    std::vector<FaceCountRow> out;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const long n = cfg.n_values[ni];
        const std::uint64_t base = static_cast<std::uint64_t>(ni) * cfg.trials;
        std::vector<std::optional<double>> v0(cfg.trials), v1(cfg.trials);
        detail::parallel_for(cfg.trials, cfg.threads, [&](long t) {
            RngStream rng(cfg.seed, base + static_cast<std::uint64_t>(t));
            TrialOutcome tr = build_primal(K, n, rng);
            if (!tr.accepted()) return;
            v0[t] = static_cast<double>(tr.proper_vertices.size());
            v1[t] = static_cast<double>(tr.proper_facets.size());
        });
        out.push_back({Estimate::from_values(v0), Estimate::from_values(v1)});
    }
    return out;
}

/// E T_q^*(K_n^*) over accepted dual trials.
inline std::vector<Estimate> estimate_T_q(const ExperimentConfig& cfg, const Body& K,
                                          int q) {
    if (K.kind == BodyKind::Ball)
        throw GeometryError("estimate_T_q: needs a polytopal body");
    const Polytope& P_star = K.polar;
    std::vector<Estimate> out;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const long n = cfg.n_values[ni];
        const std::uint64_t base = static_cast<std::uint64_t>(ni) * cfg.trials;
        auto vals = run_trials(cfg.trials, cfg.threads, cfg.seed, base,
                               [&](RngStream& rng) -> std::optional<double> {
                                   TrialOutcome t = build_dual(K, n, rng);
                                   if (!t.accepted()) return std::nullopt;
                                   return T_q_star(t, P_star, K, q,
                                                   cfg.simplex_budget, rng)
                                       .value;
                               });
        out.push_back(Estimate::from_values(vals));
    }
    return out;
}

/// M_q(Delta_{d-1}): q-th moment of the volume ratio of the simplex spanned
/// by d uniform points in a (d-1)-simplex. Affine invariance makes the
/// reference simplex irrelevant; the canonical corner simplex is used.
inline Estimate estimate_Mq(int d, int q, long samples, std::uint64_t seed,
                            std::uint64_t stream = 0) {
    const int k = d - 1; // ambient dimension of the simplex
    RngStream rng(seed, stream);
    double lam_fact = 1.0;
    for (int i = 2; i <= k; ++i) lam_fact *= i; // 1 / vol(Delta_k)
    std::vector<double> pts(static_cast<std::size_t>(d) * std::max(k, 1));
    std::vector<double> w(d + 1);
    double sum = 0.0, sum2 = 0.0;
    for (long s = 0; s < samples; ++s) {
        for (int p = 0; p < d; ++p) {
            // barycentric Dirichlet(1,...,1) over the k+1 = d vertices
            double tot = 0.0;
            for (int i = 0; i < d; ++i) {
                w[i] = rng.exponential();
                tot += w[i];
            }
            // vertices: origin and e_1..e_k, so coordinates are w_1..w_k / tot
            for (int c = 0; c < k; ++c) pts[p * k + c] = w[c + 1] / tot;
        }
        const double ratio = simplex_volume(pts.data(), k) * lam_fact;
        double v = 1.0;
        for (int i = 0; i < q; ++i) v *= ratio;
        sum += v;
        sum2 += v * v;
    }
    Estimate e;
    e.count = samples;
    e.mean = sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, sum2 / static_cast<double>(samples) - e.mean * e.mean);
    e.stderr_ = std::sqrt(var / static_cast<double>(samples));
    return e;
}

// ---------------------------------------------------------------------------
// identity checks

struct PairedCheckRow {
    long n = 0;
    Estimate primal;     // E_1[W(K^(n))] - W(K)
    Estimate dual;       // 2 E mu*(K^* \ K_n^*)
    Estimate difference; // paired per-trial differences
    long both_accepted = 0;
    bool pass = false;
};

/// Eq.-(14) check: on shared draws, the primal width gap and twice the dual
/// complement mass must agree within 3 paired stderr.
inline std::vector<PairedCheckRow> check_eq14(const ExperimentConfig& cfg,
                                              const Body& K) {
    const double W_K = K.mean_width_exact();
    const int d = K.dim;
    std::vector<PairedCheckRow> out;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const long n = cfg.n_values[ni];
        const std::uint64_t base = static_cast<std::uint64_t>(ni) * cfg.trials;
        std::vector<std::optional<double>> gp(cfg.trials), gd(cfg.trials),
            diff(cfg.trials);
        detail::parallel_for(cfg.trials, cfg.threads, [&](long t) {
            RngStream rng(cfg.seed, base + static_cast<std::uint64_t>(t));
            std::vector<double> draws;
            sample_mu_K_draws_flat(rng, K, n, draws);
            TrialOutcome prim = build_primal_from_draws(K, draws.data(), n);
            TrialOutcome dual = build_dual_from_draws(K, draws.data(), n);
            if (!prim.accepted() || !dual.accepted()) return;
            const double g = mean_width(prim.poly) - W_K;
            const double c =
                2.0 * mu_star_complement(dual.poly, K, cfg.complement_samples, rng)
                          .value;
            gp[t] = g;
            gd[t] = c;
            diff[t] = g - c;
        });
        PairedCheckRow row;
        row.n = n;
        row.primal = Estimate::from_values(gp);
        row.dual = Estimate::from_values(gd);
        row.difference = Estimate::from_values(diff);
        row.both_accepted = row.difference.count;
        row.pass = std::abs(row.difference.mean) <= 3.0 * row.difference.stderr_;
        (void)d;
        out.push_back(row);
    }
    return out;
}

struct EfronRow {
    long n = 0;
    Estimate facets_primal;  // E f_{d-1}(P^(n))
    Estimate n_mu_complement; // n * E mu*(P^* \ P^*_{n-1})
    double combined_stderr = 0.0;
    bool pass = false;
};

/// Efron identity in circumscribed-dual form:
/// E f_{d-1}(P^(n)) = n * E mu*(P^* \ P^*_{n-1}).
/// Both sides are evaluated on plain hulls of the dual sample points, where
/// the identity is exact without any acceptance conditioning (a point is a
/// hull vertex iff it lies outside the hull of the others). On accepted
/// trials the hull vertex count equals the primal proper facet count;
/// conditioning each side on its own acceptance event would bias the
/// comparison whenever the rejection rate is non-negligible.
inline std::vector<EfronRow> check_efron(const ExperimentConfig& cfg, const Body& K) {
    const int d = K.dim;
    auto hull_of_samples = [&](RngStream& rng, long k) {
        std::vector<double> flat(static_cast<std::size_t>(k) * d);
        for (long i = 0; i < k; ++i) {
            const Vec x = sample_mu_K_star(rng, K);
            std::copy(x.begin(), x.end(), flat.begin() + i * d);
        }
        return convex_hull(flat.data(), k, d);
    };
    std::vector<EfronRow> out;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
        const long n = cfg.n_values[ni];
        const std::uint64_t base = static_cast<std::uint64_t>(ni) * cfg.trials * 2;
        auto facet_counts =
            run_trials(cfg.trials, cfg.threads, cfg.seed, base,
                       [&](RngStream& rng) -> std::optional<double> {
                           try {
                               return static_cast<double>(
                                   hull_of_samples(rng, n).vertices.size());
                           } catch (const DegenerateInput&) {
                               return std::nullopt;
                           }
                       });
        auto compl_mass =
            run_trials(cfg.trials, cfg.threads, cfg.seed, base + cfg.trials,
                       [&](RngStream& rng) -> std::optional<double> {
                           try {
                               const Polytope Q = hull_of_samples(rng, n - 1);
                               return mu_star_complement(
                                          Q, K, cfg.complement_samples, rng)
                                   .value;
                           } catch (const DegenerateInput&) {
                               return std::nullopt;
                           }
                       });
        EfronRow row;
        row.n = n;
        row.facets_primal = Estimate::from_values(facet_counts);
        row.n_mu_complement = Estimate::from_values(compl_mass);
        row.n_mu_complement.mean *= static_cast<double>(n);
        row.n_mu_complement.stderr_ *= static_cast<double>(n);
        row.combined_stderr = std::hypot(row.facets_primal.stderr_,
                                         row.n_mu_complement.stderr_);
        row.pass = std::abs(row.facets_primal.mean - row.n_mu_complement.mean) <=
                   3.0 * row.combined_stderr;
        out.push_back(row);
    }
    return out;
}

struct ExtremalityReport {
    int d = 0, q = 0;
    std::string shape;
    Estimate M_shape;
    double bound = 0.0; // (d-1)^{(d-1)(d+q)} M_q(Delta_{d-1})
    bool pass = false;
};

/// Checks the simplex-extremality bound M_q(A) <= (d-1)^{(d-1)(d+q)} M_q(Delta)
/// for a non-simplex (d-1)-body A (square or disk section).
inline ExtremalityReport check_simplex_extremality_bound(int d, int q, long samples,
                                                         const std::string& shape,
                                                         std::uint64_t seed) {
    if (d != 2 && d != 3)
        throw GeometryError("check_simplex_extremality_bound: d must be 2 or 3");
    const int k = d - 1;
    ExtremalityReport rep;
    rep.d = d;
    rep.q = q;
    rep.shape = shape;

    RngStream rng(seed, 0);
    std::vector<double> pts(static_cast<std::size_t>(d) * k);
    double area = 1.0;
    auto draw_point = [&](double* out) {
        if (k == 1 || shape == "square") {
            for (int c = 0; c < k; ++c) out[c] = rng.uniform();
        } else { // unit disk
            double x, y;
            do {
                x = 2.0 * rng.uniform() - 1.0;
                y = 2.0 * rng.uniform() - 1.0;
            } while (x * x + y * y > 1.0);
            out[0] = x;
            out[1] = y;
        }
    };
    if (k == 2 && shape == "disk") area = M_PI;

    double sum = 0.0, sum2 = 0.0;
    for (long s = 0; s < samples; ++s) {
        for (int p = 0; p < d; ++p) draw_point(pts.data() + p * k);
        const double ratio = simplex_volume(pts.data(), k) / area;
        double v = 1.0;
        for (int i = 0; i < q; ++i) v *= ratio;
        sum += v;
        sum2 += v * v;
    }
    rep.M_shape.count = samples;
    rep.M_shape.mean = sum / static_cast<double>(samples);
    const double var = std::max(
        0.0, sum2 / static_cast<double>(samples) - rep.M_shape.mean * rep.M_shape.mean);
    rep.M_shape.stderr_ = std::sqrt(var / static_cast<double>(samples));

    const Estimate Mq_simplex = estimate_Mq(d, q, samples, seed, 1);
    rep.bound = std::pow(static_cast<double>(d - 1),
                         static_cast<double>((d - 1) * (d + q))) *
                Mq_simplex.mean;
    rep.pass = rep.M_shape.mean <=
               rep.bound + 3.0 * std::hypot(rep.M_shape.stderr_, Mq_simplex.stderr_);
    return rep;
}

}  // namespace rcp
