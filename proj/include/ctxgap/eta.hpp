#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ctxgap/graph.hpp"
#include "ctxgap/jacobi.hpp"
#include "ctxgap/lbfgs.hpp"

namespace ctxgap {

/// A dimension-d unit-vector assignment to the vertices, orthogonal across
/// every edge within the stated errors.  lambda_max is the largest eigenvalue
/// of the Gram sum M = sum_i v_i v_i^T, recomputed from the final vectors.
struct OrthRep {
    int d = 0;
    Eigen::MatrixXd vectors;  // one row per vertex
    double lambda_max = 0.0;
    double orth_error = 0.0;
    double norm_error = 0.0;
};

struct EtaWeights {
    double w_perp = 50000.0;
    double w_lambda = 0.3;
    double w_norm = 5000.0;
};

struct EtaSettings {
    int restarts = 300;
    std::uint64_t seed = 1;
    EtaWeights weights;
    double feasibility_tol = 1e-10;  // restarts above this orth/norm error are discarded
    int jobs = 0;                    // 0 = hardware concurrency
};

class EtaInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Eigen::MatrixXd gram_sum(const Eigen::MatrixXd& V) {
    return V.transpose() * V;  // rows are vectors, so M = sum_i v_i v_i^T
}

inline double orth_error_of(const Eigen::MatrixXd& V,
                            const std::vector<std::pair<int, int>>& edges) {
    double err = 0.0;
    for (auto [i, j] : edges) err = std::max(err, std::abs(V.row(i).dot(V.row(j))));
    return err;
}

inline double norm_error_of(const Eigen::MatrixXd& V) {
    double err = 0.0;
    for (Eigen::Index i = 0; i < V.rows(); ++i)
        err = std::max(err, std::abs(V.row(i).norm() - 1.0));
    return err;
}

/// Shared state for one restart of the three-phase search.
class EtaRestart {
public:
    EtaRestart(const Graph& g, int d, const EtaWeights& w)
        : g_(&g), edges_(g.edges()), n_(g.vertex_count()), d_(d), w_(w) {}

    Eigen::MatrixXd run(std::uint64_t restart_seed) {
        Eigen::MatrixXd V = random_unit_rows(restart_seed);
        phase1(V);
        phase2(V);
        phase3(V);
        return V;
    }

private:
    Eigen::MatrixXd random_unit_rows(std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd V(n_, d_);
        for (int i = 0; i < n_; ++i) {
            do {
                for (int k = 0; k < d_; ++k) V(i, k) = gauss(rng);
            } while (V.row(i).norm() < 1e-8);
            V.row(i).normalize();
        }
        return V;
    }

    Eigen::VectorXd flatten(const Eigen::MatrixXd& V) const {
        Eigen::VectorXd x(n_ * d_);
        for (int i = 0; i < n_; ++i) x.segment(i * d_, d_) = V.row(i).transpose();
        return x;
    }

    Eigen::MatrixXd unflatten(const Eigen::VectorXd& x) const {
        Eigen::MatrixXd V(n_, d_);
        for (int i = 0; i < n_; ++i) V.row(i) = x.segment(i * d_, d_).transpose();
        return V;
    }

    // Phase 1: minimize the summed squared cosines over edges (directions only).
    void phase1(Eigen::MatrixXd& V) const {
        if (edges_.empty()) return;
        Eigen::VectorXd x = flatten(V);
        const auto objective = [&](const Eigen::VectorXd& xv, Eigen::VectorXd& grad) {
            const Eigen::MatrixXd W = unflatten(xv);
            grad.setZero(xv.size());
            double f = 0.0;
            for (auto [i, j] : edges_) {
                const double ni = W.row(i).norm(), nj = W.row(j).norm();
                const Eigen::RowVectorXd ui = W.row(i) / ni, uj = W.row(j) / nj;
                const double c = ui.dot(uj);
                f += c * c;
                grad.segment(i * d_, d_) +=
                    (2.0 * c / ni) * (uj - c * ui).transpose();
                grad.segment(j * d_, d_) +=
                    (2.0 * c / nj) * (ui - c * uj).transpose();
            }
            return f;
        };
        LbfgsSettings s;
        s.max_iterations = 250;
        s.grad_tol = 1e-12;
        minimize_lbfgs(objective, x, s);
        V = unflatten(x);
        for (int i = 0; i < n_; ++i) V.row(i).normalize();
    }

    // Phase 2: push the top eigenvalue up under quadratic penalties, with a
    // log-sum-exp smoothing of lambda_max (temperature 1e-3) so eigenvalue
    // crossings stay differentiable.
    void phase2(Eigen::MatrixXd& V) const {
        Eigen::VectorXd x = flatten(V);
        const double t = 1e-3;
        const auto objective = [&](const Eigen::VectorXd& xv, Eigen::VectorXd& grad) {
            const Eigen::MatrixXd W = unflatten(xv);
            const EigenDecomposition eig = jacobi_eigen(gram_sum(W));
            const double lmax = eig.values(0);
            double denom = 0.0;
            for (int k = 0; k < d_; ++k) denom += std::exp((eig.values(k) - lmax) / t);
            const double smooth = lmax + t * std::log(denom);

            Eigen::MatrixXd Wmat = Eigen::MatrixXd::Zero(d_, d_);
            for (int k = 0; k < d_; ++k) {
                const double wk = std::exp((eig.values(k) - lmax) / t) / denom;
                if (wk > 1e-300)
                    Wmat += wk * eig.vectors.col(k) * eig.vectors.col(k).transpose();
            }

            grad.setZero(xv.size());
            double f = -w_.w_lambda * smooth;
            for (int i = 0; i < n_; ++i)
                grad.segment(i * d_, d_) -=
                    w_.w_lambda * 2.0 * (Wmat * W.row(i).transpose());
            for (auto [i, j] : edges_) {
                const double c = W.row(i).dot(W.row(j));
                f += w_.w_perp * c * c;
                grad.segment(i * d_, d_) += w_.w_perp * 2.0 * c * W.row(j).transpose();
                grad.segment(j * d_, d_) += w_.w_perp * 2.0 * c * W.row(i).transpose();
            }
            for (int i = 0; i < n_; ++i) {
                const double r = W.row(i).squaredNorm() - 1.0;
                f += w_.w_norm * r * r;
                grad.segment(i * d_, d_) += w_.w_norm * 4.0 * r * W.row(i).transpose();
            }
            return f;
        };
        LbfgsSettings s;
        s.max_iterations = 400;
        s.grad_tol = 1e-10;
        minimize_lbfgs(objective, x, s);
        V = unflatten(x);
    }

    // Constraint residuals: unit norms then edge orthogonalities.
    Eigen::VectorXd constraints(const Eigen::MatrixXd& V) const {
        Eigen::VectorXd h(n_ + static_cast<int>(edges_.size()));
        for (int i = 0; i < n_; ++i) h(i) = V.row(i).squaredNorm() - 1.0;
        for (std::size_t e = 0; e < edges_.size(); ++e)
            h(n_ + static_cast<int>(e)) =
                V.row(edges_[e].first).dot(V.row(edges_[e].second));
        return h;
    }

    Eigen::MatrixXd constraint_jacobian(const Eigen::MatrixXd& V) const {
        const int mc = n_ + static_cast<int>(edges_.size());
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(mc, n_ * d_);
        for (int i = 0; i < n_; ++i) J.block(i, i * d_, 1, d_) = 2.0 * V.row(i);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto [i, j] = edges_[e];
            const int row = n_ + static_cast<int>(e);
            J.block(row, i * d_, 1, d_) = V.row(j);
            J.block(row, j * d_, 1, d_) = V.row(i);
        }
        return J;
    }

    // Gauss-Newton restoration onto the constraint manifold.
    bool restore(Eigen::MatrixXd& V, double target = 1e-13, int max_steps = 30) const {
        for (int step = 0; step < max_steps; ++step) {
            const Eigen::VectorXd h = constraints(V);
            if (h.cwiseAbs().maxCoeff() <= target) return true;
            const Eigen::MatrixXd J = constraint_jacobian(V);
            const Eigen::VectorXd mu =
                (J * J.transpose()).completeOrthogonalDecomposition().solve(h);
            const Eigen::VectorXd dx = J.transpose() * mu;
            Eigen::VectorXd x = flatten(V) - dx;
            V = unflatten(x);
        }
        return constraints(V).cwiseAbs().maxCoeff() <= target;
    }

    // Phase 3: projected gradient ascent on the exact lambda_max along the
    // constraint manifold, restoring feasibility after every trial step.
    void phase3(Eigen::MatrixXd& V) const {
        if (!restore(V)) return;  // leave infeasible restarts to be discarded
        double lambda = jacobi_eigen(gram_sum(V)).values(0);
        double step = 0.5;
        int flat_steps = 0;
        for (int iter = 0; iter < 400 && flat_steps < 4; ++iter) {
            const EigenDecomposition eig = jacobi_eigen(gram_sum(V));
            const Eigen::VectorXd u = eig.vectors.col(0);
            Eigen::VectorXd g(n_ * d_);
            for (int i = 0; i < n_; ++i)
                g.segment(i * d_, d_) = 2.0 * V.row(i).dot(u) * u;

            const Eigen::MatrixXd J = constraint_jacobian(V);
            const auto jjt = (J * J.transpose()).completeOrthogonalDecomposition();
            const Eigen::VectorXd p = g - J.transpose() * jjt.solve(J * g);
            if (p.cwiseAbs().maxCoeff() <= 1e-13) break;

            bool improved = false;
            for (int ls = 0; ls < 30; ++ls) {
                Eigen::MatrixXd trial = unflatten(flatten(V) + step * p);
                if (restore(trial)) {
                    const double lt = jacobi_eigen(gram_sum(trial)).values(0);
                    if (lt > lambda + 1e-15) {
                        if (lt - lambda < 1e-13) ++flat_steps;
                        else flat_steps = 0;
                        V = std::move(trial);
                        lambda = lt;
                        improved = true;
                        step = std::min(step * 2.0, 1.0);
                        break;
                    }
                }
                step *= 0.5;
                if (step < 1e-14) break;
            }
            if (!improved) break;
        }
        restore(V, 1e-14);
    }

    const Graph* g_;
    std::vector<std::pair<int, int>> edges_;
    int n_;
    int d_;
    EtaWeights w_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct EtaRunStats {
    OrthRep best;
    int feasible_restarts = 0;
    std::vector<double> feasible_lambdas;  // indexed by restart order
};

inline EtaRunStats optimize_eta_detailed(const Graph& g, int d, const EtaSettings& settings) {
    if (d < 1) throw std::invalid_argument("optimize_eta: dimension must be >= 1");
    if (settings.restarts < 1) throw std::invalid_argument("optimize_eta: need restarts >= 1");

    const auto edges = g.edges();
    const int n = g.vertex_count();
    struct Slot {
        bool feasible = false;
        double lambda = 0.0;
        Eigen::MatrixXd V;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(settings.restarts));

    const auto work = [&](int r) {
        EtaRestart restart(g, d, settings.weights);
        Eigen::MatrixXd V = restart.run(mix_seed(settings.seed, static_cast<std::uint64_t>(r)));
        Slot& slot = slots[static_cast<std::size_t>(r)];
        const double oe = orth_error_of(V, edges);
        const double ne = norm_error_of(V);
        if (oe <= settings.feasibility_tol && ne <= settings.feasibility_tol) {
            slot.feasible = true;
            slot.lambda = jacobi_eigen(gram_sum(V)).values(0);
            slot.V = std::move(V);
        }
    };

    int jobs = settings.jobs > 0 ? settings.jobs
                                 : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, settings.restarts));
    if (jobs == 1) {
        for (int r = 0; r < settings.restarts; ++r) work(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < settings.restarts; r = next.fetch_add(1))
                    work(r);
            });
        for (auto& th : pool) th.join();
    }

    EtaRunStats stats;
    int best_idx = -1;
    for (int r = 0; r < settings.restarts; ++r) {
        const Slot& slot = slots[static_cast<std::size_t>(r)];
        if (!slot.feasible) continue;
        ++stats.feasible_restarts;
        stats.feasible_lambdas.push_back(slot.lambda);
        if (best_idx < 0 || slot.lambda > slots[static_cast<std::size_t>(best_idx)].lambda)
            best_idx = r;
    }
    if (best_idx < 0) {
        std::ostringstream msg;
        msg << "optimize_eta: no restart reached orthogonality tolerance "
            << settings.feasibility_tol << " for d=" << d;
        throw EtaInfeasible(msg.str());
    }

    Slot& winner = slots[static_cast<std::size_t>(best_idx)];
    stats.best.d = d;
    stats.best.vectors = std::move(winner.V);
    stats.best.lambda_max = jacobi_eigen(gram_sum(stats.best.vectors)).values(0);
    stats.best.orth_error = orth_error_of(stats.best.vectors, edges);
    stats.best.norm_error = norm_error_of(stats.best.vectors);
    (void)n;
    return stats;
}

}  // namespace detail

/// Best-over-restarts lower bound on eta_d(G) by the three-phase search:
/// orthogonality-first descent, penalized eigenvalue push, then projected
/// ascent under exact constraints.  Restarts above the feasibility tolerance
/// are discarded; throws EtaInfeasible when none survive.
inline OrthRep optimize_eta(const Graph& g, int d, const EtaSettings& settings = {}) {
    return detail::optimize_eta_detailed(g, d, settings).best;
}

struct OrthRepCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct OrthRepReport {
    bool pass = false;
    double lambda_max_recomputed = 0.0;
    std::vector<OrthRepCheck> checks;
};

/// Recompute norms, edge inner products, and lambda_max from the stored
/// vectors alone.
inline OrthRepReport verify_orthrep(const OrthRep& rep, const Graph& g,
                                    double feasibility_tol = 1e-10,
                                    double lambda_tol = 1e-10) {
    if (rep.vectors.rows() != g.vertex_count())
        throw std::invalid_argument("verify_orthrep: vector count does not match graph");
    if (rep.vectors.cols() != rep.d)
        throw std::invalid_argument("verify_orthrep: vector dimension does not match d");

    const double oe = detail::orth_error_of(rep.vectors, g.edges());
    const double ne = detail::norm_error_of(rep.vectors);
    const double lambda = jacobi_eigen(detail::gram_sum(rep.vectors)).values(0);

    OrthRepReport report;
    report.lambda_max_recomputed = lambda;
    report.checks = {
        {"orth_error", oe, feasibility_tol, oe <= feasibility_tol},
        {"norm_error", ne, feasibility_tol, ne <= feasibility_tol},
        {"lambda_max", std::abs(lambda - rep.lambda_max), lambda_tol,
         std::abs(lambda - rep.lambda_max) <= lambda_tol},
    };
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const OrthRepCheck& c) { return c.pass; });
    return report;
}

enum class WitnessDimension { qutrit_witness, indicated_two_qubit, undetermined };

inline const char* to_string(WitnessDimension w) {
    switch (w) {
        case WitnessDimension::qutrit_witness: return "qutrit-witness";
        case WitnessDimension::indicated_two_qubit: return "indicated-two-qubit";
        default: return "undetermined";
    }
}

/// Dimension classification from eta_3 and eta_4 lower bounds.  The d*=4
/// indication is numerical only: it reports that every feasible restart at
/// d=3 stayed at the classical bound, never a proven upper bound.
struct DimensionClass {
    double eta3_lb = 0.0;
    double eta4_lb = 0.0;
    int restarts = 0;
    bool all_restarts_at_alpha_d3 = false;
    WitnessDimension d_star_indication = WitnessDimension::undetermined;
};

inline DimensionClass classify_dimension(const Graph& g, int alpha, int restarts = 300,
                                         std::uint64_t seed = 1, int jobs = 0) {
    EtaSettings settings;
    settings.restarts = restarts;
    settings.seed = seed;
    settings.jobs = jobs;

    const detail::EtaRunStats run3 = detail::optimize_eta_detailed(g, 3, settings);
    const detail::EtaRunStats run4 = detail::optimize_eta_detailed(g, 4, settings);

    DimensionClass out;
    out.eta3_lb = run3.best.lambda_max;
    out.eta4_lb = run4.best.lambda_max;
    out.restarts = restarts;
    out.all_restarts_at_alpha_d3 =
        std::all_of(run3.feasible_lambdas.begin(), run3.feasible_lambdas.end(),
                    [&](double l) { return std::abs(l - alpha) <= 1e-7; });

    const double margin = 1e-6;
    if (out.eta3_lb > alpha + margin)
        out.d_star_indication = WitnessDimension::qutrit_witness;
    else if (out.all_restarts_at_alpha_d3 && out.eta4_lb > alpha + margin)
        out.d_star_indication = WitnessDimension::indicated_two_qubit;
    return out;
}

}  // namespace ctxgap
