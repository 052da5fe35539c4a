#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxgap/graph.hpp"
#include "ctxgap/jacobi.hpp"

namespace ctxgap {

enum class SolvePass { bulk, high_accuracy };

struct SolveSettings {
    double tolerance = 1e-10;  // target duality gap (= r_d at convergence)
    int max_iterations = 200;
    SolvePass pass = SolvePass::high_accuracy;

    static SolveSettings bulk() { return {1e-6, 120, SolvePass::bulk}; }
    static SolveSettings high_accuracy() { return {1e-10, 200, SolvePass::high_accuracy}; }

    void validate() const {
        if (!(tolerance > 0.0)) throw std::invalid_argument("SolveSettings: tolerance must be > 0");
        if (max_iterations < 1)
            throw std::invalid_argument("SolveSettings: max_iterations must be >= 1");
    }
};

struct EdgeDual {
    int i = 0, j = 0;
    double value = 0.0;
};

/// Primal-dual certificate for theta(G): optimal X, dual (y, z), and the five
/// residuals.  S denotes the dual slack matrix y I + sum z_ij B_ij - J.
struct ThetaCertificate {
    double theta = 0.0;
    Eigen::MatrixXd X;
    double y = 0.0;
    std::vector<EdgeDual> z;

    double r_p = 0.0;          // |Tr X - 1|
    double r_edge = 0.0;       // max over edges |X_ij|
    double lambda_min_X = 0.0;
    double r_d = 0.0;          // y - theta
    double lambda_min_S = 0.0;
};

class ThetaNonConvergence : public std::runtime_error {
public:
    ThetaNonConvergence(const std::string& what, ThetaCertificate best)
        : std::runtime_error(what), best_iterate(std::move(best)) {}

    ThetaCertificate best_iterate;
};

namespace detail {

inline Eigen::MatrixXd dual_slack(const Graph& g, double y, const std::vector<EdgeDual>& z) {
    const int n = g.vertex_count();
    Eigen::MatrixXd S = Eigen::MatrixXd::Constant(n, n, -1.0);  // -J
    S.diagonal().array() += y;
    for (const EdgeDual& e : z) {
        S(e.i, e.j) += e.value;
        S(e.j, e.i) += e.value;
    }
    return S;
}

inline void fill_residuals(ThetaCertificate& c, const Graph& g) {
    c.theta = c.X.sum();
    c.r_p = std::abs(c.X.trace() - 1.0);
    c.r_edge = 0.0;
    for (auto [i, j] : g.edges()) c.r_edge = std::max(c.r_edge, std::abs(c.X(i, j)));
    c.lambda_min_X = lambda_min(c.X);
    c.r_d = c.y - c.theta;
    c.lambda_min_S = lambda_min(dual_slack(g, c.y, c.z));
}

/// Largest step alpha with P + alpha dP still positive definite (through the
/// Cholesky factor of P); +inf when dP does not push toward the boundary.
inline double max_step(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& dP) {
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd W =
        L.triangularView<Eigen::Lower>().solve(
            L.triangularView<Eigen::Lower>().solve(dP).transpose());
    const double lam = lambda_min((W + W.transpose()) / 2.0);
    if (lam >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / lam;
}

struct ThetaProblem {
    const Graph* g;
    std::vector<std::pair<int, int>> edges;
    int n;
    int m;  // |E| + 1 constraints; the last one is Tr X = 1

    explicit ThetaProblem(const Graph& graph)
        : g(&graph), edges(graph.edges()), n(graph.vertex_count()),
          m(static_cast<int>(edges.size()) + 1) {}

    // A(N): edge rows give N_ij + N_ji, trace row gives Tr N.
    Eigen::VectorXd apply_A(const Eigen::MatrixXd& N) const {
        Eigen::VectorXd out(m);
        for (int k = 0; k + 1 < m; ++k) {
            auto [i, j] = edges[static_cast<std::size_t>(k)];
            out(k) = N(i, j) + N(j, i);
        }
        out(m - 1) = N.trace();
        return out;
    }

    // A^T(y) = sum_k y_k A_k.
    Eigen::MatrixXd apply_AT(const Eigen::VectorXd& y) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
        for (int k = 0; k + 1 < m; ++k) {
            auto [i, j] = edges[static_cast<std::size_t>(k)];
            out(i, j) += y(k);
            out(j, i) += y(k);
        }
        out.diagonal().array() += y(m - 1);
        return out;
    }

    // M_kl = <A_k, Zi A_l X>, the Schur-complement system of the HRVW step.
    Eigen::MatrixXd build_M(const Eigen::MatrixXd& Zi, const Eigen::MatrixXd& X) const {
        Eigen::MatrixXd M(m, m);
        for (int l = 0; l + 1 < m; ++l) {
            auto [p, q] = edges[static_cast<std::size_t>(l)];
            const Eigen::MatrixXd N =
                Zi.col(p) * X.row(q) + Zi.col(q) * X.row(p);
            M.col(l) = apply_A(N);
        }
        M.col(m - 1) = apply_A(Zi * X);
        return M;
    }

    // Keep X exactly on the affine constraints: symmetric, zero on edges,
    // unit trace.
    void clean_primal(Eigen::MatrixXd& X) const {
        X = ((X + X.transpose()) / 2.0).eval();
        for (auto [i, j] : edges) X(i, j) = X(j, i) = 0.0;
        X.diagonal().array() += (1.0 - X.trace()) / n;
    }

    ThetaCertificate make_certificate(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) const {
        ThetaCertificate c;
        c.X = X;
        c.y = y(m - 1);
        c.z.reserve(edges.size());
        for (int k = 0; k + 1 < m; ++k)
            c.z.push_back({edges[static_cast<std::size_t>(k)].first,
                           edges[static_cast<std::size_t>(k)].second, y(k)});
        fill_residuals(c, *g);
        return c;
    }
};

/// Feasible-start Mehrotra-style predictor-corrector on the pair
///   max <J,X>  s.t. Tr X = 1, X_ij = 0 on edges, X psd
///   min y      s.t. y I + sum z_ij B_ij - J psd.
/// `diag_start` optionally perturbs the strictly feasible start X0 = I/n.
inline ThetaCertificate solve_theta(const Graph& g, const SolveSettings& settings,
                                    const Eigen::VectorXd* diag_start = nullptr) {
    settings.validate();
    const ThetaProblem prob(g);
    const int n = prob.n;
    const int m = prob.m;
    const double tau = 0.98;  // fraction-to-boundary

    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    b(m - 1) = 1.0;

    Eigen::MatrixXd X;
    if (diag_start) {
        X = diag_start->asDiagonal();
        X /= X.trace();
    } else {
        X = Eigen::MatrixXd::Identity(n, n) / n;
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    y(m - 1) = n + 1.0;  // Z = (n+1) I - J is strictly positive definite
    Eigen::MatrixXd Z = prob.apply_AT(y) - Eigen::MatrixXd::Ones(n, n);

    ThetaCertificate best = prob.make_certificate(X, y);
    double best_gap = std::numeric_limits<double>::infinity();
    int stalled = 0;

    using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

    for (int iter = 0; iter < settings.max_iterations; ++iter) {
        const double gap = (X.cwiseProduct(Z)).sum();
        if (gap < 0.9 * best_gap)
            stalled = 0;
        else if (++stalled >= 10)
            break;  // complementarity no longer improving
        if (gap < best_gap) {
            best_gap = gap;
            best = prob.make_certificate(X, y);
        }
        if (gap <= settings.tolerance) return best;

        Eigen::LLT<Eigen::MatrixXd> lltZ(Z);
        Eigen::LLT<Eigen::MatrixXd> lltX(X);
        if (lltZ.info() != Eigen::Success || lltX.info() != Eigen::Success)
            throw ThetaNonConvergence("theta solver: iterate left the cone", best);

        const Eigen::MatrixXd Zi = lltZ.solve(Eigen::MatrixXd::Identity(n, n));
        // The Schur system has condition ~ 1/mu^2 near the optimum; factoring
        // in extended precision keeps the directions usable to smaller gaps.
        const MatrixXld M = prob.build_M(Zi, X).cast<long double>();
        Eigen::FullPivLU<MatrixXld> lu(M);
        const auto solve_system = [&](const Eigen::VectorXd& rhs) {
            return Eigen::VectorXd(lu.solve(rhs.cast<long double>()).cast<double>());
        };

        // Predictor: affine-scaling direction (target T = 0).
        const Eigen::VectorXd dy_aff = solve_system(-b);
        const Eigen::MatrixXd dZ_aff = prob.apply_AT(dy_aff);
        Eigen::MatrixXd dX_aff = -X - Zi * dZ_aff * X;
        dX_aff = ((dX_aff + dX_aff.transpose()) / 2.0).eval();

        const double ap_aff = std::min(1.0, max_step(lltX, dX_aff));
        const double ad_aff = std::min(1.0, max_step(lltZ, dZ_aff));
        const double gap_aff =
            ((X + ap_aff * dX_aff).cwiseProduct(Z + ad_aff * dZ_aff)).sum();
        const double sigma =
            std::clamp(std::pow(std::max(gap_aff, 0.0) / gap, 3.0), 1e-10, 1.0);
        const double mu = sigma * gap / n;

        // Corrector with second-order term: T = mu I - dZ_aff dX_aff.
        Eigen::MatrixXd T = -dZ_aff * dX_aff;
        T.diagonal().array() += mu;
        const Eigen::MatrixXd ZiT = Zi * T;
        const Eigen::VectorXd dy = solve_system(prob.apply_A(ZiT) - b);
        const Eigen::MatrixXd dZ = prob.apply_AT(dy);
        Eigen::MatrixXd dX = ZiT - X - Zi * dZ * X;
        dX = ((dX + dX.transpose()) / 2.0).eval();

        double ap = std::min(1.0, tau * max_step(lltX, dX));
        double ad = std::min(1.0, tau * max_step(lltZ, dZ));

        // Fall back to shorter steps if rounding pushed an update off the cone.
        for (int shrink = 0; shrink < 60; ++shrink) {
            Eigen::MatrixXd Xn = X + ap * dX;
            prob.clean_primal(Xn);
            const Eigen::VectorXd yn = y + ad * dy;
            const Eigen::MatrixXd Zn = prob.apply_AT(yn) - Eigen::MatrixXd::Ones(n, n);
            if (Eigen::LLT<Eigen::MatrixXd>(Xn).info() == Eigen::Success &&
                Eigen::LLT<Eigen::MatrixXd>(Zn).info() == Eigen::Success) {
                X = std::move(Xn);
                y = yn;
                Z = Zn;
                break;
            }
            ap *= 0.5;
            ad *= 0.5;
            if (shrink == 59)
                throw ThetaNonConvergence("theta solver: no admissible step", best);
        }
    }

    const double gap = (X.cwiseProduct(Z)).sum();
    if (gap < best_gap) {
        best_gap = gap;
        best = prob.make_certificate(X, y);
    }
    // Residuals within 100x the requested tolerance satisfy the solve
    // contract; report failure only beyond that.
    if (best_gap > 100.0 * settings.tolerance) {
        std::ostringstream msg;
        msg << "theta solver: duality gap " << best_gap << " exceeds 100 x tolerance "
            << settings.tolerance;
        throw ThetaNonConvergence(msg.str(), best);
    }
    return best;
}

}  // namespace detail

/// Solve the Lovasz theta SDP with a full primal-dual certificate.
inline ThetaCertificate lovasz_theta(const Graph& g, const SolveSettings& settings = {}) {
    return detail::solve_theta(g, settings);
}

struct CertificateCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct CertificateReport {
    bool pass = false;
    double theta_recomputed = 0.0;
    std::vector<CertificateCheck> checks;
};

/// Per-residual magnitude bounds for verify_certificate.
struct CertificateThresholds {
    double r_p = 1e-7;
    double r_edge = 1e-7;
    double lambda_min_X = 1e-7;
    double r_d = 1e-7;
    double lambda_min_S = 1e-7;
};

/// Recompute all five residuals from (X, y, z) alone and compare against the
/// thresholds.  Never trusts the residual fields stored in the certificate.
inline CertificateReport verify_certificate(const ThetaCertificate& c, const Graph& g,
                                            const CertificateThresholds& thresholds = {}) {
    const int n = g.vertex_count();
    if (c.X.rows() != n || c.X.cols() != n)
        throw std::invalid_argument("verify_certificate: X dimension does not match graph");
    for (const EdgeDual& e : c.z)
        if (!g.has_edge(e.i, e.j))
            throw std::invalid_argument("verify_certificate: dual multiplier on a non-edge");

    ThetaCertificate fresh;
    fresh.X = c.X;
    fresh.y = c.y;
    fresh.z = c.z;
    detail::fill_residuals(fresh, g);

    CertificateReport report;
    report.theta_recomputed = fresh.theta;
    // The eigenvalue checks are cone-feasibility residuals: only negative
    // lambda_min is a violation, so a strictly interior matrix passes.
    report.checks = {
        {"r_p", fresh.r_p, thresholds.r_p, std::abs(fresh.r_p) <= thresholds.r_p},
        {"r_edge", fresh.r_edge, thresholds.r_edge, std::abs(fresh.r_edge) <= thresholds.r_edge},
        {"lambda_min_X", fresh.lambda_min_X, thresholds.lambda_min_X,
         fresh.lambda_min_X >= -thresholds.lambda_min_X},
        {"r_d", fresh.r_d, thresholds.r_d, std::abs(fresh.r_d) <= thresholds.r_d},
        {"lambda_min_S", fresh.lambda_min_S, thresholds.lambda_min_S,
         fresh.lambda_min_S >= -thresholds.lambda_min_S},
    };
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const CertificateCheck& c) { return c.pass; });
    return report;
}

struct ThetaInterval {
    double lower = 0.0;
    double upper = 0.0;
    double half_width = 0.0;
};

/// Min/max of theta over `runs` solves from diagonally perturbed starting
/// points (seeded 1e-6 jitter on X0 = I/n).
inline ThetaInterval repeated_solve_interval(const Graph& g, int runs,
                                             const SolveSettings& settings = {},
                                             std::uint64_t seed = 1) {
    if (runs < 2) throw std::invalid_argument("repeated_solve_interval: need runs >= 2");
    const int n = g.vertex_count();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-6);

    ThetaInterval interval{std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(), 0.0};
    for (int r = 0; r < runs; ++r) {
        Eigen::VectorXd diag(n);
        for (int i = 0; i < n; ++i) diag(i) = 1.0 + jitter(rng);
        const ThetaCertificate c = detail::solve_theta(g, settings, &diag);
        interval.lower = std::min(interval.lower, c.theta);
        interval.upper = std::max(interval.upper, c.theta);
    }
    interval.half_width = (interval.upper - interval.lower) / 2.0;
    return interval;
}

}  // namespace ctxgap
