#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <deque>
#include <functional>
#include <vector>

namespace ctxgap {

/// Objective callback: returns f(x) and fills the gradient.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct LbfgsSettings {
    int max_iterations = 300;
    double grad_tol = 1e-11;  // on the max-norm of the gradient
    int history = 8;
};

/// Limited-memory BFGS with Armijo backtracking and curvature-guarded
/// history updates.  Minimizes in place, returns the final objective.
inline double minimize_lbfgs(const Objective& objective, Eigen::VectorXd& x,
                             const LbfgsSettings& settings = {}) {
    const auto dim = x.size();
    Eigen::VectorXd grad(dim), grad_new(dim);
    double f = objective(x, grad);

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;

    for (int iter = 0; iter < settings.max_iterations; ++iter) {
        if (grad.cwiseAbs().maxCoeff() <= settings.grad_tol) break;

        // Two-loop recursion.
        Eigen::VectorXd q = grad;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t k = s_hist.size(); k-- > 0;) {
            alpha[k] = rho_hist[k] * s_hist[k].dot(q);
            q -= alpha[k] * y_hist[k];
        }
        if (!s_hist.empty()) {
            const Eigen::VectorXd& s = s_hist.back();
            const Eigen::VectorXd& y = y_hist.back();
            q *= s.dot(y) / y.squaredNorm();
        }
        for (std::size_t k = 0; k < s_hist.size(); ++k) {
            const double beta = rho_hist[k] * y_hist[k].dot(q);
            q += (alpha[k] - beta) * s_hist[k];
        }
        Eigen::VectorXd dir = -q;
        double slope = grad.dot(dir);
        if (slope >= 0.0) {  // not a descent direction; fall back to steepest
            dir = -grad;
            slope = -grad.squaredNorm();
        }

        // Armijo backtracking from a unit step.
        double step = 1.0;
        double f_new = f;
        Eigen::VectorXd x_new = x;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = x + step * dir;
            f_new = objective(x_new, grad_new);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = grad_new - grad;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > settings.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        const double improvement = f - f_new;
        x = std::move(x_new);
        grad = grad_new;
        f = f_new;
        if (improvement <= 1e-16 * (std::abs(f) + 1e-16)) break;
    }
    return f;
}

}  // namespace ctxgap
