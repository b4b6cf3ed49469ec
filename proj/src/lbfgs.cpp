// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace disco {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct CurvaturePair {
    std::vector<double> s;
    std::vector<double> y;
    double rho;
};

// Standard two-loop recursion; overwrites `d` with -H·g.
void apply_inverse_hessian(const std::deque<CurvaturePair>& pairs, const std::vector<double>& g,
                           std::vector<double>& d) {
    d = g;
    std::vector<double> alpha(pairs.size());
    for (std::size_t k = pairs.size(); k-- > 0;) {
        const CurvaturePair& p = pairs[k];
        alpha[k] = p.rho * dot(p.s, d);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alpha[k] * p.y[i];
    }
    if (!pairs.empty()) {
        const CurvaturePair& last = pairs.back();
        const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
        for (double& x : d) x *= gamma;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const CurvaturePair& p = pairs[k];
        const double beta = p.rho * dot(p.y, d);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += (alpha[k] - beta) * p.s[i];
    }
    for (double& x : d) x = -x;
}

// Minimiser of the cubic through (a, fa, da) and (b, fb, db); NaN when
// ill-conditioned so the caller can fall back to bisection.
double cubic_minimum(double a, double fa, double da, double b, double fb, double db) {
    const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (!(disc >= 0.0)) return std::nan("");
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    return b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
}

struct LinePoint {
    double step;
    double value;
    double slope;  // directional derivative along the search direction
};

class LineSearch {
  public:
    LineSearch(const Objective& objective, const std::vector<double>& origin,
               const std::vector<double>& direction, double value0, double slope0,
               const LbfgsOptions& options)
        : objective_(objective),
          origin_(origin),
          direction_(direction),
          f0_(value0),
          slope0_(slope0),
          options_(options),
          x_(origin.size()),
          grad_(origin.size()) {}

    // Returns true when a point satisfying the strong Wolfe conditions (or at
    // least a strict decrease, when the interval collapses) was found.
    bool run() {
        LinePoint prev{0.0, f0_, slope0_};
        double step = 1.0;
        for (std::size_t it = 0; it < options_.max_line_search; ++it) {
            const LinePoint cur = probe(step);
            if (approx_wolfe(cur)) return finish(cur);
            if (cur.value > f0_ + options_.sufficient_decrease * step * slope0_ ||
                (it > 0 && cur.value >= prev.value))
                return zoom(prev, cur);
            if (std::abs(cur.slope) <= -options_.curvature * slope0_) return finish(cur);
            if (cur.slope >= 0.0) return zoom(cur, prev);
            prev = cur;
            step = std::min(2.0 * step, 1e8);
        }
        return salvage();
    }

    double step() const { return accepted_.step; }
    double value() const { return accepted_.value; }
    const std::vector<double>& point() const { return x_; }
    const std::vector<double>& gradient() const { return grad_; }
    std::size_t evaluations() const { return evaluations_; }

  private:
    LinePoint probe(double step) {
        for (std::size_t i = 0; i < origin_.size(); ++i)
            x_[i] = origin_[i] + step * direction_[i];
        const double value = objective_(x_, grad_);
        ++evaluations_;
        double slope = 0.0;
        for (std::size_t i = 0; i < grad_.size(); ++i) slope += grad_[i] * direction_[i];
        if (best_.step < 0.0 || value < best_.value) {
            best_ = {step, value, slope};
            best_x_ = x_;
            best_grad_ = grad_;
        }
        return {step, value, slope};
    }

    bool zoom(LinePoint lo, LinePoint hi) {
        while (evaluations_ < options_.max_line_search) {
            const double width = std::abs(hi.step - lo.step);
            if (width < 1e-16 * std::max(1.0, std::abs(lo.step))) break;
            double trial = cubic_minimum(lo.step, lo.value, lo.slope, hi.step, hi.value, hi.slope);
            const double left = std::min(lo.step, hi.step) + 0.05 * width;
            const double right = std::max(lo.step, hi.step) - 0.05 * width;
            if (!std::isfinite(trial) || trial < left || trial > right)
                trial = 0.5 * (lo.step + hi.step);
            const LinePoint cur = probe(trial);
            if (approx_wolfe(cur)) return finish(cur);
            // The rounding margin keeps the interval update slope-driven once
            // values become indistinguishable near the minimum.
            if (cur.value > f0_ + options_.sufficient_decrease * trial * slope0_ ||
                cur.value >= lo.value + 1e-15 * (1.0 + std::abs(f0_))) {
                hi = cur;
            } else {
                if (std::abs(cur.slope) <= -options_.curvature * slope0_) return finish(cur);
                if (cur.slope * (hi.step - lo.step) >= 0.0) hi = lo;
                lo = cur;
            }
        }
        return salvage();
    }

    // Relaxed acceptance for steps too small to change the value in floating
    // point: the value must not rise beyond rounding and the directional
    // derivative must satisfy both Wolfe slope bounds.
    bool approx_wolfe(const LinePoint& p) const {
        return p.step > 0.0 && p.value <= f0_ + 1e-15 * (1.0 + std::abs(f0_)) &&
               p.slope >= options_.curvature * slope0_ &&
               p.slope <= (2.0 * options_.sufficient_decrease - 1.0) * slope0_;
    }

    // Accepts the lowest evaluated point when the Wolfe conditions were never
    // met, as long as it still strictly decreases the objective.
    bool salvage() {
        if (best_.step <= 0.0 || best_.value >= f0_) return false;
        x_ = best_x_;
        grad_ = best_grad_;
        accepted_ = best_;
        return true;
    }

    // Called directly after probe(p): x_ and grad_ already hold that point.
    bool finish(const LinePoint& p) {
        accepted_ = p;
        return true;
    }

    const Objective& objective_;
    const std::vector<double>& origin_;
    const std::vector<double>& direction_;
    const double f0_;
    const double slope0_;
    const LbfgsOptions& options_;
    std::vector<double> x_;
    std::vector<double> grad_;
    std::vector<double> best_x_;
    std::vector<double> best_grad_;
    LinePoint best_{-1.0, 0.0, 0.0};
    LinePoint accepted_{0.0, 0.0, 0.0};
    std::size_t evaluations_ = 0;
};

}  // namespace

void validate(const LbfgsOptions& options) {
    if (options.memory == 0) throw std::invalid_argument("lbfgs: memory must be positive");
    if (!(options.grad_tolerance > 0.0))
        throw std::invalid_argument("lbfgs: grad_tolerance must be positive");
    if (!(options.sufficient_decrease > 0.0 && options.sufficient_decrease < 1.0))
        throw std::invalid_argument("lbfgs: sufficient_decrease must lie in (0, 1)");
    if (!(options.curvature > options.sufficient_decrease && options.curvature < 1.0))
        throw std::invalid_argument("lbfgs: curvature must lie in (sufficient_decrease, 1)");
    if (options.max_line_search == 0)
        throw std::invalid_argument("lbfgs: max_line_search must be positive");
}

LbfgsResult lbfgs_minimize(const Objective& objective, std::vector<double> start,
                           const LbfgsOptions& options) {
    validate(options);
    LbfgsResult result;
    result.x = std::move(start);
    result.gradient.assign(result.x.size(), 0.0);
    result.value = objective(result.x, result.gradient);
    result.evaluations = 1;
    if (!std::isfinite(result.value))
        throw std::invalid_argument("lbfgs: objective is not finite at the start point");
    result.grad_norm = max_norm(result.gradient);
    if (result.x.empty() || result.grad_norm <= options.grad_tolerance) {
        result.converged = true;
        return result;
    }

    std::deque<CurvaturePair> pairs;
    std::vector<double> direction(result.x.size());
    bool restarted = false;
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        apply_inverse_hessian(pairs, result.gradient, direction);
        double slope = dot(direction, result.gradient);
        if (!(slope < 0.0)) {
            pairs.clear();
            for (std::size_t i = 0; i < direction.size(); ++i) direction[i] = -result.gradient[i];
            slope = dot(direction, result.gradient);
            if (!(slope < 0.0)) break;  // gradient vanished to rounding
        }

        LineSearch search(objective, result.x, direction, result.value, slope, options);
        const bool ok = search.run();
        result.evaluations += search.evaluations();
        if (!ok) {
            if (!pairs.empty() && !restarted) {
                pairs.clear();  // retry once along steepest descent
                restarted = true;
                continue;
            }
            break;
        }
        restarted = false;

        CurvaturePair pair;
        pair.s.resize(result.x.size());
        pair.y.resize(result.x.size());
        for (std::size_t i = 0; i < result.x.size(); ++i) {
            pair.s[i] = search.point()[i] - result.x[i];
            pair.y[i] = search.gradient()[i] - result.gradient[i];
        }
        result.x = search.point();
        result.value = search.value();
        result.gradient = search.gradient();
        result.grad_norm = max_norm(result.gradient);
        ++result.iterations;
        if (result.grad_norm <= options.grad_tolerance) {
            result.converged = true;
            return result;
        }
        const double sy = dot(pair.s, pair.y);
        if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
            pair.rho = 1.0 / sy;
            pairs.push_back(std::move(pair));
            if (pairs.size() > options.memory) pairs.pop_front();
        }
    }
    result.converged = result.grad_norm <= options.grad_tolerance;
    return result;
}

}  // namespace disco
