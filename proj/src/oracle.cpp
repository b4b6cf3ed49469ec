// Copyright 2026 The DiscoVQE Authors
// SPDX-License-Identifier: Apache-2.0

#include "disco/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

#include "disco/kernels.hpp"

namespace disco {

namespace {

double norm2(std::span<const double> x) {
    return std::sqrt(kernels::active().dot(x.data(), x.data(), x.size()));
}

SpectrumResult dense_solve(const SectorHamiltonian& h, const OracleOptions& opts) {
    const std::size_t dim = h.dim();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    const auto row_ptr = h.row_ptr();
    const auto col = h.col();
    const auto val = h.val();
    for (std::size_t r = 0; r < dim; ++r)
        for (std::uint32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) a(r, col[k]) = val[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("fci_ground_state: dense eigensolve failed");

    SpectrumResult out;
    out.method = "dense";
    out.eigenvalues.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) out.eigenvalues[i] = es.eigenvalues()(i) + h.core_energy();
    const Eigen::VectorXd v = es.eigenvectors().col(0);
    out.ground_vector.assign(v.data(), v.data() + dim);
    out.residual_norm = (a * v - es.eigenvalues()(0) * v).norm();
    out.degenerate_ground =
        dim > 1 && es.eigenvalues()(1) - es.eigenvalues()(0) < opts.degeneracy_gap;
    return out;
}

// Davidson iteration for the lowest eigenpair with diagonal preconditioning.
class DavidsonSolver {
public:
    DavidsonSolver(const SectorHamiltonian& h, const OracleOptions& opts)
        : h_(h), opts_(opts), dim_(h.dim()), diag_(h.diagonal()) {}

    SpectrumResult solve() {
        std::vector<double> start(dim_, 0.0);
        start[argmin_diag()] = 1.0;
        append(std::move(start));
        Eigen::VectorXd ritz_weights;
        double theta = 0.0;
        std::vector<double> x(dim_), r(dim_);
        for (;;) {
            rayleigh_solve(ritz_weights, theta);
            combine(ritz_weights, basis_, x);
            combine(ritz_weights, image_, r);
            for (std::size_t i = 0; i < dim_; ++i) r[i] -= theta * x[i];
            const double rn = norm2(r);
            const double scale = std::max(1.0, std::abs(theta + h_.core_energy()));
            if (rn <= opts_.residual_tolerance * scale) return finish(theta, x, rn);
            if (matvecs_ >= opts_.max_iterations) {
                std::ostringstream msg;
                msg << "fci_ground_state: Davidson did not converge in " << matvecs_
                    << " matvecs (residual " << rn << ", tolerance "
                    << opts_.residual_tolerance * scale << ")";
                throw std::runtime_error(msg.str());
            }
            if (basis_.size() == static_cast<std::size_t>(opts_.max_subspace)) collapse();
            append(preconditioned(r, theta));
        }
    }

private:
    std::size_t argmin_diag() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < dim_; ++i)
            if (diag_[i] < diag_[best]) best = i;
        return best;
    }

    // Orthonormalises v against the basis, appends it, and extends the
    // Rayleigh matrix with one Hamiltonian application.
    void append(std::vector<double> v) {
        orthogonalize(v);
        double n = norm2(v);
        if (n < 1e-12) {
            // Deterministic fallback: cycle through coordinate directions.
            for (std::size_t j = 0; j < dim_ && n < 1e-12; ++j) {
                std::fill(v.begin(), v.end(), 0.0);
                v[(fallback_ + j) % dim_] = 1.0;
                orthogonalize(v);
                n = norm2(v);
            }
            ++fallback_;
            if (n < 1e-12)
                throw std::runtime_error("fci_ground_state: subspace expansion stalled");
        }
        kernels::active().scale(1.0 / n, v.data(), dim_);
        std::vector<double> w(dim_);
        h_.apply(v, w);
        ++matvecs_;
        const std::size_t m = basis_.size();
        rayleigh_.conservativeResize(m + 1, m + 1);
        for (std::size_t i = 0; i < m; ++i) {
            const double g = kernels::active().dot(basis_[i].data(), w.data(), dim_);
            rayleigh_(i, m) = g;
            rayleigh_(m, i) = g;
        }
        rayleigh_(m, m) = kernels::active().dot(v.data(), w.data(), dim_);
        basis_.push_back(std::move(v));
        image_.push_back(std::move(w));
    }

    void orthogonalize(std::vector<double>& v) const {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis_) {
                const double c = kernels::active().dot(b.data(), v.data(), dim_);
                kernels::active().axpy(-c, b.data(), v.data(), dim_);
            }
    }

    void rayleigh_solve(Eigen::VectorXd& weights, double& theta) {
        es_.compute(rayleigh_);
        if (es_.info() != Eigen::Success)
            throw std::runtime_error("fci_ground_state: Rayleigh eigensolve failed");
        theta = es_.eigenvalues()(0);
        weights = es_.eigenvectors().col(0);
    }

    void combine(const Eigen::VectorXd& weights, const std::vector<std::vector<double>>& cols,
                 std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < cols.size(); ++i)
            kernels::active().axpy(weights(i), cols[i].data(), out.data(), dim_);
    }

    std::vector<double> preconditioned(const std::vector<double>& r, double theta) const {
        std::vector<double> t(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            double denom = theta - diag_[i];
            if (std::abs(denom) < 1e-8) denom = denom < 0.0 ? -1e-8 : 1e-8;
            t[i] = r[i] / denom;
        }
        return t;
    }

    // Restarts the subspace from the two lowest Ritz vectors.
    void collapse() {
        const std::size_t keep = std::min<std::size_t>(2, basis_.size());
        std::vector<std::vector<double>> nb, nw;
        Eigen::MatrixXd ng = Eigen::MatrixXd::Zero(keep, keep);
        for (std::size_t j = 0; j < keep; ++j) {
            std::vector<double> b(dim_), w(dim_);
            combine(es_.eigenvectors().col(j), basis_, b);
            combine(es_.eigenvectors().col(j), image_, w);
            ng(j, j) = es_.eigenvalues()(j);
            nb.push_back(std::move(b));
            nw.push_back(std::move(w));
        }
        basis_ = std::move(nb);
        image_ = std::move(nw);
        rayleigh_ = ng;
    }

    SpectrumResult finish(double theta, std::vector<double>& x, double rn) {
        const double n = norm2(x);
        kernels::active().scale(1.0 / n, x.data(), dim_);
        SpectrumResult out;
        out.method = "iterative";
        out.eigenvalues.push_back(theta + h_.core_energy());
        double probe = theta;
        if (rayleigh_.rows() >= 2) {
            probe = es_.eigenvalues()(1);
        } else if (dim_ > 1) {
            // Converged on the first vector; probe with the next-lowest
            // diagonal coordinate direction.
            append(probe_direction());
            rayleigh_solve(probe_weights_, probe);
            probe = es_.eigenvalues()(1);
        }
        if (dim_ > 1) {
            out.eigenvalues.push_back(probe + h_.core_energy());
            out.degenerate_ground = probe - theta < opts_.degeneracy_gap;
        }
        out.ground_vector = x;
        out.residual_norm = rn;
        out.matvec_count = matvecs_;
        return out;
    }

    std::vector<double> probe_direction() const {
        std::size_t skip = argmin_diag();
        std::size_t best = skip == 0 ? 1 : 0;
        for (std::size_t i = 0; i < dim_; ++i)
            if (i != skip && diag_[i] < diag_[best]) best = i;
        std::vector<double> v(dim_, 0.0);
        v[best] = 1.0;
        return v;
    }

    const SectorHamiltonian& h_;
    const OracleOptions& opts_;
    std::size_t dim_;
    std::vector<double> diag_;
    std::vector<std::vector<double>> basis_;
    std::vector<std::vector<double>> image_;
    Eigen::MatrixXd rayleigh_{0, 0};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_;
    Eigen::VectorXd probe_weights_;
    int matvecs_ = 0;
    int fallback_ = 0;
};

}  // namespace

SpectrumResult fci_ground_state(const SectorHamiltonian& h, const OracleOptions& opts) {
    const std::size_t dim = h.dim();
    if (dim == 0) throw std::invalid_argument("fci_ground_state: empty basis");
    if (dim > opts.iterative_cap)
        throw std::invalid_argument("fci_ground_state: dimension exceeds iterative cap");
    SpectrumResult out =
        dim <= opts.dense_cap ? dense_solve(h, opts) : DavidsonSolver(h, opts).solve();
    const double scale = std::max(1.0, std::abs(out.ground_energy()));
    if (!(out.residual_norm <= opts.residual_tolerance * scale)) {
        std::ostringstream msg;
        msg << "fci_ground_state: residual " << out.residual_norm << " exceeds tolerance "
            << opts.residual_tolerance * scale;
        throw std::runtime_error(msg.str());
    }
    return out;
}

std::vector<double> dense_operator_matrix(std::size_t dim, const ApplyFn& apply,
                                          std::size_t cap) {
    if (dim > cap)
        throw std::invalid_argument("dense_operator_matrix: dimension exceeds cap");
    std::vector<double> a(dim * dim, 0.0);
    std::vector<double> e(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        e[j] = 1.0;
        apply(e, std::span<double>(a.data() + j * dim, dim));
        e[j] = 0.0;
    }
    return a;
}

std::vector<double> dense_operator_matrix(const SectorHamiltonian& h, std::size_t cap) {
    return dense_operator_matrix(
        h.dim(), [&](std::span<const double> x, std::span<double> y) { h.apply(x, y); }, cap);
}

std::vector<double> dense_expm_apply(std::span<const double> matrix, double t,
                                     std::span<const double> x) {
    const std::size_t dim = x.size();
    if (matrix.size() != dim * dim)
        throw std::invalid_argument("dense_expm_apply: matrix/vector size mismatch");
    if (!std::isfinite(t)) throw std::invalid_argument("dense_expm_apply: non-finite t");
    std::vector<double> y(x.begin(), x.end());
    if (t == 0.0 || dim == 0) return y;

    double col_norm = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i) s += std::abs(matrix[j * dim + i]);
        col_norm = std::max(col_norm, s);
    }
    int squarings = 0;
    double scaled = std::abs(t) * col_norm;
    while (scaled > 0.5 && squarings < 60) {
        scaled *= 0.5;
        ++squarings;
    }
    const double factor = t / std::exp2(squarings);

    const auto matvec = [&](const std::vector<double>& v, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t j = 0; j < dim; ++j)
            kernels::active().axpy(factor * v[j], matrix.data() + j * dim, out.data(), dim);
    };

    std::vector<double> term(dim), next(dim), acc(dim);
    const std::size_t reps = std::size_t{1} << squarings;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        term = y;
        acc = y;
        for (int k = 1; k <= 60; ++k) {
            matvec(term, next);
            kernels::active().scale(1.0 / k, next.data(), dim);
            std::swap(term, next);
            for (std::size_t i = 0; i < dim; ++i) acc[i] += term[i];
            if (norm2(term) <= 1e-17 * std::max(1e-300, norm2(acc))) break;
        }
        y = acc;
    }
    return y;
}

}  // namespace disco
