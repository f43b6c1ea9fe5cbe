#include "qrabi/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qrabi/errors.hpp"
#include "qrabi/frame.hpp"

namespace qrabi {

std::pair<Eigen::VectorXd, Eigen::MatrixXd> eigensolve_symmetric(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw param_error("eigensolve needs a nonempty square matrix");
    }
    const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw param_error("matrix not symmetric: max asymmetry " + std::to_string(asym));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw inconsistency_error("symmetric eigensolver failed to converge");
    }
    Eigen::VectorXd w = es.eigenvalues();
    Eigen::MatrixXd v = es.eigenvectors();
    // contract is the residual, not the algorithm
    const double scale = std::max(1.0, std::max(std::abs(w(0)), std::abs(w(w.size() - 1))));
    const double worst = (h * v - v * w.asDiagonal()).colwise().norm().maxCoeff();
    if (worst > 1e-9 * scale) {
        throw inconsistency_error("eigenpair residual " + std::to_string(worst) +
                                  " exceeds 1e-9 * ||H||");
    }
    return {std::move(w), std::move(v)};
}

namespace {

void check_k(int k, int n_tr) {
    if (k < 1 || k > n_tr) {
        throw param_error("need 1 <= k <= n_tr");
    }
}

int count_converged(const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine, int k,
                    double rel_tol) {
    int n = 0;
    for (int i = 0; i < k; ++i) {
        const double rel =
            std::abs(coarse(i) - fine(i)) / std::max(std::abs(fine(i)), 1.0);
        if (rel < rel_tol) ++n;
    }
    return n;
}

Eigen::VectorXd tail_weights(const Eigen::MatrixXd& vecs, SolverBasis basis, int n_tr) {
    const int first_tail_level = n_tr - std::max(1, n_tr / 10);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(vecs.cols());
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
        // interleaved bases store level i/2 at row i; the two-family basis
        // stacks its blocks, so the level is the row index modulo n_tr
        const int level = (basis == SolverBasis::Bogoliubov) ? static_cast<int>(i) % n_tr
                                                             : static_cast<int>(i) / 2;
        if (level >= first_tail_level) {
            out += vecs.row(i).transpose().cwiseAbs2();
        }
    }
    return out;
}

Eigen::MatrixXd bogoliubov_matrix(const ModelParams& p, int n_tr) {
    const BogoliubovFrame fr = frame_from_params(p.g1, p.g2);
    const OverlapMatrix d = overlap_matrix(fr, n_tr);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n_tr, 2 * n_tr);
    for (int m = 0; m < n_tr; ++m) {
        h(m, m) = fr.beta * (m - fr.v * fr.v - fr.w * fr.w) - p.epsilon / 2.0;
        h(n_tr + m, n_tr + m) =
            fr.beta * (m - fr.v * fr.v - fr.w_prime * fr.w_prime) + p.epsilon / 2.0;
    }
    h.topRightCorner(n_tr, n_tr) = -(p.delta / 2.0) * d.entries;
    h.bottomLeftCorner(n_tr, n_tr) = -(p.delta / 2.0) * d.entries.transpose();
    return h;
}

TruncatedSpectrum spectra_with_recheck(const ModelParams& p, int n_tr, int k,
                                       SolverBasis basis,
                                       Eigen::MatrixXd (*build)(const ModelParams&, int)) {
    const auto [w, v] = eigensolve_symmetric(build(p, n_tr));
    const Eigen::VectorXd w2 = eigensolve_symmetric(build(p, n_tr + 20)).first;

    TruncatedSpectrum out;
    out.basis = basis;
    out.n_tr = n_tr;
    out.eigenvalues = w.head(k);
    out.eigenvectors = v.leftCols(k);
    out.converged_count = count_converged(w.head(k), w2.head(k), k, 1e-6);
    out.tail_weight = tail_weights(out.eigenvectors, basis, n_tr);
    return out;
}

}  // namespace

TruncatedSpectrum solve_fock(const ModelParams& p_in, int n_tr, int k) {
    const ModelParams p = checked(p_in);
    check_k(k, n_tr);
    return spectra_with_recheck(p, n_tr, k, SolverBasis::FockLab,
                                [](const ModelParams& q, int n) { return lab_hamiltonian(q, n); });
}

TruncatedSpectrum solve_rwa_fock(const ModelParams& p_in, int n_tr, int k) {
    const ModelParams p = checked(p_in);
    check_k(k, n_tr);
    return spectra_with_recheck(p, n_tr, k, SolverBasis::FockRwa,
                                [](const ModelParams& q, int n) { return rwa_hamiltonian(q, n); });
}

TruncatedSpectrum solve_bogoliubov(const ModelParams& p_in, int n_tr, int k) {
    const ModelParams p = checked(p_in);
    check_k(k, n_tr);
    const auto [w, v] = eigensolve_symmetric(bogoliubov_matrix(p, n_tr));
    // recheck at +20 levels; the overlap formula caps at 200, step down there
    int other = std::min(n_tr + 20, 200);
    if (other == n_tr) other = n_tr - 20;
    const Eigen::VectorXd w2 = eigensolve_symmetric(bogoliubov_matrix(p, other)).first;

    TruncatedSpectrum out;
    out.basis = SolverBasis::Bogoliubov;
    out.n_tr = n_tr;
    out.eigenvalues = w.head(k);
    out.eigenvectors = v.leftCols(k);
    out.converged_count = count_converged(w.head(k), w2.head(k), k, 1e-6);
    out.tail_weight = tail_weights(out.eigenvectors, SolverBasis::Bogoliubov, n_tr);
    return out;
}

ConvergeResult converge(const ModelParams& p_in, int k, double rel_tol) {
    const ModelParams p = checked(p_in);
    if (rel_tol < 1e-12) {
        throw param_error("rel_tol below 1e-12 is not resolvable in double precision");
    }
    static constexpr std::array<int, 5> schedule{30, 60, 120, 240, 512};
    if (k < 1 || k > schedule.front()) {
        throw param_error("converge supports 1 <= k <= 30");
    }

    ConvergeResult res;
    Eigen::VectorXd prev;
    for (const int n_tr : schedule) {
        const auto [w, v] = eigensolve_symmetric(lab_hamiltonian(p, n_tr));
        const Eigen::VectorXd cur = w.head(k);
        if (prev.size() > 0) {
            double rel = 0.0;
            for (int i = 0; i < k; ++i) {
                rel = std::max(rel, std::abs(cur(i) - prev(i)) /
                                        std::max(std::abs(cur(i)), 1.0));
            }
            res.last_rel_delta = rel;
            res.spectrum.basis = SolverBasis::FockLab;
            res.spectrum.n_tr = n_tr;
            res.spectrum.eigenvalues = cur;
            res.spectrum.eigenvectors = v.leftCols(k);
            res.spectrum.converged_count = count_converged(prev, cur, k, rel_tol);
            res.spectrum.tail_weight =
                tail_weights(res.spectrum.eigenvectors, SolverBasis::FockLab, n_tr);
            if (rel < rel_tol) {
                res.converged = true;
                return res;
            }
        }
        prev = cur;
    }
    res.converged = false;  // cap reached; last_rel_delta reports the final step
    return res;
}

}  // namespace qrabi
