#pragma once

#include <utility>

#include <Eigen/Dense>

#include "qrabi/model.hpp"

namespace qrabi {

enum class SolverBasis { FockLab, FockRotated, Bogoliubov, FockRwa };

struct TruncatedSpectrum {
    SolverBasis basis = SolverBasis::FockLab;
    int n_tr = 0;                  // photon levels kept; matrix dimension is 2*n_tr
    Eigen::VectorXd eigenvalues;   // ascending, lowest k
    Eigen::MatrixXd eigenvectors;  // matching columns, coordinates of `basis`
    int converged_count = 0;       // how many of the k survive a +20-level recheck
    // squared weight of each returned eigenvector in the top 10% of photon
    // levels of its basis; an eigenpair is trustworthy only when this is
    // negligible (< 1e-8)
    Eigen::VectorXd tail_weight;
};

// Dense symmetric eigensolve with a symmetry guard (1e-12) and a residual
// check ||H x - lambda x|| < 1e-9 ||H|| per pair.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> eigensolve_symmetric(const Eigen::MatrixXd& H);

// Reference solver: direct diagonalization in the lab Fock basis.
TruncatedSpectrum solve_fock(const ModelParams& p, int n_tr, int k);

// Same machinery for the number-conserving model.
TruncatedSpectrum solve_rwa_fock(const ModelParams& p, int n_tr, int k);

// Independent solver: project onto the displaced-squeezed number bases, where
// the photon blocks are diagonal, beta*(m - v^2 - w^2) and beta*(m - v^2 - w'^2),
// and the spin coupling contributes -(delta/2) D(m,n).
TruncatedSpectrum solve_bogoliubov(const ModelParams& p, int n_tr, int k);

// Doubling schedule 30 -> 60 -> 120 -> 240 -> 512; stops when the lowest k
// eigenvalues move by less than rel_tol (denominator max(|lambda|, 1)).
struct ConvergeResult {
    TruncatedSpectrum spectrum;  // at the final size reached
    bool converged = false;
    double last_rel_delta = 0.0;  // worst relative change at the final step
};
ConvergeResult converge(const ModelParams& p, int k, double rel_tol = 1e-6);

}  // namespace qrabi
