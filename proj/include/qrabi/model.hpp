#pragma once

#include <Eigen/Dense>

namespace qrabi {

// Couplings of the two-level system + single mode, in units of the mode
// frequency (omega = 1 throughout; it is deliberately not a parameter).
struct ModelParams {
    double delta = 0.5;    // qubit level splitting
    double g1 = 0.0;       // one-photon coupling strength
    double g2 = 0.0;       // two-photon coupling strength, valid on [0, 0.5)
    double epsilon = 0.0;  // static sigma_x bias

    bool operator==(const ModelParams&) const = default;
};

inline constexpr double collapse_g2 = 0.5;

// Validates and canonicalizes: throws on non-finite input, delta < 0, or
// g2 outside [0, 0.5); flips g1 to |g1| (the spectrum and all observables
// computed here are invariant under g1 -> -g1, and the closed forms
// downstream assume g1 >= 0).
ModelParams checked(const ModelParams& p);

// Photon-space ladder operator, n_tr x n_tr.  The Hamiltonians below and
// sigma_z_diagonal use the doubled layout index = 2*n + s over Fock level
// n < n_tr and spin s (0 = up, 1 = down); n_tr >= 4 everywhere so the
// two-photon terms are representable.
Eigen::MatrixXd annihilation_op(int n_tr);
Eigen::VectorXd sigma_z_diagonal(int n_tr);

// (delta/2) sigma_z + a^dag a + sigma_x [g1 (a^dag + a) + g2 (a^dag^2 + a^2)]
//   - (epsilon/2) sigma_x
Eigen::MatrixXd lab_hamiltonian(const ModelParams& p, int n_tr);

// Same operator after the pi/2 spin rotation about y that swaps sigma_x and
// sigma_z roles: photon blocks a^dag a +/- (couplings -/+ epsilon/2) on the
// diagonal, -delta/2 on the spin off-diagonal.
Eigen::MatrixXd rotated_hamiltonian(const ModelParams& p, int n_tr);

// Number-conserving (rotating-wave) version:
// a^dag a + (delta/2) sigma_z + g1 (a^dag sigma_- + a sigma_+)
//                             + g2 (a^dag^2 sigma_- + a^2 sigma_+).
// The bias has no rotating-wave counterpart here: epsilon != 0 is rejected.
Eigen::MatrixXd rwa_hamiltonian(const ModelParams& p, int n_tr);

}  // namespace qrabi
