#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace qrabi {

// Squeeze-and-displace frame in which the two photon blocks of the rotated
// Hamiltonian become free oscillators of frequency beta.  Exists for g2 < 1/2.
struct BogoliubovFrame {
    double g1 = 0.0;
    double g2 = 0.0;
    double beta = 1.0;     // sqrt(1 - 4 g2^2), the rescaled oscillator frequency
    double u = 1.0;        // cosh-type Bogoliubov weight, u^2 - v^2 = 1
    double v = 0.0;        // sinh-type weight
    double r = 0.0;        // squeeze parameter, u = cosh r
    double w = 0.0;        // displacement of the A family
    double w_prime = 0.0;  // displacement of the B family (opposite sign)
};

BogoliubovFrame frame_from_params(double g1, double g2);

// Physicists' Hermite polynomial H_k(x) by the three-term recurrence,
// complex argument, k <= 400.  Magnitudes beyond double range -> overflow.
std::complex<double> hermite_poly(int k, std::complex<double> x);

// Overlaps D(m,n) = <m_A | n_B> between the two displaced-squeezed number
// bases.  The closed form mixes imaginary Hermite arguments and half-integer
// phases; every entry is evaluated in complex long double log-domain
// arithmetic and is exactly real up to rounding.
struct OverlapMatrix {
    int size = 0;
    Eigen::MatrixXd entries;
    double max_imag_residue = 0.0;   // largest imaginary part discarded
    double max_amplification = 0.0;  // worst |largest term| / |entry| cancellation ratio
};
OverlapMatrix overlap_matrix(const BogoliubovFrame& fr, int size);

// Fock-space expansions of the frame states, built by exponentiating the
// truncated squeeze and displacement generators.  Slow but assumption-free:
// this is the cross-check oracle for overlap_matrix and vacuum_projections.
enum class Family { A, B };
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> family_transforms(const BogoliubovFrame& fr,
                                                              int n_tr);
Eigen::VectorXd bogoliubov_state_in_fock(int m, const BogoliubovFrame& fr, Family which,
                                         int n_tr);

// <0_Fock | m_A> and <0_Fock | m_B> for m = 0..m_max, by closed form.
struct VacuumProjections {
    Eigen::VectorXd a;
    Eigen::VectorXd b;
};
VacuumProjections vacuum_projections(const BogoliubovFrame& fr, int m_max);

}  // namespace qrabi
