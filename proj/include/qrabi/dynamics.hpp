#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qrabi/model.hpp"

namespace qrabi {

struct TimeSeries {
    std::vector<double> t;      // ascending, uniform spacing
    std::vector<double> value;  // <sigma_z>, dimensionless
    double dt = 0.0;
};

std::vector<double> time_grid(double t_max, double dt);

// <sigma_z(t)> from `initial` under the symmetric matrix H: one spectral
// decomposition, then phase evolution of the eigenbasis amplitudes.
TimeSeries exact_dynamics(const Eigen::MatrixXd& H, const Eigen::VectorXd& initial,
                          const std::vector<double>& t_grid);

// Closed-form two-frequency population signal for the number-conserving model
// started from |n, up>:  <sigma_z> = 1 - 2 P_down(t) with the two cosine
// terms at the beat frequencies between the three participating eigenstates.
TimeSeries rwa_population(int n, const ModelParams& p, const std::vector<double>& t_grid);

struct RabiFrequencies {
    double omega_1 = 0.0;  // |E_n energy of family 1  -  E_n of family 2|
    double omega_2 = 0.0;  // |E_n of family 1  -  E_{n+1} of family 2|
    bool selection_warning = false;  // a root-selection cross-check disagreed
};
RabiFrequencies rabi_frequencies(int n, const ModelParams& p);

// Magnitude spectrum of a mean-subtracted, Hann-tapered series zero-padded to
// a power of two; angular frequency axis 2*pi*k/(N*dt).  Peaks are strict
// local maxima above 5% of the largest bin.
struct SpectralPeak {
    double frequency = 0.0;
    double magnitude = 0.0;
};
struct FourierSpectrum {
    std::vector<double> frequency;
    std::vector<double> magnitude;
    std::vector<SpectralPeak> peaks;
    double bin_width = 0.0;
};
FourierSpectrum fourier_spectrum(const TimeSeries& series);

// Weighted delta peaks of the spontaneous-emission spectrum from |0, up>.
struct EmissionLine {
    double frequency = 0.0;  // transition energy above the ground level
    double weight = 0.0;     // squared projection of the initial state
};
struct EmissionSpectrum {
    std::vector<EmissionLine> lines;  // ascending in frequency, pruned below 1e-6
    double total_weight = 0.0;        // sum before pruning
    bool cutoff_warning = false;      // total weight < 0.999 at the manifold cap
};

// Three-line expansion over the closed excitation blocks of the
// number-conserving model; the all-down vacuum at energy -delta/2 is exact.
EmissionSpectrum emission_spectrum_rwa(const ModelParams& p);

// Full-model version: initial state expanded over the two-branch manifold
// levels, weights (c D^A_m - d D^B_m)^2 / 2, frequencies relative to the
// m = 0 lower branch.
EmissionSpectrum emission_spectrum_full(const ModelParams& p, int m_max = 60);

}  // namespace qrabi
