#pragma once

#include <vector>

#include "qrabi/dynamics.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

// One photon manifold m treated as an isolated two-level problem spanned by
// |m>_A (spin-up family) and |m>_B (spin-down family).  Exact when the qubit
// splitting vanishes; a controlled approximation for small delta.
struct AdiabaticLevel {
    int m = 0;
    double energy_plus = 0.0;   // >= energy_minus
    double energy_minus = 0.0;
    double c_plus = 0.0, d_plus = 0.0;    // weights on |m>_A, |m>_B; c >= 0
    double c_minus = 0.0, d_minus = 0.0;
};

// Closed-form manifold levels for m = 0..m_max.  Requires epsilon == 0.
std::vector<AdiabaticLevel> adiabatic_levels(const ModelParams& p, int m_max);

// Same with a static sigma_x bias folded into the two-level splitting.
// Reduces exactly to adiabatic_levels at epsilon = 0.
std::vector<AdiabaticLevel> biased_levels(const ModelParams& p, int m_max);

// <sigma_z(t)> from lab-frame |up>|vacuum>, expanded over the manifold
// eigenstates and phase-evolved; manifolds accumulate until the captured
// probability reaches 1 - 1e-6 (hard failure below 1 - 1e-4).
TimeSeries adiabatic_dynamics(const ModelParams& p, const std::vector<double>& t_grid);

}  // namespace qrabi
