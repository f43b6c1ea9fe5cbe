#pragma once

#include <array>

#include <Eigen/Dense>

#include "qrabi/model.hpp"

namespace qrabi {

// The number-conserving model closes (approximately) on 3x3 blocks.  Two
// overlapping families of blocks are used:
//   Type1 over {|n,up>, |n+1,down>, |n+2,down>}
//   Type2 over {|n-1,up>, |n,up>, |n+1,down>}
// Each block's characteristic polynomial is a monic cubic E^3 + bE^2 + cE + d.
enum class RwaBranch { Type1, Type2 };

struct CubicCoefficients {
    double b = 0.0, c = 0.0, d = 0.0;
    // trigonometric-solution intermediates, stored for inspection:
    double A = 0.0;      // b^2 - 3c
    double B = 0.0;      // bc - 9d
    double C = 0.0;      // c^2 - 3bd
    double gamma = 0.0;  // B^2 - 4AC; < 0 iff three distinct real roots
    // block construction inputs (diagonal offset and the two couplings):
    double x = 0.0, y = 0.0, z = 0.0;
};

CubicCoefficients rwa_cubic(RwaBranch branch, int n, const ModelParams& p);
Eigen::Matrix3d rwa_block(RwaBranch branch, int n, const ModelParams& p);

// Roots by the cosine formula, ascending.  Requires A > 0 and gamma < 0;
// otherwise a repeated root is present and degenerate_root_error is thrown.
std::array<double, 3> solve_cubic_trig(const CubicCoefficients& q);

// Energy of the physical branch: the lowest root for Type1, the highest for
// Type2.  n = 0 Type2 bypasses the cubic entirely: its |n-1> slot is
// unphysical and decouples (z = 0), leaving a 2x2 problem.
// If `selection_warning` is non-null it is set when the chosen root is not
// the one closest to the single-channel reference energy of the dominant
// coupling -- the empirical selection rule is not universal.
double rwa_energy(RwaBranch branch, int n, const ModelParams& p,
                  bool* selection_warning = nullptr);

struct RwaEigenstate {
    int n = 0;
    RwaBranch branch = RwaBranch::Type1;
    double energy = 0.0;
    // amplitudes over the block basis in the order listed above;
    // unit norm, leading nonzero coefficient >= 0
    std::array<double, 3> coeff{0.0, 0.0, 0.0};
};
RwaEigenstate rwa_state(RwaBranch branch, int n, const ModelParams& p);

// Two-state reference energies when only one coupling channel acts:
//   one-photon pair {|n,up>, |n+1,down>}, two-photon pair {|n,up>, |n+2,down>}.
// `level` = 1 picks the lower root, 2 the upper.
enum class PairKind { OnePhoton, TwoPhoton };
double reference_pair_energy(PairKind kind, int n, int level, const ModelParams& p);

}  // namespace qrabi
