#include "qrabi/rwa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrabi/errors.hpp"

namespace qrabi {

namespace {

void check_rwa_params(const ModelParams& p, int n) {
    if (n < 0) {
        throw param_error("excitation index must be >= 0");
    }
    if (p.epsilon != 0.0) {
        throw param_error("the number-conserving model does not support a bias term");
    }
}

// (x, y, z): diagonal offset and the two couplings entering each block family
struct BlockInputs {
    double x, y, z;
};

BlockInputs inputs(RwaBranch branch, int n, const ModelParams& p) {
    const double dn = static_cast<double>(n);
    if (branch == RwaBranch::Type1) {
        return {dn + 1.0 - p.delta / 2.0, p.g1 * std::sqrt(dn + 1.0),
                p.g2 * std::sqrt((dn + 2.0) * (dn + 1.0))};
    }
    return {dn + p.delta / 2.0, p.g1 * std::sqrt(dn + 1.0),
            p.g2 * std::sqrt((dn + 1.0) * dn)};
}

double first_nonzero(const std::array<double, 3>& v) {
    for (double c : v) {
        if (std::abs(c) > 1e-12) return c;
    }
    return 1.0;
}

}  // namespace

CubicCoefficients rwa_cubic(RwaBranch branch, int n, const ModelParams& p_in) {
    const ModelParams p = checked(p_in);
    check_rwa_params(p, n);
    const auto [x, y, z] = inputs(branch, n, p);
    const double delta = p.delta;

    CubicCoefficients q;
    q.x = x;
    q.y = y;
    q.z = z;
    if (branch == RwaBranch::Type1) {
        q.b = -3.0 * x - delta;
        q.c = 3.0 * x * x + 2.0 * delta * x - y * y - z * z + delta - 1.0;
        q.d = x - x * delta + x * y * y + x * z * z - x * x * delta - x * x * x + y * y;
    } else {
        q.b = delta - 3.0 * x;
        q.c = -y * y - z * z - 1.0 + 3.0 * x * x + delta - 2.0 * x * delta;
        q.d = -x * x * x - y * y + x * (1.0 + y * y + z * z - delta) + x * x * delta;
    }
    q.A = q.b * q.b - 3.0 * q.c;
    q.B = q.b * q.c - 9.0 * q.d;
    q.C = q.c * q.c - 3.0 * q.b * q.d;
    q.gamma = q.B * q.B - 4.0 * q.A * q.C;
    return q;
}

Eigen::Matrix3d rwa_block(RwaBranch branch, int n, const ModelParams& p_in) {
    const ModelParams p = checked(p_in);
    check_rwa_params(p, n);
    const auto [x, y, z] = inputs(branch, n, p);
    (void)x;
    const double dn = static_cast<double>(n);
    Eigen::Matrix3d m;
    if (branch == RwaBranch::Type1) {
        // {|n,up>, |n+1,down>, |n+2,down>}
        m << dn + p.delta / 2.0, y, z,
             y, dn + 1.0 - p.delta / 2.0, 0.0,
             z, 0.0, dn + 2.0 - p.delta / 2.0;
    } else {
        // {|n-1,up>, |n,up>, |n+1,down>}
        m << dn - 1.0 + p.delta / 2.0, 0.0, z,
             0.0, dn + p.delta / 2.0, y,
             z, y, dn + 1.0 - p.delta / 2.0;
    }
    return m;
}

std::array<double, 3> solve_cubic_trig(const CubicCoefficients& q) {
    if (!(q.A > 0.0) || !(q.gamma < 0.0)) {
        // a repeated root: locate the coalescing pair for the message
        const double dbl = (q.A != 0.0) ? -q.B / (2.0 * q.A) : -q.b / 3.0;
        const double single = -q.b - 2.0 * dbl;
        throw degenerate_root_error(
            "cubic has a repeated root near " + std::to_string(dbl) +
                " (remaining root " + std::to_string(single) + "); gamma = " +
                std::to_string(q.gamma),
            q.gamma);
    }
    double arg = (2.0 * q.A * q.b - 3.0 * q.B) / (2.0 * std::sqrt(q.A * q.A * q.A));
    if (arg > 1.0 && arg < 1.0 + 1e-12) arg = 1.0;
    if (arg < -1.0 && arg > -1.0 - 1e-12) arg = -1.0;
    const double theta = std::acos(arg) / 3.0;
    const double sa = std::sqrt(q.A);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // theta in [0, pi/3] makes this ordering ascending automatically
    return {(-q.b - 2.0 * sa * c) / 3.0,
            (-q.b + sa * (c - std::sqrt(3.0) * s)) / 3.0,
            (-q.b + sa * (c + std::sqrt(3.0) * s)) / 3.0};
}

namespace {

// Empirical-selection cross-check: the root kept should be the one nearest the
// two-state reference energy of whichever coupling channel dominates the block.
bool selection_disagrees(RwaBranch branch, int n, const ModelParams& p,
                         const std::array<double, 3>& roots, double picked) {
    const auto [x, y, z] = inputs(branch, n, p);
    (void)x;
    double ref;
    if (branch == RwaBranch::Type1) {
        ref = (y >= z) ? reference_pair_energy(PairKind::OnePhoton, n, 1, p)
                       : reference_pair_energy(PairKind::TwoPhoton, n, 1, p);
    } else {
        ref = (y >= z) ? reference_pair_energy(PairKind::OnePhoton, n, 2, p)
                       : reference_pair_energy(PairKind::TwoPhoton, n - 1, 2, p);
    }
    double best = roots[0];
    for (double r : roots) {
        if (std::abs(r - ref) < std::abs(best - ref)) best = r;
    }
    return std::abs(best - picked) > 1e-12;
}

// n = 0 Type2: the |n-1> slot is unphysical; with z = 0 the block reduces to
// the pair {|0,up>, |1,down>}, solved directly instead of through the cubic.
double type2_base_energy(const ModelParams& p) {
    return 0.5 + 0.5 * std::sqrt((p.delta - 1.0) * (p.delta - 1.0) + 4.0 * p.g1 * p.g1);
}

}  // namespace

double rwa_energy(RwaBranch branch, int n, const ModelParams& p_in, bool* selection_warning) {
    const ModelParams p = checked(p_in);
    check_rwa_params(p, n);
    if (selection_warning) *selection_warning = false;

    if (branch == RwaBranch::Type2 && n == 0) {
        return type2_base_energy(p);  // upper pair level; reference rule agrees exactly
    }
    const auto roots = solve_cubic_trig(rwa_cubic(branch, n, p));
    const double picked = (branch == RwaBranch::Type1) ? roots[0] : roots[2];
    if (selection_warning && selection_disagrees(branch, n, p, roots, picked)) {
        *selection_warning = true;
    }
    return picked;
}

RwaEigenstate rwa_state(RwaBranch branch, int n, const ModelParams& p_in) {
    const ModelParams p = checked(p_in);
    check_rwa_params(p, n);

    RwaEigenstate st;
    st.n = n;
    st.branch = branch;
    st.energy = rwa_energy(branch, n, p);

    if (branch == RwaBranch::Type2 && n == 0) {
        // 2x2 null vector over {|0,up>, |1,down>}; leading slot stays empty
        const double a11 = p.delta / 2.0 - st.energy;
        const double a22 = 1.0 - p.delta / 2.0 - st.energy;
        double v0 = a22;
        double v1 = -p.g1;
        double nrm = std::hypot(v0, v1);
        if (nrm < 1e-12) {  // g1 = 0: the bare |0,up> level itself
            v0 = (std::abs(a11) <= std::abs(a22)) ? 1.0 : 0.0;
            v1 = 1.0 - v0;
            nrm = 1.0;
        }
        st.coeff = {0.0, v0 / nrm, v1 / nrm};
    } else {
        const Eigen::Matrix3d m = rwa_block(branch, n, p) -
                                  st.energy * Eigen::Matrix3d::Identity();
        // null vector by cross products: the two independent rows span the
        // orthogonal complement of the eigenvector
        const Eigen::Vector3d r0 = m.row(0).transpose();
        const Eigen::Vector3d r1 = m.row(1).transpose();
        const Eigen::Vector3d r2 = m.row(2).transpose();
        Eigen::Vector3d best = r0.cross(r1);
        for (const Eigen::Vector3d& cand : {r0.cross(r2), r1.cross(r2)}) {
            if (cand.squaredNorm() > best.squaredNorm()) best = cand;
        }
        const double scale = std::max(1.0, m.norm());
        if (best.norm() < 1e-12 * scale * scale) {
            throw degenerate_root_error("eigenvector not unique: block is rank-deficient at E=" +
                                            std::to_string(st.energy),
                                        0.0);
        }
        best.normalize();
        const double res = (m * best).norm();
        if (res > 1e-9 * scale) {
            throw inconsistency_error("eigenvector residual " + std::to_string(res) +
                                      " exceeds 1e-9");
        }
        st.coeff = {best(0), best(1), best(2)};
    }

    if (first_nonzero(st.coeff) < 0.0) {
        for (double& c : st.coeff) c = -c;
    }
    return st;
}

double reference_pair_energy(PairKind kind, int n, int level, const ModelParams& p_in) {
    const ModelParams p = checked(p_in);
    if (n < 0) {
        throw param_error("excitation index must be >= 0");
    }
    if (level != 1 && level != 2) {
        throw param_error("level must be 1 (lower) or 2 (upper)");
    }
    const double sgn = (level == 1) ? -1.0 : 1.0;
    const double dn = static_cast<double>(n);
    if (kind == PairKind::OnePhoton) {
        return dn + 0.5 +
               sgn * 0.5 *
                   std::sqrt((p.delta - 1.0) * (p.delta - 1.0) + 4.0 * p.g1 * p.g1 * (dn + 1.0));
    }
    return dn + 1.0 +
           sgn * 0.5 *
               std::sqrt((p.delta - 2.0) * (p.delta - 2.0) +
                         4.0 * p.g2 * p.g2 * (dn + 2.0) * (dn + 1.0));
}

}  // namespace qrabi
