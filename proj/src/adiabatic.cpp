#include "qrabi/adiabatic.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qrabi/errors.hpp"
#include "qrabi/frame.hpp"

namespace qrabi {

namespace {

std::vector<AdiabaticLevel> manifold_levels(const ModelParams& p, int m_max) {
    if (m_max < 0) {
        throw param_error("m_max must be >= 0");
    }
    const BogoliubovFrame fr = frame_from_params(p.g1, p.g2);
    const OverlapMatrix d = overlap_matrix(fr, m_max + 1);

    std::vector<AdiabaticLevel> out;
    out.reserve(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        // isolated 2x2 over {|m>_A, |m>_B}: diagonal family energies, coupled
        // only through the qubit splitting weighted by the overlap D_mm
        const double ea = fr.beta * (m - fr.v * fr.v - fr.w * fr.w) - p.epsilon / 2.0;
        const double eb =
            fr.beta * (m - fr.v * fr.v - fr.w_prime * fr.w_prime) + p.epsilon / 2.0;
        const double h = -p.delta * d.entries(m, m) / 2.0;
        const double base = (ea + eb) / 2.0;
        const double split = (ea - eb) / 2.0;
        const double gap = std::hypot(split, h);

        AdiabaticLevel lev;
        lev.m = m;
        lev.energy_plus = base + gap;
        lev.energy_minus = base - gap;

        // Build the better-conditioned branch from the 2x2 kernel (the one whose
        // B-component |split| + gap avoids cancellation), then take its in-plane
        // perpendicular as the partner so the pair is orthonormal to rounding.
        const bool primary_is_minus = split >= 0.0;
        double c = -h;  // A-family component
        double dd = primary_is_minus ? split + gap : split - gap;
        double nrm = std::hypot(c, dd);
        if (nrm < 1e-14 * std::max(1.0, std::abs(base) + gap)) {
            // fully degenerate manifold (h = split = 0): bare families by convention
            c = 0.0;
            dd = 1.0;
            nrm = 1.0;
        }
        c /= nrm;
        dd /= nrm;
        double pc = -dd;
        double pd = c;
        if (c < 0.0 || (c == 0.0 && dd < 0.0)) {
            c = -c;
            dd = -dd;
        }
        if (pc < 0.0 || (pc == 0.0 && pd < 0.0)) {
            pc = -pc;
            pd = -pd;
        }
        if (primary_is_minus) {
            lev.c_minus = c;
            lev.d_minus = dd;
            lev.c_plus = pc;
            lev.d_plus = pd;
        } else {
            lev.c_plus = c;
            lev.d_plus = dd;
            lev.c_minus = pc;
            lev.d_minus = pd;
        }
        out.push_back(lev);
    }
    return out;
}

}  // namespace

std::vector<AdiabaticLevel> adiabatic_levels(const ModelParams& p_in, int m_max) {
    const ModelParams p = checked(p_in);
    if (p.epsilon != 0.0) {
        throw param_error("adiabatic_levels requires epsilon = 0; use biased_levels");
    }
    return manifold_levels(p, m_max);
}

std::vector<AdiabaticLevel> biased_levels(const ModelParams& p_in, int m_max) {
    return manifold_levels(checked(p_in), m_max);
}

TimeSeries adiabatic_dynamics(const ModelParams& p_in, const std::vector<double>& t_grid) {
    const ModelParams p = checked(p_in);
    if (t_grid.empty()) {
        throw param_error("empty time grid");
    }
    for (size_t i = 1; i < t_grid.size(); ++i) {
        if (t_grid[i] <= t_grid[i - 1]) {
            throw param_error("time grid must be strictly ascending");
        }
    }

    const BogoliubovFrame fr = frame_from_params(p.g1, p.g2);

    // grow the manifold window until the vacuum expansion is essentially complete
    int m_cap = 40;
    std::vector<AdiabaticLevel> levels;
    VacuumProjections proj;
    double captured = 0.0;
    for (;;) {
        levels = manifold_levels(p, m_cap);
        proj = vacuum_projections(fr, m_cap);
        captured = 0.0;
        for (const AdiabaticLevel& lev : levels) {
            const double qp = (lev.c_plus * proj.a(lev.m) - lev.d_plus * proj.b(lev.m));
            const double qm = (lev.c_minus * proj.a(lev.m) - lev.d_minus * proj.b(lev.m));
            captured += 0.5 * (qp * qp + qm * qm);
        }
        if (captured >= 1.0 - 1e-6 || m_cap >= 196) break;
        m_cap = std::min(196, 2 * m_cap);
    }
    if (captured < 1.0 - 1e-4) {
        throw truncation_error("initial-state expansion captures only " +
                               std::to_string(captured) + " of the norm at the manifold cap");
    }

    // Fock representation of every participating eigenstate.  The spinor
    // components (c|m>_A -/+ d|m>_B)/sqrt(2) are built from the family
    // transform columns; headroom keeps their truncation leakage negligible.
    const int n_tr = 2 * (m_cap + 1) + 20;
    const auto [ua, ub] = family_transforms(fr, n_tr);

    const int n_states = 2 * static_cast<int>(levels.size());
    Eigen::MatrixXd ups(n_tr, n_states), lows(n_tr, n_states);
    Eigen::VectorXd amps(n_states), energies(n_states);
    int j = 0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const AdiabaticLevel& lev : levels) {
        const Eigen::VectorXd va = ua.col(lev.m);
        const Eigen::VectorXd vb = ub.col(lev.m);
        for (int sgn : {+1, -1}) {
            const double c = (sgn > 0) ? lev.c_plus : lev.c_minus;
            const double dd = (sgn > 0) ? lev.d_plus : lev.d_minus;
            ups.col(j) = inv_sqrt2 * (c * va - dd * vb);
            lows.col(j) = inv_sqrt2 * (c * va + dd * vb);
            amps(j) = inv_sqrt2 * (c * proj.a(lev.m) - dd * proj.b(lev.m));
            energies(j) = (sgn > 0) ? lev.energy_plus : lev.energy_minus;
            ++j;
        }
    }

    TimeSeries out;
    out.t = t_grid;
    out.value.resize(t_grid.size());
    out.dt = (t_grid.size() > 1) ? t_grid[1] - t_grid[0] : 0.0;
    Eigen::VectorXcd phased(n_states);
    for (size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        for (int s = 0; s < n_states; ++s) {
            phased(s) = amps(s) * std::exp(std::complex<double>(0.0, -energies(s) * t));
        }
        const Eigen::VectorXcd up = ups * phased;
        const Eigen::VectorXcd low = lows * phased;
        out.value[it] = up.squaredNorm() - low.squaredNorm();
    }
    return out;
}

}  // namespace qrabi
