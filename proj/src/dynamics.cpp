#include "qrabi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qrabi/adiabatic.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/frame.hpp"
#include "qrabi/rwa.hpp"
#include "qrabi/solver.hpp"

namespace qrabi {

namespace {

double checked_uniform_dt(const std::vector<double>& t) {
    if (t.empty()) {
        throw param_error("empty time grid");
    }
    if (t.size() == 1) {
        return 0.0;
    }
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) {
        throw param_error("time grid must be strictly ascending");
    }
    for (size_t i = 1; i < t.size(); ++i) {
        const double gap = t[i] - t[i - 1];
        if (std::abs(gap - dt) > 1e-9 * std::max(1.0, dt)) {
            throw param_error("time grid must be uniformly spaced");
        }
    }
    return dt;
}

void sort_and_prune(EmissionSpectrum& spec) {
    spec.total_weight = 0.0;
    for (const EmissionLine& l : spec.lines) {
        spec.total_weight += l.weight;
    }
    spec.lines.erase(std::remove_if(spec.lines.begin(), spec.lines.end(),
                                    [](const EmissionLine& l) { return l.weight < 1e-6; }),
                     spec.lines.end());
    std::sort(spec.lines.begin(), spec.lines.end(),
              [](const EmissionLine& a, const EmissionLine& b) {
                  return a.frequency < b.frequency;
              });
    spec.cutoff_warning = spec.total_weight < 0.999;
}

}  // namespace

std::vector<double> time_grid(double t_max, double dt) {
    if (!(t_max > 0.0) || !(dt > 0.0) || !(dt <= t_max)) {
        throw param_error("time grid needs 0 < dt <= t_max");
    }
    const int n = static_cast<int>(std::floor(t_max / dt + 0.5));
    std::vector<double> t(n + 1);
    for (int k = 0; k <= n; ++k) {
        t[k] = k * dt;
    }
    return t;
}

TimeSeries exact_dynamics(const Eigen::MatrixXd& h, const Eigen::VectorXd& initial,
                          const std::vector<double>& t_grid) {
    if (h.rows() != h.cols() || h.rows() < 2 || h.rows() % 2 != 0) {
        throw param_error("hamiltonian must be square with even dimension (Fock x spin)");
    }
    if (initial.size() != h.rows()) {
        throw param_error("initial state dimension does not match the hamiltonian");
    }
    if (std::abs(initial.norm() - 1.0) > 1e-10) {
        throw param_error("initial state must be normalized");
    }
    const double dt = checked_uniform_dt(t_grid);

    const auto [evals, evecs] = eigensolve_symmetric(h);
    const Eigen::VectorXd amps = evecs.transpose() * initial;
    const Eigen::VectorXd sz = sigma_z_diagonal(static_cast<int>(h.rows()) / 2);

    TimeSeries out;
    out.t = t_grid;
    out.value.resize(t_grid.size());
    out.dt = dt;
    Eigen::VectorXcd phased(evals.size());
    for (size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        for (Eigen::Index j = 0; j < evals.size(); ++j) {
            phased(j) = amps(j) * std::exp(std::complex<double>(0.0, -evals(j) * t));
        }
        const Eigen::VectorXcd psi = evecs * phased;
        const double nrm2 = psi.squaredNorm();
        if (std::abs(nrm2 - 1.0) > 1e-10) {
            throw inconsistency_error("norm drift " + std::to_string(nrm2 - 1.0) +
                                      " during time evolution");
        }
        out.value[it] = (sz.array() * psi.array().abs2()).sum();
    }
    return out;
}

TimeSeries rwa_population(int n, const ModelParams& p_in, const std::vector<double>& t_grid) {
    const ModelParams p = checked(p_in);
    const double dt = checked_uniform_dt(t_grid);

    const RwaEigenstate s1 = rwa_state(RwaBranch::Type1, n, p);
    const RwaEigenstate s2 = rwa_state(RwaBranch::Type2, n, p);
    const RwaEigenstate s2p = rwa_state(RwaBranch::Type2, n + 1, p);
    const double c = s1.coeff[0], e = s1.coeff[1], f = s1.coeff[2];
    const double cp = s2.coeff[1], ep = s2.coeff[2];
    const double fpp = s2p.coeff[0], epp = s2p.coeff[2];

    // |n,up> appears in exactly these three block eigenstates; the expansion
    // is complete only up to the overlap between neighbouring blocks
    const double completeness = c * c + cp * cp + fpp * fpp;
    if (std::abs(completeness - 1.0) > 0.02) {
        throw inconsistency_error("block expansion of |n,up> captures only " +
                                  std::to_string(completeness) +
                                  "; the three-state picture has broken down");
    }

    const double om1 = s1.energy - s2.energy;
    const double om2 = s1.energy - s2p.energy;
    const double base = c * c * (1.0 - c * c) + cp * cp * ep * ep + fpp * fpp * epp * epp;
    const double amp1 = 2.0 * c * e * cp * ep;
    const double amp2 = 2.0 * c * f * fpp * epp;

    TimeSeries out;
    out.t = t_grid;
    out.value.resize(t_grid.size());
    out.dt = dt;
    for (size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        const double p_down = base + amp1 * std::cos(om1 * t) + amp2 * std::cos(om2 * t);
        out.value[it] = 1.0 - 2.0 * p_down;
    }
    return out;
}

RabiFrequencies rabi_frequencies(int n, const ModelParams& p_in) {
    const ModelParams p = checked(p_in);
    bool w1 = false, w2 = false, w3 = false;
    const double e1 = rwa_energy(RwaBranch::Type1, n, p, &w1);
    const double e2 = rwa_energy(RwaBranch::Type2, n, p, &w2);
    const double e2p = rwa_energy(RwaBranch::Type2, n + 1, p, &w3);
    RabiFrequencies out;
    out.omega_1 = std::abs(e1 - e2);
    out.omega_2 = std::abs(e1 - e2p);
    out.selection_warning = w1 || w2 || w3;
    return out;
}

FourierSpectrum fourier_spectrum(const TimeSeries& series) {
    const size_t n = series.value.size();
    if (n < 256) {
        throw param_error("fourier_spectrum needs at least 256 samples");
    }
    if (series.t.size() != n) {
        throw param_error("time and value arrays differ in length");
    }
    const double dt = checked_uniform_dt(series.t);

    double mean = 0.0;
    for (double v : series.value) mean += v;
    mean /= static_cast<double>(n);

    size_t n_pad = 1;
    while (n_pad < n) n_pad *= 2;

    std::vector<double> x(n_pad, 0.0);
    for (size_t i = 0; i < n; ++i) {
        const double hann =
            0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / (n - 1));
        x[i] = (series.value[i] - mean) * hann;
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, x);  // full length n_pad; keep the non-negative half

    FourierSpectrum out;
    const size_t n_half = n_pad / 2 + 1;
    out.frequency.resize(n_half);
    out.magnitude.resize(n_half);
    out.bin_width = 2.0 * M_PI / (static_cast<double>(n_pad) * dt);
    for (size_t k = 0; k < n_half; ++k) {
        out.frequency[k] = out.bin_width * static_cast<double>(k);
        out.magnitude[k] = std::abs(spec[k]);
    }

    double peak_floor = 0.0;
    for (double m : out.magnitude) peak_floor = std::max(peak_floor, m);
    peak_floor *= 0.05;
    for (size_t i = 1; i + 1 < n_half; ++i) {
        if (out.magnitude[i] > peak_floor && out.magnitude[i] >= out.magnitude[i - 1] &&
            out.magnitude[i] > out.magnitude[i + 1]) {
            out.peaks.push_back({out.frequency[i], out.magnitude[i]});
        }
    }
    return out;
}

EmissionSpectrum emission_spectrum_rwa(const ModelParams& p_in) {
    const ModelParams p = checked(p_in);
    const RwaEigenstate s1 = rwa_state(RwaBranch::Type1, 0, p);
    const RwaEigenstate s2 = rwa_state(RwaBranch::Type2, 0, p);
    const RwaEigenstate s2p = rwa_state(RwaBranch::Type2, 1, p);
    const double e_gs = -p.delta / 2.0;  // |0,down> is exact in this model

    EmissionSpectrum out;
    out.lines = {{s1.energy - e_gs, s1.coeff[0] * s1.coeff[0]},
                 {s2.energy - e_gs, s2.coeff[1] * s2.coeff[1]},
                 {s2p.energy - e_gs, s2p.coeff[0] * s2p.coeff[0]}};
    sort_and_prune(out);
    return out;
}

EmissionSpectrum emission_spectrum_full(const ModelParams& p_in, int m_max) {
    const ModelParams p = checked(p_in);
    if (p.epsilon != 0.0) {
        throw param_error("emission spectrum is defined for epsilon = 0");
    }
    if (m_max < 1 || m_max > 199) {
        throw param_error("m_max must be in [1, 199]");
    }
    const BogoliubovFrame fr = frame_from_params(p.g1, p.g2);
    const std::vector<AdiabaticLevel> levels = adiabatic_levels(p, m_max);
    const VacuumProjections proj = vacuum_projections(fr, m_max);
    const double e0 = levels[0].energy_minus;

    EmissionSpectrum out;
    out.lines.reserve(2 * levels.size());
    for (const AdiabaticLevel& lev : levels) {
        const double da = proj.a(lev.m), db = proj.b(lev.m);
        const double qp = (lev.c_plus * da - lev.d_plus * db);
        const double qm = (lev.c_minus * da - lev.d_minus * db);
        out.lines.push_back({lev.energy_plus - e0, 0.5 * qp * qp});
        out.lines.push_back({lev.energy_minus - e0, 0.5 * qm * qm});
    }
    sort_and_prune(out);
    return out;
}

}  // namespace qrabi
