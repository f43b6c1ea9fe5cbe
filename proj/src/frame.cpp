#include "qrabi/frame.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"

namespace qrabi {

namespace {

using LD = long double;
using CLD = std::complex<long double>;

constexpr LD kNegInf = -std::numeric_limits<LD>::infinity();

// i^k for the quarter-turn phases that appear when square roots of negative
// reals are taken on the principal branch
CLD quarter_phase(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return CLD(1.0L, 0.0L);
        case 1: return CLD(0.0L, 1.0L);
        case 2: return CLD(-1.0L, 0.0L);
        default: return CLD(0.0L, -1.0L);
    }
}

std::vector<LD> log_factorials(int up_to) {
    std::vector<LD> lg(up_to + 1);
    for (int k = 0; k <= up_to; ++k) {
        lg[k] = std::lgamma(static_cast<LD>(k) + 1.0L);
    }
    return lg;
}

// H_0..H_K at a fixed complex argument, kept as (log magnitude, unit phase)
// pairs: the raw values overflow double well below the orders needed here.
struct ScaledHermite {
    std::vector<LD> logmag;
    std::vector<CLD> phase;
};

ScaledHermite hermite_scaled(int K, CLD x) {
    ScaledHermite h;
    h.logmag.assign(K + 1, 0.0L);
    h.phase.assign(K + 1, CLD(1.0L, 0.0L));
    CLD prev(1.0L, 0.0L);
    CLD cur = 2.0L * x;
    LD shift = 0.0L;
    if (K >= 1) {
        const LD m = std::abs(cur);
        h.logmag[1] = (m != 0.0L) ? std::log(m) : kNegInf;
        h.phase[1] = (m != 0.0L) ? cur / m : CLD(1.0L, 0.0L);
    }
    for (int k = 1; k < K; ++k) {
        const CLD nxt = 2.0L * x * cur - 2.0L * static_cast<LD>(k) * prev;
        prev = cur;
        cur = nxt;
        const LD m = std::abs(cur);
        if (m > 1e200L) {  // renormalize both running values, remember the scale
            prev /= m;
            cur /= m;
            shift += std::log(m);
        }
        const LD mm = std::abs(cur);
        h.logmag[k + 1] = (mm != 0.0L) ? shift + std::log(mm) : kNegInf;
        h.phase[k + 1] = (mm != 0.0L) ? cur / mm : CLD(1.0L, 0.0L);
    }
    return h;
}

// <m| D(alpha) |n> for real alpha -- the g2 -> 0 limit of the A/B overlap,
// where the squeeze drops out and the two families differ by a displacement
// of 2*g1.  Log-domain with explicit signs; exact at alpha = 0.
double displaced_overlap(int m, int n, LD alpha, const std::vector<LD>& lg) {
    if (alpha == 0.0L) {
        return (m == n) ? 1.0 : 0.0;
    }
    const LD log_alpha = std::log(std::abs(alpha));
    const LD sign_alpha = (alpha >= 0.0L) ? 1.0L : -1.0L;
    const int kmax = std::min(m, n);
    LD lead = kNegInf;
    for (int i = 0; i <= kmax; ++i) {
        const LD l = static_cast<LD>(m + n - 2 * i) * log_alpha - lg[i] - lg[m - i] - lg[n - i];
        if (l > lead) lead = l;
    }
    LD acc = 0.0L;
    for (int i = 0; i <= kmax; ++i) {
        const LD l = static_cast<LD>(m + n - 2 * i) * log_alpha - lg[i] - lg[m - i] - lg[n - i];
        LD s = ((n - i) % 2 == 0) ? 1.0L : -1.0L;
        if (sign_alpha < 0.0L && (m + n - 2 * i) % 2 != 0) s = -s;
        acc += s * std::exp(l - lead);
    }
    const LD pre = 0.5L * (lg[m] + lg[n]) - 0.5L * alpha * alpha;
    return static_cast<double>(acc * std::exp(lead + pre));
}

}  // namespace

BogoliubovFrame frame_from_params(double g1, double g2) {
    if (!std::isfinite(g1) || !std::isfinite(g2)) {
        throw param_error("non-finite coupling");
    }
    if (g2 < 0.0) {
        throw param_error("g2 must be >= 0, got " + std::to_string(g2));
    }
    if (g2 >= collapse_g2) {
        throw collapse_error(g2);
    }
    BogoliubovFrame fr;
    fr.g1 = g1;
    fr.g2 = g2;
    fr.beta = std::sqrt(1.0 - 4.0 * g2 * g2);
    fr.u = std::sqrt((1.0 + fr.beta) / (2.0 * fr.beta));
    fr.v = std::sqrt((1.0 - fr.beta) / (2.0 * fr.beta));
    fr.r = std::acosh(fr.u);
    const double uu_vv = fr.u * fr.u + fr.v * fr.v;
    fr.w = uu_vv * g1 / (fr.u + fr.v);
    fr.w_prime = uu_vv * g1 / (fr.v - fr.u);
    return fr;
}

std::complex<double> hermite_poly(int k, std::complex<double> x) {
    if (k < 0) {
        throw param_error("hermite order must be >= 0");
    }
    if (k > 400) {
        throw param_error("hermite order capped at 400, got " + std::to_string(k));
    }
    std::complex<double> prev(1.0, 0.0);
    if (k == 0) return prev;
    std::complex<double> cur = 2.0 * x;
    for (int j = 1; j < k; ++j) {
        const std::complex<double> nxt = 2.0 * x * cur - 2.0 * static_cast<double>(j) * prev;
        prev = cur;
        cur = nxt;
        if (!std::isfinite(std::abs(cur))) {
            throw std::overflow_error("hermite recurrence overflowed at order " +
                                      std::to_string(j + 1));
        }
    }
    return cur;
}

OverlapMatrix overlap_matrix(const BogoliubovFrame& fr, int size) {
    if (size <= 0) {
        throw param_error("overlap size must be positive");
    }
    if (size > 200) {
        throw param_error("overlap size capped at 200, got " + std::to_string(size));
    }

    OverlapMatrix out;
    out.size = size;
    out.entries.resize(size, size);
    out.max_imag_residue = 0.0;
    out.max_amplification = 1.0;

    const auto lg = log_factorials(size + 1);

    if (fr.g2 < 1e-8) {
        // squeeze negligible: the two families are displaced copies of the
        // Fock basis, offset by w - w' = 2 g1
        const LD alpha = static_cast<LD>(fr.w) - static_cast<LD>(fr.w_prime);
        for (int m = 0; m < size; ++m) {
            for (int n = 0; n < size; ++n) {
                out.entries(m, n) = displaced_overlap(m, n, alpha, lg);
            }
        }
        return out;
    }

    const LD u = static_cast<LD>(fr.u);
    const LD v = static_cast<LD>(fr.v);
    const LD b = static_cast<LD>(fr.beta);
    const LD g1 = static_cast<LD>(fr.g1);
    const LD uv = u * v;
    const LD b32 = std::pow(b, 1.5L);
    // principal branches: sqrt(-uv) = i sqrt(uv) makes xi_a purely imaginary
    const CLD xi_a = CLD(g1 * (u - v), 0.0L) / (b32 * std::sqrt(CLD(-uv, 0.0L)));
    const CLD xi_b = CLD(-g1 * (u + v), 0.0L) / CLD(b32 * std::sqrt(uv), 0.0L);

    const int K = size - 1;
    const ScaledHermite ha = hermite_scaled(K, xi_a);
    const ScaledHermite hb = hermite_scaled(K, xi_b);
    const LD log_uv = std::log(uv);
    const LD log_b = std::log(b);
    const LD expo = 2.0L * g1 * g1 / (b * b * b);

    for (int m = 0; m < size; ++m) {
        for (int n = 0; n < size; ++n) {
            const LD pre = 0.5L * (lg[m] + lg[n] + log_b) +
                           0.5L * static_cast<LD>(m + n) * (log_uv + log_b) - expo;
            const int kmax = std::min(m, n);
            LD lead = kNegInf;
            for (int i = 0; i <= kmax; ++i) {
                const LD l = -(lg[i] + lg[m - i] + lg[n - i]) -
                             static_cast<LD>(i) * log_uv + ha.logmag[m - i] + hb.logmag[n - i];
                if (l > lead) lead = l;
            }
            if (!(lead > kNegInf)) {
                out.entries(m, n) = 0.0;
                continue;
            }
            CLD acc(0.0L, 0.0L);
            for (int i = 0; i <= kmax; ++i) {
                const LD l = -(lg[i] + lg[m - i] + lg[n - i]) -
                             static_cast<LD>(i) * log_uv + ha.logmag[m - i] + hb.logmag[n - i];
                if (l == kNegInf) continue;
                const CLD ph = quarter_phase(m - i) * ha.phase[m - i] * hb.phase[n - i];
                acc += std::exp(l - lead) * ph;
            }
            const LD scale = std::exp(lead + pre);
            const CLD val = scale * acc;
            out.entries(m, n) = static_cast<double>(val.real());
            const double im = std::abs(static_cast<double>(val.imag()));
            if (im > out.max_imag_residue) out.max_imag_residue = im;
            const double amp = static_cast<double>(
                scale / std::max(std::abs(val.real()), (LD)1e-300));
            if (amp > out.max_amplification) out.max_amplification = amp;
        }
    }

    if (out.max_imag_residue >= 1e-10) {
        throw inconsistency_error(
            "overlap entries must be real; worst imaginary residue " +
            std::to_string(out.max_imag_residue));
    }
    return out;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> family_transforms(const BogoliubovFrame& fr,
                                                              int n_tr) {
    if (n_tr < 4) {
        throw param_error("n_tr must be >= 4, got " + std::to_string(n_tr));
    }
    const Eigen::MatrixXd a = annihilation_op(n_tr);
    const Eigen::MatrixXd ad = a.transpose();
    const Eigen::MatrixXd squeeze_gen = (fr.r / 2.0) * (a * a - ad * ad);
    const Eigen::MatrixXd disp_gen_a = -fr.w * (ad - a);
    const Eigen::MatrixXd disp_gen_b = -fr.w_prime * (ad - a);
    const Eigen::MatrixXd s = squeeze_gen.exp();
    const Eigen::MatrixXd disp_a = disp_gen_a.exp();
    const Eigen::MatrixXd disp_b = disp_gen_b.exp();
    // columns m: |m>_A = S D(-w) |m>,  |m>_B = S^T D(-w') |m>
    return {s * disp_a, s.transpose() * disp_b};
}

Eigen::VectorXd bogoliubov_state_in_fock(int m, const BogoliubovFrame& fr, Family which,
                                         int n_tr) {
    if (m < 0) {
        throw param_error("state index must be >= 0");
    }
    if (m >= n_tr / 2) {
        throw param_error("need n_tr > 2*m headroom for the squeeze/displace tails");
    }
    const auto [ua, ub] = family_transforms(fr, n_tr);
    Eigen::VectorXd col = (which == Family::A) ? ua.col(m) : ub.col(m);
    const double deficit = 1.0 - col.norm();
    if (deficit > 1e-6) {
        throw truncation_error("family state " + std::to_string(m) +
                               " leaks beyond the truncation: norm deficit " +
                               std::to_string(deficit));
    }
    return col;
}

VacuumProjections vacuum_projections(const BogoliubovFrame& fr, int m_max) {
    if (m_max < 0) {
        throw param_error("m_max must be >= 0");
    }
    if (m_max > 400) {
        throw param_error("m_max capped at 400, got " + std::to_string(m_max));
    }
    VacuumProjections out;
    out.a.resize(m_max + 1);
    out.b.resize(m_max + 1);
    const auto lg = log_factorials(m_max + 1);

    if (fr.g2 < 1e-8) {
        // pure displacements: coherent-state amplitudes in w and w'
        const double w = fr.w;
        const double wp = fr.w_prime;
        for (int m = 0; m <= m_max; ++m) {
            if (w == 0.0) {
                out.a(m) = (m == 0) ? 1.0 : 0.0;
            } else {
                const double mag = std::exp(-0.5 * w * w + m * std::log(std::abs(w)) -
                                            0.5 * static_cast<double>(lg[m]));
                out.a(m) = (w < 0.0 && m % 2 != 0) ? -mag : mag;
            }
            if (wp == 0.0) {
                out.b(m) = (m == 0) ? 1.0 : 0.0;
            } else {
                const double mag = std::exp(-0.5 * wp * wp + m * std::log(std::abs(wp)) -
                                            0.5 * static_cast<double>(lg[m]));
                out.b(m) = (wp < 0.0 && m % 2 != 0) ? -mag : mag;
            }
        }
        return out;
    }

    const LD u = static_cast<LD>(fr.u);
    const LD v = static_cast<LD>(fr.v);
    const LD w = static_cast<LD>(fr.w);
    const LD wp = static_cast<LD>(fr.w_prime);
    const LD uv = u * v;
    const CLD xi_a = CLD(w * (u - v), 0.0L) / std::sqrt(CLD(-2.0L * uv, 0.0L));
    const CLD xi_b = CLD(wp * (u + v), 0.0L) / CLD(std::sqrt(2.0L * uv), 0.0L);
    const ScaledHermite ha = hermite_scaled(m_max, xi_a);
    const ScaledHermite hb = hermite_scaled(m_max, xi_b);
    const LD log_half_ratio = std::log(v / (2.0L * u));  // |(-v/2u)| and |(+v/2u)| share it
    const LD exp_a = -w * w * (u - v) / (2.0L * u);
    const LD exp_b = -wp * wp * (u + v) / (2.0L * u);
    const LD log_u = std::log(u);

    double imax = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const LD base = -0.5L * (log_u + lg[m]) + 0.5L * static_cast<LD>(m) * log_half_ratio;
        // (-v/2u)^{m/2} on the principal branch contributes i^m
        CLD va = ha.logmag[m] > kNegInf
                     ? std::exp(CLD(base + exp_a + ha.logmag[m], 0.0L)) *
                           quarter_phase(m) * ha.phase[m]
                     : CLD(0.0L, 0.0L);
        CLD vb = hb.logmag[m] > kNegInf
                     ? std::exp(CLD(base + exp_b + hb.logmag[m], 0.0L)) * hb.phase[m]
                     : CLD(0.0L, 0.0L);
        out.a(m) = static_cast<double>(va.real());
        out.b(m) = static_cast<double>(vb.real());
        imax = std::max({imax, std::abs(static_cast<double>(va.imag())),
                         std::abs(static_cast<double>(vb.imag()))});
    }
    if (imax >= 1e-10) {
        throw inconsistency_error("vacuum projections must be real; worst imaginary residue " +
                                  std::to_string(imax));
    }
    return out;
}

}  // namespace qrabi
