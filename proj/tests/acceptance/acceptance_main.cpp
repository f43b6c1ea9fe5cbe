// Acceptance gate: one numbered end-to-end check per invocation, one
// [PASS]/[FAIL] line with the measured numbers on stdout, exit 0/1.
// Usage: acceptance <check-id 1..10> <path-to-qrabi-binary>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "qrabi/adiabatic.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/frame.hpp"
#include "qrabi/model.hpp"
#include "qrabi/rwa.hpp"
#include "qrabi/solver.hpp"

using namespace qrabi;
namespace fs = std::filesystem;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, bool pass, const std::string& claim, const std::string& measured) {
    std::printf("[%s] criterion %d: %s: %s\n", pass ? "PASS" : "FAIL", id, claim.c_str(),
                measured.c_str());
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// ---- 1: the two exact solvers agree over the survey grid ----

bool check_cross_solver() {
    const double g1_step = 0.1;
    double worst = 0.0;
    ModelParams worst_at;
    Stopwatch clock;
    for (double delta : {0.5, 1.0})
        for (double g2 : {0.1, 0.2})
            for (int i = 0; i <= 15; ++i) {
                ModelParams p{.delta = delta, .g1 = i * g1_step, .g2 = g2};
                TruncatedSpectrum f = solve_fock(p, 60, 12);
                TruncatedSpectrum b = solve_bogoliubov(p, 60, 12);
                for (int l = 0; l < 12; ++l) {
                    double rel = std::abs(f.eigenvalues(l) - b.eigenvalues(l)) /
                                 std::max(std::abs(f.eigenvalues(l)), 1.0);
                    if (rel > worst) {
                        worst = rel;
                        worst_at = p;
                    }
                }
            }
    const double elapsed = clock.seconds();
    const bool pass = worst < 1e-6 && elapsed < 30.0;
    report(1, pass, "independent solvers agree to 1e-6 (lowest 12, truncation 60, 64 points)",
           "worst rel " + num(worst) + " at delta=" + num(worst_at.delta) +
               " g1=" + num(worst_at.g1) + " g2=" + num(worst_at.g2) + ", " + num(elapsed) +
               "s");
    if (!pass) {
        // context: the discrepancy is a basis-size effect on the projected side,
        // not an assembly bug.  The same grid closes at truncation 100 when the
        // overlaps come from the exponentiated-generator oracle (the closed-form
        // assembly itself runs out of long-double precision near that size).
        double worst100 = 0.0;
        for (double g2 : {0.1, 0.2})
            for (int i = 0; i <= 15; ++i) {
                const int n = 100;
                BogoliubovFrame fr = frame_from_params(i * g1_step, g2);
                auto [ua, ub] = family_transforms(fr, 260);
                Eigen::MatrixXd d = ua.leftCols(n).transpose() * ub.leftCols(n);
                Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
                for (int m = 0; m < n; ++m) {
                    h(m, m) = fr.beta * (m - fr.v * fr.v - fr.w * fr.w);
                    h(n + m, n + m) =
                        fr.beta * (m - fr.v * fr.v - fr.w_prime * fr.w_prime);
                }
                for (double delta : {0.5, 1.0}) {
                    h.topRightCorner(n, n) = -(delta / 2.0) * d;
                    h.bottomLeftCorner(n, n) = -(delta / 2.0) * d.transpose();
                    auto [wb, vb] = eigensolve_symmetric(h);
                    ModelParams p{.delta = delta, .g1 = i * g1_step, .g2 = g2};
                    TruncatedSpectrum f = solve_fock(p, n, 12);
                    for (int l = 0; l < 12; ++l)
                        worst100 = std::max(worst100,
                                            std::abs(f.eigenvalues(l) - wb(l)) /
                                                std::max(std::abs(f.eigenvalues(l)), 1.0));
                }
            }
        std::printf("  note: same grid, truncation 100, oracle-assembled overlaps: "
                    "worst rel %s (within 1e-6: %s)\n",
                    num(worst100).c_str(), worst100 < 1e-6 ? "yes" : "no");
    }
    return pass;
}

// ---- 2: frozen closed-form doublet at delta=0 ----

bool check_delta0_closed_form() {
    const double frozen_minus = -0.322602051443;
    const double frozen_plus = -0.218435384777;
    auto lv = adiabatic_levels({.delta = 0.0, .g1 = 0.5, .g2 = 0.1}, 0);
    TruncatedSpectrum dense = solve_fock({.delta = 0.0, .g1 = 0.5, .g2 = 0.1}, 80, 2);
    double worst = std::max({std::abs(lv[0].energy_minus - frozen_minus),
                             std::abs(lv[0].energy_plus - frozen_plus),
                             std::abs(dense.eigenvalues(0) - frozen_minus),
                             std::abs(dense.eigenvalues(1) - frozen_plus)});
    bool pass = worst < 1e-6;
    report(2, pass,
           "delta=0 ground doublet matches the frozen values -0.322602051443 / "
           "-0.218435384777 (closed form and dense solver, 1e-6)",
           "worst dev " + num(worst));
    return pass;
}

// ---- 3: manifold closed form meets the exact solver as delta -> 0 ----

bool check_adiabatic_limit() {
    ModelParams p{.delta = 1e-6, .g1 = 0.5, .g2 = 0.1};
    auto levels = adiabatic_levels(p, 6);
    TruncatedSpectrum ex = solve_bogoliubov(p, 60, 10);
    std::vector<double> approx;
    for (const auto& lv : levels) {
        approx.push_back(lv.energy_minus);
        approx.push_back(lv.energy_plus);
    }
    std::sort(approx.begin(), approx.end());
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
        worst = std::max(worst, std::abs(approx[i] - ex.eigenvalues(i)));
    bool pass = worst < 1e-8;
    report(3, pass, "adiabatic levels track the exact spectrum at delta=1e-6 (lowest 10, 1e-8)",
           "worst dev " + num(worst));
    return pass;
}

// ---- 4: single-coupling reductions of the 3x3 closures ----

bool check_rwa_reductions() {
    double worst1 = 0.0, worst2 = 0.0;
    for (double delta : {0.5, 1.0, 1.5}) {
        ModelParams p{.delta = delta, .g1 = 0.3, .g2 = 0.0};
        for (int n = 0; n <= 20; ++n)
            worst1 = std::max(worst1, std::abs(rwa_energy(RwaBranch::Type1, n, p) -
                                               reference_pair_energy(PairKind::OnePhoton, n, 1, p)));
    }
    for (double delta : {0.5, 1.0}) {
        ModelParams p{.delta = delta, .g1 = 0.0, .g2 = 0.1};
        for (int n = 0; n <= 20; ++n)
            worst2 = std::max(worst2, std::abs(rwa_energy(RwaBranch::Type2, n + 1, p) -
                                               reference_pair_energy(PairKind::TwoPhoton, n, 2, p)));
    }
    bool pass = worst1 < 1e-10 && worst2 < 1e-10;
    report(4, pass,
           "block energies reduce to the one-/two-photon pair ladders at g2=0 / g1=0 "
           "(n<=20, 1e-10)",
           "one-photon dev " + num(worst1) + ", two-photon dev " + num(worst2));
    return pass;
}

// ---- 5: trigonometric cubic roots against a dense 3x3 oracle ----

bool check_cubic_oracle() {
    double worst_root = 0.0, worst_res = 0.0;
    int points = 0;
    for (double delta : {0.5, 1.0})
        for (double g1 : {0.1, 0.25, 0.5, 0.75, 1.25, 1.5})
            for (double g2 : {0.05, 0.1, 0.2})
                for (int n = 0; n <= 20; ++n)
                    for (RwaBranch br : {RwaBranch::Type1, RwaBranch::Type2}) {
                        ModelParams p{.delta = delta, .g1 = g1, .g2 = g2};
                        CubicCoefficients q = rwa_cubic(br, n, p);
                        std::array<double, 3> r = solve_cubic_trig(q);
                        Eigen::Matrix3d blk = rwa_block(br, n, p);
                        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(blk);
                        for (int i = 0; i < 3; ++i) {
                            worst_root = std::max(worst_root,
                                                  std::abs(r[i] - es.eigenvalues()(i)));
                            double res = ((r[i] + q.b) * r[i] + q.c) * r[i] + q.d;
                            worst_res = std::max(worst_res, std::abs(res));
                        }
                        ++points;
                    }
    bool pass = worst_root < 1e-10 && worst_res < 1e-8;
    report(5, pass,
           "cubic roots match dense 3x3 eigenvalues to 1e-10 over the coupling grid",
           "worst root dev " + num(worst_root) + ", worst residual " + num(worst_res) +
               " over " + std::to_string(points) + " blocks");
    return pass;
}

// ---- 6: overlap closed form against brute force + interior orthogonality ----

bool check_overlap_oracle() {
    double worst = 0.0;
    for (double g1 : {0.1, 0.5, 1.0})
        for (double g2 : {0.05, 0.1, 0.2}) {
            BogoliubovFrame fr = frame_from_params(g1, g2);
            OverlapMatrix d = overlap_matrix(fr, 21);
            auto [ua, ub] = family_transforms(fr, 120);
            for (int m = 0; m <= 20; ++m)
                for (int n = 0; n <= 20; ++n)
                    worst = std::max(worst,
                                     std::abs(d.entries(m, n) - ua.col(m).dot(ub.col(n))));
        }
    // interior block: the first third of a size-60 matrix resolves unit rows
    BogoliubovFrame fr = frame_from_params(0.5, 0.1);
    Eigen::MatrixXd d60 = overlap_matrix(fr, 60).entries;
    Eigen::MatrixXd gram = d60 * d60.transpose() - Eigen::MatrixXd::Identity(60, 60);
    double ortho = gram.topLeftCorner(20, 20).cwiseAbs().maxCoeff();
    bool pass = worst < 1e-8 && ortho < 1e-6;
    report(6, pass,
           "overlap matrix matches brute-force transforms (m,n<=20, 1e-8) and its "
           "interior block is orthogonal (1e-6)",
           "worst entry dev " + num(worst) + ", interior defect " + num(ortho));
    return pass;
}

// ---- 7: the two-frequency structure of the population signal ----

bool check_two_rabi_frequencies() {
    ModelParams p{.delta = 0.5, .g1 = 0.1, .g2 = 0.05};
    auto grid = time_grid(400.0, 0.05);
    Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(120);
    psi0(0) = 1.0;
    TimeSeries dense = exact_dynamics(rwa_hamiltonian(p, 60), psi0, grid);
    TimeSeries closed = rwa_population(0, p, grid);
    double dev = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        dev = std::max(dev, std::abs(dense.value[i] - closed.value[i]));

    RabiFrequencies rf = rabi_frequencies(0, p);
    FourierSpectrum sp = fourier_spectrum(dense);
    std::vector<SpectralPeak> peaks = sp.peaks;
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) {
                  return a.magnitude > b.magnitude;
              });
    bool two_lines = peaks.size() >= 2;
    double off1 = 1e9, off2 = 1e9;
    if (two_lines) {
        off1 = std::min(std::abs(peaks[0].frequency - rf.omega_1),
                        std::abs(peaks[1].frequency - rf.omega_1));
        off2 = std::min(std::abs(peaks[0].frequency - rf.omega_2),
                        std::abs(peaks[1].frequency - rf.omega_2));
    }

    // stronger one-photon coupling: the second tone drops below the peak floor
    ModelParams ps{.delta = 0.5, .g1 = 0.5, .g2 = 0.05};
    Eigen::VectorXd psi0s = Eigen::VectorXd::Zero(120);
    psi0s(0) = 1.0;
    FourierSpectrum sps =
        fourier_spectrum(exact_dynamics(rwa_hamiltonian(ps, 60), psi0s, grid));
    std::vector<SpectralPeak> strong = sps.peaks;
    std::sort(strong.begin(), strong.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) {
                  return a.magnitude > b.magnitude;
              });
    bool dominant = strong.size() == 1 ||
                    (strong.size() >= 2 && strong[0].magnitude > 5.0 * strong[1].magnitude);

    bool pass = dev < 0.05 && two_lines && off1 <= sp.bin_width && off2 <= sp.bin_width &&
                dominant;
    report(7, pass,
           "population beats at the two predicted frequencies (peaks within one bin, "
           "closed form within 0.05) and collapses to one dominant line at strong coupling",
           "max dev " + num(dev) + ", peak offsets " + num(off1) + "/" + num(off2) +
               " (bin " + num(sp.bin_width) + "), strong-coupling peaks " +
               std::to_string(strong.size()));
    return pass;
}

// ---- 8: vacuum Rabi splitting of the number-conserving model ----

bool check_splitting_rwa() {
    EmissionSpectrum g0 = emission_spectrum_rwa({.delta = 1.0, .g1 = 0.1, .g2 = 0.0});
    EmissionSpectrum lo = emission_spectrum_rwa({.delta = 1.0, .g1 = 0.1, .g2 = 0.05});
    EmissionSpectrum hi = emission_spectrum_rwa({.delta = 1.0, .g1 = 0.1, .g2 = 0.1});
    bool sym = g0.lines.size() == 2 && std::abs(g0.lines[0].weight - 0.5) < 1e-9 &&
               std::abs(g0.lines[1].weight - 0.5) < 1e-9;
    bool asym = lo.lines.size() >= 2 && hi.lines.size() >= 2 &&
                lo.lines[0].weight > lo.lines[1].weight &&
                hi.lines[0].weight > hi.lines[1].weight;
    double split0 = g0.lines[1].frequency - g0.lines[0].frequency;
    double split_lo = lo.lines[1].frequency - lo.lines[0].frequency;
    double split_hi = hi.lines[1].frequency - hi.lines[0].frequency;
    bool widening = split_lo > split0 && split_hi > split_lo;
    bool pass = sym && asym && widening;
    report(8, pass,
           "emission doublet: symmetric 0.5/0.5 at g2=0 (1e-9), asymmetric with the lower "
           "line dominant and the splitting widening as g2 grows",
           "splittings " + num(split0) + " -> " + num(split_lo) + " -> " + num(split_hi) +
               ", g2=0.1 weights " + num(hi.lines[0].weight) + "/" + num(hi.lines[1].weight));
    return pass;
}

// ---- 9: multi-peak emission of the full model ----

bool check_emission_full() {
    auto visible = [](const EmissionSpectrum& e) {
        int n = 0;
        for (const auto& ln : e.lines)
            if (ln.weight > 0.01) ++n;
        return n;
    };
    EmissionSpectrum e0 = emission_spectrum_full({.delta = 0.1, .g1 = 1.0, .g2 = 0.0}, 60);
    EmissionSpectrum e1 = emission_spectrum_full({.delta = 0.1, .g1 = 1.0, .g2 = 0.1}, 60);
    double total_dev = std::max(std::abs(e0.total_weight - 1.0),
                                std::abs(e1.total_weight - 1.0));
    bool pass = visible(e0) < visible(e1) && total_dev < 1e-3;
    report(9, pass,
           "two-photon coupling multiplies the visible emission peaks and the weights "
           "stay complete to 1e-3",
           std::to_string(visible(e0)) + " -> " + std::to_string(visible(e1)) +
               " visible peaks, total dev " + num(total_dev));
    return pass;
}

// ---- 10: CLI determinism ----

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cmd(const std::string& cmd) {
    int st = std::system(cmd.c_str());
    if (st < 0) return -1;
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

bool check_validate_deterministic(const std::string& qrabi) {
    Stopwatch clock;
    fs::path dir = fs::temp_directory_path() / ("qrabi_acceptance_" + std::to_string(getpid()));
    fs::create_directories(dir);
    const std::string q = "\"" + qrabi + "\"";

    int rc1 = run_cmd(q + " validate --out " + (dir / "v1.json").string());
    int rc2 = run_cmd(q + " validate --out " + (dir / "v2.json").string());
    bool validate_ok = rc1 == 0 && rc2 == 0;
    bool validate_same = slurp(dir / "v1.json") == slurp(dir / "v2.json") &&
                         !slurp(dir / "v1.json").empty();

    int rp1 = run_cmd(q + " reproduce --preset fig1 --out " + (dir / "r1").string() + " > " +
                      (dir / "list1.txt").string());
    int rp2 = run_cmd(q + " reproduce --preset fig1 --out " + (dir / "r2").string() + " > " +
                      (dir / "list2.txt").string());
    bool repro_ok = rp1 == 0 && rp2 == 0;
    int files = 0;
    bool repro_same = true;
    if (repro_ok) {
        for (const auto& entry : fs::directory_iterator(dir / "r1")) {
            ++files;
            fs::path twin = dir / "r2" / entry.path().filename();
            if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) repro_same = false;
        }
    }
    const double elapsed = clock.seconds();
    bool pass = validate_ok && validate_same && repro_ok && repro_same && files == 4 &&
                elapsed < 60.0;
    report(10, pass,
           "validate and reproduce runs are byte-identical across invocations "
           "(exit 0, under 60s)",
           "validate rc " + std::to_string(rc1) + "/" + std::to_string(rc2) +
               " identical " + (validate_same ? "yes" : "no") + ", reproduce files " +
               std::to_string(files) + " identical " + (repro_same ? "yes" : "no") + ", " +
               num(elapsed) + "s");
    fs::remove_all(dir);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <check-id 1..10> <qrabi-binary>\n");
        return 2;
    }
    const int id = std::atoi(argv[1]);
    const std::string qrabi = argv[2];
    try {
        switch (id) {
            case 1: return check_cross_solver() ? 0 : 1;
            case 2: return check_delta0_closed_form() ? 0 : 1;
            case 3: return check_adiabatic_limit() ? 0 : 1;
            case 4: return check_rwa_reductions() ? 0 : 1;
            case 5: return check_cubic_oracle() ? 0 : 1;
            case 6: return check_overlap_oracle() ? 0 : 1;
            case 7: return check_two_rabi_frequencies() ? 0 : 1;
            case 8: return check_splitting_rwa() ? 0 : 1;
            case 9: return check_emission_full() ? 0 : 1;
            case 10: return check_validate_deterministic(qrabi) ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::printf("[FAIL] criterion %d: unexpected exception: %s\n", id, ex.what());
        return 1;
    }
    std::fprintf(stderr, "unknown check id: %s\n", argv[1]);
    return 2;
}
