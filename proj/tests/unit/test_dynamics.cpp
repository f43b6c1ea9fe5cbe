#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qrabi/dynamics.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"

using namespace qrabi;

namespace {

Eigen::VectorXd up_vacuum(int n_tr) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n_tr);
    v(0) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("time grid construction") {
    auto g = time_grid(1.0, 0.25);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK_THROWS_AS(time_grid(-1.0, 0.1), param_error);
    CHECK_THROWS_AS(time_grid(1.0, 0.0), param_error);
    CHECK_THROWS_AS(time_grid(1.0, -0.1), param_error);
}

TEST_CASE("exact dynamics reproduces the two-level cosine at g2=0") {
    // number-conserving, one excitation: <sigma_z> = cos(2 g1 t) exactly
    ModelParams p{.delta = 1.0, .g1 = 0.1, .g2 = 0.0};
    auto grid = time_grid(50.0, 0.1);
    TimeSeries s = exact_dynamics(rwa_hamiltonian(p, 30), up_vacuum(30), grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(s.value[i] - std::cos(0.2 * grid[i])) < 1e-9);
}

TEST_CASE("exact dynamics matches a step-by-step matrix-exponential propagator") {
    ModelParams p{.delta = 0.5, .g1 = 0.3, .g2 = 0.1};
    Eigen::MatrixXd h = lab_hamiltonian(p, 16);
    auto grid = time_grid(5.0, 0.05);
    TimeSeries s = exact_dynamics(h, up_vacuum(16), grid);

    Eigen::MatrixXcd u = (std::complex<double>(0.0, -0.05) * h.cast<std::complex<double>>()).exp();
    Eigen::VectorXcd psi = up_vacuum(16).cast<std::complex<double>>();
    Eigen::VectorXd sz(2 * 16);
    for (int i = 0; i < 16; ++i) {
        sz(2 * i) = 1.0;
        sz(2 * i + 1) = -1.0;
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        double expect = (sz.array() * psi.array().abs2()).sum();
        CHECK(std::abs(s.value[i] - expect) < 1e-8);
        psi = u * psi;
    }
}

TEST_CASE("exact dynamics input guards") {
    auto grid = time_grid(1.0, 0.1);
    Eigen::MatrixXd odd = Eigen::MatrixXd::Zero(3, 3);
    CHECK_THROWS_AS(exact_dynamics(odd, Eigen::VectorXd::Zero(3), grid), param_error);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
    Eigen::VectorXd unnorm = Eigen::VectorXd::Constant(4, 0.3);
    CHECK_THROWS_AS(exact_dynamics(h, unnorm, grid), param_error);
    std::vector<double> ragged{0.0, 0.1, 0.3};
    CHECK_THROWS_AS(exact_dynamics(h, up_vacuum(2), ragged), param_error);
}

TEST_CASE("two-frequency closed form starts at +1 and tracks the dense model") {
    ModelParams p{.delta = 0.5, .g1 = 0.1, .g2 = 0.05};
    auto grid = time_grid(200.0, 0.05);
    TimeSeries closed = rwa_population(0, p, grid);
    TimeSeries dense = exact_dynamics(rwa_hamiltonian(p, 60), up_vacuum(60), grid);
    CHECK(std::abs(closed.value[0] - 1.0) < 5e-4);
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(closed.value[i] - dense.value[i]));
    CHECK(worst < 0.05);
}

TEST_CASE("two-frequency closed form is exact at g2=0") {
    ModelParams p{.delta = 1.0, .g1 = 0.1, .g2 = 0.0};
    auto grid = time_grid(100.0, 0.1);
    TimeSeries closed = rwa_population(0, p, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(closed.value[i] - std::cos(0.2 * grid[i])) < 1e-10);
}

TEST_CASE("two-frequency closed form rejects badly non-orthogonal blocks") {
    // at delta=1, g2=0.1 the three overlapping blocks overcount the initial
    // state by ~5%, past the documented 2% consistency gate
    auto grid = time_grid(10.0, 0.1);
    CHECK_THROWS_AS(rwa_population(0, {.delta = 1.0, .g1 = 0.1, .g2 = 0.1}, grid),
                    inconsistency_error);
}

TEST_CASE("beat frequencies and the splitting example") {
    RabiFrequencies f = rabi_frequencies(0, {.delta = 1.0, .g1 = 0.1, .g2 = 0.1});
    CHECK(f.omega_1 == doctest::Approx(0.209419).epsilon(1e-4));
    CHECK_FALSE(f.selection_warning);
    // g2=0: plain vacuum Rabi frequency 2 g1
    RabiFrequencies f0 = rabi_frequencies(0, {.delta = 1.0, .g1 = 0.1, .g2 = 0.0});
    CHECK(f0.omega_1 == doctest::Approx(0.2).epsilon(1e-12));
    // pure two-photon coupling at delta=2: the cross-check fires and the
    // primary beat sits at the mode frequency rather than the doublet splitting
    RabiFrequencies f2 = rabi_frequencies(0, {.delta = 2.0, .g1 = 0.0, .g2 = 0.1});
    CHECK(f2.selection_warning);
    CHECK(f2.omega_1 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fourier spectrum locates synthetic tones") {
    TimeSeries s;
    s.dt = 0.05;
    for (int i = 0; i <= 8000; ++i) {
        double t = i * s.dt;
        s.t.push_back(t);
        s.value.push_back(std::cos(0.3 * t) + 0.5 * std::cos(0.9 * t) + 0.2);
    }
    FourierSpectrum sp = fourier_spectrum(s);
    REQUIRE(sp.peaks.size() >= 2);
    double d03 = 1e9, d09 = 1e9;
    for (const auto& pk : sp.peaks) {
        d03 = std::min(d03, std::abs(pk.frequency - 0.3));
        d09 = std::min(d09, std::abs(pk.frequency - 0.9));
    }
    CHECK(d03 <= sp.bin_width);
    CHECK(d09 <= sp.bin_width);

    TimeSeries tiny;
    tiny.dt = 0.1;
    tiny.t = {0.0, 0.1};
    tiny.value = {1.0, 0.0};
    CHECK_THROWS_AS(fourier_spectrum(tiny), param_error);
}

TEST_CASE("emission lines of the number-conserving model at g2=0") {
    EmissionSpectrum es = emission_spectrum_rwa({.delta = 1.0, .g1 = 0.1, .g2 = 0.0});
    REQUIRE(es.lines.size() == 2);  // the third block carries no weight here
    CHECK(es.lines[0].frequency == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(es.lines[1].frequency == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(es.lines[0].weight == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(es.lines[1].weight == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(es.total_weight == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(es.cutoff_warning);
}

TEST_CASE("two-photon coupling shifts and reweights the emission doublet") {
    EmissionSpectrum lo = emission_spectrum_rwa({.delta = 1.0, .g1 = 0.1, .g2 = 0.05});
    EmissionSpectrum hi = emission_spectrum_rwa({.delta = 1.0, .g1 = 0.1, .g2 = 0.1});
    REQUIRE(lo.lines.size() == 3);
    REQUIRE(hi.lines.size() == 3);
    // the lower line gains weight; the upper one is pinned at 1/2 by symmetry
    CHECK(hi.lines[0].weight > hi.lines[1].weight);
    CHECK(hi.lines[1].weight == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(hi.lines[0].weight == doctest::Approx(0.540105).epsilon(1e-5));
    // and the doublet splitting grows with g2
    double split_lo = lo.lines[1].frequency - lo.lines[0].frequency;
    double split_hi = hi.lines[1].frequency - hi.lines[0].frequency;
    CHECK(split_lo > 0.2);
    CHECK(split_hi > split_lo);
    CHECK(split_hi == doctest::Approx(0.209419).epsilon(1e-4));
}

TEST_CASE("full-model emission spectrum sums to one and sharpens at g2=0") {
    ModelParams p{.delta = 0.1, .g1 = 1.0, .g2 = 0.1};
    EmissionSpectrum es = emission_spectrum_full(p, 60);
    CHECK(std::abs(es.total_weight - 1.0) < 1e-3);
    CHECK_FALSE(es.cutoff_warning);
    for (size_t i = 1; i < es.lines.size(); ++i)
        CHECK(es.lines[i].frequency >= es.lines[i - 1].frequency);

    EmissionSpectrum es0 = emission_spectrum_full({.delta = 0.1, .g1 = 1.0, .g2 = 0.0}, 60);
    auto visible = [](const EmissionSpectrum& e) {
        int n = 0;
        for (const auto& ln : e.lines)
            if (ln.weight > 0.01) ++n;
        return n;
    };
    CHECK(visible(es0) < visible(es));
    CHECK_THROWS_AS(emission_spectrum_full({.delta = 0.1, .epsilon = 0.2}, 60), param_error);
    CHECK_THROWS_AS(emission_spectrum_full(p, 0), param_error);
}
