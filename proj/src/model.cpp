#include "qrabi/model.hpp"

#include <cmath>
#include <string>

#include "qrabi/errors.hpp"

namespace qrabi {

ModelParams checked(const ModelParams& p) {
    if (!std::isfinite(p.delta) || !std::isfinite(p.g1) || !std::isfinite(p.g2) ||
        !std::isfinite(p.epsilon)) {
        throw param_error("non-finite model parameter");
    }
    if (p.delta < 0.0) {
        throw param_error("delta must be >= 0, got " + std::to_string(p.delta));
    }
    if (p.g2 < 0.0) {
        throw param_error("g2 must be >= 0, got " + std::to_string(p.g2));
    }
    if (p.g2 >= collapse_g2) {
        throw collapse_error(p.g2);
    }
    ModelParams q = p;
    q.g1 = std::abs(p.g1);  // sigma_x sign symmetry; spectrum and dynamics unchanged
    return q;
}

namespace {

void check_n_tr(int n_tr) {
    if (n_tr < 4) {
        throw param_error("n_tr must be >= 4, got " + std::to_string(n_tr));
    }
}

}  // namespace

Eigen::MatrixXd annihilation_op(int n_tr) {
    check_n_tr(n_tr);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_tr, n_tr);
    for (int k = 1; k < n_tr; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

Eigen::VectorXd sigma_z_diagonal(int n_tr) {
    check_n_tr(n_tr);
    Eigen::VectorXd d(2 * n_tr);
    for (int i = 0; i < 2 * n_tr; ++i) {
        d(i) = (i % 2 == 0) ? 1.0 : -1.0;
    }
    return d;
}

Eigen::MatrixXd lab_hamiltonian(const ModelParams& p_in, int n_tr) {
    const ModelParams p = checked(p_in);
    check_n_tr(n_tr);
    const Eigen::MatrixXd a = annihilation_op(n_tr);
    const Eigen::MatrixXd ad = a.transpose();
    const Eigen::MatrixXd num = ad * a;
    const Eigen::MatrixXd coup =
        p.g1 * (ad + a) + p.g2 * (ad * ad + a * a) -
        (p.epsilon / 2.0) * Eigen::MatrixXd::Identity(n_tr, n_tr);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n_tr, 2 * n_tr);
    for (int s = 0; s < 2; ++s) {
        const double sz = (s == 0) ? 1.0 : -1.0;
        for (int m = 0; m < n_tr; ++m) {
            for (int n = 0; n < n_tr; ++n) {
                h(2 * m + s, 2 * n + s) = num(m, n);
            }
            h(2 * m + s, 2 * m + s) += (p.delta / 2.0) * sz;
        }
    }
    // sigma_x sector: couples spin up <-> down at equal weight
    for (int m = 0; m < n_tr; ++m) {
        for (int n = 0; n < n_tr; ++n) {
            h(2 * m, 2 * n + 1) = coup(m, n);
            h(2 * m + 1, 2 * n) = coup(m, n);
        }
    }
    return h;
}

Eigen::MatrixXd rotated_hamiltonian(const ModelParams& p_in, int n_tr) {
    const ModelParams p = checked(p_in);
    check_n_tr(n_tr);
    const Eigen::MatrixXd a = annihilation_op(n_tr);
    const Eigen::MatrixXd ad = a.transpose();
    const Eigen::MatrixXd num = ad * a;
    const Eigen::MatrixXd coup =
        p.g1 * (ad + a) + p.g2 * (ad * ad + a * a) -
        (p.epsilon / 2.0) * Eigen::MatrixXd::Identity(n_tr, n_tr);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n_tr, 2 * n_tr);
    for (int m = 0; m < n_tr; ++m) {
        for (int n = 0; n < n_tr; ++n) {
            h(2 * m, 2 * n) = num(m, n) + coup(m, n);
            h(2 * m + 1, 2 * n + 1) = num(m, n) - coup(m, n);
        }
        h(2 * m, 2 * m + 1) = -p.delta / 2.0;
        h(2 * m + 1, 2 * m) = -p.delta / 2.0;
    }
    return h;
}

Eigen::MatrixXd rwa_hamiltonian(const ModelParams& p_in, int n_tr) {
    const ModelParams p = checked(p_in);
    check_n_tr(n_tr);
    if (p.epsilon != 0.0) {
        throw param_error("the number-conserving model does not support a bias term");
    }
    const Eigen::MatrixXd a = annihilation_op(n_tr);
    const Eigen::MatrixXd ad = a.transpose();
    const Eigen::MatrixXd num = ad * a;
    // lowering sector <down| ... |up>: photon raising only
    const Eigen::MatrixXd low = p.g1 * ad + p.g2 * (ad * ad);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n_tr, 2 * n_tr);
    for (int s = 0; s < 2; ++s) {
        const double sz = (s == 0) ? 1.0 : -1.0;
        for (int m = 0; m < n_tr; ++m) {
            for (int n = 0; n < n_tr; ++n) {
                h(2 * m + s, 2 * n + s) = num(m, n);
            }
            h(2 * m + s, 2 * m + s) += (p.delta / 2.0) * sz;
        }
    }
    for (int m = 0; m < n_tr; ++m) {
        for (int n = 0; n < n_tr; ++n) {
            h(2 * m + 1, 2 * n) = low(m, n);
            h(2 * m, 2 * n + 1) = low(n, m);
        }
    }
    return h;
}

}  // namespace qrabi
