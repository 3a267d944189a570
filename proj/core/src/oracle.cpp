#include "adqs/oracle.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "adqs/errors.hpp"
#include "adqs/integrator.hpp"

namespace adqs {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using namespace std::complex_literals;

struct Basis {
    Vector psi;
    Vector psi_bar;
    Vector mu;
    Matrix complement;  // projector onto the orthogonal complement of span{psi, mu}
};

Basis make_basis(std::int64_t n, std::int64_t marked) {
    const auto dim = static_cast<Eigen::Index>(n);
    const double nd = static_cast<double>(n);
    Basis b;
    b.psi = Vector::Constant(dim, 1.0 / std::sqrt(nd));
    b.mu = Vector::Zero(dim);
    b.mu(static_cast<Eigen::Index>(marked)) = 1.0;
    b.psi_bar = (std::sqrt(nd) * b.mu - b.psi) / std::sqrt(nd - 1.0);
    b.complement = Matrix::Identity(dim, dim) - b.psi * b.psi.adjoint() - b.psi_bar * b.psi_bar.adjoint();
    return b;
}

void require_oracle_size(std::int64_t n, std::int64_t marked) {
    if (n < 2 || n > kMaxOracleItems) {
        throw DomainError(fmt::format("full-space simulation needs 2 <= n <= {}, got {}", kMaxOracleItems, n));
    }
    if (marked < 0 || marked >= n) throw DomainError(fmt::format("marked index {} out of range", marked));
}

class FullField {
public:
    FullField(const ModelParams& params, double run_time, const Basis& basis)
        : params_(params), run_time_(run_time), basis_(basis) {}

    Matrix operator()(double s, const Matrix& rho) const {
        const std::int64_t n = params_.n_items;
        const double x = params_.schedule == Schedule::Local ? local_schedule(s, n) : s;

        const Matrix hamiltonian = -(1.0 - x) * (basis_.psi * basis_.psi.adjoint()) -
                                   x * (basis_.mu * basis_.mu.adjoint());

        const Eigen::Vector2d g = ground_eigenvector(x, n);
        const Eigen::Vector2d e = excited_eigenvector(x, n);
        const Vector ground = g(0) * basis_.psi + g(1) * basis_.psi_bar;
        const Vector excited = e(0) * basis_.psi + e(1) * basis_.psi_bar;
        const double half_gamma = 0.5 * decoherence_gamma(x, n, params_.sigma);
        const Matrix w = half_gamma * (excited * excited.adjoint() - ground * ground.adjoint());

        const Matrix h_comm = hamiltonian * rho - rho * hamiltonian;
        const Matrix w_comm = w * rho - rho * w;
        const Matrix w_double = w * w_comm - w_comm * w;
        return (-1.0i * run_time_ * params_.coeff_a) * h_comm - (run_time_ * params_.coeff_b) * w_double;
    }

private:
    ModelParams params_;
    double run_time_;
    const Basis& basis_;
};

FullSample measure(double s, const Matrix& rho, const Basis& basis, std::int64_t marked) {
    FullSample out;
    const auto m = static_cast<Eigen::Index>(marked);
    out.s = s;
    out.marked_population = rho(m, m).real();
    out.leakage = (basis.complement * rho).trace().real();
    out.trace_error = std::abs(rho.trace() - 1.0);
    out.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const Matrix hermitian = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    return out;
}

}  // namespace

FullState initial_full_state(std::int64_t n, std::int64_t marked_index) {
    require_oracle_size(n, marked_index);
    const Basis basis = make_basis(n, marked_index);
    return FullState{basis.psi * basis.psi.adjoint(), marked_index};
}

FullEvolution evolve_full(const ModelParams& params, double run_time, const SimOptions& opts,
                          std::int64_t marked_index) {
    params.validate();
    opts.validate();
    require_oracle_size(params.n_items, marked_index);
    if (!(run_time >= 0.0) || !std::isfinite(run_time)) {
        throw DomainError(fmt::format("run time must be finite and >= 0, got {}", run_time));
    }

    const Basis basis = make_basis(params.n_items, marked_index);
    const FullField field(params, run_time, basis);

    StepControl ctl;
    ctl.rel_tol = opts.rel_tol;
    ctl.abs_tol = opts.abs_tol;
    ctl.max_steps = opts.max_steps;
    ctl.initial_step = 1e-4 / (1.0 + run_time);
    ctl.max_step = opts.step_ceiling_factor / (1.0 + run_time * (params.coeff_a + params.coeff_b));

    std::vector<double> grid(static_cast<std::size_t>(opts.sample_count));
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k) / static_cast<double>(grid.size() - 1);
    grid.back() = 1.0;

    FullEvolution out;
    out.samples.resize(grid.size());
    Matrix rho = basis.psi * basis.psi.adjoint();
    integrate_dopri5(field, rho, 0.0, 1.0, ctl, std::span<const double>(grid),
                     [&](std::size_t i, double s, const Matrix& state) {
                         out.samples[i] = measure(s, state, basis, marked_index);
                     });
    out.final_state = FullState{rho, marked_index};
    return out;
}

double reduction_residual(const FullState& state) {
    const auto n = static_cast<std::int64_t>(state.rho.rows());
    require_oracle_size(n, state.marked_index);
    const Basis basis = make_basis(n, state.marked_index);
    return (basis.complement * state.rho * basis.complement).trace().real();
}

}  // namespace adqs
