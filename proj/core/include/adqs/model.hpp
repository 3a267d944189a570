#pragma once

// Closed-form quantities of the adiabatic search problem restricted to the
// two-dimensional subspace spanned by the uniform superposition |psi> and the
// marked item |mu>. Energies are in units of the initial gap, the fixed basis
// is {|psi>, |psi_bar>} and Bloch vectors are taken with |psi> at the north pole.

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace adqs {

enum class Schedule { Global, Local };

std::string_view to_string(Schedule schedule);
Schedule parse_schedule(std::string_view text);

using BlochVector = Eigen::Vector3d;

struct Coefficients {
    double a = 1.0;  // Hamiltonian weight
    double b = 0.0;  // decoherence weight
};

/// Full problem instance.
struct ModelParams {
    std::int64_t n_items = 2;
    double sigma = 1.0;  // Gamma(s) = gap(s)^sigma
    double coeff_a = 1.0;
    double coeff_b = 0.0;
    Schedule schedule = Schedule::Global;

    /// Builds an instance with (A, B) = (cos(omega pi/2), sin(omega pi/2)).
    static ModelParams from_omega(std::int64_t n_items, double omega, double sigma,
                                  Schedule schedule);

    /// Degree of openness recovered from (A, B); 0 closed, 1 wide-open.
    double omega() const;

    bool wide_open() const { return coeff_a == 0.0; }
    bool closed() const { return coeff_b == 0.0; }

    /// Throws DomainError if any invariant is violated.
    void validate() const;
};

struct Spectrum {
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
    double d_helper = 0.0;
};

/// Delta(s) = sqrt((1 + (n-1)(2s-1)^2)/n).
double gap(double s, std::int64_t n);

Spectrum spectrum(double s, std::int64_t n);

/// Bloch vector of the instantaneous ground state; unit norm, y component zero.
BlochVector ground_bloch(double s, std::int64_t n);

/// |Z_01(s)| = sqrt(n-1) / (1 + (n-1)(2s-1)^2).
double z_coupling(double s, std::int64_t n);

/// Gamma(s) = gap(s)^sigma.
double decoherence_gamma(double s, std::int64_t n, double sigma);

/// The 2x2 restriction of H(s) in the {|psi>, |psi_bar>} basis.
Eigen::Matrix2d hamiltonian_matrix(double s, std::int64_t n);

/// Real eigenvectors with a non-negative first component on the ground state;
/// the excited vector is (e0_2, -e0_1).
Eigen::Vector2d ground_eigenvector(double s, std::int64_t n);
Eigen::Vector2d excited_eigenvector(double s, std::int64_t n);

/// L = n arctan(sqrt(n-1)) / sqrt(n-1) = int_0^1 gap^-2.
double schedule_norm(std::int64_t n);

/// f^-1(r) = (1/L) int_0^r gap^-2, evaluated in closed form.
double local_schedule_inverse(double r, std::int64_t n);

/// d f^-1 / dr = 1 / (L gap(r)^2).
double local_schedule_inverse_derivative(double r, std::int64_t n);

/// f(s), the exact inverse of local_schedule_inverse.
double local_schedule(double s, std::int64_t n);

Coefficients coefficients(double omega);

/// Global: Q(s) = int_0^s Gamma^2.  Local: Q~(r) = (1/L) int_0^r Gamma^2 / gap^2.
double quadrature_q(double s, std::int64_t n, double sigma, Schedule schedule);

/// R(s) = int_0^s gap.
double quadrature_r(double s, std::int64_t n);

/// kappa(x) = 1/2 + x / (2 sqrt(n-1)), the map from x = sqrt(n-1)(2s-1) back to s.
double kappa(double x, std::int64_t n);

}  // namespace adqs
