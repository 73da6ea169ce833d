// dimer.hpp — coupled heterodimer model: site parameters, exciton basis,
// transition dipoles, and disordered-ensemble sampling.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace xqpt {

// Single-exciton eigenstate labels. alpha is the upper exciton.
enum class Exciton : int { alpha = 0, beta = 1 };

inline constexpr char exciton_char(Exciton e) noexcept {
    return e == Exciton::alpha ? 'a' : 'b';
}

struct DimerParams {
    double omega_a_cm{0.0};   // site energy of chromophore A (cm^-1)
    double omega_b_cm{0.0};   // site energy of chromophore B (cm^-1)
    double coupling_cm{0.0};  // Coulombic coupling J (cm^-1)
    Eigen::Vector3d dipole_a{Eigen::Vector3d::Zero()};  // site-A transition dipole
    Eigen::Vector3d dipole_b{Eigen::Vector3d::Zero()};  // site-B transition dipole

    // Standard parameterization: mu_A = d_a * z, mu_B in the xz-plane at
    // angle phi from z with |mu_B| = d_a * ratio.
    static DimerParams from_geometry(double omega_a_cm, double omega_b_cm,
                                     double coupling_cm, double d_a,
                                     double d_b_over_d_a, double phi_rad);

    // Throws std::invalid_argument on zero dipoles.
    void validate() const;
};

struct ExcitonBasis {
    double omega_avg_cm{0.0};    // mean site energy
    double delta_cm{0.0};        // half site-energy difference
    double theta_rad{0.0};       // mixing angle, theta = atan2(J, delta)/2
    double omega_alpha_cm{0.0};  // upper exciton energy
    double omega_beta_cm{0.0};   // lower exciton energy
    double omega_f_cm{0.0};      // biexciton energy = omega_alpha + omega_beta
    Eigen::Vector3d mu_ag{Eigen::Vector3d::Zero()};  // g -> alpha dipole
    Eigen::Vector3d mu_bg{Eigen::Vector3d::Zero()};  // g -> beta dipole
    Eigen::Vector3d mu_fa{Eigen::Vector3d::Zero()};  // alpha -> f dipole
    Eigen::Vector3d mu_fb{Eigen::Vector3d::Zero()};  // beta -> f dipole

    // Exciton splitting omega_alpha - omega_beta (>= 0 by construction)
    double omega_alpha_beta_cm() const noexcept { return omega_alpha_cm - omega_beta_cm; }

    // Transition frequency from the ground state for exciton e
    double omega_eg_cm(Exciton e) const noexcept {
        return e == Exciton::alpha ? omega_alpha_cm : omega_beta_cm;
    }
    // Transition frequency exciton e -> biexciton (omega_f - omega_e)
    double omega_fe_cm(Exciton e) const noexcept {
        return omega_f_cm - omega_eg_cm(e);
    }
    const Eigen::Vector3d& mu_eg(Exciton e) const noexcept {
        return e == Exciton::alpha ? mu_ag : mu_bg;
    }
    const Eigen::Vector3d& mu_fe(Exciton e) const noexcept {
        return e == Exciton::alpha ? mu_fa : mu_fb;
    }
};

// Diagonalize the one-exciton block and rotate the site dipoles.
// Ground-state energy is fixed at 0, so omega_pg == omega_p.
ExcitonBasis exciton_transform(const DimerParams& params);

// Draw n copies of `params` with omega_a/omega_b sampled independently from
// Gaussians of width sigma_inh_cm around the nominal values. Deterministic
// for a given seed; coupling and dipoles are untouched.
std::vector<DimerParams> sample_disordered_ensemble(const DimerParams& params,
                                                    double sigma_inh_cm,
                                                    std::size_t n,
                                                    std::uint64_t seed);

} // namespace xqpt
