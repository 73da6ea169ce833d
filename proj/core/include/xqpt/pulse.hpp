// pulse.hpp — Gaussian pulse envelope coefficients, the two-waveform pulse
// toolbox, and the finite-pulse-overlap correction factor.

#pragma once

#include "xqpt/dimer.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>

namespace xqpt {

// Which waveform of the two-color toolbox a pulse uses.
enum class Waveform : int { plus = 0, minus = 1 };

inline constexpr char waveform_char(Waveform w) noexcept {
    return w == Waveform::plus ? '+' : '-';
}

struct PulseSpec {
    double carrier_cm{0.0};  // carrier frequency omega_i (cm^-1)
    double sigma_fs{0.0};    // Gaussian amplitude width (fs)
    double lambda{1.0};      // field-strength scale
    Eigen::Vector3d polarization{Eigen::Vector3d::UnitZ()};  // unit vector

    void validate() const;
};

struct PulseToolbox {
    double omega_plus_cm{0.0};   // high carrier, near the alpha-g transition
    double omega_minus_cm{0.0};  // low carrier, near the beta-g transition
    double sigma_fs{0.0};        // shared envelope width (fs)
    // Optional (C', C'') override in units of lambda*sigma*sqrt(2*pi).
    // When set, C' couples plus<->alpha and minus<->beta, C'' the cross terms.
    std::optional<std::pair<std::complex<double>, std::complex<double>>> mdc_override;

    void validate() const;

    double carrier_cm(Waveform w) const noexcept {
        return w == Waveform::plus ? omega_plus_cm : omega_minus_cm;
    }
};

// Frequency-selectivity coefficient of one pulse at transition omega_pg:
// C = -(lambda/i) * sqrt(2*pi*sigma^2) * exp(-sigma^2 (omega_pg - omega_i)^2 / 2),
// purely imaginary with positive imaginary part for lambda > 0.
std::complex<double> coefficient(const PulseSpec& pulse, double omega_pg_cm);

// The four toolbox coefficients C_{omega_w}^{exciton}.
struct CoefficientTable {
    std::array<std::array<std::complex<double>, 2>, 2> c{};  // [waveform][exciton]

    const std::complex<double>& at(Waveform w, Exciton e) const noexcept {
        return c[static_cast<int>(w)][static_cast<int>(e)];
    }
    std::complex<double>& at(Waveform w, Exciton e) noexcept {
        return c[static_cast<int>(w)][static_cast<int>(e)];
    }
};

// Evaluate the table either directly from the Gaussian coefficients or from
// the (C', C'') override when present.
CoefficientTable toolbox_coefficients(const PulseToolbox& toolbox,
                                      const ExcitonBasis& basis);

// Finite pulse-overlap correction replacing C^r C^s for echo delay t:
//   1/2 * [1 + erf(t/(2 sigma) + i (omega3 - omega_rg + omega4 - omega_sg) sigma / 2)].
// For |imaginary part of the argument| > 25 the erf would overflow; the
// well-separated limit 1 is returned with a warning on stderr.
std::complex<double> overlap_factor(double t_fs, double sigma_fs,
                                    double omega3_cm, double omega4_cm,
                                    double omega_rg_cm, double omega_sg_cm);

} // namespace xqpt
