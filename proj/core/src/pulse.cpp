#include "xqpt/pulse.hpp"

#include "xqpt/complex_erf.hpp"
#include "xqpt/units.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace xqpt {

void PulseSpec::validate() const {
    if (sigma_fs <= 0.0) {
        throw std::invalid_argument("PulseSpec: sigma must be > 0");
    }
    if (std::abs(polarization.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("PulseSpec: polarization must be a unit vector");
    }
}

void PulseToolbox::validate() const {
    if (sigma_fs <= 0.0) {
        throw std::invalid_argument("PulseToolbox: sigma must be > 0");
    }
    if (!(omega_plus_cm > omega_minus_cm)) {
        throw std::invalid_argument("PulseToolbox: omega_plus must exceed omega_minus");
    }
    if (mdc_override) {
        if (!(std::abs(mdc_override->first) > std::abs(mdc_override->second))) {
            throw std::invalid_argument("PulseToolbox: override requires |C'| > |C''|");
        }
    }
}

std::complex<double> coefficient(const PulseSpec& pulse, double omega_pg_cm) {
    pulse.validate();
    const double detuning = units::cm_to_rad_fs(omega_pg_cm - pulse.carrier_cm);
    const double envelope = std::sqrt(2.0 * std::numbers::pi) * pulse.sigma_fs *
                            std::exp(-0.5 * pulse.sigma_fs * pulse.sigma_fs * detuning * detuning);
    // -(lambda/i) == i*lambda
    return {0.0, pulse.lambda * envelope};
}

CoefficientTable toolbox_coefficients(const PulseToolbox& toolbox,
                                      const ExcitonBasis& basis) {
    toolbox.validate();
    CoefficientTable table;
    if (toolbox.mdc_override) {
        const double scale = std::sqrt(2.0 * std::numbers::pi) * toolbox.sigma_fs;
        const auto [c_prime, c_second] = *toolbox.mdc_override;
        table.at(Waveform::plus, Exciton::alpha) = c_prime * scale;
        table.at(Waveform::minus, Exciton::beta) = c_prime * scale;
        table.at(Waveform::plus, Exciton::beta) = c_second * scale;
        table.at(Waveform::minus, Exciton::alpha) = c_second * scale;
        return table;
    }
    for (Waveform w : {Waveform::plus, Waveform::minus}) {
        PulseSpec pulse{toolbox.carrier_cm(w), toolbox.sigma_fs, 1.0,
                        Eigen::Vector3d::UnitZ()};
        for (Exciton e : {Exciton::alpha, Exciton::beta}) {
            table.at(w, e) = coefficient(pulse, basis.omega_eg_cm(e));
        }
    }
    return table;
}

std::complex<double> overlap_factor(double t_fs, double sigma_fs,
                                    double omega3_cm, double omega4_cm,
                                    double omega_rg_cm, double omega_sg_cm) {
    if (sigma_fs <= 0.0) {
        throw std::invalid_argument("overlap_factor: sigma must be > 0");
    }
    const double detuning_rad_fs =
        units::cm_to_rad_fs(omega3_cm - omega_rg_cm + omega4_cm - omega_sg_cm);
    const double re = t_fs / (2.0 * sigma_fs);
    const double im = 0.5 * detuning_rad_fs * sigma_fs;
    if (std::abs(im) > 25.0) {
        std::cerr << "xqpt: overlap_factor argument Im = " << im
                  << " exceeds the overflow guard; returning the well-separated limit\n";
        return {1.0, 0.0};
    }
    return 0.5 * (1.0 + erf_complex({re, im}));
}

} // namespace xqpt
