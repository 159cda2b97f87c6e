#pragma once

#include <cstddef>
#include <vector>

namespace qpm {

// Pump spectral amplitude alpha(omega_s + omega_i), peak-normalized to 1.
//
//   gaussian:     exp(-(w - w_p0)^2 / sigma_p^2)
//   rectangular:  1 on the closed interval [w_p0 +- width/2], 0 outside
//   tabulated:    linear interpolation of (frequency, amplitude) samples,
//                 0 outside the table; amplitudes scaled so max = 1
class PumpEnvelope {
  public:
    enum class Shape { Gaussian, Rectangular, Tabulated };

    static PumpEnvelope gaussian(double omega_p0, double sigma_p);
    static PumpEnvelope rectangular(double omega_p0, double full_width);
    static PumpEnvelope tabulated(std::vector<double> omegas, std::vector<double> amplitudes);

    Shape shape() const { return shape_; }
    double center() const { return omega_p0_; }
    double sigma() const { return sigma_; }
    double width() const { return width_; }

    double amplitude(double omega_sum) const;

    // Vectorized fill out[i] = amplitude(omega_sum[i]); the Gaussian path
    // goes through the kernel backend.
    void amplitudes(const double* omega_sum, double* out, std::size_t n) const;

  private:
    PumpEnvelope() = default;
    Shape shape_ = Shape::Gaussian;
    double omega_p0_ = 0.0;
    double sigma_ = 0.0;
    double width_ = 0.0;
    std::vector<double> tab_omega_;
    std::vector<double> tab_amp_;
};

double pump_amplitude(const PumpEnvelope& envelope, double omega_sum);

}  // namespace qpm
