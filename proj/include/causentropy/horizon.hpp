#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "causentropy/constants.hpp"
#include "causentropy/qmatrix.hpp"

namespace causentropy {

struct GridAxis {
    double origin = 0.0;
    double spacing = 1.0;
    long count = 2;

    double upper() const { return origin + spacing * static_cast<double>(count - 1); }
    double coordinate(long i) const { return origin + spacing * static_cast<double>(i); }
};

/// Real samples on a uniform tensor-product grid, row-major with the last
/// axis varying fastest.
class SampledField {
public:
    SampledField(std::vector<GridAxis> axes, std::vector<double> values);

    /// Samples f at every grid point.
    static SampledField from_function(std::vector<GridAxis> axes,
                                      const std::function<double(std::span<const double>)>& f);

    const std::vector<GridAxis>& axes() const noexcept { return axes_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t rank() const noexcept { return axes_.size(); }

    /// Linear combination a*this + b*other on the same grid.
    SampledField combine(double a, const SampledField& other, double b) const;

private:
    std::vector<GridAxis> axes_;
    std::vector<double> values_;
};

/// Composite trapezoid of kernel(x) * f(x) over the whole grid, summed in
/// fixed row-major order.
double trapezoid(const SampledField& field,
                 const std::function<double(std::span<const double>)>& kernel = nullptr);

/// -2 pi * integral over x > 0 and the d-2 transverse axes of x T00.
/// Axis 0 is x (origin >= 0); the remaining axes are transverse.
double boost_integral(const SampledField& t00);

/// c = ln tr e^{-H}, so e^{-(H + c I)} has unit trace.
double unit_trace_constant(const ComplexMatrix& h);

struct HorizonKinematics {
    double kappa = 1.0;
    double lambda_affine = 1.0;
    double area_element_gamma = 1.0; // scale of the cross-section measure
    double proportionality_c = 1.0;
    double newton_g = PhysicalConstants{}.newton_g;
};

/// dE = -kappa lambda gamma * integral of the pre-contracted integrand over
/// (affine parameter, cross-section).
double horizon_energy_flux(const SampledField& integrand, const HorizonKinematics& kin);

/// dD = -lambda * integral of the pre-contracted Ricci integrand.
double ricci_area_change(const SampledField& integrand, double lambda);

/// dS = C dD.
double entropy_from_area_change(double delta_d, double c);

struct TruncationPolicy {
    bool enforce = true;
    double relative_decay = 1e-8;  // |f| on the v = v_max face vs max |f|
};

/// L' = L0 + sqrt(8 pi G) * integral of v f(v, y) dv d^2y. Axis 0 is v.
double perturbed_horizon_area(double l0, const SampledField& integrand, double newton_g,
                              const TruncationPolicy& policy = {});

/// dD = 8 pi G * integral of v F(v, y) dv d^2y.
double flat_flux_area_change(const SampledField& integrand, double newton_g, const TruncationPolicy& policy = {});

/// T0 = hbar kappa / (2 pi k_B c).
double unruh_kappa_temperature(double kappa, const PhysicalConstants& constants = {});

} // namespace causentropy
