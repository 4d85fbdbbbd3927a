#pragma once

#include <string>

#include "causentropy/constants.hpp"
#include "causentropy/transfer.hpp"

namespace causentropy {

enum class AreaRegime {
    GeomScale, // macroscopic scale: A = l^{d-2} S / (2 pi), leading term only
    Regulated, // intermediate regulator: A = delta^{d-2} S / c0_tilde
};

std::string to_string(AreaRegime regime);
AreaRegime area_regime_from_string(const std::string& name);

/// Lengths share one unit; areas are reported in that unit to the power d-2.
struct RegulatorScheme {
    int d = 4;
    double delta = 1.0;             // UV cutoff
    double d_ge = 100.0;            // intermediate regulator
    double d_geom = 10000.0;        // geometric scale
    double c0_tilde = 1.0;
    double c0 = 0.25;
    double c2 = 0.0;
    double tau = 1.0;
    double planck_factor = 1.0;     // l^{d-2}
    double separation_factor = 100.0; // meaning of "much smaller than"
};

/// 8 pi G hbar / c^3. The right-hand side carries no d; only d = 4 is
/// dimensionally consistent (see planck_scale_consistent).
double planck_scale(int d, const PhysicalConstants& constants = {});
inline bool planck_scale_consistent(int d) { return d == 4; }

double area_from_entropy(double s_bits, const RegulatorScheme& scheme, AreaRegime regime);
double entropy_from_area(double area, const RegulatorScheme& scheme, AreaRegime regime);

/// c0 (tau/delta)^{d-2} + c2 (tau/delta)^{d-4}; subleading terms beyond c2 are not modelled.
double geometric_entropy_series(const RegulatorScheme& scheme);

struct RegulatorReport {
    bool pass = false;
    bool cutoff_separated = false;   // delta * F <= d_ge
    bool geometry_separated = false; // d_ge * F <= d_geom
    double cutoff_ratio = 0.0;       // d_ge / delta
    double geometry_ratio = 0.0;     // d_geom / d_ge
    double separation_factor = 0.0;
};

/// Inclusive at the boundary (relative slack 1e-12 for rounding of delta * F).
RegulatorReport validate_regulators(const RegulatorScheme& scheme);

struct CauchyGeometry {
    double area_g = 0.0;
    double area_g_prime = 0.0;
    double horizon_l = 0.0;
    double horizon_l_prime = 0.0;
    double entangling_sigma = 0.0;
    double entangling_sigma_prime = 0.0;
    AreaRegime regime = AreaRegime::Regulated;

    double delta_area() const { return area_g_prime - area_g; }
    double delta_horizon() const { return horizon_l_prime - horizon_l; }
};

/// Cauchy areas of G before and after the transfer in the regulated regime,
/// with the causal-development (horizon) areas identified with them.
CauchyGeometry expansion_delta(const TransferOutcome& outcome, const RegulatorScheme& scheme);

/// Delta(1/G) := c0_tilde / delta^{d-2}.
double inverse_newton_increment(const RegulatorScheme& scheme);

/// S = (A/4) c0_tilde / delta^{d-2}. Requires c0_tilde == 4 c0.
double susskind_uglum_entropy(double area, const RegulatorScheme& scheme);
/// A = 4 delta^{d-2} S / c0_tilde, the inverse of susskind_uglum_entropy.
double susskind_uglum_area(double s_bits, const RegulatorScheme& scheme);

/// dS = dA / (4 G).
double bekenstein_hawking_delta(double delta_area, double newton_g);

} // namespace causentropy
