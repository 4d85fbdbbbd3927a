#include "causentropy/geometry.hpp"

#include <cmath>

namespace causentropy {

namespace {

void check_regulated(const RegulatorScheme& s)
{
    if (s.d < 3 || !(s.delta > 0.0) || !(s.c0_tilde > 0.0) || !std::isfinite(s.delta) || !std::isfinite(s.c0_tilde)) {
        throw Error(ErrorCode::InvalidScheme, "regulated regime needs d >= 3, delta > 0, c0_tilde > 0");
    }
}

void check_geom(const RegulatorScheme& s)
{
    if (s.d < 3 || !(s.planck_factor > 0.0) || !std::isfinite(s.planck_factor)) {
        throw Error(ErrorCode::InvalidScheme, "geometric regime needs d >= 3 and planck_factor > 0");
    }
}

double cutoff_area_unit(const RegulatorScheme& s) { return std::pow(s.delta, s.d - 2); }

} // namespace

std::string to_string(AreaRegime regime) { return regime == AreaRegime::Regulated ? "regulated" : "geom_scale"; }

AreaRegime area_regime_from_string(const std::string& name)
{
    if (name == "regulated") {
        return AreaRegime::Regulated;
    }
    if (name == "geom_scale") {
        return AreaRegime::GeomScale;
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown regime '" + name + "'");
}

double planck_scale(int d, const PhysicalConstants& constants)
{
    if (d < 3) {
        throw Error(ErrorCode::BadDimension, "space-time dimension must be at least 3");
    }
    return 8.0 * kPi * constants.newton_g * constants.hbar / (constants.c * constants.c * constants.c);
}

double area_from_entropy(double s_bits, const RegulatorScheme& scheme, AreaRegime regime)
{
    if (!(s_bits >= 0.0)) {
        throw Error(ErrorCode::DomainError, "entropy must be non-negative");
    }
    if (regime == AreaRegime::Regulated) {
        check_regulated(scheme);
        return cutoff_area_unit(scheme) * s_bits / scheme.c0_tilde;
    }
    check_geom(scheme);
    return scheme.planck_factor * s_bits / (2.0 * kPi);
}

double entropy_from_area(double area, const RegulatorScheme& scheme, AreaRegime regime)
{
    if (!(area >= 0.0)) {
        throw Error(ErrorCode::DomainError, "area must be non-negative");
    }
    if (regime == AreaRegime::Regulated) {
        check_regulated(scheme);
        return scheme.c0_tilde * area / cutoff_area_unit(scheme);
    }
    check_geom(scheme);
    return 2.0 * kPi * area / scheme.planck_factor;
}

double geometric_entropy_series(const RegulatorScheme& s)
{
    if (s.delta == 0.0) {
        throw Error(ErrorCode::ZeroCutoff, "cutoff delta is zero");
    }
    const double ratio = s.tau / s.delta;
    return s.c0 * std::pow(ratio, s.d - 2) + s.c2 * std::pow(ratio, s.d - 4);
}

RegulatorReport validate_regulators(const RegulatorScheme& s)
{
    constexpr double slack = 1.0 + 1e-12;
    RegulatorReport r;
    r.separation_factor = s.separation_factor;
    r.cutoff_ratio = s.d_ge / s.delta;
    r.geometry_ratio = s.d_geom / s.d_ge;
    r.cutoff_separated = s.delta > 0.0 && s.delta * s.separation_factor <= s.d_ge * slack;
    r.geometry_separated = s.d_ge > 0.0 && s.d_ge * s.separation_factor <= s.d_geom * slack;
    r.pass = s.separation_factor >= 1.0 && r.cutoff_separated && r.geometry_separated;
    return r;
}

CauchyGeometry expansion_delta(const TransferOutcome& outcome, const RegulatorScheme& scheme)
{
    if (!(outcome.delta_s_g > 0.0)) {
        throw Error(ErrorCode::NonPositiveDelta, "transfer did not increase the gravity entropy");
    }
    const RegulatorReport report = validate_regulators(scheme);
    if (!report.pass) {
        throw Error(ErrorCode::RegulatorViolation, "regulators are not separated by factor " +
                                                       std::to_string(scheme.separation_factor));
    }
    CauchyGeometry g;
    g.regime = AreaRegime::Regulated;
    g.area_g = area_from_entropy(outcome.ledger.s_g, scheme, AreaRegime::Regulated);
    g.area_g_prime = area_from_entropy(outcome.s_g_prime, scheme, AreaRegime::Regulated);
    g.horizon_l = g.area_g;
    g.horizon_l_prime = g.area_g_prime;
    g.entangling_sigma = g.area_g;
    g.entangling_sigma_prime = g.area_g_prime;
    return g;
}

double inverse_newton_increment(const RegulatorScheme& scheme)
{
    check_regulated(scheme);
    return scheme.c0_tilde / cutoff_area_unit(scheme);
}

namespace {

void check_susskind_uglum(const RegulatorScheme& s)
{
    check_regulated(s);
    if (std::abs(s.c0_tilde - 4.0 * s.c0) > 1e-12 * std::abs(s.c0_tilde)) {
        throw Error(ErrorCode::SchemeInconsistent, "c0_tilde must equal 4 c0");
    }
}

} // namespace

double susskind_uglum_entropy(double area, const RegulatorScheme& scheme)
{
    check_susskind_uglum(scheme);
    return area / 4.0 * inverse_newton_increment(scheme);
}

double susskind_uglum_area(double s_bits, const RegulatorScheme& scheme)
{
    check_susskind_uglum(scheme);
    return 4.0 * cutoff_area_unit(scheme) * s_bits / scheme.c0_tilde;
}

double bekenstein_hawking_delta(double delta_area, double newton_g)
{
    if (!(newton_g > 0.0)) {
        throw Error(ErrorCode::NonPositiveG, "Newton's constant must be positive");
    }
    return delta_area / (4.0 * newton_g);
}

} // namespace causentropy
