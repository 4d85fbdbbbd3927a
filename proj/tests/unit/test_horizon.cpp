#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "causentropy/horizon.hpp"
#include "causentropy/random.hpp"
#include "causentropy/states.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace causentropy;
using testing::code_of;

namespace {

using Fn = std::function<double(std::span<const double>)>;

std::vector<GridAxis> unit_axes(int rank, long n, double upper = 1.0)
{
    return std::vector<GridAxis>(rank, GridAxis{0.0, upper / static_cast<double>(n - 1), n});
}

SampledField constant(int rank, double value, long n = 5, double upper = 1.0)
{
    return SampledField::from_function(unit_axes(rank, n, upper), [=](std::span<const double>) { return value; });
}

// log2 of successive error ratios over three dyadic refinements
std::vector<double> orders(const std::function<double(long)>& error_at, long n0)
{
    std::vector<double> errors;
    for (long n = n0, k = 0; k < 4; ++k, n = 2 * (n - 1) + 1) {
        errors.push_back(std::abs(error_at(n)));
    }
    std::vector<double> out;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        out.push_back(std::log2(errors[i - 1] / errors[i]));
    }
    return out;
}

const double kGeometricG = 1.0 / (8.0 * kPi); // 8 pi G = 1

} // namespace

TEST_SUITE("horizon") {

TEST_CASE("sampled field validation")
{
    CHECK(code_of([] { SampledField({GridAxis{0.0, 0.0, 3}}, {1.0, 2.0, 3.0}); }) == ErrorCode::BadGrid);
    CHECK(code_of([] { SampledField({GridAxis{0.0, 1.0, 1}}, {1.0}); }) == ErrorCode::BadGrid);
    CHECK(code_of([] { SampledField({GridAxis{0.0, 1.0, 3}}, {1.0, 2.0}); }) == ErrorCode::BadGrid);
    CHECK(code_of([] { SampledField({GridAxis{0.0, 1.0, 2}}, {1.0, std::nan("")}); }) == ErrorCode::BadGrid);
    CHECK(code_of([] { SampledField({}, {}); }) == ErrorCode::BadGrid);
    const SampledField f = SampledField::from_function({GridAxis{0.0, 0.5, 3}, GridAxis{1.0, 1.0, 2}},
                                                       [](std::span<const double> x) { return 10.0 * x[0] + x[1]; });
    CHECK(f.values() == std::vector<double>{1.0, 2.0, 6.0, 7.0, 11.0, 12.0});
}

TEST_CASE("boost integral closed forms")
{
    CHECK(boost_integral(constant(3, 0.0)) == 0.0);
    for (double t : {1.0, -2.5, 0.3}) {
        CHECK(boost_integral(constant(3, t)) == doctest::Approx(-kPi * t).epsilon(1e-14));
        CHECK(boost_integral(constant(3, t, 2)) == doctest::Approx(-kPi * t).epsilon(1e-14));
    }
    const SampledField shifted({GridAxis{-0.5, 0.5, 3}, GridAxis{0.0, 1.0, 2}}, std::vector<double>(6, 1.0));
    CHECK(code_of([&] { boost_integral(shifted); }) == ErrorCode::BadGrid);
    CHECK(code_of([] { boost_integral(constant(1, 1.0)); }) == ErrorCode::BadGrid);
}

TEST_CASE("boost integral of sin(x) converges at second order")
{
    const double exact = -2.0 * kPi * (std::sin(1.0) - std::cos(1.0));
    const auto error = [&](long n) {
        const SampledField f = SampledField::from_function(unit_axes(3, n),
                                                           [](std::span<const double> x) { return std::sin(x[0]); });
        return boost_integral(f) - exact;
    };
    for (double p : orders(error, 9)) {
        CHECK(p >= 1.9);
    }
}

TEST_CASE("unit trace constant")
{
    for (Eigen::Index n : {1, 2, 5, 8}) {
        CHECK(unit_trace_constant(ComplexMatrix::Zero(n, n)) == doctest::Approx(std::log(double(n))).epsilon(1e-14));
    }
    ComplexMatrix normalized = ComplexMatrix::Zero(2, 2);
    normalized(0, 0) = -std::log(0.25);
    normalized(1, 1) = -std::log(0.75);
    CHECK(std::abs(unit_trace_constant(normalized)) < 1e-15);

    SeededStream rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = rng.integer(2, 8);
        const ComplexMatrix h = random_hermitian(rng, n) * rng.uniform(0.1, 50.0);
        const double c = unit_trace_constant(h);
        const Eigen::VectorXd lambda = oracle::eigenvalues(h);
        double trace = 0.0;
        for (double l : lambda) {
            trace += std::exp(-(l + c));
        }
        CHECK(std::abs(trace - 1.0) < 1e-12);

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
        const Eigen::VectorXd w = (-(es.eigenvalues().array() + c)).exp();
        const ComplexMatrix rho = es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
        CHECK_NOTHROW(DensityMatrix(rho, {static_cast<int>(n)}));
    }
    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK(code_of([&] { unit_trace_constant(skew); }) == ErrorCode::NotHermitian);
}

TEST_CASE("energy flux and Ricci area change")
{
    HorizonKinematics kin;
    CHECK(horizon_energy_flux(constant(3, 0.0), kin) == 0.0);
    CHECK(horizon_energy_flux(constant(2, 1.7), kin) == doctest::Approx(-1.7).epsilon(1e-14));
    CHECK(horizon_energy_flux(constant(3, 1.7), kin) == doctest::Approx(-1.7).epsilon(1e-14));
    CHECK(ricci_area_change(constant(3, 0.0), 1.0) == 0.0);
    CHECK(ricci_area_change(constant(3, -0.4), 2.0) > 0.0);

    SeededStream rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        kin.kappa = rng.uniform(0.1, 10.0);
        kin.lambda_affine = rng.uniform(0.1, 10.0);
        kin.area_element_gamma = rng.uniform(0.1, 10.0);
        std::vector<double> values(27);
        for (double& v : values) {
            v = rng.uniform(-1.0, 1.0);
        }
        const SampledField f(unit_axes(3, 3), values);
        const double de = horizon_energy_flux(f, kin);
        const double dd = ricci_area_change(f, kin.lambda_affine);
        CHECK(dd == doctest::Approx(de / (kin.kappa * kin.area_element_gamma)).epsilon(1e-12));
    }
    kin = HorizonKinematics{};
    kin.kappa = 0.0;
    CHECK(code_of([&] { horizon_energy_flux(constant(3, 1.0), kin); }) == ErrorCode::NonPositiveKappa);
    kin = HorizonKinematics{};
    kin.area_element_gamma = -1.0;
    CHECK(code_of([&] { horizon_energy_flux(constant(3, 1.0), kin); }) == ErrorCode::DomainError);
    CHECK(code_of([&] { horizon_energy_flux(constant(1, 1.0), HorizonKinematics{}); }) == ErrorCode::BadGrid);
}

TEST_CASE("energy flux converges at second order")
{
    const double exact = -(1.0 - std::cos(1.0)) * std::sin(1.0) * (std::exp(1.0) - 1.0);
    const auto error = [&](long n) {
        const SampledField f = SampledField::from_function(
            unit_axes(3, n), [](std::span<const double> x) { return std::sin(x[0]) * std::cos(x[1]) * std::exp(x[2]); });
        return horizon_energy_flux(f, HorizonKinematics{}) - exact;
    };
    for (double p : orders(error, 9)) {
        CHECK(p >= 1.9);
    }
}

TEST_CASE("entropy from area change")
{
    CHECK(entropy_from_area_change(0.0, 3.0) == 0.0);
    CHECK(entropy_from_area_change(0.7, 1.0) == 0.7);
    const double delta_s_g = 0.7;
    const double dd = 0.123;
    const double c = delta_s_g / dd;
    CHECK(std::abs(entropy_from_area_change(dd, c) - delta_s_g) < 1e-12);
}

TEST_CASE("perturbed area and flat flux closed forms")
{
    const TruncationPolicy off{false};
    CHECK(perturbed_horizon_area(2.0, constant(3, 0.0), kGeometricG) == 2.0);
    CHECK(perturbed_horizon_area(2.0, constant(3, 0.6), kGeometricG, off) == doctest::Approx(2.3).epsilon(1e-14));
    CHECK(flat_flux_area_change(constant(3, 0.0), kGeometricG) == 0.0);
    CHECK(flat_flux_area_change(constant(3, 0.8), kGeometricG, off) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(code_of([] { flat_flux_area_change(constant(3, 0.8), kGeometricG); }) == ErrorCode::TruncationInvalid);
    CHECK(code_of([&] { flat_flux_area_change(constant(3, 0.8), 0.0, off); }) == ErrorCode::NonPositiveG);
    CHECK(code_of([&] { perturbed_horizon_area(1.0, constant(3, 0.8), -1.0, off); }) == ErrorCode::NonPositiveG);

    // sign audit: positive flux expands the area and, with C > 0, raises the entropy
    const SampledField bump = SampledField::from_function(
        {GridAxis{0.0, 0.1, 81}, GridAxis{0.0, 0.5, 3}, GridAxis{0.0, 0.5, 3}},
        [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
    const double dd = flat_flux_area_change(bump, kGeometricG);
    CHECK(dd > 0.0);
    CHECK(entropy_from_area_change(dd, 2.0) > 0.0);
    CHECK(horizon_energy_flux(bump, HorizonKinematics{}) <= 0.0);
}

TEST_CASE("Gaussian perturbation converges at second order with negligible truncation")
{
    // integral of v exp(-v^2) on [0, 8] times the unit cross-section; the tail beyond 8 is e^{-64}/2
    const double exact = 0.5 * (1.0 - std::exp(-64.0));
    const auto error = [&](long n) {
        const SampledField f = SampledField::from_function(
            {GridAxis{0.0, 8.0 / double(n - 1), n}, GridAxis{0.0, 1.0, 2}, GridAxis{0.0, 1.0, 2}},
            [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
        return perturbed_horizon_area(1.0, f, kGeometricG) - 1.0 - exact;
    };
    for (double p : orders(error, 33)) {
        CHECK(p >= 1.9);
    }
    CHECK(std::abs(error(1025)) < 1e-5);
}

TEST_CASE("quadratures are linear in the integrand")
{
    SeededStream rng(7);
    const auto random_field = [&] {
        std::vector<double> values(5 * 4 * 3);
        for (double& v : values) {
            v = rng.uniform(-1.0, 1.0);
        }
        return SampledField({GridAxis{0.0, 0.25, 5}, GridAxis{0.0, 0.3, 4}, GridAxis{-1.0, 1.0, 3}}, values);
    };
    const TruncationPolicy off{false};
    for (int trial = 0; trial < 50; ++trial) {
        const SampledField s1 = random_field();
        const SampledField s2 = random_field();
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-3.0, 3.0);
        const SampledField mix = s1.combine(a, s2, b);
        const auto linear = [&](const std::function<double(const SampledField&)>& q) {
            const double lhs = q(mix);
            const double rhs = a * q(s1) + b * q(s2);
            return std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs));
        };
        CHECK(linear([](const SampledField& f) { return trapezoid(f); }));
        CHECK(linear([](const SampledField& f) { return boost_integral(f); }));
        CHECK(linear([](const SampledField& f) { return horizon_energy_flux(f, HorizonKinematics{}); }));
        CHECK(linear([](const SampledField& f) { return ricci_area_change(f, 1.3); }));
        CHECK(linear([&](const SampledField& f) { return flat_flux_area_change(f, kGeometricG, off); }));
        CHECK(linear([&](const SampledField& f) { return perturbed_horizon_area(0.0, f, kGeometricG, off); }));
    }
}

TEST_CASE("trapezoid is exact on multilinear integrands")
{
    const SampledField f = SampledField::from_function(
        {GridAxis{0.0, 0.5, 3}, GridAxis{1.0, 0.25, 5}, GridAxis{-1.0, 1.0, 3}},
        [](std::span<const double> x) { return 1.0 + 2.0 * x[0] - x[1] + 3.0 * x[0] * x[1] * x[2]; });
    // exact integral over [0,1] x [1,2] x [-1,1]
    const double exact = 2.0 * (1.0 + 1.0 - 1.5);
    CHECK(trapezoid(f) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("Unruh temperature from the surface gravity")
{
    const PhysicalConstants k;
    CHECK(unruh_kappa_temperature(9.81) == unruh_temperature(9.81));
    CHECK(unruh_kappa_temperature(9.81) == doctest::Approx(3.98e-20).epsilon(0.005));
    CHECK(unruh_kappa_temperature(2.0 * kPi * k.k_b * k.c / k.hbar) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(code_of([] { unruh_kappa_temperature(0.0); }) == ErrorCode::NonPositiveKappa);
}

} // TEST_SUITE
