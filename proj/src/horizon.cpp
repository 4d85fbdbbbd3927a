#include "causentropy/horizon.hpp"

#include <algorithm>
#include <cmath>

#include "causentropy/error.hpp"

namespace causentropy {

namespace {

void require_axes(const SampledField& field, std::size_t min_rank, std::size_t max_rank, const char* what)
{
    if (field.rank() < min_rank || field.rank() > max_rank) {
        throw Error(ErrorCode::BadGrid, std::string(what) + ": expected " + std::to_string(min_rank) + ".." +
                                            std::to_string(max_rank) + " axes, got " +
                                            std::to_string(field.rank()));
    }
}

void require_half_line(const GridAxis& axis, const char* what)
{
    if (axis.origin < 0.0) {
        throw Error(ErrorCode::BadGrid, std::string(what) + ": first axis must start at or above 0");
    }
}

void check_decay(const SampledField& field, const TruncationPolicy& policy)
{
    if (!policy.enforce) {
        return;
    }
    const auto& values = field.values();
    double peak = 0.0;
    for (double v : values) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        return;
    }
    const long slice = static_cast<long>(values.size()) / field.axes().front().count;
    const long start = static_cast<long>(values.size()) - slice;
    double edge = 0.0;
    for (long i = start; i < static_cast<long>(values.size()); ++i) {
        edge = std::max(edge, std::abs(values[static_cast<std::size_t>(i)]));
    }
    if (edge > policy.relative_decay * peak) {
        throw Error(ErrorCode::TruncationInvalid, "integrand at v_max is " + std::to_string(edge / peak) +
                                                      " of its peak");
    }
}

double v_weighted(const SampledField& field)
{
    return trapezoid(field, [](std::span<const double> x) { return x[0]; });
}

} // namespace

SampledField::SampledField(std::vector<GridAxis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values))
{
    if (axes_.empty()) {
        throw Error(ErrorCode::BadGrid, "field needs at least one axis");
    }
    std::size_t expected = 1;
    for (const auto& axis : axes_) {
        if (!(axis.spacing > 0.0) || axis.count < 2 || !std::isfinite(axis.origin) || !std::isfinite(axis.spacing)) {
            throw Error(ErrorCode::BadGrid, "axes need spacing > 0 and at least 2 points");
        }
        expected *= static_cast<std::size_t>(axis.count);
    }
    if (values_.size() != expected) {
        throw Error(ErrorCode::BadGrid, "expected " + std::to_string(expected) + " samples, got " +
                                            std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::BadGrid, "non-finite sample");
        }
    }
}

SampledField SampledField::from_function(std::vector<GridAxis> axes,
                                         const std::function<double(std::span<const double>)>& f)
{
    std::size_t total = 1;
    for (const auto& axis : axes) {
        total *= static_cast<std::size_t>(std::max(axis.count, 0L));
    }
    std::vector<double> values(total);
    std::vector<double> point(axes.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const auto n = static_cast<std::size_t>(axes[a].count);
            point[a] = axes[a].coordinate(static_cast<long>(rem % n));
            rem /= n;
        }
        values[flat] = f(point);
    }
    return SampledField(std::move(axes), std::move(values));
}

SampledField SampledField::combine(double a, const SampledField& other, double b) const
{
    if (other.axes_.size() != axes_.size() || other.values_.size() != values_.size()) {
        throw Error(ErrorCode::BadGrid, "fields live on different grids");
    }
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a * values_[i] + b * other.values_[i];
    }
    return SampledField(axes_, std::move(out));
}

double trapezoid(const SampledField& field, const std::function<double(std::span<const double>)>& kernel)
{
    const auto& axes = field.axes();
    const auto& values = field.values();
    std::vector<long> index(axes.size(), 0);
    std::vector<double> point(axes.size());
    double sum = 0.0;
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        double weight = 1.0;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const bool edge = index[a] == 0 || index[a] == axes[a].count - 1;
            weight *= edge ? 0.5 * axes[a].spacing : axes[a].spacing;
            point[a] = axes[a].coordinate(index[a]);
        }
        const double k = kernel ? kernel(point) : 1.0;
        sum += weight * k * values[flat];
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++index[a] < axes[a].count) {
                break;
            }
            index[a] = 0;
        }
    }
    return sum;
}

double boost_integral(const SampledField& t00)
{
    require_axes(t00, 2, 16, "boost_integral");
    require_half_line(t00.axes().front(), "boost_integral");
    return -2.0 * kPi * trapezoid(t00, [](std::span<const double> x) { return x[0]; });
}

double unit_trace_constant(const ComplexMatrix& h)
{
    const RealVector ev = hermitian_eigenvalues(h);
    const double lowest = ev.minCoeff();
    double sum = 0.0;
    for (double lambda : ev) {
        sum += std::exp(-(lambda - lowest));
    }
    return -lowest + std::log(sum);
}

double horizon_energy_flux(const SampledField& integrand, const HorizonKinematics& kin)
{
    require_axes(integrand, 2, 3, "horizon_energy_flux");
    if (!(kin.kappa > 0.0)) {
        throw Error(ErrorCode::NonPositiveKappa, "kappa must be positive");
    }
    if (!(kin.area_element_gamma > 0.0)) {
        throw Error(ErrorCode::DomainError, "area element must be positive");
    }
    return -kin.kappa * kin.lambda_affine * kin.area_element_gamma * trapezoid(integrand);
}

double ricci_area_change(const SampledField& integrand, double lambda)
{
    require_axes(integrand, 2, 3, "ricci_area_change");
    return -lambda * trapezoid(integrand);
}

double entropy_from_area_change(double delta_d, double c) { return c * delta_d; }

double perturbed_horizon_area(double l0, const SampledField& integrand, double newton_g, const TruncationPolicy& policy)
{
    require_axes(integrand, 2, 3, "perturbed_horizon_area");
    require_half_line(integrand.axes().front(), "perturbed_horizon_area");
    if (!(newton_g > 0.0)) {
        throw Error(ErrorCode::NonPositiveG, "Newton's constant must be positive");
    }
    check_decay(integrand, policy);
    return l0 + std::sqrt(8.0 * kPi * newton_g) * v_weighted(integrand);
}

double flat_flux_area_change(const SampledField& integrand, double newton_g, const TruncationPolicy& policy)
{
    require_axes(integrand, 2, 3, "flat_flux_area_change");
    require_half_line(integrand.axes().front(), "flat_flux_area_change");
    if (!(newton_g > 0.0)) {
        throw Error(ErrorCode::NonPositiveG, "Newton's constant must be positive");
    }
    check_decay(integrand, policy);
    return 8.0 * kPi * newton_g * v_weighted(integrand);
}

double unruh_kappa_temperature(double kappa, const PhysicalConstants& constants)
{
    if (!(kappa > 0.0)) {
        throw Error(ErrorCode::NonPositiveKappa, "kappa must be positive");
    }
    return constants.hbar * kappa / (2.0 * kPi * constants.k_b * constants.c);
}

} // namespace causentropy
