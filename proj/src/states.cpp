#include "causentropy/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "causentropy/entropy.hpp"

namespace causentropy {

namespace {

std::vector<std::string> default_labels(std::size_t arity)
{
    if (arity == 3) {
        return {"G", "E", "B"};
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arity; ++i) {
        out.push_back("S" + std::to_string(i));
    }
    return out;
}

void check_weights(const std::vector<double>& weights, std::size_t min_count, std::size_t max_count)
{
    if (weights.size() < min_count || weights.size() > max_count) {
        throw Error(ErrorCode::InvalidWeights, "expected between " + std::to_string(min_count) + " and " +
                                                   std::to_string(max_count) + " weights");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw Error(ErrorCode::InvalidWeights, "weights must be positive");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidWeights, "weights sum to " + std::to_string(sum));
    }
}

void check_noise(double noise)
{
    if (!(noise >= 0.0 && noise <= 1.0)) {
        throw Error(ErrorCode::InvalidNoise, "noise fraction must lie in [0, 1]");
    }
}

} // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Dims dims, std::vector<std::string> labels)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), labels_(std::move(labels))
{
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dims_.total()) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix size does not match dims");
    }
    if (labels_.empty()) {
        labels_ = default_labels(dims_.size());
    }
    if (labels_.size() != dims_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per subsystem required");
    }
    require_hermitian(matrix_, "DensityMatrix", kTolerance);
    const Complex tr = matrix_.trace();
    if (std::abs(tr.real() - 1.0) > kTolerance || std::abs(tr.imag()) > kTolerance) {
        throw Error(ErrorCode::DomainError, "trace differs from 1 by " + std::to_string(std::abs(tr - 1.0)));
    }
    const double min_eig = hermitian_eigenvalues(matrix_).minCoeff();
    if (min_eig < -kTolerance) {
        throw Error(ErrorCode::DomainError, "negative eigenvalue " + std::to_string(min_eig));
    }
}

DensityMatrix DensityMatrix::single(ComplexMatrix matrix, std::string label)
{
    const auto n = static_cast<int>(matrix.rows());
    return DensityMatrix(std::move(matrix), Dims{n}, {std::move(label)});
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, Dims dims, std::vector<std::string> labels)
{
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw Error(ErrorCode::NotNormalized, "state vector norm " + std::to_string(norm));
    }
    return DensityMatrix(psi * psi.adjoint(), std::move(dims), std::move(labels));
}

int DensityMatrix::index_of(const std::string& label) const
{
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw Error(ErrorCode::BadPartition, "no subsystem labelled " + label);
    }
    return static_cast<int>(it - labels_.begin());
}

DensityMatrix DensityMatrix::reduced(std::span<const int> keep) const
{
    std::vector<std::string> kept_labels;
    for (int i : keep) {
        if (i < 0 || i >= static_cast<int>(labels_.size())) {
            throw Error(ErrorCode::DimensionMismatch, "subsystem index out of range");
        }
        kept_labels.push_back(labels_[static_cast<std::size_t>(i)]);
    }
    ComplexMatrix reduced_matrix = partial_trace(matrix_, dims_, keep);
    return DensityMatrix(symmetrize(reduced_matrix), dims_.select(keep), std::move(kept_labels));
}

DensityMatrix DensityMatrix::reduced(std::initializer_list<int> keep) const
{
    return reduced(std::span<const int>(keep.begin(), keep.size()));
}

ThermalParams ThermalParams::from_eta(double eta)
{
    ThermalParams p;
    p.eta = eta;
    return p;
}

ThermalParams ThermalParams::from_temperature(double temperature, double k_b)
{
    ThermalParams p;
    p.temperature = temperature;
    p.boltzmann_constant = k_b;
    return p;
}

double ThermalParams::inverse_temperature() const
{
    if (eta.has_value() == temperature.has_value()) {
        throw Error(ErrorCode::DomainError, "exactly one of eta and temperature must be set");
    }
    if (eta) {
        if (!(*eta > 0.0)) {
            throw Error(ErrorCode::DomainError, "eta must be positive");
        }
        return *eta;
    }
    if (!(*temperature > 0.0) || !(boltzmann_constant > 0.0)) {
        throw Error(ErrorCode::DomainError, "temperature and k_B must be positive");
    }
    return 1.0 / (boltzmann_constant * *temperature);
}

DensityMatrix gibbs_state(const ComplexMatrix& h, const ThermalParams& params)
{
    require_hermitian(h, "gibbs_state");
    const double eta = params.inverse_temperature();
    const Spectrum eig = hermitian_eigendecompose(h);
    const Eigen::Index n = h.rows();

    RealVector exponent(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        exponent(i) = -eta * eig.values(i);
        if (!std::isfinite(exponent(i))) {
            throw Error(ErrorCode::Overflow, "eta * H is outside the representable range");
        }
    }
    const double shift = exponent.maxCoeff();
    RealVector weights = (exponent.array() - shift).exp().matrix();
    weights /= weights.sum();
    ComplexMatrix rho = eig.vectors * weights.asDiagonal() * eig.vectors.adjoint();
    return DensityMatrix::single(symmetrize(rho), "A");
}

double expectation(const ComplexMatrix& observable, const DensityMatrix& rho)
{
    if (observable.rows() != rho.dimension() || observable.cols() != rho.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "observable and state dimensions differ");
    }
    require_hermitian(observable, "expectation");
    const Complex value = (observable * rho.matrix()).trace();
    if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
        throw Error(ErrorCode::NotHermitian, "expectation has imaginary part " + std::to_string(value.imag()));
    }
    return value.real();
}

double unruh_temperature(double acceleration, const PhysicalConstants& constants)
{
    if (!(acceleration > 0.0)) {
        throw Error(ErrorCode::NonPositiveAcceleration, "acceleration must be positive");
    }
    return constants.hbar * acceleration / (2.0 * kPi * constants.k_b * constants.c);
}

RindlerVacuum rindler_vacuum(const ComplexMatrix& h0, double acceleration, const PhysicalConstants& constants)
{
    const double t0 = unruh_temperature(acceleration, constants);
    return {gibbs_state(h0, ThermalParams::from_temperature(t0, constants.k_b)), t0};
}

DensityMatrix mix_causal_orders(const DensityMatrix& rho_12, const DensityMatrix& rho_21)
{
    if (!(rho_12.dims() == rho_21.dims())) {
        throw Error(ErrorCode::DimensionMismatch, "causal-order states live on different factors");
    }
    ComplexMatrix mixed = 0.5 * rho_12.matrix() + 0.5 * rho_21.matrix();
    return DensityMatrix(std::move(mixed), rho_12.dims(), rho_12.labels());
}

std::string to_string(FamilyKind kind)
{
    return kind == FamilyKind::Flagged ? "flagged" : "paired_isotropic";
}

FamilyKind family_kind_from_string(const std::string& name)
{
    if (name == "flagged") {
        return FamilyKind::Flagged;
    }
    if (name == "paired_isotropic") {
        return FamilyKind::PairedIsotropic;
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown family '" + name + "'");
}

DensityMatrix build_flagged_family(double theta, const std::vector<double>& weights, double noise,
                                   const Dims& dims)
{
    check_weights(weights, 2, 4);
    check_noise(noise);
    if (dims.size() != 3 || (dims[0] != 2 && dims[0] != 4) || dims[1] != 2 || dims[2] != 2) {
        throw Error(ErrorCode::DimensionMismatch, "flagged family needs dims (2|4, 2, 2)");
    }
    const int d_g = dims[0];
    const auto k_count = static_cast<int>(weights.size());
    const Eigen::Index n = dims.total();
    const double phi_step = kPi - 2.0 * theta;

    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < k_count; ++k) {
        const double phi = k * phi_step;
        ComplexVector flag(2);
        flag << std::cos(phi / 2.0), std::sin(phi / 2.0);

        // chi(g, b) amplitudes over G (x) B
        ComplexMatrix chi = ComplexMatrix::Zero(d_g, 2);
        const int g1 = d_g == 2 ? 1 : 1 + (k % 3);
        chi(0, 0) = 1.0 / std::sqrt(2.0);
        chi(g1, 1) = std::polar(1.0 / std::sqrt(2.0), 2.0 * kPi * k / k_count);

        ComplexVector psi(n);
        for (int g = 0; g < d_g; ++g) {
            for (int e = 0; e < 2; ++e) {
                for (int b = 0; b < 2; ++b) {
                    psi(g * 4 + e * 2 + b) = flag(e) * chi(g, b);
                }
            }
        }
        rho += weights[static_cast<std::size_t>(k)] * (psi * psi.adjoint());
    }
    rho = (1.0 - noise) * rho + noise * ComplexMatrix::Identity(n, n) / static_cast<double>(n);
    return DensityMatrix(symmetrize(rho), dims, {"G", "E", "B"});
}

DensityMatrix build_paired_isotropic_family(const std::vector<double>& weights, double noise)
{
    if (weights.size() != 4) {
        throw Error(ErrorCode::InvalidWeights, "paired isotropic family takes four weights");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorCode::InvalidWeights, "weights must be non-negative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidWeights, "weights sum to " + std::to_string(sum));
    }
    check_noise(noise);

    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix p0 = bell * bell.adjoint();
    const ComplexMatrix p1 = (ComplexMatrix::Identity(4, 4) - p0) / 3.0;
    const ComplexMatrix* proj[2] = {&p0, &p1};

    ComplexMatrix paired = ComplexMatrix::Zero(16, 16);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            paired += weights[static_cast<std::size_t>(2 * i + j)] * tensor_product(*proj[i], *proj[j]);
        }
    }
    // factor order (G1, E, G2, B) -> (G1, G2, E, B)
    const int order[] = {0, 2, 1, 3};
    ComplexMatrix rho = permute_subsystems(paired, Dims{2, 2, 2, 2}, order);
    rho = (1.0 - noise) * rho + noise * ComplexMatrix::Identity(16, 16) / 16.0;
    return DensityMatrix(symmetrize(rho), Dims{4, 2, 2}, {"G", "E", "B"});
}

DensityMatrix build_family_member(const FamilyMember& member)
{
    switch (member.kind) {
    case FamilyKind::Flagged:
        return build_flagged_family(member.theta, member.weights, member.noise, Dims{member.d_g, 2, 2});
    case FamilyKind::PairedIsotropic:
        return build_paired_isotropic_family(member.weights, member.noise);
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown family");
}

bool PartitionCertificate::certifies_gravity_structure(double min_negativity, double tolerance) const
{
    return negativity_g_vs_eb > 0.0 && negativity_g_vs_eb >= min_negativity && ppt_gap_e_cut >= -kPptTolerance &&
           ppt_gap_b_cut >= -kPptTolerance && separable_decomposition_e_cut && separable_decomposition_b_cut &&
           separable_decomposition_e_cut->converged && separable_decomposition_b_cut->converged &&
           reconstruction_error_trace_norm <= tolerance;
}

PartitionCertificate certify_partitions(const DensityMatrix& rho, const SeparabilityOptions& options)
{
    if (rho.arity() != 3) {
        throw Error(ErrorCode::WrongArity, "certification needs a (G, E, B) state, got " +
                                               std::to_string(rho.arity()) + " subsystems");
    }
    PartitionCertificate cert;
    cert.negativity_g_vs_eb = negativity(rho, 0);
    cert.ppt_gap_e_cut = ppt_gap(rho, 1);
    cert.ppt_gap_b_cut = ppt_gap(rho, 2);
    if (cert.ppt_gap_e_cut >= -kPptTolerance && cert.ppt_gap_b_cut >= -kPptTolerance) {
        cert.separable_decomposition_e_cut = separable_decomposition(rho, 1, options);
        cert.separable_decomposition_b_cut = separable_decomposition(rho, 2, options);
        cert.reconstruction_error_trace_norm = std::max(cert.separable_decomposition_e_cut->trace_norm_error,
                                                        cert.separable_decomposition_b_cut->trace_norm_error);
    }
    return cert;
}

} // namespace causentropy
