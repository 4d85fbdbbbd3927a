#include "causentropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace causentropy {

namespace {

std::vector<int> normalized_region(std::span<const int> region, std::size_t arity)
{
    std::set<int> unique;
    for (int s : region) {
        if (s < 0 || s >= static_cast<int>(arity)) {
            throw Error(ErrorCode::BadRegion, "subsystem " + std::to_string(s) + " out of range");
        }
        if (!unique.insert(s).second) {
            throw Error(ErrorCode::BadRegion, "subsystem " + std::to_string(s) + " listed twice");
        }
    }
    return {unique.begin(), unique.end()};
}

double region_entropy_bits(const DensityMatrix& rho, const std::vector<int>& region)
{
    if (region.empty()) {
        return 0.0;
    }
    if (region.size() == rho.arity()) {
        return von_neumann_entropy(rho).bits;
    }
    return von_neumann_entropy(rho.reduced(region)).bits;
}

void check_cut(const DensityMatrix& rho, int cut)
{
    if (cut < 0 || cut >= static_cast<int>(rho.arity())) {
        throw Error(ErrorCode::BadCut, "cut index " + std::to_string(cut) + " out of range");
    }
}

} // namespace

EntropyValue entropy_of_spectrum(const RealVector& eigenvalues)
{
    double nats = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda >= kSupportThreshold) {
            nats -= lambda * std::log(lambda);
        }
    }
    return EntropyValue::from_nats(std::max(nats, 0.0));
}

EntropyValue von_neumann_entropy(const DensityMatrix& rho)
{
    return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

SchmidtSpectrum schmidt_coefficients(const ComplexVector& psi, const Dims& dims, std::span<const int> cut)
{
    if (psi.size() != dims.total()) {
        throw Error(ErrorCode::DimensionMismatch, "state vector length does not match dims");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::NotNormalized, "state vector norm " + std::to_string(psi.norm()));
    }
    std::vector<int> sorted(cut.begin(), cut.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || sorted.size() >= dims.size() ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
        sorted.back() >= static_cast<int>(dims.size())) {
        throw Error(ErrorCode::BadCut, "cut must be a proper, non-empty set of subsystems");
    }
    const auto rest = dims.complement(sorted);

    std::vector<long> strides(dims.size(), 1);
    for (std::size_t s = dims.size(); s-- > 1;) {
        strides[s - 1] = strides[s] * dims[s];
    }
    const long rows = dims.select(sorted).total();
    const long cols = dims.total() / rows;
    ComplexMatrix amplitudes(rows, cols);
    for (long x = 0; x < dims.total(); ++x) {
        long r = 0;
        long c = 0;
        for (int s : sorted) {
            r = r * dims[static_cast<std::size_t>(s)] + (x / strides[static_cast<std::size_t>(s)]) % dims[static_cast<std::size_t>(s)];
        }
        for (int s : rest) {
            c = c * dims[static_cast<std::size_t>(s)] + (x / strides[static_cast<std::size_t>(s)]) % dims[static_cast<std::size_t>(s)];
        }
        amplitudes(r, c) = psi(x);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(amplitudes);
    const RealVector& sv = svd.singularValues();
    SchmidtSpectrum out;
    out.cut = sorted;
    out.coefficients.assign(sv.data(), sv.data() + sv.size());
    return out;
}

double ssa_gap(const DensityMatrix& rho, std::span<const int> region1, std::span<const int> region2)
{
    const auto a = normalized_region(region1, rho.arity());
    const auto b = normalized_region(region2, rho.arity());
    std::vector<int> meet;
    std::vector<int> join;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(join));
    if (a == b) {
        return 0.0;
    }
    return region_entropy_bits(rho, a) + region_entropy_bits(rho, b) - region_entropy_bits(rho, meet) -
           region_entropy_bits(rho, join);
}

ModularHamiltonian modular_hamiltonian(const DensityMatrix& rho)
{
    ModularHamiltonian out;
    out.matrix = matrix_function_on_support(
        rho.matrix(), [](double lambda) { return -std::log(lambda); }, kSupportThreshold, &out.support_dimension);
    return out;
}

double negativity(const DensityMatrix& rho, int cut)
{
    check_cut(rho, cut);
    const RealVector ev = hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.dims(), cut));
    double sum = 0.0;
    for (double lambda : ev) {
        if (lambda < 0.0) {
            sum -= lambda;
        }
    }
    return sum;
}

double ppt_gap(const DensityMatrix& rho, int cut)
{
    check_cut(rho, cut);
    return hermitian_eigenvalues(partial_transpose(rho.matrix(), rho.dims(), cut)).minCoeff();
}

} // namespace causentropy
