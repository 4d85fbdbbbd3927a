#pragma once

#include <span>
#include <vector>

#include "causentropy/states.hpp"

namespace causentropy {

struct EntropyValue {
    double bits = 0.0;
    double nats = 0.0;

    static EntropyValue from_bits(double bits) { return {bits, bits * kLn2}; }
    static EntropyValue from_nats(double nats) { return {nats / kLn2, nats}; }
};

struct SchmidtSpectrum {
    std::vector<double> coefficients; // descending
    std::vector<int> cut;
};

/// -sum lambda log2 lambda over the support; eigenvalues in
/// [-1e-10, kSupportThreshold) contribute nothing.
EntropyValue von_neumann_entropy(const DensityMatrix& rho);
/// Same functional on a raw spectrum.
EntropyValue entropy_of_spectrum(const RealVector& eigenvalues);

SchmidtSpectrum schmidt_coefficients(const ComplexVector& psi, const Dims& dims, std::span<const int> cut);

/// S(A1) + S(A2) - S(A1 n A2) - S(A1 u A2), in bits, S(empty) = 0.
double ssa_gap(const DensityMatrix& rho, std::span<const int> region1, std::span<const int> region2);

struct ModularHamiltonian {
    ComplexMatrix matrix; // nats
    int support_dimension = 0;
};

/// -ln rho on the support of rho.
ModularHamiltonian modular_hamiltonian(const DensityMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose over `cut`.
double negativity(const DensityMatrix& rho, int cut);
/// Minimum eigenvalue of the partial transpose over `cut`.
double ppt_gap(const DensityMatrix& rho, int cut);

} // namespace causentropy
