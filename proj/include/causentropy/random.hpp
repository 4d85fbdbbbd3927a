#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "causentropy/qmatrix.hpp"

namespace causentropy {

/// Seeded stream with platform-independent transforms: uniforms are taken
/// from the top 53 bits of mt19937_64 and normals via Box-Muller, so a seed
/// reproduces the same doubles on every standard library.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    int integer(int lo, int hi);            // inclusive
    std::vector<double> dirichlet(std::size_t k); // flat Dirichlet

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

ComplexVector random_unit_vector(SeededStream& rng, Eigen::Index n);
/// Gaussian (GUE-like) Hermitian matrix.
ComplexMatrix random_hermitian(SeededStream& rng, Eigen::Index n);
/// Haar-distributed unitary via QR with phase fix.
ComplexMatrix random_unitary(SeededStream& rng, Eigen::Index n);
/// Full-rank Hilbert-Schmidt random density matrix (Ginibre G G^dagger / tr).
ComplexMatrix random_density(SeededStream& rng, Eigen::Index n);

} // namespace causentropy
