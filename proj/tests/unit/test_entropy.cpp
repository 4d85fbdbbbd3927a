#include "doctest.h"

#include <cmath>

#include "causentropy/entropy.hpp"
#include "causentropy/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace causentropy;
using testing::code_of;
using testing::diag;

TEST_SUITE("entropy") {

TEST_CASE("von Neumann entropy closed forms")
{
    ComplexVector v = ComplexVector::Zero(4);
    v(1) = 1.0;
    CHECK(von_neumann_entropy(DensityMatrix::pure(v, Dims{2, 2})).bits == 0.0);
    CHECK(von_neumann_entropy(DensityMatrix::single(diag({0.5, 0.5}))).bits == doctest::Approx(1.0).epsilon(1e-15));
    const EntropyValue s = von_neumann_entropy(DensityMatrix::single(diag({0.5, 0.25, 0.25})));
    CHECK(s.bits == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.nats == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-15));
    // eigenvalues inside the clamp window count as zero
    RealVector spectrum(3);
    spectrum << 1.0, 5e-13, -5e-11;
    CHECK(entropy_of_spectrum(spectrum).bits == 0.0);
}

TEST_CASE("entropy bounds and unitary invariance")
{
    SeededStream rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = rng.integer(2, 10);
        const ComplexMatrix rho = random_density(rng, n);
        const double s = von_neumann_entropy(DensityMatrix::single(rho)).bits;
        CHECK(s >= -1e-10);
        CHECK(s <= std::log2(static_cast<double>(n)) + 1e-10);
        CHECK(std::abs(s - oracle::entropy_bits(rho)) <= 1e-10);
        const ComplexMatrix u = random_unitary(rng, n);
        const double rotated = von_neumann_entropy(DensityMatrix::single(symmetrize(u * rho * u.adjoint()))).bits;
        CHECK(std::abs(rotated - s) <= 1e-10);
    }
}

TEST_CASE("Schmidt coefficients")
{
    ComplexVector product = tensor_product(ComplexVector(ComplexVector::Unit(2, 0)), ComplexVector(ComplexVector::Unit(3, 2)));
    const int first[] = {0};
    SchmidtSpectrum p = schmidt_coefficients(product, Dims{2, 3}, first);
    CHECK(p.coefficients.size() >= 1);
    CHECK(p.coefficients[0] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < p.coefficients.size(); ++i) {
        CHECK(p.coefficients[i] <= 1e-15);
    }

    const SchmidtSpectrum b = schmidt_coefficients(oracle::bell(), Dims{2, 2}, first);
    CHECK(b.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(b.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

    SeededStream rng(2);
    const ComplexVector psi = random_unit_vector(rng, 24);
    const int cut[] = {0, 2};
    const SchmidtSpectrum s = schmidt_coefficients(psi, Dims{2, 3, 4}, cut);
    double norm = 0.0;
    RealVector squares(static_cast<Eigen::Index>(s.coefficients.size()));
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        norm += s.coefficients[i] * s.coefficients[i];
        squares(static_cast<Eigen::Index>(i)) = s.coefficients[i] * s.coefficients[i];
        if (i) {
            CHECK(s.coefficients[i - 1] >= s.coefficients[i]);
        }
    }
    CHECK(std::abs(norm - 1.0) <= 1e-10);
    const ComplexMatrix rho = psi * psi.adjoint();
    CHECK(std::abs(entropy_of_spectrum(squares).bits - oracle::entropy_bits(oracle::partial_trace(rho, {2, 3, 4}, {1}))) <= 1e-9);

    CHECK(code_of([&] { schmidt_coefficients(2.0 * psi, Dims{2, 3, 4}, cut); }) == ErrorCode::NotNormalized);
    const int all[] = {0, 1, 2};
    CHECK(code_of([&] { schmidt_coefficients(psi, Dims{2, 3, 4}, all); }) == ErrorCode::BadCut);
    CHECK(code_of([&] { schmidt_coefficients(psi, Dims{2, 3, 4}, std::span<const int>{}); }) == ErrorCode::BadCut);
}

TEST_CASE("pure-state marginal symmetry on random bipartitions")
{
    SeededStream rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int da = rng.integer(2, 8);
        const int db = rng.integer(2, 8);
        const ComplexVector psi = random_unit_vector(rng, da * db);
        const DensityMatrix rho = DensityMatrix::pure(psi, Dims{da, db});
        const double sa = von_neumann_entropy(rho.reduced({0})).bits;
        const double sb = von_neumann_entropy(rho.reduced({1})).bits;
        CHECK(std::abs(sa - sb) <= 1e-9);
    }
}

TEST_CASE("strong subadditivity gap")
{
    SeededStream rng(4);
    const std::vector<ComplexMatrix> f{random_density(rng, 2), random_density(rng, 2), random_density(rng, 2)};
    const DensityMatrix product(tensor_product(f), Dims{2, 2, 2});
    const int r0[] = {0};
    const int r2[] = {2};
    const int r01[] = {0, 1};
    const int r12[] = {1, 2};
    CHECK(std::abs(ssa_gap(product, r0, r2)) <= 1e-10);
    CHECK(ssa_gap(product, r01, r01) == 0.0);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho(random_density(rng, 8), Dims{2, 2, 2});
        const double gap = ssa_gap(rho, r01, r12);
        CHECK(gap >= -1e-9);
        // brute force S(AB) + S(BC) - S(B) - S(ABC)
        const ComplexMatrix& m = rho.matrix();
        const double brute = oracle::entropy_bits(oracle::partial_trace(m, {2, 2, 2}, {0, 1})) +
                             oracle::entropy_bits(oracle::partial_trace(m, {2, 2, 2}, {1, 2})) -
                             oracle::entropy_bits(oracle::partial_trace(m, {2, 2, 2}, {1})) - oracle::entropy_bits(m);
        CHECK(std::abs(gap - brute) <= 1e-10);
    }
    const int bad[] = {3};
    const int twice[] = {1, 1};
    CHECK(code_of([&] { ssa_gap(product, bad, r0); }) == ErrorCode::BadRegion);
    CHECK(code_of([&] { ssa_gap(product, twice, r0); }) == ErrorCode::BadRegion);
}

TEST_CASE("modular Hamiltonian")
{
    const ModularHamiltonian h = modular_hamiltonian(DensityMatrix::single(diag({0.5, 0.5})));
    CHECK(max_abs(h.matrix - std::log(2.0) * ComplexMatrix::Identity(2, 2)) <= 1e-15);
    CHECK(h.support_dimension == 2);

    const double z = std::exp(-1.0) + std::exp(-2.0);
    const ModularHamiltonian g = modular_hamiltonian(DensityMatrix::single(diag({std::exp(-1.0) / z, std::exp(-2.0) / z})));
    CHECK(max_abs(g.matrix - (diag({1.0, 2.0}) + std::log(z) * ComplexMatrix::Identity(2, 2))) <= 1e-14);

    SeededStream rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = random_density(rng, 5);
        const ModularHamiltonian m = modular_hamiltonian(DensityMatrix::single(rho));
        CHECK(max_abs(matrix_function(m.matrix, [](double x) { return std::exp(-x); }) - rho) <= 1e-9);
    }

    const ModularHamiltonian deficient = modular_hamiltonian(DensityMatrix::single(diag({0.75, 0.25, 0.0})));
    CHECK(deficient.support_dimension == 2);
}

TEST_CASE("negativity and PPT gap")
{
    SeededStream rng(6);
    const DensityMatrix product(tensor_product(random_density(rng, 2), random_density(rng, 3)), Dims{2, 3});
    CHECK(negativity(product, 0) <= 1e-12);
    CHECK(ppt_gap(product, 1) >= 0.0);

    const DensityMatrix bell = DensityMatrix::pure(oracle::bell(), Dims{2, 2});
    CHECK(negativity(bell, 0) == doctest::Approx(0.5));
    CHECK(ppt_gap(bell, 1) == doctest::Approx(-0.5));

    const ComplexMatrix p_bell = oracle::projector(oracle::bell());
    auto werner = [&](double p) {
        return DensityMatrix(p * p_bell + (1 - p) * ComplexMatrix::Identity(4, 4) / 4.0, Dims{2, 2});
    };
    CHECK(negativity(werner(1.0 / 3.0), 0) <= 1e-9);
    CHECK(negativity(werner(0.5), 0) > 0.0);
    // oracle: (||rho^T||_1 - 1)/2
    const DensityMatrix w = werner(0.7);
    CHECK(std::abs(negativity(w, 1) - 0.5 * (oracle::trace_norm(oracle::partial_transpose(w.matrix(), {2, 2}, 1)) - 1.0)) <= 1e-12);

    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho(random_density(rng, 8), Dims{2, 4});
        if (ppt_gap(rho, 0) >= 0.0) {
            CHECK(negativity(rho, 0) <= 1e-9);
        }
    }
    CHECK(code_of([&] { negativity(bell, 2); }) == ErrorCode::BadCut);
    CHECK(code_of([&] { ppt_gap(bell, -1); }) == ErrorCode::BadCut);
}

} // TEST_SUITE
