#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace causentropy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-10;
// Eigenvalues below this are exact zeros for logarithms (0 ln 0 := 0).
inline constexpr double kSupportThreshold = 1e-12;

/// Ordered subsystem dimensions of a tensor-product space. Every factor has
/// dimension at least 2.
class Dims {
public:
    Dims() = default;
    Dims(std::initializer_list<int> dims);
    explicit Dims(std::vector<int> dims);

    std::size_t size() const noexcept { return dims_.size(); }
    int operator[](std::size_t i) const { return dims_[i]; }
    long total() const noexcept;
    const std::vector<int>& values() const noexcept { return dims_; }

    /// Dimensions of the listed subsystems, in the given order.
    Dims select(std::span<const int> indices) const;
    /// Subsystem indices not in `indices`, ascending.
    std::vector<int> complement(std::span<const int> indices) const;

    friend bool operator==(const Dims&, const Dims&) = default;

private:
    std::vector<int> dims_;
};

struct Spectrum {
    RealVector values;     // descending
    ComplexMatrix vectors; // columns, unitary
};

struct JacobiOptions {
    int max_sweeps = 100;
    // Off-diagonal Frobenius norm relative to the input norm.
    double off_diagonal_tolerance = 1e-12;
};

/// Max-abs entry of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// (M + M^dagger)/2. Callers apply this once after constructing an operator;
/// operations never symmetrize silently.
ComplexMatrix symmetrize(const ComplexMatrix& m);

void require_square(const ComplexMatrix& m, const char* what);
void require_hermitian(const ComplexMatrix& m, const char* what,
                       double tolerance = kHermitianTolerance);

/// Cyclic complex Jacobi eigensolver. Throws NotHermitian or NoConvergence.
Spectrum hermitian_eigendecompose(const ComplexMatrix& m, const JacobiOptions& options = {});

/// Eigenvalues only, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Kronecker product, (A x B)[i*rB + k, j*cB + l] = A[i,j] B[k,l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Trace over every subsystem not listed in `keep` (strictly increasing).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims, std::span<const int> keep);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims,
                            std::initializer_list<int> keep);

/// Transpose of one tensor factor. An exact involution.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Dims& dims, int transposed);

/// Reorders tensor factors: output factor i is input factor order[i].
ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const Dims& dims,
                                 std::span<const int> order);

/// V f(lambda) V^dagger. Throws DomainError if f is not finite on an eigenvalue.
ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f);

/// As matrix_function, but f is applied only to eigenvalues >= threshold;
/// the remaining eigenspace maps to zero. `support_dim`, when given,
/// receives the number of retained eigenvalues.
ComplexMatrix matrix_function_on_support(const ComplexMatrix& m,
                                         const std::function<double(double)>& f,
                                         double threshold = kSupportThreshold,
                                         int* support_dim = nullptr);

double trace_norm(const ComplexMatrix& hermitian);
double max_abs(const ComplexMatrix& m);

} // namespace causentropy
