#include "causentropy/random.hpp"

#include <cmath>

#include "causentropy/constants.hpp"

namespace causentropy {

double SeededStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SeededStream::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

int SeededStream::integer(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

std::vector<double> SeededStream::dirichlet(std::size_t k)
{
    std::vector<double> out(k);
    double sum = 0.0;
    for (auto& x : out) {
        double u = uniform();
        while (u <= 0.0) {
            u = uniform();
        }
        x = -std::log(u);
        sum += x;
    }
    for (auto& x : out) {
        x /= sum;
    }
    return out;
}

ComplexVector random_unit_vector(SeededStream& rng, Eigen::Index n)
{
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

ComplexMatrix random_hermitian(SeededStream& rng, Eigen::Index n)
{
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_unitary(SeededStream& rng, Eigen::Index n)
{
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0);
    }
    return q;
}

ComplexMatrix random_density(SeededStream& rng, Eigen::Index n)
{
    ComplexMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) * 0.5;
}

} // namespace causentropy
