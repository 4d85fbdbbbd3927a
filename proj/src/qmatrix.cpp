#include "causentropy/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "causentropy/error.hpp"

namespace causentropy {

namespace {

void validate_dims(const std::vector<int>& dims)
{
    if (dims.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "empty subsystem list");
    }
    for (int d : dims) {
        if (d < 2) {
            throw Error(ErrorCode::DimensionMismatch,
                        "subsystem dimension " + std::to_string(d) + " < 2");
        }
    }
}

std::vector<long> strides_of(const Dims& dims)
{
    std::vector<long> strides(dims.size(), 1);
    for (std::size_t s = dims.size(); s-- > 1;) {
        strides[s - 1] = strides[s] * dims[s];
    }
    return strides;
}

// Offsets of every multi-index over `subsystems` (row-major in the listed
// order) inside the full index space.
std::vector<long> offsets_over(const Dims& dims, const std::vector<long>& strides,
                               std::span<const int> subsystems)
{
    std::vector<long> offsets{0};
    for (int s : subsystems) {
        std::vector<long> next;
        next.reserve(offsets.size() * dims[s]);
        for (long base : offsets) {
            for (int i = 0; i < dims[s]; ++i) {
                next.push_back(base + i * strides[s]);
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

void require_matching(const ComplexMatrix& rho, const Dims& dims)
{
    if (rho.rows() != rho.cols() || rho.rows() != dims.total()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix of size " + std::to_string(rho.rows()) + "x" +
                        std::to_string(rho.cols()) + " does not match dims product " +
                        std::to_string(dims.total()));
    }
}

} // namespace

Dims::Dims(std::initializer_list<int> dims) : dims_(dims) { validate_dims(dims_); }

Dims::Dims(std::vector<int> dims) : dims_(std::move(dims)) { validate_dims(dims_); }

long Dims::total() const noexcept
{
    return std::accumulate(dims_.begin(), dims_.end(), 1L, std::multiplies<>());
}

Dims Dims::select(std::span<const int> indices) const
{
    std::vector<int> out;
    out.reserve(indices.size());
    for (int i : indices) {
        out.push_back(dims_.at(static_cast<std::size_t>(i)));
    }
    return Dims(std::move(out));
}

std::vector<int> Dims::complement(std::span<const int> indices) const
{
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(dims_.size()); ++s) {
        if (std::find(indices.begin(), indices.end(), s) == indices.end()) {
            out.push_back(s);
        }
    }
    return out;
}

double hermiticity_defect(const ComplexMatrix& m)
{
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix symmetrize(const ComplexMatrix& m)
{
    require_square(m, "symmetrize");
    return (m + m.adjoint()) * 0.5;
}

void require_square(const ComplexMatrix& m, const char* what)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": matrix is not square");
    }
}

void require_hermitian(const ComplexMatrix& m, const char* what, double tolerance)
{
    require_square(m, what);
    const double defect = hermiticity_defect(m);
    if (!(defect <= tolerance)) {
        throw Error(ErrorCode::NotHermitian,
                    std::string(what) + ": asymmetry " + std::to_string(defect));
    }
}

Spectrum hermitian_eigendecompose(const ComplexMatrix& m, const JacobiOptions& options)
{
    require_hermitian(m, "hermitian_eigendecompose");
    const Eigen::Index n = m.rows();

    ComplexMatrix a = symmetrize(m);
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double scale = a.norm();
    auto off_norm = [&a, n] {
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    bool converged = scale == 0.0 || n == 1;
    for (int sweep = 0; !converged && sweep < options.max_sweeps; ++sweep) {
        if (off_norm() <= options.off_diagonal_tolerance * scale) {
            converged = true;
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= std::numeric_limits<double>::min() * scale) {
                    continue;
                }
                const Complex phase = apq / r; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const Complex u_pp = c;
                const Complex u_pq = s;
                const Complex u_qp = -s * std::conj(phase);
                const Complex u_qq = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    if (!converged && off_norm() > options.off_diagonal_tolerance * scale) {
        throw Error(ErrorCode::NoConvergence,
                    "Jacobi did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index x, Eigen::Index y) {
        return a(x, x).real() > a(y, y).real();
    });

    Spectrum out{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
        out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigendecompose(m).values; }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors)
{
    if (factors.empty()) {
        return ComplexMatrix::Identity(1, 1);
    }
    ComplexMatrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = tensor_product(out, factors[i]);
    }
    return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b)
{
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims, std::span<const int> keep)
{
    require_matching(rho, dims);
    if (keep.empty()) {
        throw Error(ErrorCode::EmptyKeepSet, "partial_trace needs at least one kept subsystem");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()) ||
            (i > 0 && keep[i] <= keep[i - 1])) {
            throw Error(ErrorCode::DimensionMismatch,
                        "keep indices must be valid and strictly increasing");
        }
    }
    const auto strides = strides_of(dims);
    const auto traced = dims.complement(keep);
    const auto kept_offsets = offsets_over(dims, strides, keep);
    const auto traced_offsets = offsets_over(dims, strides, traced);

    const auto m = static_cast<Eigen::Index>(kept_offsets.size());
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            Complex acc = 0.0;
            for (long t : traced_offsets) {
                acc += rho(kept_offsets[static_cast<std::size_t>(i)] + t,
                           kept_offsets[static_cast<std::size_t>(j)] + t);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims, std::initializer_list<int> keep)
{
    return partial_trace(rho, dims, std::span<const int>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Dims& dims, int transposed)
{
    require_matching(rho, dims);
    if (transposed < 0 || transposed >= static_cast<int>(dims.size())) {
        throw Error(ErrorCode::DimensionMismatch, "transposed subsystem index out of range");
    }
    const auto strides = strides_of(dims);
    const long stride = strides[static_cast<std::size_t>(transposed)];
    const int d = dims[static_cast<std::size_t>(transposed)];
    const Eigen::Index n = rho.rows();

    ComplexMatrix out(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const long cs = (c / stride) % d;
        for (Eigen::Index r = 0; r < n; ++r) {
            const long rs = (r / stride) % d;
            out(r + (cs - rs) * stride, c + (rs - cs) * stride) = rho(r, c);
        }
    }
    return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const Dims& dims, std::span<const int> order)
{
    require_matching(rho, dims);
    if (order.size() != dims.size()) {
        throw Error(ErrorCode::DimensionMismatch, "permutation length differs from subsystem count");
    }
    std::vector<int> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<int>(i)) {
            throw Error(ErrorCode::DimensionMismatch, "not a permutation of the subsystems");
        }
    }
    const auto strides = strides_of(dims);
    const Dims out_dims = dims.select(order);
    const auto out_strides = strides_of(out_dims);

    const Eigen::Index n = rho.rows();
    std::vector<Eigen::Index> map(static_cast<std::size_t>(n));
    for (Eigen::Index x = 0; x < n; ++x) {
        Eigen::Index y = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            const auto s = static_cast<std::size_t>(order[i]);
            y += ((x / strides[s]) % dims[s]) * out_strides[i];
        }
        map[static_cast<std::size_t>(x)] = y;
    }
    ComplexMatrix out(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = rho(r, c);
        }
    }
    return out;
}

ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<double(double)>& f)
{
    return matrix_function_on_support(m, f, -std::numeric_limits<double>::infinity());
}

ComplexMatrix matrix_function_on_support(const ComplexMatrix& m, const std::function<double(double)>& f,
                                         double threshold, int* support_dim)
{
    const Spectrum eig = hermitian_eigendecompose(m);
    const Eigen::Index n = m.rows();
    RealVector mapped = RealVector::Zero(n);
    int kept = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (eig.values(i) >= threshold) {
            const double y = f(eig.values(i));
            if (!std::isfinite(y)) {
                throw Error(ErrorCode::DomainError,
                            "function undefined at eigenvalue " + std::to_string(eig.values(i)));
            }
            mapped(i) = y;
            ++kept;
        }
    }
    if (support_dim != nullptr) {
        *support_dim = kept;
    }
    return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

double trace_norm(const ComplexMatrix& hermitian)
{
    return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NonPositiveAcceleration: return "NonPositiveAcceleration";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::InvalidNoise: return "InvalidNoise";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BadCut: return "BadCut";
    case ErrorCode::BadRegion: return "BadRegion";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::NegativeEntropy: return "NegativeEntropy";
    case ErrorCode::InvalidLedger: return "InvalidLedger";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::ZeroCutoff: return "ZeroCutoff";
    case ErrorCode::RegulatorViolation: return "RegulatorViolation";
    case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorCode::SchemeInconsistent: return "SchemeInconsistent";
    case ErrorCode::NonPositiveG: return "NonPositiveG";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::TruncationInvalid: return "TruncationInvalid";
    case ErrorCode::NonPositiveKappa: return "NonPositiveKappa";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace causentropy
