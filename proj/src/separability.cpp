#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "causentropy/random.hpp"
#include "causentropy/states.hpp"

namespace causentropy {

namespace {

// Coordinates of a Hermitian matrix in R^{n^2} that preserve the
// Frobenius inner product; one extra trailing coordinate carries the trace.
RealVector hermitian_coords(const ComplexMatrix& m)
{
    const Eigen::Index n = m.rows();
    RealVector out(n * n + 1);
    Eigen::Index k = 0;
    const double root2 = std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(k++) = m(i, i).real();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            out(k++) = root2 * m(i, j).real();
            out(k++) = root2 * m(i, j).imag();
        }
    }
    out(k) = m.trace().real();
    return out;
}

struct ProductVertex {
    double value = -std::numeric_limits<double>::infinity();
    ComplexVector local;
    ComplexVector rest;
};

// Approximately maximizes <a (x) b| r |a (x) b> over unit vectors by
// alternating top-eigenvector updates from several random starts.
ProductVertex best_product_vertex(const ComplexMatrix& r, int da, int db, SeededStream& rng,
                                  const SeparabilityOptions& options)
{
    ProductVertex best;
    for (int restart = 0; restart < options.restarts; ++restart) {
        ComplexVector b = random_unit_vector(rng, db);
        ComplexVector a;
        double previous = -std::numeric_limits<double>::infinity();
        double value = previous;
        for (int it = 0; it < options.alternations; ++it) {
            ComplexMatrix ma(da, da);
            for (int i = 0; i < da; ++i) {
                for (int k = 0; k < da; ++k) {
                    ma(i, k) = b.dot(r.block(i * db, k * db, db, db) * b);
                }
            }
            const Spectrum sa = hermitian_eigendecompose(symmetrize(ma));
            a = sa.vectors.col(0);

            ComplexMatrix mb = ComplexMatrix::Zero(db, db);
            for (int i = 0; i < da; ++i) {
                for (int k = 0; k < da; ++k) {
                    mb += std::conj(a(i)) * a(k) * r.block(i * db, k * db, db, db);
                }
            }
            const Spectrum sb = hermitian_eigendecompose(symmetrize(mb));
            b = sb.vectors.col(0);
            value = sb.values(0);
            if (value - previous <= 1e-15 * std::max(1.0, std::abs(value))) {
                break;
            }
            previous = value;
        }
        if (value > best.value) {
            best.value = value;
            best.local = a;
            best.rest = b;
        }
    }
    return best;
}

RealVector solve_on(const Eigen::MatrixXd& a, const RealVector& b, const std::vector<Eigen::Index>& passive)
{
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(passive.size()));
    for (std::size_t j = 0; j < passive.size(); ++j) {
        sub.col(static_cast<Eigen::Index>(j)) = a.col(passive[j]);
    }
    const RealVector z_sub = sub.colPivHouseholderQr().solve(b);
    RealVector z = RealVector::Zero(a.cols());
    for (std::size_t j = 0; j < passive.size(); ++j) {
        z(passive[j]) = z_sub(static_cast<Eigen::Index>(j));
    }
    return z;
}

// Lawson-Hanson non-negative least squares, warm-started from a feasible x.
RealVector nnls(const Eigen::MatrixXd& a, const RealVector& b, RealVector x)
{
    const Eigen::Index m = a.cols();
    std::vector<bool> in_passive(static_cast<std::size_t>(m), false);
    for (Eigen::Index j = 0; j < m; ++j) {
        in_passive[static_cast<std::size_t>(j)] = x(j) > 0.0;
        if (x(j) <= 0.0) {
            x(j) = 0.0;
        }
    }
    auto passive_list = [&] {
        std::vector<Eigen::Index> out;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (in_passive[static_cast<std::size_t>(j)]) {
                out.push_back(j);
            }
        }
        return out;
    };
    const double tol = 1e-13 * std::max(1.0, b.norm());

    for (int outer = 0; outer < 3 * static_cast<int>(m) + 10; ++outer) {
        for (int inner = 0; inner < 3 * static_cast<int>(m) + 10; ++inner) {
            const auto passive = passive_list();
            if (passive.empty()) {
                break;
            }
            const RealVector z = solve_on(a, b, passive);
            double alpha = 1.0;
            bool feasible = true;
            for (Eigen::Index j : passive) {
                if (z(j) <= 0.0) {
                    feasible = false;
                    alpha = std::min(alpha, x(j) / (x(j) - z(j)));
                }
            }
            if (feasible) {
                x = z;
                break;
            }
            x += alpha * (z - x);
            for (Eigen::Index j : passive) {
                if (x(j) <= 1e-15) {
                    x(j) = 0.0;
                    in_passive[static_cast<std::size_t>(j)] = false;
                }
            }
        }
        const RealVector gradient = a.transpose() * (b - a * x);
        Eigen::Index entering = -1;
        double best = tol;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (!in_passive[static_cast<std::size_t>(j)] && gradient(j) > best) {
                best = gradient(j);
                entering = j;
            }
        }
        if (entering < 0) {
            break;
        }
        in_passive[static_cast<std::size_t>(entering)] = true;
        x(entering) = 0.0;
    }
    return x;
}

std::vector<int> cut_first_order(std::size_t arity, int cut)
{
    std::vector<int> order{cut};
    for (int s = 0; s < static_cast<int>(arity); ++s) {
        if (s != cut) {
            order.push_back(s);
        }
    }
    return order;
}

} // namespace

ComplexMatrix SeparableDecomposition::reconstruct(const Dims& dims) const
{
    const auto order = cut_first_order(dims.size(), cut);
    const Dims permuted_dims = dims.select(order);
    const Eigen::Index n = dims.total();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& term : terms) {
        sum += term.weight * tensor_product(term.local, term.rest);
    }
    std::vector<int> inverse(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        inverse[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    }
    return permute_subsystems(sum, permuted_dims, inverse);
}

SeparableDecomposition separable_decomposition(const DensityMatrix& rho, int cut, const SeparabilityOptions& options)
{
    const Dims& dims = rho.dims();
    if (cut < 0 || cut >= static_cast<int>(dims.size()) || dims.size() < 2) {
        throw Error(ErrorCode::BadCut, "cut index out of range");
    }
    const auto order = cut_first_order(dims.size(), cut);
    const ComplexMatrix target = permute_subsystems(rho.matrix(), dims, order);
    const int da = dims[static_cast<std::size_t>(cut)];
    const int db = static_cast<int>(dims.total()) / da;
    const Dims bipartite{da, db};

    SeparableDecomposition out;
    out.cut = cut;

    const ComplexMatrix local = partial_trace(target, bipartite, {0});
    const ComplexMatrix rest = partial_trace(target, bipartite, {1});
    const ComplexMatrix product_gap = target - tensor_product(local, rest);
    if (max_abs(product_gap) <= 1e-12) {
        out.terms.push_back({1.0, local, rest});
        out.trace_norm_error = trace_norm(product_gap);
        out.converged = out.trace_norm_error <= options.tolerance;
        return out;
    }

    SeededStream rng(options.seed + static_cast<std::uint64_t>(cut));
    const RealVector y = hermitian_coords(target);
    Eigen::MatrixXd design(y.size(), 0);
    std::vector<ComplexVector> locals;
    std::vector<ComplexVector> rests;
    RealVector weights(0);
    ComplexMatrix current = ComplexMatrix::Zero(target.rows(), target.cols());

    for (int k = 0; k < options.max_atoms; ++k) {
        out.iterations = k + 1;
        const ComplexMatrix residual = target - current;
        const ProductVertex vertex = best_product_vertex(residual, da, db, rng, options);
        const double gap = vertex.value - (residual * current).trace().real();
        if (k > 0 && gap <= 1e-15) {
            break;
        }
        const ComplexVector psi = tensor_product(vertex.local, vertex.rest);
        design.conservativeResize(Eigen::NoChange, design.cols() + 1);
        design.col(design.cols() - 1) = hermitian_coords(psi * psi.adjoint());
        locals.push_back(vertex.local);
        rests.push_back(vertex.rest);

        const double step = 2.0 / (k + 2.0);
        weights.conservativeResize(weights.size() + 1);
        weights.head(weights.size() - 1) *= (1.0 - step);
        weights(weights.size() - 1) = step;
        weights = nnls(design, y, weights);

        // drop atoms that left the active set
        Eigen::Index kept = 0;
        for (Eigen::Index j = 0; j < weights.size(); ++j) {
            if (weights(j) > 0.0) {
                design.col(kept) = design.col(j);
                weights(kept) = weights(j);
                locals[static_cast<std::size_t>(kept)] = locals[static_cast<std::size_t>(j)];
                rests[static_cast<std::size_t>(kept)] = rests[static_cast<std::size_t>(j)];
                ++kept;
            }
        }
        design.conservativeResize(Eigen::NoChange, kept);
        weights.conservativeResize(kept);
        locals.resize(static_cast<std::size_t>(kept));
        rests.resize(static_cast<std::size_t>(kept));

        const double total = weights.sum();
        current.setZero();
        for (Eigen::Index j = 0; j < kept; ++j) {
            const ComplexVector atom = tensor_product(locals[static_cast<std::size_t>(j)],
                                                      rests[static_cast<std::size_t>(j)]);
            current += (weights(j) / total) * (atom * atom.adjoint());
        }
        out.trace_norm_error = trace_norm(symmetrize(target - current));
        if (out.trace_norm_error <= options.tolerance) {
            out.converged = true;
            break;
        }
    }

    const double total = weights.sum();
    for (Eigen::Index j = 0; j < weights.size(); ++j) {
        const auto& a = locals[static_cast<std::size_t>(j)];
        const auto& b = rests[static_cast<std::size_t>(j)];
        out.terms.push_back({weights(j) / total, a * a.adjoint(), b * b.adjoint()});
    }
    return out;
}

} // namespace causentropy
