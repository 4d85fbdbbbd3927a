#include "causentropy/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "causentropy/entropy.hpp"

namespace causentropy {

namespace {

constexpr double kNegativeEntropySlack = 1e-12;

void require_positive(double value, const char* name)
{
    if (!(value > 0.0)) {
        throw Error(ErrorCode::DomainError, std::string(name) + " must be positive");
    }
}

} // namespace

void validate_ledger(const EntropyLedger& l)
{
    const double fields[] = {l.s_g, l.s_e, l.s_b, l.s_e_star, l.s_b_star, l.s_0};
    for (double v : fields) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::InvalidLedger, "ledger entropies must be finite and non-negative");
        }
    }
    if (l.s_e_star > l.s_e) {
        throw Error(ErrorCode::InvalidLedger, "s_e_star exceeds s_e");
    }
    if (l.s_b_star > l.s_b) {
        throw Error(ErrorCode::InvalidLedger, "s_b_star exceeds s_b");
    }
}

TransferOutcome apply_transfer(const EntropyLedger& l, const TransferOptions& options)
{
    validate_ledger(l);
    if (!(l.s_e_star + l.s_b_star > 2.0 * l.s_0)) {
        throw Error(ErrorCode::ConditionViolated, "absorbed entropies must exceed 2 s_0");
    }
    if (options.strict_monotonicity && !(l.s_e_star > l.s_0 && l.s_b_star > l.s_0)) {
        throw Error(ErrorCode::ConditionViolated, "strict mode needs s_e_star > s_0 and s_b_star > s_0");
    }

    TransferOutcome out;
    out.ledger = l;
    out.delta_s_e_star = l.s_e_star - l.s_0;
    out.delta_s_b_star = l.s_b_star - l.s_0;
    out.s_g_prime = l.s_g + out.delta_s_e_star + out.delta_s_b_star;
    // s_x - (s_x - s_0) is s_0 algebraically; keep it exact.
    out.s_e_prime = l.s_e_star == l.s_e ? l.s_0 : l.s_e - out.delta_s_e_star;
    out.s_b_prime = l.s_b_star == l.s_b ? l.s_0 : l.s_b - out.delta_s_b_star;
    out.delta_s_g = out.delta_s_e_star + out.delta_s_b_star;
    out.delta_s_tot = out.delta_s_g + out.delta_s_e_star + out.delta_s_b_star;
    out.conservation_residual = (l.s_g + l.s_e + l.s_b) - (out.s_g_prime + out.s_e_prime + out.s_b_prime);

    if (out.s_g_prime < -kNegativeEntropySlack || out.s_e_prime < -kNegativeEntropySlack ||
        out.s_b_prime < -kNegativeEntropySlack) {
        throw Error(ErrorCode::NegativeEntropy, "transfer produced a negative entropy");
    }
    return out;
}

TransferOutcome max_transfer(const EntropyLedger& ledger)
{
    EntropyLedger l = ledger;
    l.s_e_star = l.s_e;
    l.s_b_star = l.s_b;
    return apply_transfer(l);
}

AbsorbedEntropies absorbed_entropies(const DensityMatrix& rho_e, const DensityMatrix& rho_b,
                                     std::span<const int> star_e, std::span<const int> star_b)
{
    auto star_entropy = [](const DensityMatrix& rho, std::span<const int> star) {
        if (star.empty()) {
            throw Error(ErrorCode::BadPartition, "empty star partition");
        }
        for (std::size_t i = 0; i < star.size(); ++i) {
            if (star[i] < 0 || star[i] >= static_cast<int>(rho.arity()) || (i > 0 && star[i] <= star[i - 1])) {
                throw Error(ErrorCode::BadPartition, "star indices must be valid and strictly increasing");
            }
        }
        if (star.size() == rho.arity()) {
            return von_neumann_entropy(rho).bits;
        }
        return von_neumann_entropy(rho.reduced(star)).bits;
    };
    return {star_entropy(rho_e, star_e), star_entropy(rho_b, star_b)};
}

EnergyEntropyDelta entropy_energy_delta(const DensityMatrix& rho_x, const DensityMatrix& rho_0,
                                        const ComplexMatrix& h0, double temperature, double k_b)
{
    if (rho_x.dimension() != rho_0.dimension() || h0.rows() != rho_x.dimension() || h0.cols() != rho_x.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "states and Hamiltonian dimensions differ");
    }
    require_positive(temperature, "temperature");
    require_positive(k_b, "k_B");
    require_hermitian(h0, "entropy_energy_delta");
    EnergyEntropyDelta out;
    out.delta_e = ((rho_x.matrix() - rho_0.matrix()) * h0).trace().real();
    out.delta_s_nats = out.delta_e / (k_b * temperature);
    return out;
}

ThermoRecord build_thermo_record(const TransferOutcome& outcome, double t_0, double t_e_star, double t_b_star,
                                 double k_b)
{
    require_positive(t_0, "t_0");
    require_positive(t_e_star, "t_e_star");
    require_positive(t_b_star, "t_b_star");
    require_positive(k_b, "k_B");
    ThermoRecord r;
    r.t_0 = t_0;
    r.t_e_star = t_e_star;
    r.t_b_star = t_b_star;
    r.t_g = t_0;
    r.k_b = k_b;
    r.e_e_star = k_b * t_0 * outcome.delta_s_e_star * kLn2;
    r.e_b_star = k_b * t_0 * outcome.delta_s_b_star * kLn2;
    r.delta_e_g = k_b * t_0 * outcome.delta_s_g * kLn2;
    return r;
}

EnergyConservationReport energy_conservation_check(const ThermoRecord& record, const TransferOutcome& outcome,
                                                   double relative_tolerance)
{
    EnergyConservationReport rep;
    rep.tolerance = relative_tolerance;
    rep.energy_residual = std::abs(record.delta_e_g - (record.e_e_star + record.e_b_star));
    rep.energy_scale = std::max({std::abs(record.delta_e_g), std::abs(record.e_e_star) + std::abs(record.e_b_star)});
    const double lhs = record.delta_e_g / (record.k_b * record.t_0);
    const double rhs = outcome.delta_s_g * kLn2;
    rep.entropy_residual = std::abs(lhs - rhs);
    rep.entropy_scale = std::max(std::abs(lhs), std::abs(rhs));
    auto within = [relative_tolerance](double residual, double scale) {
        return residual <= relative_tolerance * (scale > 0.0 ? scale : 1.0);
    };
    rep.pass = within(rep.energy_residual, rep.energy_scale) && within(rep.entropy_residual, rep.entropy_scale);
    return rep;
}

LocalThermoDeltas local_thermo_deltas(const ThermoRecord& record, const TransferOutcome& outcome)
{
    LocalThermoDeltas d;
    d.delta_e_e_star = record.k_b * record.t_e_star * outcome.delta_s_e_star * kLn2;
    d.delta_e_b_star = record.k_b * record.t_b_star * outcome.delta_s_b_star * kLn2;
    d.delta_s_tot_bits = 2.0 *
                         (d.delta_e_e_star / (record.k_b * record.t_e_star) +
                          d.delta_e_b_star / (record.k_b * record.t_b_star)) /
                         kLn2;
    return d;
}

} // namespace causentropy
