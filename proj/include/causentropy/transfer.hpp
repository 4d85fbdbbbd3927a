#pragma once

#include <span>

#include "causentropy/states.hpp"

namespace causentropy {

/// Pre-transfer entropies in bits: the gravity environment G, the two local
/// systems E and B, the portions E*, B* absorbed by G, and the vacuum S_0.
struct EntropyLedger {
    double s_g = 0.0;
    double s_e = 0.0;
    double s_b = 0.0;
    double s_e_star = 0.0;
    double s_b_star = 0.0;
    double s_0 = 0.0;
};

struct TransferOutcome {
    EntropyLedger ledger;
    double s_g_prime = 0.0;
    double s_e_prime = 0.0;
    double s_b_prime = 0.0;
    double delta_s_e_star = 0.0;
    double delta_s_b_star = 0.0;
    double delta_s_g = 0.0;
    double delta_s_tot = 0.0;
    double conservation_residual = 0.0;
};

struct TransferOptions {
    // Additionally require s_e* > s_0 and s_b* > s_0, so both local
    // entropies strictly decrease.
    bool strict_monotonicity = false;
};

/// Throws InvalidLedger on negative entries or absorbed portions exceeding
/// their source entropies.
void validate_ledger(const EntropyLedger& ledger);

/// Causality-cancellation bookkeeping. Throws ConditionViolated unless
/// s_e* + s_b* > 2 s_0.
TransferOutcome apply_transfer(const EntropyLedger& ledger, const TransferOptions& options = {});

/// Transfer with s_e* = s_e and s_b* = s_b; both local systems end at s_0.
TransferOutcome max_transfer(const EntropyLedger& ledger);

struct AbsorbedEntropies {
    double s_e_star = 0.0; // bits
    double s_b_star = 0.0;
};

/// Von Neumann entropies of the reductions of rho_e and rho_b onto their
/// designated star factors.
AbsorbedEntropies absorbed_entropies(const DensityMatrix& rho_e, const DensityMatrix& rho_b,
                                     std::span<const int> star_e, std::span<const int> star_b);

struct EnergyEntropyDelta {
    double delta_e = 0.0;        // energy
    double delta_s_nats = 0.0;   // delta_e / (k_B T)
    double delta_s_bits() const { return delta_s_nats / kLn2; }
};

/// dE = tr((rho_x - rho_0) H0), dS = dE / (k_B T).
EnergyEntropyDelta entropy_energy_delta(const DensityMatrix& rho_x, const DensityMatrix& rho_0,
                                        const ComplexMatrix& h0, double temperature, double k_b);

struct ThermoRecord {
    double t_0 = 0.0;
    double t_e_star = 0.0;
    double t_b_star = 0.0;
    double t_g = 0.0;
    double e_e_star = 0.0;
    double e_b_star = 0.0;
    double delta_e_g = 0.0;
    double k_b = 0.0;
};

/// Thermal record of a transfer at vacuum temperature t_0: the absorbed
/// thermal energies E_x* = k_B T_0 dS_x* (nats) and dE_G = k_B T_0 dS_G.
/// T_E*, T_B* are caller inputs.
ThermoRecord build_thermo_record(const TransferOutcome& outcome, double t_0, double t_e_star, double t_b_star,
                                 double k_b);

struct EnergyConservationReport {
    double energy_residual = 0.0;   // |dE_G - (E_E* + E_B*)|
    double entropy_residual = 0.0;  // |dE_G/(k_B T_0) - dS_G ln 2|, nats
    double energy_scale = 0.0;
    double entropy_scale = 0.0;
    double tolerance = 1e-9;        // relative
    bool pass = false;
};

EnergyConservationReport energy_conservation_check(const ThermoRecord& record, const TransferOutcome& outcome,
                                                   double relative_tolerance = 1e-9);

/// Local energy changes implied by dS_x* = dE_x*/(k_B T_x*), and the
/// resulting total entropy change 2 (dE_E*/(k_B T_E*) + dE_B*/(k_B T_B*)).
struct LocalThermoDeltas {
    double delta_e_e_star = 0.0;
    double delta_e_b_star = 0.0;
    double delta_s_tot_bits = 0.0;
};

LocalThermoDeltas local_thermo_deltas(const ThermoRecord& record, const TransferOutcome& outcome);

} // namespace causentropy
