#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causentropy/constants.hpp"
#include "causentropy/error.hpp"
#include "causentropy/qmatrix.hpp"

namespace causentropy {

/// Hermitian, positive semidefinite, unit-trace matrix with labelled tensor
/// factors. Construction validates; instances are immutable.
class DensityMatrix {
public:
    static constexpr double kTolerance = 1e-10;

    DensityMatrix(ComplexMatrix matrix, Dims dims, std::vector<std::string> labels = {});

    /// Single-factor state of dimension matrix.rows().
    static DensityMatrix single(ComplexMatrix matrix, std::string label = "A");
    static DensityMatrix pure(const ComplexVector& psi, Dims dims, std::vector<std::string> labels = {});

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Dims& dims() const noexcept { return dims_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    Eigen::Index dimension() const noexcept { return matrix_.rows(); }
    std::size_t arity() const noexcept { return dims_.size(); }

    int index_of(const std::string& label) const;
    /// Reduced state on `keep` (strictly increasing subsystem indices).
    DensityMatrix reduced(std::span<const int> keep) const;
    DensityMatrix reduced(std::initializer_list<int> keep) const;

private:
    ComplexMatrix matrix_;
    Dims dims_;
    std::vector<std::string> labels_;
};

struct ThermalParams {
    std::optional<double> eta;          // inverse temperature, 1/energy
    std::optional<double> temperature;  // kelvin (or energy units with k_b = 1)
    double boltzmann_constant = PhysicalConstants{}.k_b;

    static ThermalParams from_eta(double eta);
    static ThermalParams from_temperature(double temperature, double k_b = PhysicalConstants{}.k_b);

    /// Resolved inverse temperature. Throws DomainError on an invalid record.
    double inverse_temperature() const;
};

/// e^{-eta H} / Z, exponent shifted by its maximum before exponentiation.
DensityMatrix gibbs_state(const ComplexMatrix& h, const ThermalParams& params);

/// tr(O rho); the imaginary part is checked against 1e-10 and dropped.
double expectation(const ComplexMatrix& observable, const DensityMatrix& rho);

/// T_0 = hbar a / (2 pi k_B c).
double unruh_temperature(double acceleration, const PhysicalConstants& constants = {});

struct RindlerVacuum {
    DensityMatrix state;
    double temperature; // kelvin
};

RindlerVacuum rindler_vacuum(const ComplexMatrix& h0, double acceleration,
                             const PhysicalConstants& constants = {});

/// Equal mixture of the two causal orders.
DensityMatrix mix_causal_orders(const DensityMatrix& rho_12, const DensityMatrix& rho_21);

// ---------------------------------------------------------------------------
// Constructive tripartite families over (G, E, B).

enum class FamilyKind {
    /// (1-p) sum_k w_k tau_E^k (x) chi_GB^k + p I/n with qubit flag states
    /// tau^k and maximally entangled G-B states chi^k of distinct phases.
    Flagged,
    /// G = G1 (x) G2 with E isotropically paired to G1 and B to G2:
    /// (1-p) sum_ij w_ij P_i(G1,E) (x) P_j(G2,B) + p I/16, where P_0 is the
    /// Bell projector and P_1 the normalized projector onto its complement.
    PairedIsotropic,
};

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

struct FamilyMember {
    FamilyKind kind = FamilyKind::Flagged;
    double theta = 0.0;           // flag angle (Flagged only)
    std::vector<double> weights;  // K in [2,4] for Flagged; exactly 4 (w00,w01,w10,w11) for PairedIsotropic
    double noise = 0.0;           // white-noise fraction p
    int d_g = 2;                  // 2 or 4 for Flagged; 4 for PairedIsotropic
};

/// Flag states |tau_k> = cos(phi_k/2)|0> + sin(phi_k/2)|1>, phi_k = k (pi - 2 theta),
/// so adjacent flags overlap by sin(theta): theta = 0 gives orthogonal flags.
/// chi^k = (|g0>|0> + e^{2 pi i k/K} |g1_k>|1>)/sqrt 2 with g0 = |0>, g1_k = |1> for
/// d_G = 2 and g1_k = |1 + (k mod 3)> for d_G = 4.
DensityMatrix build_flagged_family(double theta, const std::vector<double>& weights, double noise,
                                   const Dims& dims);

DensityMatrix build_paired_isotropic_family(const std::vector<double>& weights, double noise);

DensityMatrix build_family_member(const FamilyMember& member);

// ---------------------------------------------------------------------------
// Partition certification.

struct DecompositionTerm {
    double weight;
    ComplexMatrix local; // state of the cut subsystem
    ComplexMatrix rest;  // state of the remaining subsystems, ascending order
};

struct SeparableDecomposition {
    int cut = 0;
    std::vector<DecompositionTerm> terms;
    double trace_norm_error = 0.0;
    int iterations = 0;
    bool converged = false;

    /// Reassembles sum_k w_k local_k (x) rest_k in the original factor order.
    ComplexMatrix reconstruct(const Dims& dims) const;
};

struct SeparabilityOptions {
    int max_atoms = 500;
    double tolerance = 1e-6;      // trace norm
    int restarts = 6;             // per linear-minimization call
    int alternations = 60;
    std::uint64_t seed = 0x5eed5eedULL;
};

/// Frank-Wolfe search for an explicit separable decomposition across
/// `cut` | rest. Atoms are products of pure states; after each classic
/// 2/(k+2) step the weights of all atoms are refitted by non-negative
/// least squares. Deterministic for a fixed seed.
SeparableDecomposition separable_decomposition(const DensityMatrix& rho, int cut,
                                               const SeparabilityOptions& options = {});

struct PartitionCertificate {
    double negativity_g_vs_eb = 0.0;
    double ppt_gap_e_cut = 0.0;
    double ppt_gap_b_cut = 0.0;
    std::optional<SeparableDecomposition> separable_decomposition_e_cut;
    std::optional<SeparableDecomposition> separable_decomposition_b_cut;
    double reconstruction_error_trace_norm = 0.0; // max over present decompositions

    /// G|EB entangled, both other cuts PPT and constructively separable.
    bool certifies_gravity_structure(double min_negativity = 0.0, double tolerance = 1e-6) const;
};

inline constexpr double kPptTolerance = 1e-9;

/// Expects subsystem order (G, E, B).
PartitionCertificate certify_partitions(const DensityMatrix& rho, const SeparabilityOptions& options = {});

struct SearchOptions {
    long budget = 100000;              // family evaluations
    double noise_floor = 0.0;          // minimum sampled p
    int flagged_d_g = 2;
    std::vector<FamilyKind> families{FamilyKind::Flagged, FamilyKind::PairedIsotropic};
    // Candidates closer than this to a PPT boundary are not sent to the
    // decomposition search (they still count toward the frontier).
    double min_certification_gap = 1e-3;
    SeparabilityOptions separability{};
};

struct SearchFrontier {
    long evaluations = 0;
    long ppt_admissible = 0;        // both complementary cuts PPT
    double best_negativity = 0.0;   // over PPT-admissible members
    std::optional<FamilyMember> best_member;
    long certification_attempts = 0;
};

struct SearchResult {
    DensityMatrix state;
    PartitionCertificate certificate;
    FamilyMember member;
    SearchFrontier frontier;
};

class SearchExhaustedError : public Error {
public:
    SearchExhaustedError(const std::string& what, SearchFrontier frontier)
        : Error(ErrorCode::SearchExhausted, what), frontier_(std::move(frontier)) {}
    const SearchFrontier& frontier() const noexcept { return frontier_; }

private:
    SearchFrontier frontier_;
};

SearchResult search_gravity_state(double target_negativity, std::uint64_t seed,
                                  const SearchOptions& options = {});

} // namespace causentropy
