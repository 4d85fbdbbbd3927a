#include <algorithm>

#include "causentropy/entropy.hpp"
#include "causentropy/random.hpp"
#include "causentropy/states.hpp"

namespace causentropy {

namespace {

FamilyMember sample_member(FamilyKind kind, SeededStream& rng, const SearchOptions& options)
{
    FamilyMember member;
    member.kind = kind;
    if (kind == FamilyKind::Flagged) {
        const int k_count = rng.integer(2, 4);
        member.weights = rng.dirichlet(static_cast<std::size_t>(k_count));
        member.theta = rng.uniform(0.0, kPi / 2.0);
        member.d_g = options.flagged_d_g;
    } else {
        member.weights = rng.dirichlet(4);
        member.d_g = 4;
    }
    member.noise = rng.uniform(options.noise_floor, 1.0);
    return member;
}

} // namespace

SearchResult search_gravity_state(double target_negativity, std::uint64_t seed, const SearchOptions& options)
{
    if (!(target_negativity > 0.0 && target_negativity <= 0.5)) {
        throw Error(ErrorCode::DomainError, "target negativity must lie in (0, 0.5]");
    }
    if (options.families.empty()) {
        throw Error(ErrorCode::ConfigInvalid, "no state families to search");
    }
    if (!(options.noise_floor >= 0.0 && options.noise_floor <= 1.0)) {
        throw Error(ErrorCode::InvalidNoise, "noise floor must lie in [0, 1]");
    }

    SeededStream rng(seed);
    SearchFrontier frontier;
    for (long evaluation = 0; evaluation < options.budget; ++evaluation) {
        const FamilyKind kind = options.families[static_cast<std::size_t>(evaluation) % options.families.size()];
        const FamilyMember member = sample_member(kind, rng, options);
        const DensityMatrix rho = build_family_member(member);
        ++frontier.evaluations;

        const double gap_e = ppt_gap(rho, 1);
        const double gap_b = ppt_gap(rho, 2);
        if (gap_e < -kPptTolerance || gap_b < -kPptTolerance) {
            continue;
        }
        ++frontier.ppt_admissible;
        const double neg = negativity(rho, 0);
        if (neg > frontier.best_negativity) {
            frontier.best_negativity = neg;
            frontier.best_member = member;
        }
        if (neg < target_negativity || std::min(gap_e, gap_b) < options.min_certification_gap) {
            continue;
        }
        ++frontier.certification_attempts;
        PartitionCertificate cert = certify_partitions(rho, options.separability);
        if (cert.certifies_gravity_structure(target_negativity, options.separability.tolerance)) {
            return {rho, std::move(cert), member, frontier};
        }
    }
    throw SearchExhaustedError("no certified state with negativity >= " + std::to_string(target_negativity) +
                                   " after " + std::to_string(frontier.evaluations) +
                                   " evaluations (best admissible negativity " +
                                   std::to_string(frontier.best_negativity) + ")",
                               frontier);
}

} // namespace causentropy
