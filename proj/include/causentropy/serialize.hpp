#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "causentropy/geometry.hpp"
#include "causentropy/horizon.hpp"
#include "causentropy/states.hpp"
#include "causentropy/transfer.hpp"

namespace causentropy {

using Json = nlohmann::json;

Json to_json(const ComplexMatrix& m); // {"re": [[...]], "im": [[...]]}
ComplexMatrix complex_matrix_from_json(const Json& j);

Json to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const Json& j);

Json to_json(const FamilyMember& member);
FamilyMember family_member_from_json(const Json& j);

Json to_json(const SeparableDecomposition& decomposition);
SeparableDecomposition separable_decomposition_from_json(const Json& j);
Json to_json(const PartitionCertificate& certificate);
PartitionCertificate partition_certificate_from_json(const Json& j);
Json to_json(const SearchFrontier& frontier);

Json to_json(const EntropyLedger& ledger);
EntropyLedger entropy_ledger_from_json(const Json& j);
Json to_json(const TransferOutcome& outcome);
Json to_json(const ThermoRecord& record);

Json to_json(const RegulatorScheme& scheme);
RegulatorScheme regulator_scheme_from_json(const Json& j);
Json to_json(const RegulatorReport& report);
Json to_json(const CauchyGeometry& geometry);

Json to_json(const SampledField& field);
SampledField sampled_field_from_json(const Json& j);

/// Long-format CSV: one column per axis (header names are free) followed by
/// the value column. Rows may come in any order; the axes are inferred from
/// the distinct coordinates and must form a complete uniform grid.
SampledField sampled_field_from_csv(std::istream& in);
SampledField read_sampled_field_csv(const std::string& path);

/// Sorted keys, no whitespace, floats printed with 17 significant digits.
std::string canonical_dump(const Json& j);

} // namespace causentropy
