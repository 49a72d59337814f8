#pragma once

#include <string>

#include <json.hpp>

#include "qcount/channel.hpp"
#include "qcount/counting.hpp"
#include "qcount/density.hpp"
#include "qcount/enumeration.hpp"
#include "qcount/machine.hpp"
#include "qcount/net.hpp"

namespace qcount {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"n": dim, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const Matrix& m);
/// Throws FormatError on a malformed document.
Matrix matrix_from_json(const Json& j);

/// Matrix document plus an optional "basis_n" for string-basis states.
Json density_to_json(const DensityOperator& rho);
/// Validates through make_density (InvalidStateError) after parsing (FormatError).
DensityOperator density_from_json(const Json& j);

/// {"in_dim", "out_dim", "kraus": [matrix...]}.
Json channel_to_json(const Channel& channel);
/// Validates through Channel::make.
Channel channel_from_json(const Json& j);

Json machine_spec_to_json(const MachineSpec& spec);
MachineSpec machine_spec_from_json(const Json& j);

Json counting_report_to_json(const CountingReport& report, bool include_witnesses = false);
Json proof_chain_to_json(const ProofChainReport& report);
Json cover_report_to_json(const CoverReport& report);
Json catalog_to_json(const OutputCatalog& catalog);
OutputCatalog catalog_from_json(const Json& j);

}  // namespace qcount
