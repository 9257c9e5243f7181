#pragma once

#include <string>

#include <json.hpp>

#include "solgeo/field.hpp"
#include "solgeo/frames.hpp"
#include "solgeo/report.hpp"

namespace solgeo {

using json = nlohmann::json;

json spec_to_json(const GridSpec& spec);
GridSpec spec_from_json(const json& j);

/// Field snapshots as {"spec": ..., "kind": ..., "values": [...]}. Doubles are
/// serialized with shortest round-trip formatting, so export followed by
/// import reproduces the field bit for bit. Complex entries appear as
/// [re, im]; matrices as row-major entry lists; 3-vectors as triples.
json field_to_json(const ScalarField& f);
json field_to_json(const Field<cplx>& f);
json field_to_json(const MatrixField& f);
json field_to_json(const Field<Vec3>& f);

ScalarField scalar_field_from_json(const json& j);
Field<cplx> complex_field_from_json(const json& j);
MatrixField matrix_field_from_json(const json& j);
Field<Vec3> vec3_field_from_json(const json& j);

/// Node coordinates followed by the flattened entries, one node per row.
/// Complex entries expand to re/im column pairs.
std::string field_to_csv(const ScalarField& f);
std::string field_to_csv(const MatrixField& f);
/// Spin trajectories: columns x[, t], S1, S2, S3.
std::string field_to_csv(const Field<Vec3>& f);

json report_to_json(const ResidualReport& rep);
ResidualReport report_from_json(const json& j);

/// One row per (label, level): label, h, linf, l2, observed order on the
/// final row of each label (empty otherwise).
std::string convergence_to_csv(const ConvergenceTable& table);
json convergence_to_json(const ConvergenceTable& table);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a partial report.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

}  // namespace solgeo
