#pragma once

#include "ffgs/cohomology.hpp"
#include "ffgs/group_scheme.hpp"
#include "ffgs/iso.hpp"

#include <json.hpp>

#include <string>

namespace ffgs::io {

using Json = nlohmann::json;

inline constexpr const char* kObjectSchema = "ffgs_v1";
inline constexpr const char* kPacketSchema = "ffgs_packet_v1";

// Field elements are integers whose base-p digits are the polynomial
// coefficients, lowest first. Witt vectors are arrays of such integers
// (their components). Matrices are arrays of rows.

Json field_json(const Field& f);
FieldPtr parse_field(const Json& j, const std::string& path = "$");

Json matrix_json(const ChainMatrix& a);
/// Entries may carry fewer components than the ring length; missing ones are zero.
ChainMatrix parse_matrix(const Json& j, const WittRingPtr& ring, int rows, int cols,
                         const std::string& path);
/// Matrices over k = W_1(k) with plain field elements as entries.
Json fq_matrix_json(const ChainMatrix& a);
ChainMatrix parse_fq_matrix(const Json& j, const FieldPtr& f, int rows, int cols,
                            const std::string& path);

Json module_json(const DieudonneModule& m);
DieudonneModule parse_module(const Json& j, const FieldPtr& f, const std::string& path);

Json summand_json(const CartierSummand& s);
CartierSummand parse_summand(const Json& j, const FieldPtr& f, int witt_precision,
                             const std::string& path);

Json connected_json(const ConnectedDM& c);
ConnectedDM parse_connected(const Json& j, const std::string& path);

// Standalone documents: {"schema", "kind", "field", "value"}; packets use
// their own schema with the value inlined.
Json to_document(const DieudonneModule& m);
Json to_document(const GroupScheme& g);
Json to_document(const CartierModule& m);
Json to_document(const GeometricPacket& p);
Json to_document(const CohomReport& r, const FieldPtr& f);
Json to_document(const FormalGroupReport& r, const FieldPtr& f);
Json to_document(const GroupSchemeReport& r, const FieldPtr& f);
Json to_document(const CheckReport& r);

/// The document kind, after checking the schema tag.
std::string document_kind(const Json& doc);

DieudonneModule parse_module_document(const Json& doc);
GroupScheme parse_group_scheme_document(const Json& doc);
CartierModule parse_cartier_document(const Json& doc);
GeometricPacket parse_packet_document(const Json& doc);
CohomReport parse_cohom_report_document(const Json& doc);
FormalGroupReport parse_formal_report_document(const Json& doc);
GroupSchemeReport parse_gs_report_document(const Json& doc);
CheckReport parse_check_report_document(const Json& doc);

/// JSON text to a document; syntax errors become SchemaError with line:column.
Json parse_text(const std::string& text);
/// Canonical machine text: two-space indentation and a trailing newline.
std::string dump(const Json& doc);

GeometricPacket load_packet(const std::string& path);

} // namespace ffgs::io
