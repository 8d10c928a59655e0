#pragma once

#include <string>

#include <json.hpp>

#include "latdim/addressing.hpp"
#include "latdim/embedding.hpp"
#include "latdim/verify.hpp"

namespace latdim {

// All emitters use ordered JSON with vertex keys inserted in ascending
// numeric order, so serialized output is byte-stable across runs.
using Json = nlohmann::ordered_json;

Json embedding_to_json(const Embedding& e);

/// Reads the object written by embedding_to_json ("dimension" and
/// "coordinates"; derived fields are ignored). Throws std::invalid_argument
/// on malformed input.
Embedding embedding_from_json(const nlohmann::json& j);

Json report_to_json(const IsometryReport& r);
Json certificate_to_json(const LowerBoundCertificate& c);
Json address_table_to_json(const AddressTable& a);

std::string address_table_to_tsv(const AddressTable& a);
std::string coordinates_to_tsv(const Embedding& e);

}  // namespace latdim
