#include "latdim/io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latdim {

namespace {

Vertex parse_vertex_key(const std::string& key) {
  std::size_t used = 0;
  Vertex v;
  try {
    v = std::stoll(key, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("coordinate key '" + key +
                                "' is not a vertex id");
  }
  if (used != key.size() || v < 0)
    throw std::invalid_argument("coordinate key '" + key +
                                "' is not a vertex id");
  return v;
}

}  // namespace

Json embedding_to_json(const Embedding& e) {
  Json j;
  j["dimension"] = e.dimension();
  Json coords = Json::object();
  const auto& ids = e.vertices();
  for (std::size_t i = 0; i < ids.size(); ++i)
    coords[std::to_string(ids[i])] = e.points()[i];
  j["coordinates"] = std::move(coords);
  std::int64_t iso = 0;
  Json profile = Json::array();
  if (e.dimension() > 0 && e.vertices().size() > 1) {
    GridProfile gp = grid_profile(e);
    profile = gp.lengths;
    iso = gp.isometric_dim();
  }
  j["grid_profile"] = std::move(profile);
  j["isometric_dimension"] = iso;
  return j;
}

Embedding embedding_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("coordinates"))
    throw std::invalid_argument(
        "embedding JSON needs 'dimension' and 'coordinates'");
  if (!j["dimension"].is_number_integer())
    throw std::invalid_argument("'dimension' must be an integer");
  const int dim = j["dimension"].get<int>();
  if (!j["coordinates"].is_object())
    throw std::invalid_argument("'coordinates' must be an object");

  std::vector<std::pair<Vertex, std::vector<std::int32_t>>> entries;
  for (const auto& [key, value] : j["coordinates"].items()) {
    if (!value.is_array())
      throw std::invalid_argument("coordinates of vertex " + key +
                                  " must be an array");
    std::vector<std::int32_t> c;
    c.reserve(value.size());
    for (const auto& x : value) {
      if (!x.is_number_integer())
        throw std::invalid_argument("coordinates of vertex " + key +
                                    " must be integers");
      c.push_back(x.get<std::int32_t>());
    }
    entries.emplace_back(parse_vertex_key(key), std::move(c));
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Vertex> ids;
  std::vector<std::vector<std::int32_t>> coords;
  ids.reserve(entries.size());
  coords.reserve(entries.size());
  for (auto& [id, c] : entries) {
    ids.push_back(id);
    coords.push_back(std::move(c));
  }
  return Embedding(dim, std::move(ids), std::move(coords), 0);
}

Json report_to_json(const IsometryReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["checked_pairs"] = r.checked_pairs;
  j["mode"] = r.sampled ? "sampled" : "full";
  if (r.first_violation) {
    Json v;
    v["u"] = r.first_violation->u;
    v["v"] = r.first_violation->v;
    v["tree_distance"] = r.first_violation->tree_distance;
    v["l1_distance"] = r.first_violation->l1_distance;
    j["violation"] = std::move(v);
  }
  return j;
}

Json certificate_to_json(const LowerBoundCertificate& c) {
  Json j;
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json step;
    step["edge"] = {s.u, s.v};
    step["axis"] = s.axis;
    step["slab"] = {s.slab_u, s.slab_v};
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["final_leaf_count"] = c.final_star_leaf_count;
  j["final_dimension"] = c.final_dimension;
  j["bound"] = c.bound;
  return j;
}

Json address_table_to_json(const AddressTable& a) {
  Json j;
  j["scheme"] =
      a.scheme == AddressTable::Scheme::Hypercube ? "hypercube" : "grid";
  j["width"] = a.width;
  j["bounds"] = a.bounds;
  Json labels = Json::object();
  for (std::size_t i = 0; i < a.ids.size(); ++i)
    labels[std::to_string(a.ids[i])] = a.labels[i];
  j["labels"] = std::move(labels);
  return j;
}

namespace {

std::string table_to_tsv(const std::vector<Vertex>& ids,
                         const std::vector<std::vector<std::int32_t>>& rows,
                         int width) {
  std::ostringstream out;
  out << "vertex";
  for (int k = 0; k < width; ++k) out << "\tc" << k;
  out << "\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (std::int32_t x : rows[i]) out << "\t" << x;
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string address_table_to_tsv(const AddressTable& a) {
  return table_to_tsv(a.ids, a.labels, a.width);
}

std::string coordinates_to_tsv(const Embedding& e) {
  return table_to_tsv(e.vertices(), e.points(), e.dimension());
}

}  // namespace latdim
