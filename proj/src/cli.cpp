#include "latdim/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "latdim/addressing.hpp"
#include "latdim/embedding.hpp"
#include "latdim/io.hpp"
#include "latdim/tree.hpp"
#include "latdim/verify.hpp"

namespace latdim::cli {

namespace {

Tree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return parse_edge_list(in);
}

Embedding load_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " +
                                ex.what());
  }
  return embedding_from_json(j);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Isometric tree embeddings into minimum-dimension integer lattices"};
  app.name("latdim");
  app.require_subcommand(1);

  std::string tree_file;
  std::string embedding_file;
  bool want_tsv = false;
  bool want_json = false;
  std::optional<std::size_t> sample_pairs;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string scheme;
  std::optional<Vertex> root;
  int max_dim = 5;
  std::size_t n_vertices = 0;

  auto* embed_cmd = app.add_subcommand(
      "embed", "Embed a tree into Z^ceil(n/2) and print the normalized result");
  embed_cmd->add_option("file", tree_file, "edge-list file")->required();
  auto* embed_json_flag =
      embed_cmd->add_flag("--json", want_json, "JSON output (default)");
  embed_cmd->add_flag("--tsv", want_tsv, "TSV coordinate table instead")
      ->excludes(embed_json_flag);

  auto* verify_cmd = app.add_subcommand(
      "verify", "Check that an embedding preserves all tree distances");
  verify_cmd->add_option("file", tree_file, "edge-list file")->required();
  verify_cmd->add_option("--embedding", embedding_file, "embedding JSON file")
      ->required();
  verify_cmd->add_option(
      "--sample", sample_pairs,
      "check all edges plus N random pairs instead of every pair");
  verify_cmd->add_option("--seed", seed, "seed for --sample (default 0)");
  verify_cmd->add_option("--threads", threads,
                         "worker threads for the full check (default 1)");

  auto* address_cmd =
      app.add_subcommand("address", "Print a vertex addressing table");
  address_cmd->add_option("file", tree_file, "edge-list file")->required();
  address_cmd
      ->add_option("--scheme", scheme,
                   "hypercube (0/1 labels, Hamming) or grid (l1 labels)")
      ->required()
      ->check(CLI::IsMember({"hypercube", "grid"}));
  address_cmd->add_option("--root", root,
                          "root vertex for the hypercube scheme "
                          "(default: smallest id)");
  address_cmd->add_flag("--tsv", want_tsv, "TSV output instead of JSON");

  auto* dims_cmd = app.add_subcommand(
      "dims", "Print leaf count, lattice dimension, isometric dimension");
  dims_cmd->add_option("file", tree_file, "edge-list file")->required();

  auto* contract_cmd = app.add_subcommand(
      "contract",
      "Contract inner edges to a star and print the lower-bound certificate");
  contract_cmd->add_option("file", tree_file, "edge-list file")->required();
  contract_cmd
      ->add_option("--embedding", embedding_file, "embedding JSON file")
      ->required();

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Brute-force minimal embedding dimension (at most 10 vertices)");
  oracle_cmd->add_option("file", tree_file, "edge-list file")->required();
  oracle_cmd->add_option("--max-dim", max_dim,
                         "largest dimension to try (default 5)");

  auto* random_cmd =
      app.add_subcommand("random", "Print a seeded uniform random tree");
  random_cmd->add_option("--vertices", n_vertices, "vertex count")->required();
  random_cmd->add_option("--seed", seed, "generator seed (default 0)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("latdim");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (embed_cmd->parsed()) {
      Tree t = load_tree(tree_file);
      Embedding e = normalize(embed_tree(t));
      if (want_tsv)
        out << coordinates_to_tsv(e);
      else
        emit(out, embedding_to_json(e));
      return 0;
    }

    if (verify_cmd->parsed()) {
      Tree t = load_tree(tree_file);
      Embedding e = load_embedding(embedding_file);
      IsometryReport report =
          sample_pairs ? verify_isometric_sampled(t, e, *sample_pairs, seed)
                       : verify_isometric(t, e, threads);
      emit(out, report_to_json(report));
      return report.passed ? 0 : 1;
    }

    if (address_cmd->parsed()) {
      Tree t = load_tree(tree_file);
      AddressTable table;
      if (scheme == "hypercube") {
        Vertex r = root.value_or(t.vertices().front());
        table = hypercube_address(t, r);
      } else {
        table = grid_address(normalize(embed_tree(t)));
      }
      if (want_tsv)
        out << address_table_to_tsv(table);
      else
        emit(out, address_table_to_json(table));
      return 0;
    }

    if (dims_cmd->parsed()) {
      Tree t = load_tree(tree_file);
      Json j;
      j["leaves"] = t.leaves().size();
      j["lattice_dim"] = lattice_dimension(t);
      j["isometric_dim"] = t.edge_count();
      emit(out, j);
      return 0;
    }

    if (contract_cmd->parsed()) {
      Tree t = load_tree(tree_file);
      Embedding e = load_embedding(embedding_file);
      LowerBoundCertificate cert = contract_to_star(t, e);
      emit(out, certificate_to_json(cert));
      return 0;
    }

    if (oracle_cmd->parsed()) {
      Tree t = load_tree(tree_file);
      std::optional<int> found = brute_force_min_dimension(t, max_dim);
      Json j;
      if (found) {
        j["min_dimension"] = *found;
        emit(out, j);
        return 0;
      }
      j["min_dimension"] = nullptr;
      j["max_dim"] = max_dim;
      emit(out, j);
      err << "no isometric embedding in dimension <= " << max_dim << "\n";
      return 1;
    }

    if (random_cmd->parsed()) {
      out << to_edge_list(random_tree(n_vertices, seed));
      return 0;
    }
  } catch (const VerificationError& ex) {
    Json j;
    j["error"] = ex.what();
    emit(out, j);
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::logic_error& ex) {
    // reaching this means an internal construction check failed
    Json j;
    j["error"] = ex.what();
    emit(out, j);
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }

  err << "error: no subcommand\n";
  return 2;
}

}  // namespace latdim::cli
