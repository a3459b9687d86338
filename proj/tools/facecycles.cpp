// Command-line surface: lattices, shellings, decompositions, bipartiteness,
// corpus generation, and the per-polytope verification battery.
//
// Exit codes: 0 all checks pass, 1 property failure, 2 input error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "facecycles/corpus.hpp"
#include "facecycles/cyclespace.hpp"
#include "facecycles/decompose.hpp"
#include "facecycles/dot.hpp"
#include "facecycles/io.hpp"
#include "facecycles/shelling.hpp"

namespace {

using fc::Json;

bool log_enabled() {
  const char* v = std::getenv("FC_LOG");
  return v != nullptr && *v != '\0';
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

// Deterministic stdout report; wall time goes to the stderr summary only so
// repeated runs stay byte-identical.
void emit(const Json& report, const Timer& timer, const std::string& summary) {
  std::cout << report.dump(2) << '\n';
  std::cerr << summary << " (" << static_cast<long>(timer.ms() + 0.5) << " ms)\n";
}

Json faces_json(const std::vector<std::vector<int>>& faces) {
  Json arr = Json::array();
  for (const auto& f : faces) arr.push_back(f);
  return arr;
}

// Target syntax: "u-v,u-v,..." over canonical vertex indices, or
// "random:<k>:<seed>" for the XOR of k seeded fundamental cycles.
fc::EdgeSet parse_target(const std::string& spec, const fc::Graph& g) {
  if (spec.rfind("random:", 0) == 0) {
    std::string rest = spec.substr(7);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw fc::InputError("target 'random:<k>:<seed>' needs two fields");
    int k = 0;
    uint64_t seed = 0;
    try {
      k = std::stoi(rest.substr(0, colon));
      seed = std::stoull(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw fc::InputError("cannot parse '" + spec + "'");
    }
    if (k < 0) throw fc::InputError("random target needs k >= 0");
    return fc::random_even_subgraph_sparse(g, k, seed);
  }
  fc::EdgeSet target(g);
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    auto dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
      throw fc::InputError("edge '" + item + "' is not of the form u-v");
    int u = 0, v = 0;
    try {
      u = std::stoi(item.substr(0, dash));
      v = std::stoi(item.substr(dash + 1));
    } catch (const std::exception&) {
      throw fc::InputError("edge '" + item + "' is not of the form u-v");
    }
    int id = (u >= 0 && v >= 0 && u < g.vertex_count() && v < g.vertex_count())
                 ? g.edge_id(u, v)
                 : -1;
    if (id < 0) throw fc::InputError("edge '" + item + "' is not an edge of the polytope graph");
    target.flip(id);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return target;
}

struct TargetNotEven : fc::InputError {
  explicit TargetNotEven(const std::vector<int>& odd)
      : fc::InputError("target is not even; odd-degree vertices: " + join(odd)) {}
  static std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  }
};

int cmd_lattice(const std::string& input, const std::string& emit_dot) {
  Timer timer;
  fc::PolytopeFile file = fc::PolytopeFile::load(input);
  fc::FaceLattice lat = file.lattice();
  Json report;
  report["command"] = "lattice";
  report["input_digest"] = fc::fnv1a_digest(input);
  Json results;
  results["polytope_dim"] = lat.polytope_dim;
  results["f_vector"] = lat.f_vector();
  Json by_dim = Json::array();
  for (const auto& level : lat.faces_by_dim) by_dim.push_back(faces_json(level));
  results["faces_by_dim"] = std::move(by_dim);
  report["results"] = std::move(results);
  if (!emit_dot.empty()) fc::write_dot_file(emit_dot, fc::polytope_graph(lat));
  std::string fv;
  for (int f : lat.f_vector()) fv += (fv.empty() ? "" : ",") + std::to_string(f);
  emit(report, timer, "lattice: f-vector (" + fv + ")");
  return 0;
}

int cmd_shelling(const std::string& input, uint64_t seed, const std::string& emit_dot) {
  Timer timer;
  fc::PolytopeFile file = fc::PolytopeFile::load(input);
  if (!file.has_coordinates()) throw fc::NoCoordinates();
  fc::FaceLattice lat = file.lattice();
  fc::Shelling sh = fc::line_shelling(lat, *file.vertices, seed);
  Json report;
  report["command"] = "shelling";
  report["input_digest"] = fc::fnv1a_digest(input);
  report["seed"] = seed;
  Json results;
  results["order"] = sh.order;
  Json pierce = Json::array();
  for (const auto& t : sh.certificate->pierce_params)
    pierce.push_back(t ? t->str() : "unbounded");
  results["pierce_params"] = std::move(pierce);
  Json base = Json::array(), dir = Json::array();
  for (const auto& c : sh.certificate->base_point) base.push_back(c.str());
  for (const auto& c : sh.certificate->direction) dir.push_back(c.str());
  results["base_point"] = std::move(base);
  results["direction"] = std::move(dir);
  Json steps = Json::array();
  for (const auto& r : sh.per_step_reports) {
    Json s;
    s["step"] = r.step_index;
    s["intersection_nonempty"] = r.intersection_nonempty;
    s["intersection_pure_codim2"] = r.intersection_pure_codim2;
    s["intersection_strongly_connected"] = r.intersection_strongly_connected;
    s["prefix_strongly_connected"] = r.prefix_strongly_connected;
    steps.push_back(std::move(s));
  }
  results["steps"] = std::move(steps);
  results["valid"] = sh.verified();
  report["results"] = std::move(results);
  if (!emit_dot.empty()) fc::write_dot_file(emit_dot, fc::polytope_graph(lat));
  emit(report, timer, "shelling: " + std::to_string(sh.order.size()) + " facets, " +
                          (sh.verified() ? "all step checks pass" : "STEP CHECK FAILED"));
  return sh.verified() ? 0 : 1;
}

int cmd_decompose(const std::string& input, const std::string& target_spec,
                  uint64_t seed, const std::string& method, const std::string& emit_dot) {
  Timer timer;
  fc::PolytopeFile file = fc::PolytopeFile::load(input);
  fc::FaceLattice lat = file.lattice();
  fc::Graph g = fc::polytope_graph(lat);
  fc::EdgeSet target = parse_target(target_spec, g);
  {
    std::vector<int> odd = fc::odd_degree_vertices(target);
    if (!odd.empty()) throw TargetNotEven(odd);
  }
  bool run_proof = method == "proof" || method == "both";
  bool run_oracle = method == "oracle" || method == "both";
  if (run_proof && !file.has_coordinates()) throw fc::NoCoordinates();

  Json report;
  report["command"] = "decompose";
  report["input_digest"] = fc::fnv1a_digest(input);
  report["seed"] = seed;
  report["method"] = method;
  Json results;
  Json target_edges = Json::array();
  target.for_each_edge([&](int id) {
    auto [u, v] = g.edge(id);
    target_edges.push_back(std::to_string(u) + "-" + std::to_string(v));
  });
  results["target_edges"] = std::move(target_edges);

  fc::FacialBasis basis = fc::facial_basis(lat, g);
  std::vector<std::vector<int>> two_faces = fc::two_face_list(lat);
  bool all_exact = true;

  auto faces_of = [&](const std::vector<int>& ids) {
    Json out = Json::array();
    for (int id : ids) out.push_back(two_faces[id]);
    return out;
  };

  if (run_proof) {
    auto [dec, trace] = fc::decompose_with_trace(lat, *file.vertices, g, target, seed);
    if (log_enabled()) std::cerr << trace.str();
    fc::EdgeSet rec = dec.reconstruct(basis);
    bool exact = rec == target;
    all_exact = all_exact && exact;
    Json r;
    r["two_face_ids"] = dec.two_face_ids;
    r["two_faces"] = faces_of(dec.two_face_ids);
    r["reconstruction_exact"] = exact;
    results["proof"] = std::move(r);
  }
  if (run_oracle) {
    std::optional<fc::Decomposition> dec = fc::oracle_decompose(basis, target);
    Json r;
    if (dec) {
      fc::EdgeSet rec = dec->reconstruct(basis);
      bool exact = rec == target;
      all_exact = all_exact && exact;
      r["two_face_ids"] = dec->two_face_ids;
      r["two_faces"] = faces_of(dec->two_face_ids);
      r["reconstruction_exact"] = exact;
    } else {
      r["in_row_space"] = false;
      all_exact = false;
    }
    results["oracle"] = std::move(r);
  }
  if (run_proof && run_oracle) results["agree_on_target"] = all_exact;
  report["results"] = std::move(results);
  if (!emit_dot.empty()) {
    std::map<int, int> cls;
    target.for_each_edge([&](int id) { cls[id] = 1; });
    fc::write_dot_file(emit_dot, g, &cls);
  }
  emit(report, timer,
       std::string("decompose: ") + (all_exact ? "RECONSTRUCTION=EXACT" : "FAILED"));
  return all_exact ? 0 : 1;
}

int cmd_bipartite(const std::string& input, const std::string& emit_dot) {
  Timer timer;
  fc::PolytopeFile file = fc::PolytopeFile::load(input);
  fc::FaceLattice lat = file.lattice();
  fc::Graph g = fc::polytope_graph(lat);
  fc::BipartiteResult bip = fc::is_bipartite(g);
  bool via_faces = fc::bipartite_via_2faces(lat, g);
  bool equivalent = bip.bipartite == via_faces;

  Json report;
  report["command"] = "bipartite";
  report["input_digest"] = fc::fnv1a_digest(input);
  Json results;
  results["is_bipartite_graph"] = bip.bipartite;
  results["bipartite_via_2faces"] = via_faces;
  results["equivalent"] = equivalent;
  std::vector<int> colors;
  if (bip.bipartite) {
    results["two_coloring"] = bip.coloring;
    colors = bip.coloring;
  } else {
    // The Corollary-3 argument, replayed: decompose the odd cycle into
    // facial cycles; one of them must have odd length.
    fc::FacialBasis basis = fc::facial_basis(lat, g);
    fc::Cycle odd = fc::Cycle::from_vertices(g, bip.odd_cycle);
    std::optional<fc::Decomposition> dec = fc::oracle_decompose(basis, odd.edge_set);
    fc::internal_check(dec.has_value(), "odd cycle must lie in the facial span");
    int witness = -1;
    for (int id : dec->two_face_ids)
      if (fc::facial_cycle(g, fc::two_face_list(lat)[id]).length() % 2) {
        witness = id;
        break;
      }
    fc::internal_check(witness >= 0, "some facial cycle in the decomposition is odd");
    results["odd_facial_cycle_witness"] = fc::two_face_list(lat)[witness];
    results["odd_cycle_in_graph"] = bip.odd_cycle;
  }
  report["results"] = std::move(results);
  if (!emit_dot.empty()) {
    if (bip.bipartite) {
      fc::write_dot_file(emit_dot, g, nullptr, &colors);
    } else {
      std::map<int, int> cls;
      fc::Cycle odd = fc::Cycle::from_vertices(g, bip.odd_cycle);
      odd.edge_set.for_each_edge([&](int id) { cls[id] = 1; });
      fc::write_dot_file(emit_dot, g, &cls);
    }
  }
  emit(report, timer, std::string("bipartite: ") + (bip.bipartite ? "yes" : "no") +
                          ", EQUIVALENT=" + (equivalent ? "true" : "false"));
  return equivalent ? 0 : 1;
}

int cmd_corpus(const std::string& family, int dim, int n, uint64_t seed,
               const std::string& out_dir) {
  Timer timer;
  if (dim < 2 || dim > 6) throw fc::InputError("corpus supports dim 2..6");
  std::vector<fc::Point> pts;
  std::string name;
  if (family == "simplex") {
    pts = fc::simplex_vertices(dim);
    name = "simplex_d" + std::to_string(dim);
  } else if (family == "cube") {
    pts = fc::cube_vertices(dim);
    name = "cube_d" + std::to_string(dim);
  } else if (family == "crosspolytope") {
    pts = fc::crosspolytope_vertices(dim);
    name = "crosspolytope_d" + std::to_string(dim);
  } else if (family == "cyclic") {
    pts = fc::cyclic_vertices(n, dim);
    name = "cyclic_d" + std::to_string(dim) + "_n" + std::to_string(n);
  } else if (family == "random") {
    pts = fc::random_polytope_vertices(dim, n, seed);
    name = "random_d" + std::to_string(dim) + "_n" + std::to_string(n) + "_s" +
           std::to_string(seed);
  } else {
    throw fc::InputError("unknown family '" + family + "'");
  }
  fc::PolytopeFile file = fc::PolytopeFile::from_points(std::move(pts));
  std::string path = out_dir + "/" + name + ".json";
  file.save(path);
  Json report;
  report["command"] = "corpus";
  report["family"] = family;
  report["dim"] = dim;
  if (family == "cyclic" || family == "random") report["n"] = n;
  if (family == "random") report["seed"] = seed;
  Json results;
  results["files"] = Json::array({path});
  results["vertex_count"] = static_cast<int>(file.vertices->size());
  report["results"] = std::move(results);
  emit(report, timer, "corpus: wrote " + path);
  return 0;
}

int cmd_verify(const std::string& input, int seeds, int samples) {
  Timer timer;
  fc::PolytopeFile file = fc::PolytopeFile::load(input);
  fc::FaceLattice lat = file.lattice();
  fc::Graph g = fc::polytope_graph(lat);
  fc::FacialBasis basis = fc::facial_basis(lat, g);
  const bool coords = file.has_coordinates();

  Json checks = Json::array();
  bool any_fail = false;
  auto record = [&](const std::string& id, const std::string& status,
                    const std::string& detail) {
    Json c;
    c["id"] = id;
    c["status"] = status;
    if (!detail.empty()) c["detail"] = detail;
    if (status == "fail") {
      any_fail = true;
      std::cerr << "FAIL " << id << ": " << detail << "\n";
    }
    checks.push_back(std::move(c));
  };

  // Corollary 2: facial-cycle rank spans the cycle space.
  {
    int rank = basis.rank();
    int expect = g.edge_count() - g.vertex_count() + 1;
    bool ok = fc::is_connected(g) && rank == expect;
    record("rank_identity", ok ? "pass" : "fail",
           "rank " + std::to_string(rank) + " vs |E|-|V|+1 = " + std::to_string(expect));
  }

  // Theorem 1 on sampled even subgraphs, via both methods.
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i < samples && ok; ++i) {
      fc::EdgeSet target = fc::random_even_subgraph(g, fc::mix_seed(0xFCu, i));
      std::optional<fc::Decomposition> od = fc::oracle_decompose(basis, target);
      if (!od || od->reconstruct(basis) != target) {
        ok = false;
        detail = "oracle failed on sample " + std::to_string(i);
        break;
      }
      if (coords) {
        fc::Decomposition pd = fc::decompose(lat, *file.vertices, g, target, 0);
        if (pd.reconstruct(basis) != target) {
          ok = false;
          detail = "proof method failed on sample " + std::to_string(i);
        }
      }
    }
    record(coords ? "decompose_both_methods" : "decompose_oracle_only",
           ok ? "pass" : "fail",
           ok ? std::to_string(samples) + " samples reconstruct exactly" : detail);
    if (!coords)
      record("decompose_proof_method", "skipped", "no coordinates in input");
  }

  // Line shellings across seeds.
  if (coords) {
    bool ok = true;
    std::string detail;
    for (int s = 0; s < seeds && ok; ++s) {
      try {
        fc::Shelling sh = fc::line_shelling(lat, *file.vertices, s);
        if (!sh.verified()) {
          ok = false;
          detail = "seed " + std::to_string(s) + " fails a step check";
        }
      } catch (const fc::Error& e) {
        ok = false;
        detail = std::string("seed ") + std::to_string(s) + ": " + e.what();
      }
    }
    record("shelling_seeds", ok ? "pass" : "fail",
           ok ? std::to_string(seeds) + " seeds verified" : detail);
  } else {
    record("shelling_seeds", "skipped", "no coordinates in input");
  }

  // Corollary 3 equivalence.
  {
    bool graph_bip = fc::is_bipartite(g).bipartite;
    bool face_bip = fc::bipartite_via_2faces(lat, g);
    record("bipartite_equivalence", graph_bip == face_bip ? "pass" : "fail",
           std::string("graph ") + (graph_bip ? "bipartite" : "nonbipartite") +
               ", 2-faces " + (face_bip ? "even" : "odd"));
  }

  // In a 3-polytope each edge lies in exactly two 2-faces.
  if (lat.polytope_dim == 3) {
    fc::EdgeSet acc(g);
    for (const fc::EdgeSet& row : basis.rows) acc ^= row;
    record("faces_xor_empty_3d", acc.empty() ? "pass" : "fail",
           acc.empty() ? "XOR of all facial cycles is empty"
                       : std::to_string(acc.count()) + " edges uncancelled");
  }

  Json report;
  report["command"] = "verify";
  report["input_digest"] = fc::fnv1a_digest(input);
  report["seeds"] = seeds;
  report["samples"] = samples;
  Json results;
  results["checks"] = std::move(checks);
  results["pass"] = !any_fail;
  report["results"] = std::move(results);
  emit(report, timer, std::string("verify: ") + (any_fail ? "FAIL" : "PASS"));
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"face lattices, line shellings, and facial-cycle decompositions of polytopes"};
  app.require_subcommand(1);

  std::string input, emit_dot, target_spec, method = "both", family, out_dir;
  uint64_t seed = 0;
  int dim = 3, n = 0, seeds = 3, samples = 20;

  CLI::App* lattice = app.add_subcommand("lattice", "face lattice and f-vector");
  lattice->add_option("input", input, "polytope JSON file")->required();
  lattice->add_option("--emit-dot", emit_dot, "write the polytope graph as DOT");

  CLI::App* shelling = app.add_subcommand("shelling", "line shelling with verification");
  shelling->add_option("input", input)->required();
  shelling->add_option("--seed", seed, "direction seed");
  shelling->add_option("--emit-dot", emit_dot);

  CLI::App* decompose = app.add_subcommand("decompose", "decompose an even subgraph into facial cycles");
  decompose->add_option("input", input)->required();
  decompose->add_option("--target", target_spec, "edge list u-v,... or random:<k>:<seed>")->required();
  decompose->add_option("--seed", seed, "shelling seed for the proof method");
  decompose->add_option("--method", method)->check(CLI::IsMember({"proof", "oracle", "both"}));
  decompose->add_option("--emit-dot", emit_dot);

  CLI::App* bipartite = app.add_subcommand("bipartite", "bipartiteness, both routes");
  bipartite->add_option("input", input)->required();
  bipartite->add_option("--emit-dot", emit_dot);

  CLI::App* corpus = app.add_subcommand("corpus", "generate polytope files");
  corpus->add_option("--family", family)->required()
      ->check(CLI::IsMember({"simplex", "cube", "crosspolytope", "cyclic", "random"}));
  corpus->add_option("--dim", dim, "dimension 2..6")->required();
  corpus->add_option("--n", n, "vertex count (cyclic/random)");
  corpus->add_option("--seed", seed, "sampling seed (random)");
  corpus->add_option("--out", out_dir, "output directory")->required();

  CLI::App* verify = app.add_subcommand("verify", "full property battery on one polytope");
  verify->add_option("input", input)->required();
  verify->add_option("--seeds", seeds, "shelling seeds to try");
  verify->add_option("--samples", samples, "random even subgraphs to decompose");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lattice->parsed()) return cmd_lattice(input, emit_dot);
    if (shelling->parsed()) return cmd_shelling(input, seed, emit_dot);
    if (decompose->parsed()) return cmd_decompose(input, target_spec, seed, method, emit_dot);
    if (bipartite->parsed()) return cmd_bipartite(input, emit_dot);
    if (corpus->parsed()) return cmd_corpus(family, dim, n, seed, out_dir);
    if (verify->parsed()) return cmd_verify(input, seeds, samples);
  } catch (const fc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const fc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
