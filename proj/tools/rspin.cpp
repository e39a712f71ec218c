// rspin: command-line surface over the graded r-spin graph library.
//
// Exit codes: 0 = success / positive verdict, 1 = well-formed negative
// verdict (invalid graph, infeasible spec, ...), 2 = usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rspin/graph.hpp"
#include "rspin/io.hpp"
#include "rspin/validate.hpp"
#include "rspin/canonical.hpp"
#include "rspin/ops.hpp"
#include "rspin/invariants.hpp"
#include "rspin/strata.hpp"
#include "rspin/signs.hpp"
#include "rspin/sections.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using rspin::json;
using ojson = nlohmann::ordered_json;

// FNV-1a over the raw input bytes, for the reproducibility digest.
std::string digest(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

struct Run {
  std::string command;
  std::string input_bytes;
  std::optional<unsigned> seed;

  // Wraps the payload in the run report and prints it.
  int finish(int code, ojson results) const {
    ojson rep;
    rep["command"] = command;
    rep["inputs_digest"] = digest(input_bytes);
    if (seed) rep["seed"] = *seed;
    rep["version"] = kVersion;
    rep["results"] = std::move(results);
    std::cout << rep.dump(2) << "\n";
    return code;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rspin::ParseError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

rspin::RSpinGraph load_graph(Run& run, const std::string& path) {
  std::string bytes = slurp(path);
  run.input_bytes += bytes;
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& e) {
    throw rspin::ParseError(std::string("invalid JSON: ") + e.what());
  }
  return rspin::parse_graph(doc);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw rspin::ParseError("bad integer list entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

ojson report_to_json(const rspin::ValidationReport& rep) {
  ojson arr = ojson::array();
  for (const auto& e : rep.entries) {
    ojson o;
    o["rule"] = e.rule;
    o["reference"] = e.ref;
    o["pass"] = e.pass;
    if (!e.detail.empty()) o["detail"] = e.detail;
    arr.push_back(std::move(o));
  }
  return arr;
}

ojson ledger_to_json(const rspin::SignLedger& led) {
  ojson arr = ojson::array();
  for (const auto& f : led.factors) {
    ojson o;
    o["value"] = f.value;
    o["rule"] = f.rule;
    o["note"] = f.note;
    arr.push_back(std::move(o));
  }
  return arr;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"graded r-spin dual graph toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string graph_path, graph_path2, config_path;
  std::string edge_list, boundary_list, twist_list, forget_boundary, forget_internal;
  std::string rule, steps_json;
  int opt_r = 2, opt_k = 0, opt_j = 1, opt_h = 1, opt_delta = 1;
  int opt_b1 = 0, opt_b2 = 0;
  unsigned opt_seed = 1;
  int opt_samples = 24;
  bool codim2 = false, alternate = false;
  std::string format = "json";

  auto* validate = app.add_subcommand("validate", "check validity of a graph document");
  validate->add_option("graph", graph_path, "graph JSON file")->required();

  auto* stable = app.add_subcommand("stable", "check stability of a graph document");
  stable->add_option("graph", graph_path, "graph JSON file")->required();

  auto* iso = app.add_subcommand("iso", "decide isomorphism of two graphs");
  iso->add_option("graph1", graph_path, "first graph JSON file")->required();
  iso->add_option("graph2", graph_path2, "second graph JSON file")->required();

  auto* detach = app.add_subcommand("detach", "detach edges / contracted-boundary tails");
  detach->add_option("graph", graph_path, "graph JSON file")->required();
  detach->add_option("--edges", edge_list, "comma list of half-edge or cb-tail ids")
      ->required();

  auto* forget = app.add_subcommand("forget", "forgetful map with stabilization");
  forget->add_option("graph", graph_path, "graph JSON file")->required();
  forget->add_option("--boundary", forget_boundary, "boundary markings to forget");
  forget->add_option("--internal", forget_internal, "internal markings to forget");

  auto* base = app.add_subcommand("base", "base graph of a boundary stratum");
  base->add_option("graph", graph_path, "graph JSON file")->required();

  auto* rank = app.add_subcommand("rank", "Witten bundle rank report");
  rank->add_option("graph", graph_path, "graph JSON file")->required();

  auto* feasible = app.add_subcommand("feasible", "is the smooth moduli spec non-empty");
  feasible->add_option("--r", opt_r, "root order")->required();
  feasible->add_option("--k", opt_k, "number of boundary markings")->required();
  feasible->add_option("--twists", twist_list, "comma list of internal twists");

  auto* aut = app.add_subcommand("aut", "automorphism group order");
  aut->add_option("graph", graph_path, "graph JSON file")->required();

  auto* dim = app.add_subcommand("dim", "moduli dimension / codimension report");
  dim->add_option("graph", graph_path, "graph JSON file")->required();

  auto* decompose = app.add_subcommand("decompose", "Witten rank decomposition ledger");
  decompose->add_option("graph", graph_path, "graph JSON file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "enumerate codimension-1 strata");
  enumerate->add_option("--r", opt_r, "root order")->required();
  enumerate->add_option("--boundary", boundary_list, "comma list of boundary labels")
      ->required();
  enumerate->add_option("--twists", twist_list, "comma list of internal twists");
  enumerate->add_flag("--codim2", codim2, "include internal-edge (codim-2) strata");

  auto* signs = app.add_subcommand("signs", "orientation sign calculus");
  signs->add_option("--rule", rule, "mc|closed-split|boundary-split|rotation|transport")
      ->required();
  signs->add_option("--r", opt_r, "root order");
  signs->add_option("--twists", twist_list, "comma list of twists");
  signs->add_option("--delta", opt_delta, "delta normalization (+1/-1)");
  signs->add_option("--b1", opt_b1, "size of block B1");
  signs->add_option("--b2", opt_b2, "size of block B2");
  signs->add_option("--k", opt_k, "number of boundary markings");
  signs->add_option("--shift", opt_h, "rotation amount");
  signs->add_option("--boundary", boundary_list, "ambient boundary labels (transport)");
  signs->add_option("--steps", steps_json, "JSON chain of degeneration steps (transport)");
  signs->add_flag("--alternate-family", alternate, "use the alternate family orientation");

  auto* sections = app.add_subcommand("sections", "numeric section lab on a disk");
  sections->add_option("config", config_path, "configuration JSON file")->required();
  sections->add_option("--j", opt_j, "which section sigma_j");
  sections->add_option("--shift", opt_h, "rotation amount");
  sections->add_option("--samples", opt_samples, "number of boundary samples");
  sections->add_option("--seed", opt_seed, "sampling seed");
  sections->add_option("--format", format, "json|csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  Run run;
  run.command = app.get_subcommands().front()->get_name();

  if (validate->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    rspin::ValidationReport rep = rspin::validate(g);
    ojson res;
    res["valid"] = rep.overall;
    res["rules"] = report_to_json(rep);
    return run.finish(rep.overall ? 0 : 1, res);
  }

  if (stable->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    bool st = rspin::is_stable(g);
    ojson res;
    res["stable"] = st;
    ojson per = ojson::object();
    for (const auto& [v, kind] : g.vertices) per[v] = rspin::is_vertex_stable(g, v);
    res["vertices"] = per;
    return run.finish(st ? 0 : 1, res);
  }

  if (iso->parsed()) {
    rspin::RSpinGraph g1 = load_graph(run, graph_path);
    rspin::RSpinGraph g2 = load_graph(run, graph_path2);
    bool same = rspin::are_isomorphic(g1, g2);
    ojson res;
    res["isomorphic"] = same;
    res["canonical_form_1"] = rspin::canonical_form(g1);
    res["canonical_form_2"] = rspin::canonical_form(g2);
    return run.finish(same ? 0 : 1, res);
  }

  if (detach->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    std::set<std::string> ids;
    std::stringstream ss(edge_list);
    std::string item;
    while (std::getline(ss, item, ',')) ids.insert(item);
    rspin::DetachResult d = rspin::detach_set(g, ids);
    ojson res;
    res["graph"] = rspin::emit_graph(d.graph);
    ojson tails = ojson::array();
    for (const auto& t : d.new_tails) {
      ojson o;
      o["id"] = t.id;
      o["tw"] = t.tw;
      o["anchor"] = t.anchor;
      if (t.marking) {
        if (t.marking->empty()) o["marking"] = 0;
        else o["marking"] = *t.marking;
      }
      tails.push_back(std::move(o));
    }
    res["new_tails"] = std::move(tails);
    res["empty_marking_union"] = d.empty_marking_union;
    return run.finish(0, res);
  }

  if (forget->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    std::set<int> bf, inf;
    for (int m : parse_int_list(forget_boundary)) bf.insert(m);
    for (int m : parse_int_list(forget_internal)) inf.insert(m);
    rspin::RSpinGraph out = rspin::forget_tails(g, bf, inf);
    ojson res;
    res["graph"] = rspin::emit_graph(out);
    return run.finish(0, res);
  }

  if (base->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    rspin::RSpinGraph out = rspin::base_graph(g);
    ojson res;
    res["graph"] = rspin::emit_graph(out);
    return run.finish(0, res);
  }

  if (rank->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    rspin::RankReport rep = rspin::witten_rank(g);
    ojson res;
    res["total_real_rank"] = rep.total;
    res["any_negative"] = rep.any_negative;
    ojson per = ojson::object();
    for (const auto& [v, rk] : rep.per_vertex) per[v] = rk;
    res["per_vertex_real_rank"] = per;
    return run.finish(rep.any_negative ? 1 : 0, res);
  }

  if (feasible->parsed()) {
    std::vector<int> a = parse_int_list(twist_list);
    auto [ok, reason] = rspin::moduli_nonempty_report(opt_r, opt_k, a);
    ojson res;
    res["feasible"] = ok;
    res["reason"] = reason;
    return run.finish(ok ? 0 : 1, res);
  }

  if (aut->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    rspin::AutomorphismCount c = rspin::automorphism_order(g);
    ojson res;
    res["order"] = c.order;
    res["closed_formula_used"] = c.closed_formula_used;
    return run.finish(0, res);
  }

  if (dim->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    rspin::DimensionReport rep = rspin::moduli_dimension(g);
    ojson res;
    res["dimension"] = rep.dim;
    res["codimension"] = rep.codim;
    res["ambient_k"] = rep.ambient_k;
    res["ambient_l"] = rep.ambient_l;
    return run.finish(0, res);
  }

  if (decompose->parsed()) {
    rspin::RSpinGraph g = load_graph(run, graph_path);
    std::vector<std::string> targets;
    for (const auto& [h, p] : g.edges()) targets.push_back(h);
    for (const auto& [id, he] : g.half_edges)
      if (he.contracted_boundary) targets.push_back(id);
    ojson arr = ojson::array();
    for (const auto& e : targets) {
      rspin::DecompositionReport rep = rspin::decompose_witten(g, e);
      ojson o;
      o["at"] = e;
      o["case"] = rspin::to_string(rep.kind);
      o["ambient_real_rank"] = rep.ambient_rank;
      o["component_real_ranks"] = rep.component_ranks;
      o["extra_terms"] = rep.extra_terms;
      if (rep.primed_rank) o["primed_total"] = *rep.primed_rank;
      o["pullback_rank_zero"] = rep.pullback_rank_zero;
      o["sequence_splits"] = rep.sequence_splits;
      o["identity"] = rep.identity;
      arr.push_back(std::move(o));
    }
    ojson res;
    res["decompositions"] = std::move(arr);
    return run.finish(0, res);
  }

  if (enumerate->parsed()) {
    rspin::AmbientSpec spec;
    spec.r = opt_r;
    spec.boundary_labels = parse_int_list(boundary_list);
    auto tws = parse_int_list(twist_list);
    for (size_t i = 0; i < tws.size(); ++i)
      spec.internal_twists[static_cast<int>(i + 1)] = tws[i];
    auto strata = rspin::enumerate_codim1(spec, codim2);
    ojson arr = ojson::array();
    for (const auto& s : strata) {
      ojson o;
      o["kind"] = s.kind;
      ojson b1 = ojson::array();
      for (int b : s.B1) b1.push_back(b);
      o["B1"] = std::move(b1);
      o["block_position"] = s.block_position;
      ojson i1 = ojson::array();
      for (int i : s.I1) i1.push_back(i);
      o["I1"] = std::move(i1);
      o["graph"] = rspin::emit_graph(s.graph);
      arr.push_back(std::move(o));
    }
    ojson res;
    res["count"] = strata.size();
    res["strata"] = std::move(arr);
    return run.finish(0, res);
  }

  if (signs->parsed()) {
    ojson res;
    if (rule == "mc") {
      res["mc"] = rspin::mc_invariant(opt_r, parse_int_list(twist_list));
    } else if (rule == "closed-split") {
      res["sign"] = rspin::closed_split_sign(opt_r, parse_int_list(twist_list), opt_delta);
    } else if (rule == "boundary-split") {
      res["sign"] = rspin::boundary_split_sign(opt_b1, opt_b2);
    } else if (rule == "rotation") {
      rspin::RotationSigns s = rspin::rotation_signs(opt_k, opt_h);
      res["sign_moduli"] = s.sign_M;
      res["sign_witten"] = s.sign_W;
      res["product"] = s.product;
    } else if (rule == "transport") {
      rspin::AmbientSpec spec;
      spec.r = opt_r;
      spec.boundary_labels = parse_int_list(boundary_list);
      auto tws = parse_int_list(twist_list);
      for (size_t i = 0; i < tws.size(); ++i)
        spec.internal_twists[static_cast<int>(i + 1)] = tws[i];
      std::vector<rspin::TransportStep> chain;
      if (!steps_json.empty()) {
        run.input_bytes += steps_json;
        json steps = json::parse(steps_json);
        for (const auto& s : steps) {
          rspin::TransportStep st;
          std::string kind = s.at("kind").get<std::string>();
          if (kind == "boundary") st.kind = rspin::TransportStep::Kind::Boundary;
          else if (kind == "internal") st.kind = rspin::TransportStep::Kind::Internal;
          else if (kind == "closed") st.kind = rspin::TransportStep::Kind::Closed;
          else throw rspin::ParseError("unknown step kind '" + kind + "'");
          st.component = s.value("component", 0);
          for (const auto& b : s.value("B1", json::array()))
            st.B1.push_back(b.get<std::string>());
          for (const auto& i : s.value("I1", json::array()))
            st.I1.push_back(i.get<std::string>());
          chain.push_back(std::move(st));
        }
      }
      rspin::SignLedger led = rspin::transport_sign(spec, chain, opt_delta, alternate);
      res["sign"] = led.product();
      res["factors"] = ledger_to_json(led);
    } else {
      std::cerr << "unknown --rule '" << rule << "'\n";
      return 2;
    }
    return run.finish(0, res);
  }

  if (sections->parsed()) {
    std::string bytes = slurp(config_path);
    run.input_bytes += bytes;
    run.seed = opt_seed;
    json doc = json::parse(bytes);
    rspin::DiskConfiguration c;
    c.r = doc.at("r").get<int>();
    for (const auto& x : doc.at("x")) c.x.push_back(x.get<double>());
    for (const auto& z : doc.at("z"))
      c.z.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    for (const auto& a : doc.at("a")) c.a.push_back(a.get<int>());
    c.check();

    auto samples = rspin::detail::boundary_samples(rspin::normalize_config(c),
                                                   opt_samples, opt_seed);
    std::sort(samples.begin(), samples.end());
    if (format == "csv") {
      std::cout << "w";
      for (int j = 1; j <= c.k() - 1; ++j) std::cout << ",h_" << j;
      std::cout << "\n";
      rspin::DiskConfiguration n = rspin::normalize_config(c);
      std::vector<std::vector<double>> cols;
      for (int j = 1; j <= c.k() - 1; ++j)
        cols.push_back(rspin::sigma_boundary_root(n, j, samples));
      for (size_t m = 0; m < samples.size(); ++m) {
        std::cout << samples[m];
        for (const auto& col : cols) std::cout << "," << col[m];
        std::cout << "\n";
      }
      return 0;
    }

    ojson res;
    if (c.k() >= 2) {
      rspin::BasisRankReport br = rspin::basis_rank(c, std::max(opt_samples, 3 * (c.k() - 1)),
                                                    opt_seed);
      res["basis_rank"] = br.rank;
      res["expected_rank"] = c.k() - 1;
      res["sv_ratio"] = br.largest_sv > 0 ? br.smallest_sv / br.largest_sv : 0.0;
      rspin::ResidueProfile rp = rspin::residue_profile(c, std::min(opt_j, c.k() - 1));
      res["residue_signs"] = {rp.sign_at_x1, rp.sign_at_x1j};
      res["rotation_determinant_sign"] =
          rspin::rotation_determinant_sign(c, opt_h, opt_seed);
      rspin::RotationSigns rs = rspin::rotation_signs(c.k(), opt_h);
      res["rotation_expected_sign"] = rs.sign_M;
    } else {
      res["basis_rank"] = 0;
      res["expected_rank"] = 0;
    }
    return run.finish(0, res);
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const rspin::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const rspin::StructureError& e) {
    std::cerr << "structure error: " << e.what() << "\n";
    return 2;
  } catch (const rspin::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
