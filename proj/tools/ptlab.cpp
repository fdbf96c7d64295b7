// ptlab: command-line front end for the property-testing lab.
//   ptlab density <file>            exact 4-profile, densities, membership
//   ptlab member <file>             membership verdict for a property
//   ptlab gen <kind>                graph generation (random, named, blowup)
//   ptlab experiment <name>         seeded experiments with JSON reports

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptlab/census.hpp"
#include "ptlab/experiments.hpp"
#include "ptlab/graph_io.hpp"
#include "ptlab/property.hpp"
#include "ptlab/rng.hpp"

namespace {

using nlohmann::json;

ptlab::WeightedDensityProperty load_property(const std::string& spec) {
  if (spec == std::string(ptlab::WeightedDensityProperty::kDefaultName))
    return ptlab::WeightedDensityProperty::named(spec);
  std::ifstream in(spec, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open property file: " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ptlab::WeightedDensityProperty::parse_json(buf.str());
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
  out << text << '\n';
}

json density_report(const ptlab::Graph& g, ptlab::CensusMode mode) {
  using ptlab::Rational;
  const auto profile = ptlab::four_profile(g, mode);
  const auto& prop = ptlab::WeightedDensityProperty::named(ptlab::WeightedDensityProperty::kDefaultName);
  json j = json::parse(ptlab::census_json(profile));
  json by_name;
  for (int c = 0; c < ptlab::kClass4Count; ++c)
    by_name[std::string(ptlab::class4_name(c))] = ptlab::p_induced(c, profile).str();
  j["densities_by_class"] = by_name;
  j["edges"] = g.edge_count();
  if (g.n() >= 2) {
    j["t_inj_k2"] = ptlab::t_inj_k2(g).str();
    j["t_inj_c4"] = ptlab::t_inj_c4(g).str();
    j["phi"] = ptlab::phi_value(g).str();
    const Rational defect = ptlab::kst_defect(g);
    j["kst_defect"] = defect.str();
    j["n_times_kst_defect"] = (Rational(g.n()) * defect).to_double();
  }
  const Rational z = ptlab::z_value(prop, g);
  j["z"] = z.str();
  j["property"] = std::string(ptlab::WeightedDensityProperty::kDefaultName);
  j["b"] = prop.b().str();
  j["member"] = z <= prop.b();
  if (z > prop.b()) j["gap"] = (z - prop.b()).str();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptlab: exact subgraph censuses, weighted density properties, and tester simulation"};
  app.require_subcommand(1);

  // density
  std::string density_file, density_out, density_mode = "fast";
  auto* density = app.add_subcommand("density", "4-profile census and membership report for a graph file");
  density->add_option("file", density_file, "graph file (edge list or adjacency matrix)")->required();
  density->add_option("--mode", density_mode, "census kernel: fast | reference")
      ->check(CLI::IsMember({"fast", "reference"}));
  density->add_option("--out", density_out, "write the JSON report here instead of stdout");

  // member
  std::string member_file, member_out, member_property = std::string(ptlab::WeightedDensityProperty::kDefaultName);
  auto* member = app.add_subcommand("member", "membership verdict for a graph file");
  member->add_option("file", member_file, "graph file")->required();
  member->add_option("--property", member_property, "built-in property name or JSON property file");
  member->add_option("--out", member_out, "write the JSON verdict here instead of stdout");

  // gen
  std::string gen_kind, gen_name, gen_base, gen_out;
  int gen_n = 0, gen_k = 2;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a graph file (edge-list format)");
  gen->add_option("kind", gen_kind, "random | named | blowup")->required();
  gen->add_option("--n", gen_n, "vertex count (random)");
  gen->add_option("--k", gen_k, "blowup factor");
  gen->add_option("--seed", gen_seed, "generator seed (random)");
  gen->add_option("--name", gen_name, "graph name (named), e.g. C4 or Kn(8)");
  gen->add_option("--base", gen_base, "base graph file (blowup)");
  gen->add_option("--out", gen_out, "output file; stdout when omitted");

  // experiment
  std::string exp_name, exp_config, exp_out;
  std::uint64_t exp_seed = 1;
  auto* experiment = app.add_subcommand("experiment", "run a named experiment and write its JSON report");
  experiment->add_option("name", exp_name, "experiment name; see --list")->required();
  experiment->add_option("--config", exp_config, "JSON config file overriding the defaults");
  experiment->add_option("--seed", exp_seed, "master seed");
  experiment->add_option("--out", exp_out, "report path; stdout when omitted");

  auto* list = app.add_subcommand("experiments", "list experiment names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (density->parsed()) {
      const ptlab::Graph g = ptlab::read_graph_file(density_file);
      const auto mode =
          density_mode == "reference" ? ptlab::CensusMode::kReference : ptlab::CensusMode::kFast;
      emit(density_report(g, mode).dump(2), density_out);
      return 0;
    }
    if (member->parsed()) {
      const ptlab::Graph g = ptlab::read_graph_file(member_file);
      const auto prop = load_property(member_property);
      const ptlab::Rational z = ptlab::z_value(prop, g);
      json j;
      j["file"] = member_file;
      j["n"] = g.n();
      j["edges"] = g.edge_count();
      j["property"] = member_property;
      j["z"] = z.str();
      j["b"] = prop.b().str();
      j["member"] = z <= prop.b();
      if (z > prop.b()) j["gap"] = (z - prop.b()).str();
      emit(j.dump(2), member_out);
      return 0;
    }
    if (gen->parsed()) {
      ptlab::Graph g;
      json sidecar;
      if (gen_kind == "random") {
        g = ptlab::random_graph(gen_n, gen_seed);
      } else if (gen_kind == "named") {
        if (gen_name.empty()) throw std::runtime_error("gen named: --name is required");
        g = ptlab::named_graph(gen_name);
      } else if (gen_kind == "blowup") {
        if (gen_base.empty()) throw std::runtime_error("gen blowup: --base is required");
        const ptlab::Graph base = ptlab::read_graph_file(gen_base);
        auto blown = ptlab::blowup(base, gen_k);
        g = std::move(blown.graph);
        sidecar["base_n"] = blown.structure.base_n;
        sidecar["factor"] = blown.structure.factor;
        sidecar["parts"] = blown.structure.parts;
      } else {
        throw std::runtime_error("gen: unknown kind '" + gen_kind + "' (random | named | blowup)");
      }
      const std::string text = ptlab::serialize_edge_list(g);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gen_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write graph file: " + gen_out);
        out << text;
      }
      if (!sidecar.empty() && !gen_out.empty()) {
        std::ofstream side(gen_out + ".parts.json", std::ios::binary);
        side << sidecar.dump(2) << '\n';
      }
      return 0;
    }
    if (experiment->parsed()) {
      std::string config_text;
      if (!exp_config.empty()) {
        std::ifstream in(exp_config, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config file: " + exp_config);
        std::ostringstream buf;
        buf << in.rdbuf();
        config_text = buf.str();
      }
      const auto report = ptlab::run_experiment(exp_name, config_text, exp_seed);
      emit(report.json, exp_out);
      return report.pass ? 0 : 1;
    }
    if (list->parsed()) {
      for (const auto& name : ptlab::experiment_names()) std::cout << name << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
