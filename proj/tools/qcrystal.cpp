// qcrystal: crystal bases, tensor products and global bases from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qcrystal/error.hpp"
#include "qcrystal/global_basis.hpp"
#include "qcrystal/harness.hpp"

using namespace qcrystal;
using nlohmann::json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kVerifyFailed = 2;

struct Options {
  std::string datum = "sl2";
  std::vector<int> lam, mu;
  int depth = 4;
  std::string format = "json";
  std::string output;
  std::string mode = "both";
  std::string config;
  std::string report_format = "text";
  bool seed_given = false;
  bool binf = false;
  int degree_budget = 10;
  unsigned long long seed = 1;
  int jobs = 1;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
  out << text;
}

std::string render(const Options& o, const CrystalGraph& g) {
  if (o.format == "dot") return graph_to_dot(g);
  return graph_to_json(g).dump(2) + "\n";
}

std::vector<int> weight_arg(const CartanDatum& d, const std::vector<int>& w, const char* name) {
  if (w.empty()) throw Error(ErrorKind::InvalidArgument, std::string("--") + name + " is required");
  if (static_cast<int>(w.size()) != d.n())
    throw Error(ErrorKind::InvalidArgument, std::string("--") + name + " needs " + std::to_string(d.n()) +
                                                " comma-separated pairings, got " + std::to_string(w.size()));
  return w;
}

int cmd_crystal(const Options& o) {
  const CartanDatum d = CartanDatum::load(o.datum);
  VModule v(d, weight_arg(d, o.lam, "lambda"));
  Crystal c = Crystal::generate(v, o.depth, {{"lambda", v.lam()}});
  emit(o, render(o, c.graph()));
  for (const auto& a : c.anomalies()) std::cerr << "anomaly: " << a << "\n";
  return c.anomalies().empty() ? kOk : kVerifyFailed;
}

int cmd_binf(const Options& o) {
  const CartanDatum d = CartanDatum::load(o.datum);
  UmModule um(d);
  Crystal c = Crystal::generate(um, o.depth, {{"module", "U_q^-"}});
  emit(o, render(o, c.graph()));
  for (const auto& a : c.anomalies()) std::cerr << "anomaly: " << a << "\n";
  return c.anomalies().empty() ? kOk : kVerifyFailed;
}

int cmd_tensor(const Options& o) {
  const CartanDatum d = CartanDatum::load(o.datum);
  const auto lam = weight_arg(d, o.lam, "lambda");
  const auto mu = weight_arg(d, o.mu, "mu");
  if (o.mode == "alg") {
    auto alg = tensor_algebraic(d, lam, mu, o.depth);
    emit(o, render(o, alg.crystal->graph()));
    return alg.crystal->anomalies().empty() ? kOk : kVerifyFailed;
  }
  VModule v1(d, lam), v2(d, mu);
  // One extra level so every factor operator of a node up to the depth is known.
  Crystal c1 = Crystal::generate(v1, o.depth + 1), c2 = Crystal::generate(v2, o.depth + 1);
  auto comb = tensor_combinatorial(c1.graph(), o.depth + 1, c2.graph(), o.depth + 1, o.depth, d);
  comb.graph.meta() = {{"lambda", lam}, {"mu", mu}, {"tensor", "comb"}, {"depth", o.depth}};
  if (o.mode == "comb") {
    emit(o, render(o, comb.graph));
    return comb.anomalies.empty() ? kOk : kVerifyFailed;
  }
  auto alg = tensor_algebraic(d, lam, mu, o.depth);
  const IsoResult iso = graph_isomorphic(comb.graph, alg.crystal->graph());
  std::ostringstream out;
  out << "nodes: " << comb.graph.size() << "\n";
  out << "edges: " << comb.graph.edges().size() << "\n";
  out << "rule checks: " << comb.rule_checks << "\n";
  out << "isomorphic: " << (iso.isomorphic ? "true" : "false") << "\n";
  if (iso.isomorphic) {
    out << "witness:";
    for (int w : iso.witness) out << " " << w;
    out << "\n";
  } else {
    out << "certificate: " << iso.certificate << "\n";
  }
  for (const auto& a : comb.anomalies) out << "anomaly (comb): " << a << "\n";
  for (const auto& a : alg.crystal->anomalies()) out << "anomaly (alg): " << a << "\n";
  emit(o, out.str());
  const bool ok = iso.isomorphic && comb.anomalies.empty() && alg.crystal->anomalies().empty();
  return ok ? kOk : kVerifyFailed;
}

int cmd_global(const Options& o) {
  const CartanDatum d = CartanDatum::load(o.datum);
  std::unique_ptr<WordModule> m;
  json j{{"datum", d.hash()}, {"depth", o.depth}};
  if (o.binf) {
    m = std::make_unique<UmModule>(d);
    j["module"] = "U_q^-";
  } else {
    m = std::make_unique<VModule>(d, weight_arg(d, o.lam, "lambda"));
    j["lambda"] = o.lam;
  }
  Crystal c = Crystal::generate(*m, o.depth);
  const auto g = global_basis(*m, c, o.degree_budget);
  bool ok = true;
  json nodes = json::object();
  for (const auto& e : g) {
    json terms = json::array();
    for (const auto& [w, coef] : e.monomials.terms()) terms.push_back({word_to_string(w, &d), coef.to_string()});
    nodes[std::to_string(e.node)] = {{"alpha", e.alpha},   {"terms", terms},
                                     {"degree", e.degree}, {"laurent", e.laurent},
                                     {"bar_fixed", e.bar_fixed}, {"residue_ok", e.residue_ok}};
    ok = ok && e.certified();
  }
  j["global"] = nodes;
  emit(o, j.dump(2) + "\n");
  return ok ? kOk : kVerifyFailed;
}

int cmd_verify(const Options& o) {
  if (o.config.empty()) throw Error(ErrorKind::InvalidArgument, "--config is required");
  std::ifstream in(o.config);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config '" + o.config + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, o.config + ": " + e.what());
  }
  if (o.seed_given || !cfg.contains("seed")) cfg["seed"] = o.seed;
  const SuiteReport r = run_suite(cfg);
  emit(o, o.report_format == "json" ? r.to_json().dump(2) + "\n" : r.to_text());
  return r.pass() ? kOk : kVerifyFailed;
}

int cmd_dims(const Options& o) {
  const CartanDatum d = CartanDatum::load(o.datum);
  VModule v(d, weight_arg(d, o.lam, "lambda"));
  Crystal c = Crystal::generate(v, o.depth);
  std::ostringstream out;
  for (int i = 0; i < d.n(); ++i) out << "alpha_" << d.label(i) << ",";
  out << "dim,crystal\n";
  for (int h = 0; h <= o.depth; ++h)
    for (const auto& a : roots_of_height(d.n(), h)) {
      for (int k : a) out << k << ",";
      out << v.dim(a) << "," << c.at(a).elements.size() << "\n";
    }
  emit(o, out.str());
  return c.anomalies().empty() ? kOk : kVerifyFailed;
}

void error_json(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crystal bases and global bases of quantum Borcherds algebras"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool weights) {
    s->add_option("--datum", o.datum, "Built-in datum name or path to a JSON datum file")->capture_default_str();
    s->add_option("--depth", o.depth, "Maximum root height")->capture_default_str()->check(CLI::NonNegativeNumber);
    s->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    s->add_option("--seed", o.seed, "Seed for randomized invariant sampling")->capture_default_str();
    s->add_option("--jobs", o.jobs, "Parallelism hint")->capture_default_str();
    if (weights) s->add_option("--lambda", o.lam, "Pairings λ(h_i), comma-separated")->delimiter(',');
  };

  auto* crystal = app.add_subcommand("crystal", "Crystal graph of V(λ)");
  common(crystal, true);
  crystal->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}))->capture_default_str();

  auto* binf = app.add_subcommand("binf", "Crystal graph of U_q^-");
  common(binf, false);
  binf->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}))->capture_default_str();

  auto* tensor = app.add_subcommand("tensor", "Crystal of V(λ)⊗V(μ)");
  common(tensor, true);
  tensor->add_option("--mu", o.mu, "Pairings μ(h_i), comma-separated")->delimiter(',');
  tensor->add_option("--mode", o.mode)->check(CLI::IsMember({"comb", "alg", "both"}))->capture_default_str();
  tensor->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}))->capture_default_str();

  auto* global = app.add_subcommand("global", "Global basis of V(λ) or U_q^-");
  common(global, true);
  global->add_flag("--binf", o.binf, "Use U_q^- instead of V(λ)");
  global->add_option("--degree-budget", o.degree_budget, "Maximum coefficient degree")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  common(verify, false);
  verify->add_option("--config", o.config, "Suite configuration (JSON)")->required();
  verify->add_option("--format", o.report_format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* dims = app.add_subcommand("dims", "CSV table of weight-space dimensions and crystal sizes");
  common(dims, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    error_json("UsageError", e.what());
    return kInvalid;
  }

  try {
    if (*crystal) return cmd_crystal(o);
    if (*binf) return cmd_binf(o);
    if (*tensor) return cmd_tensor(o);
    if (*global) return cmd_global(o);
    if (*verify) {
      o.seed_given = verify->count("--seed") > 0;
      return cmd_verify(o);
    }
    if (*dims) return cmd_dims(o);
  } catch (const Error& e) {
    error_json(to_string(e.kind()), e.what());
    const bool bug = e.kind() == ErrorKind::NonUniqueSolution || e.kind() == ErrorKind::WellDefinednessViolation ||
                     e.kind() == ErrorKind::ReconstructionFailed || e.kind() == ErrorKind::DegreeBudgetExceeded;
    return bug ? kVerifyFailed : kInvalid;
  } catch (const std::exception& e) {
    error_json("InternalError", e.what());
    return kVerifyFailed;
  }
  return kInvalid;
}
