#include "qmc/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qmc/io.hpp"
#include "qmc/models.hpp"

namespace qmc::cli {

namespace {

using io::Json;

double round12(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

std::string format_complex(Complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", round12(z.real()), round12(z.imag()));
  return buf;
}

Json rounded_vector(const VectorXc& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({round12(v(i).real()), round12(v(i).imag())}));
  return out;
}

Json subspace_report(const Subspace<double>& s) {
  Json out;
  out["dim"] = s.dim();
  out["basis"] = Json::array();
  for (Eigen::Index k = 0; k < s.dim(); ++k) out["basis"].push_back(rounded_vector(s.basis().col(k)));
  return out;
}

void print_subspace(std::ostream& out, const Subspace<double>& s) {
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    out << "  [";
    for (Eigen::Index i = 0; i < s.ambient_dim(); ++i) out << (i ? ", " : "") << format_complex(s.basis()(i, k));
    out << "]\n";
  }
}

Json tolerance_report(const Tolerances<double>& tol) {
  return Json{{"rank", tol.rank}, {"eig", tol.eig},     {"tp", tol.tp},           {"herm", tol.herm},
              {"psd", tol.psd},   {"trace", tol.trace}, {"iter_cap", tol.iter_cap}};
}

void print_tolerances(std::ostream& out, const Tolerances<double>& tol) {
  out << "tolerances: rank=" << tol.rank << " eig=" << tol.eig << " tp=" << tol.tp << " herm=" << tol.herm
      << " psd=" << tol.psd << " trace=" << tol.trace << " iter_cap=" << tol.iter_cap << '\n';
}

struct Settings {
  Tolerances<double> tol;
  bool json = false;
  std::optional<std::uint64_t> seed;
};

io::State load_state(const std::string& path, Eigen::Index n, const Settings& s, std::ostream& err) {
  auto state = io::read_state(path, n, s.tol);
  if (state.renormalized) err << "warning: " << path << ": pure state was not normalized; renormalized\n";
  return state;
}

int emit_probability(const AnalysisReport<double>& report, const Settings& s, std::ostream& out) {
  if (s.json) {
    Json j;
    j["kind"] = to_string(report.kind);
    j["probability"] = report.probability;
    j["witness_subspace"] = subspace_report(report.witness_subspace);
    j["iterations_for_oracle_check"] = nullptr;
    j["target_adjusted"] = report.target_adjusted;
    j["tolerances"] = tolerance_report(s.tol);
    out << io::pretty(j) << '\n';
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", report.probability);
    out << to_string(report.kind) << " probability: " << buf << '\n';
    if (report.kind != AnalysisKind::reach) {
      out << (report.kind == AnalysisKind::rep ? "X(G)" : "Y(G)") << " dim " << report.witness_subspace.dim() << '\n';
      print_subspace(out, report.witness_subspace);
    }
    if (report.target_adjusted) out << "target intersected with the recurrent space E_inf(H)\n";
    print_tolerances(out, s.tol);
  }
  return kOk;
}

int cmd_decompose(const std::string& model_path, const Settings& s, std::ostream& out) {
  const auto model = io::read_model(model_path, s.tol);
  const auto d = decompose_state_space(model.channel, s.tol, DecomposeOptions{s.seed});
  if (s.json) {
    Json j;
    j["bsccs"] = Json::array();
    for (const auto& b : d.bsccs) j["bsccs"].push_back(subspace_report(b));
    j["transient"] = subspace_report(d.transient);
    j["tolerances"] = tolerance_report(s.tol);
    out << io::pretty(j) << '\n';
    return kOk;
  }
  out << d.bsccs.size() << " BSCC" << (d.bsccs.size() == 1 ? "" : "s") << " (dim ";
  for (std::size_t k = 0; k < d.bsccs.size(); ++k) out << (k ? ", " : "") << d.bsccs[k].dim();
  out << "), transient dim " << d.transient.dim() << '\n';
  for (std::size_t k = 0; k < d.bsccs.size(); ++k) {
    out << "BSCC " << k + 1 << " (dim " << d.bsccs[k].dim() << "):\n";
    print_subspace(out, d.bsccs[k]);
  }
  out << "transient (dim " << d.transient.dim() << "):\n";
  print_subspace(out, d.transient);
  print_tolerances(out, s.tol);
  return kOk;
}

int cmd_check_bscc(const std::string& model_path, const std::string& subspace_path, const Settings& s,
                   std::ostream& out) {
  const auto model = io::read_model(model_path, s.tol);
  const auto x = io::read_subspace(subspace_path, model.channel.dim(), s.tol);
  const bool is_bscc = check_bscc(model.channel, x, s.tol);
  if (s.json) {
    out << io::pretty(Json{{"bscc", is_bscc}, {"dim", x.dim()}, {"tolerances", tolerance_report(s.tol)}}) << '\n';
  } else {
    out << (is_bscc ? "true" : "false") << ": subspace of dim " << x.dim() << (is_bscc ? " is" : " is not")
        << " a BSCC\n";
    print_tolerances(out, s.tol);
  }
  return is_bscc ? kOk : kFalse;
}

enum class Probability { reach, pers, rep };

int cmd_probability(Probability which, const std::string& model_path, const std::string& state_path,
                    const std::string& target_path, const Settings& s, std::ostream& out, std::ostream& err) {
  const auto model = io::read_model(model_path, s.tol);
  const auto n = model.channel.dim();
  const auto state = load_state(state_path, n, s, err);
  const auto target = io::read_subspace(target_path, n, s.tol);
  switch (which) {
    case Probability::reach: return emit_probability(reach_probability(model.channel, state.rho, target, s.tol), s, out);
    case Probability::pers:
      return emit_probability(persistence_probability(model.channel, state.rho, target, s.tol), s, out);
    case Probability::rep:
      return emit_probability(repeated_reachability_probability(model.channel, state.rho, target, s.tol), s, out);
  }
  return kError;
}

int cmd_reachable(const std::string& model_path, const std::string& state_path, const Settings& s, std::ostream& out,
                  std::ostream& err) {
  const auto model = io::read_model(model_path, s.tol);
  const auto state = load_state(state_path, model.channel.dim(), s, err);
  const auto r = reachable_space(model.channel, state.rho, s.tol);
  if (s.json) {
    out << io::pretty(Json{{"reachable_space", subspace_report(r)}, {"tolerances", tolerance_report(s.tol)}}) << '\n';
  } else {
    out << "reachable space dim " << r.dim() << '\n';
    print_subspace(out, r);
    print_tolerances(out, s.tol);
  }
  return kOk;
}

int cmd_gen_walk(int size, const std::vector<int>& boundary, const std::string& output, const Settings& s,
                 std::ostream& out) {
  if (size < 2) throw Error("gen-walk: --size must be at least 2");
  const std::vector<Eigen::Index> positions(boundary.begin(), boundary.end());
  const auto channel = models::hadamard_walk<double>(size, positions, s.tol);
  std::vector<std::string> labels;
  for (int p = 0; p < size; ++p)
    for (int c = 0; c < 2; ++c) labels.push_back("p" + std::to_string(p) + "c" + std::to_string(c));
  const Json j = io::model_to_json(channel, labels);
  if (output.empty() || output == "-")
    out << io::pretty(j) << '\n';
  else
    io::write_json(output, j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of quantum Markov chains: BSCC decomposition and reachability probabilities", "qmc"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  app.add_option("--tolerance", tolerance, "Override the rank and eigenvalue-cluster tolerances")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", s.json, "Machine-readable report");
  app.add_option("--seed", seed, "Basis-ordering seed for the decomposition");

  std::string model, state, target, subspace, output;
  int size = 0;
  std::vector<int> boundary;

  auto* decompose = app.add_subcommand("decompose", "BSCC + transient decomposition of the state space");
  decompose->add_option("model", model, "Model file")->required();

  auto* check = app.add_subcommand("check-bscc", "Decide whether a subspace is a BSCC (exit 0 = yes, 1 = no)");
  check->add_option("model", model, "Model file")->required();
  check->add_option("subspace", subspace, "Subspace file")->required();

  auto add_probability = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("model", model, "Model file")->required();
    sub->add_option("state", state, "Initial state file")->required();
    sub->add_option("target", target, "Target subspace file")->required();
    return sub;
  };
  auto* reach = add_probability("reach", "Probability of eventually reaching the target subspace");
  auto* persist = add_probability("persist", "Probability of eventually always staying in the target");
  auto* repreach = add_probability("repreach", "Probability of visiting the target infinitely often");

  auto* reachable = app.add_subcommand("reachable", "Reachable space of a state");
  reachable->add_option("model", model, "Model file")->required();
  reachable->add_option("state", state, "Initial state file")->required();

  auto* walk = app.add_subcommand("gen-walk", "Emit a Hadamard walk on a cycle as a model file");
  walk->add_option("--size", size, "Number of cycle positions")->required();
  walk->add_option("--boundary", boundary, "Absorbing boundary positions");
  walk->add_option("-o,--output", output, "Output path (default stdout)");

  std::vector<std::string> argv_storage{"qmc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  if (tolerance) s.tol.rank = s.tol.eig = *tolerance;
  s.seed = seed;

  try {
    if (decompose->parsed()) return cmd_decompose(model, s, out);
    if (check->parsed()) return cmd_check_bscc(model, subspace, s, out);
    if (reach->parsed()) return cmd_probability(Probability::reach, model, state, target, s, out, err);
    if (persist->parsed()) return cmd_probability(Probability::pers, model, state, target, s, out, err);
    if (repreach->parsed()) return cmd_probability(Probability::rep, model, state, target, s, out, err);
    if (reachable->parsed()) return cmd_reachable(model, state, s, out, err);
    if (walk->parsed()) return cmd_gen_walk(size, boundary, output, s, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace qmc::cli
