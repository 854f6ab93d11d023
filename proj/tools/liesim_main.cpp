// Command-line front end: Lie closure, adjoint data, expectation-value
// simulation, gradients, the paper-style experiments and the preprocessing
// benchmarks. Configs are JSON (see README); results go to --out as CSV plus
// a JSON manifest embedding the full config.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "liesim/dense_oracle.hpp"
#include "liesim/engine.hpp"
#include "liesim/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace liesim;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  uint64_t seed = 1;
  int threads = 0;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string env_stamp() {
  json j;
  j["compiler"] = std::string("gcc ") + std::to_string(__GNUC__) + "." +
                  std::to_string(__GNUC_MINOR__);
  j["build"] = __DATE__;
  return j.dump();
}

void write_manifest(const CommonOpts& opts, const std::string& command, const json& config) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["seed"] = opts.seed;
  manifest["threads"] = opts.threads;
  manifest["config_hash"] = std::hash<std::string>{}(config.dump());
  manifest["environment"] = env_stamp();
  write_file(fs::path(opts.out_dir) / (command + "_manifest.json"), manifest.dump(2));
}

struct Problem {
  Representation rep;
  int n = 0;
  std::shared_ptr<FactorialTable> factorials;
};

Problem make_representation(const json& config) {
  Problem p;
  p.n = config.at("n").get<int>();
  std::string name = config.value("representation", "pauli");
  if (name == "pauli") {
    p.rep = pauli_representation(p.n);
  } else if (name == "cycle") {
    p.rep = cycle_representation(p.n);
  } else if (name == "orbit") {
    p.factorials = std::make_shared<FactorialTable>(p.n);
    p.rep = orbit_representation(p.n, p.factorials);
  } else if (name == "mggm") {
    p.rep = mggm_representation(p.n, config.value("k", 1));
  } else {
    throw std::runtime_error("unknown representation: " + name);
  }
  return p;
}

std::vector<CoeffMap> parse_generators(const json& config, const Representation& rep) {
  std::vector<CoeffMap> gens;
  for (const auto& g : config.at("generators")) {
    CoeffMap map;
    for (auto it = g.begin(); it != g.end(); ++it)
      map[rep.parse(it.key())] = it.value().get<double>();
    gens.push_back(std::move(map));
  }
  return gens;
}

LieBasis closure_from_config(const json& config, const Problem& p) {
  int max_dim = config.value("max_dim", 4096);
  return lie_closure(parse_generators(config, p.rep), p.rep, max_dim);
}

Eigen::VectorXd state_from_config(const json& config, const LieBasis& basis) {
  const auto& s = config.at("state");
  std::string kind = s.at("kind").get<std::string>();
  if (kind == "basis_string")
    return state_coordinates(StateSpec::basis_string(s.at("bits").get<std::string>()),
                             basis);
  if (kind == "plus") return state_coordinates(StateSpec::plus_product(), basis);
  if (kind == "sector_index")
    return state_coordinates(StateSpec::sector(s.at("index").get<int>()), basis);
  if (kind == "explicit")
    return state_coordinates(
        StateSpec::explicit_coords(s.at("coords").get<std::vector<double>>()), basis);
  throw std::runtime_error("unknown state kind: " + kind);
}

std::string csv_escape(double v) {
  char buf[64];
  snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_closure(const CommonOpts& opts) {
  json config = load_config(opts.config_path);
  Problem p = make_representation(config);
  LieBasis basis = closure_from_config(config, p);
  json out;
  out["dim"] = basis.dim();
  out["truncated"] = basis.truncated();
  out["label_basis"] = basis.is_label_basis();
  json labels = json::array();
  for (const auto& e : basis.labels()) labels.push_back(element_str(e));
  out["labels"] = labels;
  write_file(fs::path(opts.out_dir) / "closure.json", out.dump(2));
  write_manifest(opts, "closure", config);
  std::cout << "dim " << basis.dim() << (basis.truncated() ? " (truncated)" : "")
            << "\n";
  return 0;
}

int run_adjoint(const CommonOpts& opts) {
  json config = load_config(opts.config_path);
  Problem p = make_representation(config);
  LieBasis basis = closure_from_config(config, p);
  StructureTensor tensor =
      structure_constants(basis, p.rep, opts.threads > 0 ? opts.threads : 1);
  write_file(fs::path(opts.out_dir) / "structure_constants.txt",
             tensor.export_text(basis, p.rep.name));
  write_manifest(opts, "adjoint", config);
  std::cout << "dim " << basis.dim() << " nonzeros " << tensor.nonzeros() << "\n";
  return 0;
}

int run_simulate(const CommonOpts& opts, bool with_gradient) {
  json config = load_config(opts.config_path);
  Problem p = make_representation(config);
  LieBasis basis = closure_from_config(config, p);
  CircuitSpec circ = CircuitSpec::from_json(config.at("circuit").dump(), p.rep);
  Simulator sim(std::move(basis), p.rep, circ);

  Eigen::VectorXd e_in = state_from_config(config, sim.basis());
  CoeffMap obs;
  for (auto it = config.at("observable").begin(); it != config.at("observable").end();
       ++it)
    obs[p.rep.parse(it.key())] = it.value().get<double>();
  Eigen::VectorXd w = sim.observable_coords(obs);
  auto params_vec = config.at("params").get<std::vector<double>>();
  Eigen::VectorXd params =
      Eigen::Map<const Eigen::VectorXd>(params_vec.data(), params_vec.size());

  json out;
  if (with_gradient) {
    auto [value, grad] = sim.loss_and_gradient(params, e_in, w);
    out["expectation"] = value;
    out["gradient"] = std::vector<double>(grad.data(), grad.data() + grad.size());
  } else {
    out["expectation"] = sim.loss(params, e_in, w);
  }
  std::string name = with_gradient ? "grad" : "simulate";
  write_file(fs::path(opts.out_dir) / (name + ".json"), out.dump(2));
  write_manifest(opts, name, config);
  std::cout << out.dump() << "\n";
  return 0;
}

int run_experiment(const CommonOpts& opts, const std::string& id) {
  json config = opts.config_path.empty() ? json::object() : load_config(opts.config_path);
  namespace ex = experiments;
  fs::path dir(opts.out_dir);

  if (id == "tfim" || id == "tfim-noise") {
    ex::TfimConfig cfg;
    cfg.sizes = config.value("sizes", std::vector<int>{4, 8, 12});
    cfg.layers = config.value("layers", -1);
    cfg.runs = config.value("runs", 10);
    cfg.seed = config.value("seed", opts.seed);
    cfg.J = config.value("J", 1.0);
    cfg.g = config.value("g", 1.0);
    cfg.threads = opts.threads;
    cfg.opt.max_iterations = config.value("max_iterations", 2000);
    cfg.opt.grad_tol = config.value("grad_tol", 1e-9);
    if (id == "tfim-noise")
      cfg.noise_sigmas = config.value(
          "noise_sigmas",
          std::vector<double>{1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1});
    auto records = ex::run_tfim(cfg);
    std::string csv = "n,sigma,run,final_energy,exact_energy,rel_error,converged,"
                      "iterations,wall_seconds\n";
    for (const auto& r : records)
      csv += std::to_string(r.n) + "," + csv_escape(r.sigma) + "," +
             std::to_string(r.run) + "," + csv_escape(r.final_energy) + "," +
             csv_escape(r.exact_energy) + "," + csv_escape(r.rel_error) + "," +
             (r.converged ? "1," : "0,") + std::to_string(r.iterations) + "," +
             csv_escape(r.wall_seconds) + "\n";
    write_file(dir / (id + ".csv"), csv);
    write_manifest(opts, id, config);
    for (const auto& r : records)
      if (r.run == 0)
        std::cout << "n=" << r.n << " sigma=" << r.sigma
                  << " rel_error(run0)=" << r.rel_error << "\n";
    return 0;
  }
  if (id == "peqnn-variance") {
    ex::PeqnnConfig cfg;
    cfg.sizes = config.value("sizes", std::vector<int>{3, 4, 5});
    cfg.samples = config.value("samples", 2000);
    cfg.seed = config.value("seed", opts.seed);
    cfg.deep_mode = config.value("deep_mode", true);
    cfg.deep_factor = config.value("deep_factor", 10.0);
    cfg.num_graphs = config.value("num_graphs", 10);
    cfg.max_component = config.value("max_component", 10);
    cfg.threads = opts.threads;
    auto records = ex::run_peqnn_variance(cfg);
    std::string csv =
        "n,dim,layers,samples,empirical_variance,variance_se,predicted_variance,"
        "predicted_variance_naive,rho_purity,obs_purity,wall_seconds\n";
    for (const auto& r : records)
      csv += std::to_string(r.n) + "," + std::to_string(r.dim) + "," +
             std::to_string(r.layers) + "," + std::to_string(r.samples) + "," +
             csv_escape(r.empirical_variance) + "," + csv_escape(r.variance_se) + "," +
             csv_escape(r.predicted_variance) + "," +
             csv_escape(r.predicted_variance_naive) + "," + csv_escape(r.rho_purity) +
             "," + csv_escape(r.obs_purity) + "," + csv_escape(r.wall_seconds) + "\n";
    write_file(dir / "peqnn_variance.csv", csv);
    write_manifest(opts, id, config);
    for (const auto& r : records)
      std::cout << "n=" << r.n << " var=" << r.empirical_variance
                << " predicted=" << r.predicted_variance << " se=" << r.variance_se
                << "\n";
    return 0;
  }
  if (id == "hw-encode") {
    ex::HwEncoderConfig cfg;
    cfg.n = config.value("n", 20);
    cfg.k = config.value("k", 2);
    cfg.x_min = config.value("x_min", -2.0);
    cfg.x_max = config.value("x_max", 2.0);
    auto rec = ex::run_hw_encoder(cfg);
    std::string csv = "x,probability,target\n";
    for (int j = 0; j < rec.d; ++j)
      csv += csv_escape(rec.xs[j]) + "," + csv_escape(rec.probs[j]) + "," +
             csv_escape(rec.targets[j]) + "\n";
    write_file(dir / "hw_encode.csv", csv);
    write_manifest(opts, id, config);
    std::cout << "d=" << rec.d << " prob_sum=" << rec.prob_sum
              << " max_rel_error=" << rec.max_rel_error << "\n";
    return 0;
  }
  throw std::runtime_error("unknown experiment id: " + id);
}

int run_bench_cmd(const CommonOpts& opts) {
  json config = opts.config_path.empty() ? json::object() : load_config(opts.config_path);
  namespace ex = experiments;
  ex::BenchConfig cfg;
  cfg.task = config.value("task", "tfim-free");
  cfg.sizes = config.value("sizes", std::vector<int>{4, 6, 8, 10});
  cfg.periodic = config.value("periodic", false);
  cfg.k = config.value("k", 1);
  cfg.repeats = config.value("repeats", 3);
  cfg.threads = opts.threads;
  auto records = ex::run_bench(cfg);
  std::string csv = "task,n,dim,nonzeros,seconds,op_counter\n";
  for (const auto& r : records)
    csv += r.task + "," + std::to_string(r.n) + "," + std::to_string(r.dim) + "," +
           std::to_string(r.nonzeros) + "," + csv_escape(r.seconds) + "," +
           std::to_string(r.op_counter) + "\n";
  write_file(fs::path(opts.out_dir) / ("bench_" + cfg.task + ".csv"), csv);
  write_manifest(opts, "bench", config);
  auto [slope, se] = ex::fit_power_law(records);
  if (records.size() > 1)
    std::cout << "task " << cfg.task << " fitted slope " << slope << " +/- " << se
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-algebraic simulator for polynomial-DLA circuits"};
  app.require_subcommand(1);
  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON config file");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--seed", opts.seed, "base RNG seed");
  app.add_option("--threads", opts.threads, "worker threads (0 = hardware)");

  auto* closure = app.add_subcommand("closure", "Lie closure of a generator set");
  auto* adjoint = app.add_subcommand("adjoint", "structure constants of the closure");
  auto* simulate = app.add_subcommand("simulate", "expectation value of a circuit");
  auto* grad = app.add_subcommand("grad", "expectation value and gradient");
  auto* experiment = app.add_subcommand("experiment", "run a named experiment");
  std::string experiment_id;
  experiment->add_option("id", experiment_id, "tfim | tfim-noise | peqnn-variance | hw-encode")
      ->required();
  auto* bench = app.add_subcommand("bench", "preprocessing benchmarks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (closure->parsed()) return run_closure(opts);
    if (adjoint->parsed()) return run_adjoint(opts);
    if (simulate->parsed()) return run_simulate(opts, false);
    if (grad->parsed()) return run_simulate(opts, true);
    if (experiment->parsed()) return run_experiment(opts, experiment_id);
    if (bench->parsed()) return run_bench_cmd(opts);
  } catch (const std::exception& err) {
    nlohmann::json e;
    e["error"] = err.what();
    std::cerr << e.dump() << std::endl;
    return 1;
  }
  return 0;
}
