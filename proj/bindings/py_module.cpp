// Python bindings for the main operations: Pauli/cycle/orbit/MGGM brackets,
// Lie closure, structure constants, and adjoint-space simulation.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "liesim/dense_oracle.hpp"
#include "liesim/engine.hpp"
#include "liesim/experiments.hpp"

namespace py = pybind11;
using namespace liesim;

namespace {

Representation make_representation(const std::string& name, int n, int k,
                                   std::shared_ptr<FactorialTable>& table) {
  if (name == "pauli") return pauli_representation(n);
  if (name == "cycle") return cycle_representation(n);
  if (name == "orbit") {
    table = std::make_shared<FactorialTable>(n);
    return orbit_representation(n, table);
  }
  if (name == "mggm") return mggm_representation(n, k);
  throw std::invalid_argument("unknown representation: " + name);
}

StateSpec state_from_dict(const py::dict& d) {
  std::string kind = d["kind"].cast<std::string>();
  if (kind == "plus") return StateSpec::plus_product();
  if (kind == "basis_string") return StateSpec::basis_string(d["bits"].cast<std::string>());
  if (kind == "sector_index") return StateSpec::sector(d["index"].cast<int>());
  if (kind == "explicit")
    return StateSpec::explicit_coords(d["coords"].cast<std::vector<double>>());
  throw std::invalid_argument("unknown state kind: " + kind);
}

// Closure + cached simulator over one representation.
class Engine {
 public:
  Engine(const std::string& representation, int n, int k,
         const std::vector<std::map<std::string, double>>& generators, int max_dim)
      : n_(n) {
    rep_ = make_representation(representation, n, k, table_);
    std::vector<CoeffMap> gens;
    for (const auto& g : generators) {
      CoeffMap map;
      for (const auto& [key, c] : g) map[rep_.parse(key)] = c;
      gens.push_back(std::move(map));
    }
    basis_ = lie_closure(gens, rep_, max_dim);
  }

  int dim() const { return basis_.dim(); }
  bool truncated() const { return basis_.truncated(); }
  bool label_basis() const { return basis_.is_label_basis(); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& e : basis_.labels()) out.push_back(element_str(e));
    return out;
  }

  std::vector<std::tuple<int, int, int, double>> structure_constants(int threads) const {
    StructureTensor tensor = liesim::structure_constants(basis_, rep_, threads);
    std::vector<std::tuple<int, int, int, double>> out;
    for (int a = 0; a < basis_.dim(); ++a)
      for (int b = 0; b < basis_.dim(); ++b) {
        const auto* row = tensor.row(a, b);
        if (!row) continue;
        for (const auto& [g, f] : *row) out.emplace_back(a, b, g, f);
      }
    return out;
  }

  std::pair<double, Eigen::VectorXd> run(
      const std::vector<std::map<std::string, double>>& gate_generators,
      const std::vector<std::pair<int, int>>& layers, const Eigen::VectorXd& params,
      const py::dict& state, const std::map<std::string, double>& observable,
      bool with_gradient) const {
    CircuitSpec circ;
    for (size_t i = 0; i < gate_generators.size(); ++i) {
      CoeffMap map;
      for (const auto& [key, c] : gate_generators[i]) map[rep_.parse(key)] = c;
      circ.generators.emplace_back("g" + std::to_string(i), std::move(map));
    }
    for (const auto& [gi, pi] : layers)
      circ.layers.emplace_back("g" + std::to_string(gi), pi);

    Simulator sim(basis_, rep_, circ);
    Eigen::VectorXd e_in = state_coordinates(state_from_dict(state), sim.basis());
    CoeffMap obs;
    for (const auto& [key, c] : observable) obs[rep_.parse(key)] = c;
    Eigen::VectorXd w = sim.observable_coords(obs);
    if (with_gradient) return sim.loss_and_gradient(params, e_in, w);
    return {sim.loss(params, e_in, w), Eigen::VectorXd()};
  }

 private:
  int n_;
  std::shared_ptr<FactorialTable> table_;
  Representation rep_;
  LieBasis basis_;
};

}  // namespace

PYBIND11_MODULE(_liesim, m) {
  m.doc() = "Lie-algebraic circuit simulation: symmetry-adapted bases, brackets, "
            "closures and adjoint-space propagation";

  m.def("pauli_bracket", [](const std::string& a, const std::string& b) {
    auto br = PauliString::bracket(PauliString::parse(a), PauliString::parse(b));
    return std::make_pair(br.coeff, br.coeff == 0.0 ? std::string() : br.op.str());
  },
        "Expansion of i[a,b] as (coeff, string); coeff 0 when commuting");

  m.def("pauli_commute", [](const std::string& a, const std::string& b) {
    return PauliString::parse(a).commutes_with(PauliString::parse(b));
  });

  m.def("pauli_weight",
        [](const std::string& a) { return PauliString::parse(a).weight(); });

  m.def("cycle_canonicalize", [](const std::string& text) {
    PauliCycle c = cycle_canonicalize(PauliString::parse(text));
    return std::make_pair(c.rep.str(), c.period);
  });

  m.def("cycle_bracket",
        [](const std::string& a, const std::string& b, bool bounded) {
          PauliCycle ca = cycle_canonicalize(PauliString::parse(a));
          PauliCycle cb = cycle_canonicalize(PauliString::parse(b));
          CycleSum out = bounded ? cycle_bracket_bounded(ca, cb) : cycle_bracket(ca, cb);
          std::map<std::string, double> terms;
          for (const auto& [c, v] : out.terms()) terms[c.rep.str()] = v;
          return terms;
        },
        py::arg("a"), py::arg("b"), py::arg("bounded") = false);

  m.def("orbit_term_count", [](int n, int p, int q, int r) {
    return orbit_term_count_big(OrbitLabel{n, p, q, r}).get_str();
  });

  m.def("orbit_norm_sq",
        [](int n, int p, int q, int r) { return orbit_norm_sq(OrbitLabel{n, p, q, r}); });

  m.def("orbit_bracket_full",
        [](int n, std::tuple<int, int, int> a, std::tuple<int, int, int> b) {
          FactorialTable f(n);
          OrbitSum out = orbit_bracket_full(
              OrbitLabel{n, std::get<0>(a), std::get<1>(a), std::get<2>(a)},
              OrbitLabel{n, std::get<0>(b), std::get<1>(b), std::get<2>(b)}, f);
          std::map<std::tuple<int, int, int>, double> terms;
          for (const auto& [l, v] : out.terms()) terms[{l.p, l.q, l.r}] = v;
          return terms;
        });

  m.def("orbit_bracket_targeted",
        [](int n, std::tuple<int, int, int> a, std::tuple<int, int, int> b,
           const std::vector<std::tuple<int, int, int>>& targets) {
          FactorialTable f(n);
          std::vector<OrbitLabel> tl;
          for (const auto& [p, q, r] : targets) tl.push_back(OrbitLabel{n, p, q, r});
          uint64_t counter = 0;
          auto got = orbit_bracket_targeted(
              OrbitLabel{n, std::get<0>(a), std::get<1>(a), std::get<2>(a)},
              OrbitLabel{n, std::get<0>(b), std::get<1>(b), std::get<2>(b)}, tl, f,
              &counter);
          std::map<std::tuple<int, int, int>, double> terms;
          for (const auto& [l, v] : got) terms[{l.p, l.q, l.r}] = v;
          return std::make_pair(terms, counter);
        });

  m.def("pi_algebra_dim", [](int n) {
    auto d = pi_algebra_dim(n);
    return std::make_pair(d.dim, d.sector_dims);
  });

  m.def("hw_algebra_dim", &hw_algebra_dim);

  m.def("sector_states",
        [](int n, int k, const std::string& order) {
          SectorIndexer idx(n, k,
                            order == "revolving-door" ? SectorOrder::RevolvingDoor
                                                      : SectorOrder::Lexicographic);
          std::vector<std::string> out;
          for (int a = 1; a <= idx.dim(); ++a) out.push_back(idx.state_bits(a));
          return out;
        },
        py::arg("n"), py::arg("k"), py::arg("order") = "lexicographic");

  m.def("mggm_bracket", [](const std::string& x, const std::string& y) {
    std::map<std::string, double> out;
    for (const auto& [e, c] : mggm_bracket(MggmElement::parse(x), MggmElement::parse(y)))
      out[e.str()] = c;
    return out;
  });

  m.def("restrict_generator",
        [](int n, int k, int i, int j, double e, double s, double r, double j_coef,
           const std::string& order) {
          SectorIndexer idx(n, k,
                            order == "revolving-door" ? SectorOrder::RevolvingDoor
                                                      : SectorOrder::Lexicographic);
          MggmSum sum = restrict_generator({i, j, e, s, r, j_coef}, idx);
          std::map<std::string, double> out;
          for (const auto& [el, c] : sum.terms()) out[el.str()] = c;
          return out;
        },
        py::arg("n"), py::arg("k"), py::arg("i"), py::arg("j"), py::arg("e"),
        py::arg("s"), py::arg("r"), py::arg("j_coef"),
        py::arg("order") = "lexicographic");

  m.def("tfim_exact_energy", &oracle::tfim_exact_energy, py::arg("n"), py::arg("J"),
        py::arg("g"), py::arg("periodic") = false);

  py::class_<Engine>(m, "Engine")
      .def(py::init<const std::string&, int, int,
                    const std::vector<std::map<std::string, double>>&, int>(),
           py::arg("representation"), py::arg("n"), py::arg("k"), py::arg("generators"),
           py::arg("max_dim") = 4096)
      .def_property_readonly("dim", &Engine::dim)
      .def_property_readonly("truncated", &Engine::truncated)
      .def_property_readonly("label_basis", &Engine::label_basis)
      .def("labels", &Engine::labels)
      .def("structure_constants", &Engine::structure_constants, py::arg("threads") = 1)
      .def("expectation",
           [](const Engine& self,
              const std::vector<std::map<std::string, double>>& gate_generators,
              const std::vector<std::pair<int, int>>& layers, const Eigen::VectorXd& params,
              const py::dict& state, const std::map<std::string, double>& observable) {
             return self.run(gate_generators, layers, params, state, observable, false)
                 .first;
           })
      .def("gradient",
           [](const Engine& self,
              const std::vector<std::map<std::string, double>>& gate_generators,
              const std::vector<std::pair<int, int>>& layers, const Eigen::VectorXd& params,
              const py::dict& state, const std::map<std::string, double>& observable) {
             return self.run(gate_generators, layers, params, state, observable, true);
           });

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
