#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "icebox/chains.hpp"
#include "icebox/errors.hpp"
#include "icebox/exact.hpp"
#include "icebox/experiment.hpp"
#include "icebox/peierls.hpp"
#include "icebox/rng.hpp"
#include "icebox/state.hpp"
#include "icebox/topology.hpp"

namespace py = pybind11;
using namespace icebox;

namespace {

Bc parse_bc(const std::string& s) {
    if (s == "free") return Bc::Free;
    if (s == "periodic") return Bc::Periodic;
    throw ConfigError("boundary must be 'free' or 'periodic', got '" + s + "'");
}

ChainKind parse_chain(const std::string& s) {
    if (s == "glauber") return ChainKind::Glauber;
    if (s == "loop") return ChainKind::DirectedLoop;
    throw ConfigError("chain must be 'glauber' or 'loop', got '" + s + "'");
}

SawRoot parse_root(const std::string& s) {
    if (s == "origin") return SawRoot::Origin;
    if (s == "boundary") return SawRoot::Boundary;
    throw ConfigError("rooting must be 'origin' or 'boundary', got '" + s + "'");
}

py::dict geometry(int n, const std::string& bc) {
    const Lattice lat = build_lattice(n, parse_bc(bc));
    py::dict d;
    d["n"] = lat.n;
    d["vertices"] = lat.vrows * lat.vcols;
    d["real_edges"] = lat.n_real_edges;
    d["faces"] = static_cast<int>(lat.faces.size());
    d["has_reference_states"] = lat.has_c_ground;
    return d;
}

std::vector<std::string> states(int n, const std::string& bc, bool include_near,
                                std::uint64_t budget) {
    const Lattice lat = build_lattice(n, parse_bc(bc));
    const StateSpace ss = enumerate_states(lat, include_near, budget);
    std::vector<std::string> out;
    out.reserve(ss.states.size());
    for (const Config& cfg : ss.states) out.push_back(serialize(lat, cfg));
    return out;
}

std::string reference_state(int n, const std::string& bc) {
    const Lattice lat = build_lattice(n, parse_bc(bc));
    return serialize(lat, reference_green(lat));
}

std::string classify_state(int n, const std::string& bc, const std::string& state) {
    const Lattice lat = build_lattice(n, parse_bc(bc));
    const MedialGraph med = build_medial(lat);
    return part_class_name(classify(lat, med, parse_config(lat, state)));
}

py::dict analyze_state(int n, const std::string& state) {
    const Lattice lat = build_lattice(n, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const TopologyReport r = analyze(lat, med, diag, parse_config(lat, state));
    py::dict d;
    d["green_h"] = r.green_h;
    d["green_v"] = r.green_v;
    d["red_h"] = r.red_h;
    d["red_v"] = r.red_v;
    d["fault_h"] = r.fault_h;
    d["fault_v"] = r.fault_v;
    d["almost_h"] = r.almost_h;
    d["almost_v"] = r.almost_v;
    d["part_class"] = part_class_name(r.cls);
    return d;
}

double log_partition_fn(int n, const std::string& bc, double a, double b, double c,
                        std::uint64_t budget) {
    const Lattice lat = build_lattice(n, parse_bc(bc));
    const StateSpace ss = enumerate_states(lat, false, budget);
    return log_partition(lat, ss, Weights::make(a, b, c));
}

py::dict kernel_summary(int n, const std::string& bc, const std::string& chain, double a, double b,
                        double c, std::uint64_t budget) {
    const Lattice lat = build_lattice(n, parse_bc(bc));
    const ChainKind kind = parse_chain(chain);
    const StateSpace ss = enumerate_states(lat, kind == ChainKind::DirectedLoop, budget);
    const ChainKernel k = transition_matrix(lat, ss, kind, Weights::make(a, b, c));
    py::dict d;
    d["states"] = k.n;
    d["detailed_balance_error"] = detailed_balance_error(k);
    d["row_sum_error"] = max_row_sum_error(k);
    d["min_diagonal"] = min_diagonal(k);
    d["stationarity_error"] = stationarity_error(k);
    d["strongly_connected"] = strongly_connected(k);
    return d;
}

py::dict conductance_green(int n, double a, double b, double c, std::uint64_t budget) {
    const Lattice lat = build_lattice(n, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const StateSpace ss = enumerate_states(lat, false, budget);
    const ChainKernel k = transition_matrix(lat, ss, ChainKind::Glauber, Weights::make(a, b, c));
    std::vector<std::uint8_t> in_s(ss.states.size());
    for (std::size_t i = 0; i < ss.states.size(); ++i)
        in_s[i] = classify(lat, med, ss.states[i]) == PartClass::GreenCross;
    const CutReport cut = conductance(k, in_s);
    py::dict d;
    d["phi"] = cut.phi;
    d["bound"] = cut.bound;
    d["flow"] = cut.flow;
    d["class_mass"] = cut.swapped ? cut.pi_sc : cut.pi_s;
    return d;
}

py::dict escape_time(int n, double c, const std::string& chain, std::uint64_t seed,
                     std::uint64_t cap, std::uint64_t stride) {
    const Lattice lat = build_lattice(n, Bc::Free);
    const MedialGraph med = build_medial(lat);
    Config cfg = reference_green(lat);
    Rng rng(seed);
    const HitResult hr = hitting_time(lat, med, cfg, Weights::make(1, 1, c), rng,
                                      parse_chain(chain), PartClass::RedCross, stride, cap);
    py::dict d;
    d["hit"] = hr.hit;
    d["steps"] = hr.steps;
    return d;
}

std::vector<std::uint64_t> saw_counts(int cap, const std::string& rooting) {
    return saw_table(cap, parse_root(rooting)).c;
}

py::dict peierls_bound_fn(int n, double a, double b, double c, int exact_cap) {
    const PeierlsBound pb = peierls_upper_bound(n, Weights::make(a, b, c), exact_cap);
    py::dict d;
    d["plain"] = pb.plain;
    d["sharp"] = pb.sharp;
    d["mu_hat"] = pb.mu_hat;
    d["exact_cap"] = pb.exact_cap;
    return d;
}

double fault_mass(int n, double a, double b, double c, std::uint64_t budget) {
    const Lattice lat = build_lattice(n, Bc::Free);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false, budget);
    return fault_mass_exact(lat, diag, ss, Weights::make(a, b, c));
}

} // namespace

PYBIND11_MODULE(icebox, m) {
    m.doc() = "Six-vertex ice laboratory: enumeration, topology, dynamics, bounds";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IceRuleViolation>(m, "IceRuleViolation", PyExc_ValueError);
    py::register_exception<InvalidWitness>(m, "InvalidWitness", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<NotIrreducible>(m, "NotIrreducible", PyExc_RuntimeError);

    m.def("version", [] { return std::string(kVersion); });
    m.def("geometry", &geometry, py::arg("n"), py::arg("bc") = "free");
    m.def("states", &states, py::arg("n"), py::arg("bc") = "free",
          py::arg("include_near") = false, py::arg("budget") = 10'000'000,
          "Serialized configurations of the exhaustive state space");
    m.def("reference_state", &reference_state, py::arg("n"), py::arg("bc") = "free");
    m.def("classify", &classify_state, py::arg("n"), py::arg("bc"), py::arg("state"));
    m.def("analyze", &analyze_state, py::arg("n"), py::arg("state"),
          "Cross, fault-line, and near-fault flags for a free-boundary state");
    m.def("log_partition", &log_partition_fn, py::arg("n"), py::arg("bc"), py::arg("a"),
          py::arg("b"), py::arg("c"), py::arg("budget") = 10'000'000);
    m.def("kernel_summary", &kernel_summary, py::arg("n"), py::arg("bc"), py::arg("chain"),
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("budget") = 10'000'000,
          "Exact transition-matrix diagnostics for one chain");
    m.def("conductance_green", &conductance_green, py::arg("n"), py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("budget") = 10'000'000,
          "Conductance of the green-cross class under the face-flip chain");
    m.def("escape_time", &escape_time, py::arg("n"), py::arg("c"), py::arg("chain") = "glauber",
          py::arg("seed") = 1, py::arg("cap") = 10'000'000, py::arg("stride") = 100,
          "Steps from the green reference state to the red-cross class");
    m.def("saw_counts", &saw_counts, py::arg("cap"), py::arg("rooting") = "origin");
    m.def("peierls_bound", &peierls_bound_fn, py::arg("n"), py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("exact_cap") = 20);
    m.def("fault_mass", &fault_mass, py::arg("n"), py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("budget") = 10'000'000,
          "Exact Gibbs mass of fault-line and near-fault states");
}
