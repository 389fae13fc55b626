#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "icebox/chains.hpp"
#include "icebox/lattice.hpp"
#include "icebox/state.hpp"

namespace icebox {

// Exhaustive list of valid states: perfect first, then (optionally) all
// two-defect states, in deterministic depth-first order.
struct StateSpace {
    Bc bc = Bc::Free;
    int n = 0;
    bool includes_near = false;
    std::size_t n_perfect = 0;
    std::vector<Config> states;
    std::unordered_map<std::string, std::int32_t> index;  // serialize() -> id

    std::int32_t id_of(const Lattice& lat, const Config& cfg) const;
};

// Depth-first edge assignment with ice-rule pruning. budget caps the number
// of search nodes visited.
StateSpace enumerate_states(const Lattice& lat, bool include_near_perfect,
                            std::uint64_t budget = 10'000'000);

// Cache in the configuration text format with a count/hash header.
void save_statespace(const std::string& path, const Lattice& lat, const StateSpace& ss);
StateSpace load_statespace(const std::string& path, const Lattice& lat);

// log of Z restricted to the perfect states.
double log_partition(const Lattice& lat, const StateSpace& ss, const Weights& w);

// Gibbs over everything the space holds (perfect and near states share the
// same product-over-vertices weight).
std::vector<double> gibbs(const Lattice& lat, const StateSpace& ss, const Weights& w);

struct ChainKernel {
    ChainKind kind = ChainKind::Glauber;
    Weights w;
    std::size_t n = 0;
    std::vector<double> T;   // row-major n x n, row-stochastic
    std::vector<double> pi;  // Gibbs over the kernel's state space

    double at(std::size_t x, std::size_t y) const { return T[x * n + y]; }
};

// Exact single-step kernel. Glauber wants a perfect-only space; the defect
// walk wants the near states included. kernel_budget caps the matrix size.
ChainKernel transition_matrix(const Lattice& lat, const StateSpace& ss, ChainKind kind,
                              const Weights& w, std::size_t kernel_budget = 20'000);

double max_row_sum_error(const ChainKernel& k);
double min_diagonal(const ChainKernel& k);
double detailed_balance_error(const ChainKernel& k);  // max |pi_x T_xy - pi_y T_yx|
double stationarity_error(const ChainKernel& k);      // max |(pi T - pi)_y|
bool strongly_connected(const ChainKernel& k);

struct CutReport {
    double pi_s = 0, pi_sc = 0;
    double flow = 0;  // Q(S, S^c)
    double phi = 0;   // flow over the smaller side's mass
    double bound = 0; // 1/(4 phi)
    bool swapped = false;       // S was the larger side and got flipped
    bool disconnected = false;  // zero flow across the cut
};

// in_s flags each state id; S must be neither empty nor everything.
CutReport conductance(const ChainKernel& k, const std::vector<std::uint8_t>& in_s);

struct RecipeReport {
    bool is_partition = false;
    std::size_t direct_transitions = 0;  // pairs x in left, y in right with T(x,y) > 0
    double pi_left = 0, pi_middle = 0, pi_right = 0;
    double ratio = 0;  // pi(middle) / min(pi(left), pi(right))
};

// label: 0 = left, 1 = middle, 2 = right, one entry per state; a partition
// needs all three classes nonempty.
RecipeReport verify_three_step_recipe(const ChainKernel& k, const std::vector<std::uint8_t>& label);

} // namespace icebox
