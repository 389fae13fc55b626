#pragma once

#include <cstdint>
#include <vector>

#include "icebox/exact.hpp"
#include "icebox/lattice.hpp"
#include "icebox/state.hpp"

namespace icebox {

// Walks on Z^2, which the diagonal lattice matches after a 45 degree turn.
// Origin: free walks from a fixed point. Boundary: walks confined to the
// closed upper half-plane, starting on its edge, the setting for crossing
// paths rooted on a boundary ring.
enum class SawRoot : std::uint8_t { Origin, Boundary };

struct SawTable {
    SawRoot root = SawRoot::Origin;
    std::vector<std::uint64_t> c;  // c[l] = exact walk count, l = 0..cap
};

// Exact counts by depth-first search; every prefix of a self-avoiding walk is
// one, so a single sweep fills all lengths up to cap.
SawTable saw_table(int cap, SawRoot root);

std::uint64_t count_saw(int l, SawRoot root, int cap = 20);

// Crossing-path mass bound: at most 2n starting points, walk counts for the
// path, and the escape-map weight magnification per step. mu_hat is the
// connective-constant stand-in 2.639; the sharp variant swaps in exact
// boundary-rooted counts for lengths up to exact_cap.
struct PeierlsBound {
    int n = 0;
    Weights w;
    double mu_hat = 2.639;
    double plain = 0;
    double sharp = 0;
    int exact_cap = 0;
};

PeierlsBound peierls_upper_bound(int n, const Weights& w, int exact_cap = 20);

// Exact Gibbs mass, over the perfect states, of configurations carrying a
// fault line or an almost fault line in either direction.
double fault_mass_exact(const Lattice& lat, const DiagonalLattice& diag, const StateSpace& ss,
                        const Weights& w);

} // namespace icebox
