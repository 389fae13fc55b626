#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "icebox/errors.hpp"
#include "icebox/exact.hpp"
#include "icebox/peierls.hpp"
#include "icebox/state.hpp"
#include "icebox/topology.hpp"

using namespace icebox;

namespace {

// Plain four-way DFS over an explicit visited grid, no symmetry shortcuts.
struct WalkOracle {
    int cap;
    bool half_plane;
    std::vector<std::uint8_t> seen;
    std::vector<std::uint64_t> counts;

    WalkOracle(int cap_, bool half_plane_) : cap(cap_), half_plane(half_plane_) {
        const int stride = 2 * cap + 1;
        seen.assign(static_cast<std::size_t>(stride) * static_cast<std::size_t>(stride), 0);
        counts.assign(static_cast<std::size_t>(cap) + 1, 0);
        mark(0, 0, 1);
        rec(0, 0, 0);
    }

    std::size_t at(int x, int y) const {
        const int stride = 2 * cap + 1;
        return static_cast<std::size_t>(y + cap) * static_cast<std::size_t>(stride) +
               static_cast<std::size_t>(x + cap);
    }
    void mark(int x, int y, std::uint8_t v) { seen[at(x, y)] = v; }

    void rec(int x, int y, int depth) {
        ++counts[static_cast<std::size_t>(depth)];
        if (depth == cap) return;
        static const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const int nx = x + dx[d], ny = y + dy[d];
            if (half_plane && ny < 0) continue;
            if (seen[at(nx, ny)]) continue;
            mark(nx, ny, 1);
            rec(nx, ny, depth + 1);
            mark(nx, ny, 0);
        }
    }
};

} // namespace

TEST_CASE("walk counts match a naive search and the known origin values") {
    const int cap = 11;
    const SawTable origin = saw_table(cap, SawRoot::Origin);
    const SawTable boundary = saw_table(cap, SawRoot::Boundary);
    REQUIRE(origin.c.size() == static_cast<std::size_t>(cap) + 1);
    REQUIRE(boundary.c.size() == static_cast<std::size_t>(cap) + 1);

    const WalkOracle o_free(cap, false);
    const WalkOracle o_half(cap, true);
    for (int l = 0; l <= cap; ++l) {
        CHECK(origin.c[static_cast<std::size_t>(l)] == o_free.counts[static_cast<std::size_t>(l)]);
        CHECK(boundary.c[static_cast<std::size_t>(l)] == o_half.counts[static_cast<std::size_t>(l)]);
    }

    const std::uint64_t known[] = {1, 4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100, 120292};
    for (int l = 0; l <= cap; ++l) CHECK(origin.c[static_cast<std::size_t>(l)] == known[l]);

    CHECK(boundary.c[1] == 3);
    CHECK(boundary.c[2] == 7);

    // Shorter tables are prefixes of longer ones.
    const SawTable shorter = saw_table(6, SawRoot::Origin);
    for (int l = 0; l <= 6; ++l)
        CHECK(shorter.c[static_cast<std::size_t>(l)] == origin.c[static_cast<std::size_t>(l)]);

    CHECK(count_saw(5, SawRoot::Origin) == 284);
    CHECK(count_saw(0, SawRoot::Boundary) == 1);
    CHECK_THROWS_AS(count_saw(21, SawRoot::Origin, 20), BudgetExceeded);
    CHECK_THROWS_AS(count_saw(-1, SawRoot::Origin), ConfigError);
    CHECK_THROWS_AS(saw_table(31, SawRoot::Origin), BudgetExceeded);
    CHECK_THROWS_AS(saw_table(-1, SawRoot::Origin), BudgetExceeded);
    CHECK(saw_table(0, SawRoot::Boundary).c == std::vector<std::uint64_t>{1});
}

TEST_CASE("walk counts are submultiplicative and grow at the expected rate") {
    const int cap = 11;
    const SawTable t = saw_table(cap, SawRoot::Origin);
    for (int l = 1; l <= cap; ++l)
        for (int m = l; l + m <= cap; ++m)
            CHECK(t.c[static_cast<std::size_t>(l + m)] <=
                  t.c[static_cast<std::size_t>(l)] * t.c[static_cast<std::size_t>(m)]);

    for (int l = 1; l <= cap; ++l)
        CHECK(std::pow(static_cast<double>(t.c[static_cast<std::size_t>(l)]), 1.0 / l) >= 2.638);

    // Half-plane confinement can only remove walks.
    const SawTable h = saw_table(cap, SawRoot::Boundary);
    for (int l = 0; l <= cap; ++l) {
        CHECK(h.c[static_cast<std::size_t>(l)] <= t.c[static_cast<std::size_t>(l)]);
        if (l > 0) CHECK(h.c[static_cast<std::size_t>(l)] > h.c[static_cast<std::size_t>(l - 1)]);
    }
}

TEST_CASE("crossing-path mass bound follows its formula") {
    const Weights w = Weights::make(1, 1, 3);

    // n=2: crossings have lengths 2..4, 4 starting points, unit a/b weights.
    const PeierlsBound b = peierls_upper_bound(2, w, 20);
    const WalkOracle o_half(4, true);
    double plain = 0, sharp = 0;
    for (int l = 2; l <= 4; ++l) {
        const double magnif = 3.0 * std::pow(1.0 / 3.0, l - 1);
        plain += 4 * std::pow(2.639, l) * magnif;
        sharp += 4 * static_cast<double>(o_half.counts[static_cast<std::size_t>(l)]) * magnif;
    }
    CHECK(b.mu_hat == doctest::Approx(2.639));
    CHECK(b.plain == doctest::Approx(plain).epsilon(1e-12));
    CHECK(b.sharp == doctest::Approx(sharp).epsilon(1e-12));

    // With no exact prefix the sharp sum degenerates to the plain one.
    const PeierlsBound b0 = peierls_upper_bound(2, w, 0);
    CHECK(b0.sharp == doctest::Approx(b0.plain).epsilon(1e-12));

    // Deep in the ordered phase the bound is nontrivial and shrinks with c.
    const double p6 = peierls_upper_bound(8, Weights::make(1, 1, 6), 12).plain;
    const double p8 = peierls_upper_bound(8, Weights::make(1, 1, 8), 12).plain;
    CHECK(p8 < p6);
    CHECK(p8 < 1.0);

    CHECK_THROWS_AS(peierls_upper_bound(0, w, 20), ConfigError);
    CHECK_THROWS_AS(peierls_upper_bound(8, w, 31), BudgetExceeded);
}

TEST_CASE("exact fault mass matches per-state classification and obeys the bound") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace perfect = enumerate_states(lat, false);
    const StateSpace near = enumerate_states(lat, true);

    for (const Weights& w : {Weights::make(1, 1, 3), Weights::make(1, 1, 4)}) {
        const double mass = fault_mass_exact(lat, diag, perfect, w);
        CHECK(mass > 0);
        CHECK(mass < 1);

        // Accumulate the same mass from the analysis report of each state.
        const std::vector<double> pi = gibbs(lat, perfect, w);
        double expect = 0;
        double fault_only = 0;
        for (std::size_t i = 0; i < perfect.n_perfect; ++i) {
            const TopologyReport rep = analyze(lat, med, diag, perfect.states[i]);
            if (rep.almost_h || rep.almost_v) expect += pi[i];
            if (rep.cls == PartClass::FaultLine) fault_only += pi[i];
        }
        CHECK(mass == doctest::Approx(expect).epsilon(1e-12));
        CHECK(mass >= fault_only);

        // The near states play no role in the perfect-state mass.
        CHECK(fault_mass_exact(lat, diag, near, w) == doctest::Approx(mass).epsilon(1e-12));

        CHECK(peierls_upper_bound(2, w, 20).plain >= mass);
        CHECK(peierls_upper_bound(2, w, 20).sharp >= mass);
    }
}
