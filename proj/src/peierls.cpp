#include "icebox/peierls.hpp"

#include <algorithm>
#include <cmath>

#include "icebox/errors.hpp"
#include "icebox/topology.hpp"

namespace icebox {

namespace {

struct SawDfs {
    int cap;
    bool half_plane;
    int stride;
    std::vector<std::uint8_t> visited;
    std::vector<std::uint64_t> counts;
    std::uint64_t mult = 1;

    explicit SawDfs(int cap_, bool half_plane_)
        : cap(cap_), half_plane(half_plane_), stride(2 * cap_ + 1) {
        visited.assign(static_cast<std::size_t>(stride) * static_cast<std::size_t>(stride), 0);
        counts.assign(static_cast<std::size_t>(cap) + 1, 0);
    }

    std::size_t cell(int x, int y) const {
        return static_cast<std::size_t>(y + cap) * static_cast<std::size_t>(stride) +
               static_cast<std::size_t>(x + cap);
    }

    void rec(int x, int y, int depth) {
        counts[static_cast<std::size_t>(depth)] += mult;
        if (depth == cap) return;
        static const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const int nx2 = x + dx[d], ny2 = y + dy[d];
            if (half_plane && ny2 < 0) continue;
            const std::size_t c = cell(nx2, ny2);
            if (visited[c]) continue;
            visited[c] = 1;
            rec(nx2, ny2, depth + 1);
            visited[c] = 0;
        }
    }

    // Runs one branch with a forced first step, weighting all its counts.
    void branch(int dx, int dy, std::uint64_t weight) {
        mult = weight;
        const std::size_t c = cell(dx, dy);
        visited[c] = 1;
        rec(dx, dy, 1);
        visited[c] = 0;
    }
};

} // namespace

SawTable saw_table(int cap, SawRoot root) {
    if (cap < 0 || cap > 30) throw BudgetExceeded("walk length cap out of range");
    SawTable t;
    t.root = root;
    if (cap == 0) {
        t.c = {1};
        return t;
    }
    SawDfs dfs(cap, root == SawRoot::Boundary);
    dfs.visited[dfs.cell(0, 0)] = 1;
    if (root == SawRoot::Origin) {
        // Four-fold symmetry: count walks whose first step is +x.
        dfs.branch(1, 0, 4);
    } else {
        // Mirror symmetry in x only; the vertical first step is unique.
        dfs.branch(1, 0, 2);
        dfs.branch(0, 1, 1);
    }
    dfs.counts[0] = 1;
    t.c = std::move(dfs.counts);
    return t;
}

std::uint64_t count_saw(int l, SawRoot root, int cap) {
    if (l > cap) throw BudgetExceeded("walk length exceeds the cap");
    if (l < 0) throw ConfigError("negative walk length");
    return saw_table(l, root).c[static_cast<std::size_t>(l)];
}

PeierlsBound peierls_upper_bound(int n, const Weights& w, int exact_cap) {
    if (n < 1) throw ConfigError("region size must be positive");
    PeierlsBound b;
    b.n = n;
    b.w = w;
    b.exact_cap = exact_cap;
    const double mn = std::min(w.a, w.b), mx = std::max(w.a, w.b);
    const int lmax = n * n;
    const int table_cap = std::min(exact_cap, lmax);
    const SawTable saw = saw_table(std::max(0, table_cap), SawRoot::Boundary);
    for (int l = n; l <= lmax; ++l) {
        const double magnif = (w.c / mn) * std::pow(mx / w.c, l - 1);
        const double starts = 2.0 * n;
        b.plain += starts * std::pow(b.mu_hat, l) * magnif;
        const double walks = l <= table_cap ? static_cast<double>(saw.c[static_cast<std::size_t>(l)])
                                            : std::pow(b.mu_hat, l);
        b.sharp += starts * walks * magnif;
    }
    return b;
}

double fault_mass_exact(const Lattice& lat, const DiagonalLattice& diag, const StateSpace& ss,
                        const Weights& w) {
    std::vector<double> lw;
    lw.reserve(ss.n_perfect);
    for (std::size_t i = 0; i < ss.n_perfect; ++i) lw.push_back(log_weight(lat, ss.states[i], w));
    const double m = *std::max_element(lw.begin(), lw.end());
    double z = 0, mass = 0;
    for (std::size_t i = 0; i < ss.n_perfect; ++i) {
        const double wt = std::exp(lw[i] - m);
        z += wt;
        const LtauGraph ltau = build_ltau(lat, diag, ss.states[i]);
        const bool hit =
            find_almost_fault_line(lat, diag, ltau, ss.states[i], Dir::Horizontal).has_value() ||
            find_almost_fault_line(lat, diag, ltau, ss.states[i], Dir::Vertical).has_value();
        if (hit) mass += wt;
    }
    return mass / z;
}

} // namespace icebox
