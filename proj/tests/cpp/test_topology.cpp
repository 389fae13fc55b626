#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "icebox/errors.hpp"
#include "icebox/exact.hpp"
#include "icebox/state.hpp"
#include "icebox/topology.hpp"

using namespace icebox;

namespace {

// Rotational adjacency recomputed from the slot table alone; connected
// components of one color, then a side-to-side reachability check.
bool oracle_bridge(const Lattice& lat, const Config& cfg, Color color, Dir dir) {
    const std::uint8_t from = dir == Dir::Horizontal ? kSideLeft : kSideTop;
    const std::uint8_t to = dir == Dir::Horizontal ? kSideRight : kSideBottom;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(lat.n_real_edges));
    for (int iv = 0; iv < lat.n_internal(); ++iv)
        for (int s = 0; s < 4; ++s) {
            const int ea = lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(s)];
            const int eb =
                lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>((s + 1) % 4)];
            adj[static_cast<std::size_t>(ea)].push_back(eb);
            adj[static_cast<std::size_t>(eb)].push_back(ea);
        }
    std::vector<int> stack;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(lat.n_real_edges), 0);
    for (int e = 0; e < lat.n_real_edges; ++e)
        if ((lat.eside[static_cast<std::size_t>(e)] & from) && edge_color(lat, cfg, e) == color) {
            seen[static_cast<std::size_t>(e)] = 1;
            stack.push_back(e);
        }
    while (!stack.empty()) {
        const int e = stack.back();
        stack.pop_back();
        if (lat.eside[static_cast<std::size_t>(e)] & to) return true;
        for (const int f : adj[static_cast<std::size_t>(e)])
            if (!seen[static_cast<std::size_t>(f)] && edge_color(lat, cfg, f) == color) {
                seen[static_cast<std::size_t>(f)] = 1;
                stack.push_back(f);
            }
    }
    return false;
}

// Every self-avoiding crossing path over the diagonal lattice with at most
// one missing step, missing steps allowed only through interface-free
// vertices. Collects vertex sequences.
void oracle_paths(const DiagonalLattice& diag, const LtauGraph& ltau, Dir dir,
                  std::vector<std::vector<int>>& found) {
    const std::uint8_t from = dir == Dir::Horizontal ? kSideLeft : kSideTop;
    const std::uint8_t to = dir == Dir::Horizontal ? kSideRight : kSideBottom;
    std::vector<int> path;
    std::vector<std::uint8_t> used(static_cast<std::size_t>(diag.n_vertices()), 0);
    auto dfs = [&](auto&& self, int v, bool spent) -> void {
        if (diag.vmask[static_cast<std::size_t>(v)] & to) {
            found.push_back(path);
            return;
        }
        for (const int eid : diag.adj[static_cast<std::size_t>(v)]) {
            const bool present = ltau.diag_present[static_cast<std::size_t>(eid)] != 0;
            if (!present) {
                if (spent || ltau.diag_present[static_cast<std::size_t>(eid ^ 1)]) continue;
            }
            const int u = diag.other(eid, v);
            if (used[static_cast<std::size_t>(u)]) continue;
            used[static_cast<std::size_t>(u)] = 1;
            path.push_back(u);
            self(self, u, spent || !present);
            path.pop_back();
            used[static_cast<std::size_t>(u)] = 0;
        }
    };
    for (int v = 0; v < diag.n_vertices(); ++v) {
        if (!(diag.vmask[static_cast<std::size_t>(v)] & from)) continue;
        path.assign(1, v);
        std::fill(used.begin(), used.end(), 0);
        used[static_cast<std::size_t>(v)] = 1;
        dfs(dfs, v, false);
    }
}

bool oracle_ltau_reach(const DiagonalLattice& diag, const LtauGraph& ltau, Dir dir) {
    const std::uint8_t from = dir == Dir::Horizontal ? kSideLeft : kSideTop;
    const std::uint8_t to = dir == Dir::Horizontal ? kSideRight : kSideBottom;
    std::vector<int> stack;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(diag.n_vertices()), 0);
    for (int v = 0; v < diag.n_vertices(); ++v)
        if (diag.vmask[static_cast<std::size_t>(v)] & from) {
            seen[static_cast<std::size_t>(v)] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (diag.vmask[static_cast<std::size_t>(v)] & to) return true;
        for (const int eid : diag.adj[static_cast<std::size_t>(v)]) {
            if (!ltau.diag_present[static_cast<std::size_t>(eid)]) continue;
            const int u = diag.other(eid, v);
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
    return false;
}

} // namespace

TEST_CASE("bridges match the slot-table oracle on every n=2 state") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const StateSpace ss = enumerate_states(lat, false);
    for (const Config& s : ss.states)
        for (const Color col : {Color::Green, Color::Red})
            for (const Dir d : {Dir::Horizontal, Dir::Vertical})
                CHECK(has_bridge(lat, med, s, col, d) == oracle_bridge(lat, s, col, d));
}

TEST_CASE("reference states cross in their own color only") {
    const Lattice lat = build_lattice(3, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const Config g = reference_green(lat);
    const Config r = reference_red(lat);
    CHECK(has_cross(lat, med, g, Color::Green));
    CHECK(!has_cross(lat, med, g, Color::Red));
    CHECK(has_cross(lat, med, r, Color::Red));
    CHECK(!has_cross(lat, med, r, Color::Green));
    CHECK(classify(lat, med, g) == PartClass::GreenCross);
    CHECK(classify(lat, med, r) == PartClass::RedCross);
}

TEST_CASE("duality: fault line exists iff no blocking bridge; both routes agree") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false);
    for (const Config& s : ss.states) {
        const LtauGraph ltau = build_ltau(lat, diag, s);
        for (const Dir d : {Dir::Horizontal, Dir::Vertical}) {
            const Dir block = d == Dir::Vertical ? Dir::Horizontal : Dir::Vertical;
            const bool bridged = oracle_bridge(lat, s, Color::Green, block) ||
                                 oracle_bridge(lat, s, Color::Red, block);
            const std::optional<FaultPath> fl = find_fault_line(lat, med, diag, s, d);
            // Duality route vs direct reachability over the interface edges.
            CHECK(fl.has_value() == !bridged);
            CHECK(fl.has_value() == oracle_ltau_reach(diag, ltau, d));
            if (fl) {
                CHECK(fl->missing_count == 0);
                CHECK(fl->verts.size() == fl->steps.size() + 1);
                std::set<int> uniq(fl->verts.begin(), fl->verts.end());
                CHECK(uniq.size() == fl->verts.size());
                for (const int step : fl->steps)
                    CHECK(ltau.diag_present[static_cast<std::size_t>(step)]);
            }
        }
    }
}

TEST_CASE("almost fault search matches exhaustive path enumeration on every n=2 state") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false);
    for (const Config& s : ss.states) {
        const LtauGraph ltau = build_ltau(lat, diag, s);
        for (const Dir d : {Dir::Horizontal, Dir::Vertical}) {
            std::vector<std::vector<int>> all;
            oracle_paths(diag, ltau, d, all);
            const std::optional<FaultPath> p = find_almost_fault_line(lat, diag, ltau, s, d);
            CHECK(p.has_value() == !all.empty());
            if (p) {
                CHECK(p->missing_count <= 1);
                std::set<int> uniq(p->verts.begin(), p->verts.end());
                CHECK(uniq.size() == p->verts.size());
            }
        }
    }
}

TEST_CASE("canonical path is the lexicographic minimum") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false);
    int compared = 0;
    for (const Config& s : ss.states) {
        const LtauGraph ltau = build_ltau(lat, diag, s);
        std::vector<std::vector<int>> all;
        oracle_paths(diag, ltau, Dir::Vertical, all);
        const std::optional<FaultPath> p = canonical_fault_path(diag, ltau, Dir::Vertical);
        REQUIRE(p.has_value() == !all.empty());
        if (!p) continue;
        std::sort(all.begin(), all.end());
        const std::vector<int> got(p->verts.begin(), p->verts.end());
        CHECK(got == all.front());
        ++compared;
    }
    CHECK(compared > 0);
}

TEST_CASE("escape map: weights on the path, injectivity, magnification") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false);
    const Weights w = Weights::make(1, 1, 3);
    std::map<std::string, std::set<std::string>> images_by_path;
    int mapped = 0;
    for (const Config& s : ss.states) {
        const LtauGraph ltau = build_ltau(lat, diag, s);
        const std::optional<FaultPath> p = canonical_fault_path(diag, ltau, Dir::Vertical);
        if (!p) continue;
        const EscapeResult esc = peierls_map(lat, diag, s, *p, w);
        ++mapped;
        CHECK(is_valid(lat, esc.image));
        CHECK(!esc.reversed.empty());
        // Interface steps lift their split vertex from a/b to c; the one
        // missing step drops its monochromatic vertex from c to a/b.
        for (const int step : p->steps) {
            const int iv = diag.edges[static_cast<std::size_t>(step)].through_vertex;
            const int before = weight_class(vertex_type(lat, s, iv));
            const int after = weight_class(vertex_type(lat, esc.image, iv));
            if (ltau.diag_present[static_cast<std::size_t>(step)]) {
                CHECK(before < 2);
                CHECK(after == 2);
            } else {
                CHECK(before == 2);
                CHECK(after < 2);
            }
        }
        // Magnification floor, log scale.
        const double floor_log = std::log(1.0 / 3.0) +
                                 (static_cast<double>(p->steps.size()) - 1) * std::log(3.0);
        CHECK(esc.log_ratio >= floor_log - 1e-9);
        // Injective within the set of states sharing this canonical path.
        std::string key;
        for (const int v : p->verts) key += std::to_string(v) + ",";
        CHECK(images_by_path[key].insert(serialize(lat, esc.image)).second);
    }
    CHECK(mapped > 0);
}

TEST_CASE("escape map rejects broken witnesses") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const DiagonalLattice diag = build_diagonal(lat);
    const MedialGraph med = build_medial(lat);
    const Weights w = Weights::make(1, 1, 3);
    const Config g = reference_green(lat);
    // The reference state has no fault line at all.
    const LtauGraph ltau = build_ltau(lat, diag, g);
    std::optional<FaultPath> p = canonical_fault_path(diag, ltau, Dir::Vertical);
    CHECK(!p.has_value());
    // A path stolen from another state is not a witness for g.
    const StateSpace ss = enumerate_states(lat, false);
    for (const Config& s : ss.states) {
        if (classify(lat, med, s) != PartClass::FaultLine) continue;
        const LtauGraph lt = build_ltau(lat, diag, s);
        const std::optional<FaultPath> q = canonical_fault_path(diag, lt, Dir::Vertical);
        if (!q) continue;
        CHECK_THROWS_AS((void)peierls_map(lat, diag, g, *q, w), InvalidWitness);
        break;
    }
}

TEST_CASE("analyze is consistent with its parts") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false);
    for (const Config& s : ss.states) {
        const TopologyReport r = analyze(lat, med, diag, s);
        CHECK(r.green_h == oracle_bridge(lat, s, Color::Green, Dir::Horizontal));
        CHECK(r.red_v == oracle_bridge(lat, s, Color::Red, Dir::Vertical));
        CHECK(r.cls == classify(lat, med, s));
        // A fault line is an almost fault line with zero misses.
        if (r.fault_h) CHECK(r.almost_h);
        if (r.fault_v) CHECK(r.almost_v);
        // The partition is mutually exclusive on crosses.
        const bool gx = r.green_h && r.green_v, rx = r.red_h && r.red_v;
        CHECK(!(gx && rx));
        CHECK((r.cls == PartClass::GreenCross) == gx);
        CHECK((r.cls == PartClass::RedCross) == (!gx && rx));
    }
}

TEST_CASE("boundary states carry an almost fault line") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const StateSpace ss = enumerate_states(lat, false);
    int boundary = 0;
    for (const Config& s : ss.states) {
        if (classify(lat, med, s) == PartClass::GreenCross) continue;
        if (!one_flip_from_green(lat, med, s)) continue;
        ++boundary;
        const TopologyReport r = analyze(lat, med, diag, s);
        CHECK((r.almost_h || r.almost_v));
    }
    CHECK(boundary > 0);
}

TEST_CASE("torus report: reference crosses, parity, no coexistence") {
    const Lattice lat = build_lattice(2, Bc::Periodic);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const Config g = reference_green(lat);
    const TorusReport tg = torus_report(lat, med, diag, g);
    CHECK(tg.green_cross);
    CHECK(!tg.red_cross);
    const TorusReport tr = torus_report(lat, med, diag, reference_red(lat));
    CHECK(tr.red_cross);
    CHECK(!tr.green_cross);

    const StateSpace ss = enumerate_states(lat, false);
    for (const Config& s : ss.states) {
        const TorusReport t = torus_report(lat, med, diag, s);
        CHECK(!(t.green_cross && t.red_cross));
        CHECK(t.noncontractible % 2 == 0);
        CHECK(t.noncontractible <= static_cast<int>(t.ltau_cycles.size()));
        for (const TorusReport::Cycle& c : t.ltau_cycles) {
            CHECK(c.length > 0);
            if (c.wind_r == 0 && c.wind_c == 0) continue;
            // Winding numbers of a simple cycle on the n=2 torus stay small.
            CHECK(std::abs(c.wind_r) <= 2);
            CHECK(std::abs(c.wind_c) <= 2);
        }
    }
}

TEST_CASE("torus helpers refuse the wrong geometry") {
    const Lattice odd = build_lattice(3, Bc::Periodic);
    const MedialGraph med = build_medial(odd);
    const DiagonalLattice diag = build_diagonal(odd);
    Config any;
    any.bit.assign(static_cast<std::size_t>(odd.n_real_edges), 0);
    CHECK_THROWS_AS((void)torus_report(odd, med, diag, any), ConfigError);
    const Lattice free2 = build_lattice(2, Bc::Free);
    const MedialGraph mfree = build_medial(free2);
    const DiagonalLattice dfree = build_diagonal(free2);
    CHECK_THROWS_AS((void)torus_report(free2, mfree, dfree, reference_green(free2)), ConfigError);
    CHECK_THROWS_AS((void)find_fault_line(odd, med, diag, any, Dir::Vertical), ConfigError);
}
