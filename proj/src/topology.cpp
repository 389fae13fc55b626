#include "icebox/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

#include "icebox/errors.hpp"

namespace icebox {

namespace {

std::uint8_t side_of(Dir dir, bool far_end) {
    if (dir == Dir::Horizontal) return far_end ? kSideRight : kSideLeft;
    return far_end ? kSideBottom : kSideTop;
}

} // namespace

MtauGraph build_mtau(const Lattice& lat, const MedialGraph& med, const Config& cfg) {
    MtauGraph m;
    m.present.assign(med.edges.size(), 0);
    for (std::size_t i = 0; i < med.edges.size(); ++i) {
        const MedialEdge& e = med.edges[i];
        const int k = e.pair_kind;
        const bool ga = half_is_green_at_slot(lat, cfg, e.at_vertex, k);
        const bool gb = half_is_green_at_slot(lat, cfg, e.at_vertex, (k + 1) % 4);
        m.present[i] = static_cast<std::uint8_t>(ga == gb);
    }
    return m;
}

LtauGraph build_ltau(const Lattice& lat, const DiagonalLattice& diag, const Config& cfg) {
    LtauGraph g;
    g.diag_present.assign(diag.edges.size(), 0);
    for (int iv = 0; iv < lat.n_internal(); ++iv) {
        int mask = 0;
        for (int s = 0; s < 4; ++s)
            if (half_is_green_at_slot(lat, cfg, iv, s)) mask |= 1 << s;
        const int greens = __builtin_popcount(static_cast<unsigned>(mask));
        if (greens != 2) continue;  // 0 or 4: no interface through this vertex
        int kind;
        switch (mask) {
            case 1 | 2: case 4 | 8: kind = 1; break;  // greens L,T or R,B: NE-SW separates
            case 2 | 4: case 8 | 1: kind = 0; break;  // greens T,R or B,L: NW-SE separates
            default:
                // Same-color opposite pairs would need all four halves in or out.
                throw InvalidWitness("impossible half-edge coloring at a vertex");
        }
        g.diag_present[static_cast<std::size_t>(2 * iv + kind)] = 1;
    }
    for (int i = 0; i < cfg.n_defects; ++i) {
        const Defect& d = cfg.defect[static_cast<std::size_t>(i)];
        const Edge& ed = lat.edges[static_cast<std::size_t>(d.edge)];
        LtauGraph::Extra x;
        x.through_edge = d.edge;
        auto face_at = [&](int fr, int fc) {
            if (lat.bc == Bc::Periodic) {
                fr = ((fr % lat.frows) + lat.frows) % lat.frows;
                fc = ((fc % lat.fcols) + lat.fcols) % lat.fcols;
            }
            return fr * lat.fcols + fc;
        };
        if (ed.horizontal) {  // faces above and below the edge
            x.va = face_at(ed.r - 1, ed.c);
            x.vb = face_at(ed.r, ed.c);
        } else {  // faces left and right
            x.va = face_at(ed.r, ed.c - 1);
            x.vb = face_at(ed.r, ed.c);
        }
        g.extra.push_back(x);
    }
    return g;
}

std::optional<std::vector<std::int32_t>> find_bridge(const Lattice& lat, const MedialGraph& med,
                                                     const Config& cfg, Color color, Dir dir) {
    if (lat.bc != Bc::Free) throw ConfigError("bridges are a free-boundary notion");
    const std::uint8_t s_from = side_of(dir, false), s_to = side_of(dir, true);
    std::vector<std::int32_t> parent(static_cast<std::size_t>(lat.n_real_edges), -2);
    std::deque<int> q;
    for (int e = 0; e < lat.n_real_edges; ++e)
        if ((lat.eside[static_cast<std::size_t>(e)] & s_from) && edge_color(lat, cfg, e) == color) {
            parent[static_cast<std::size_t>(e)] = -1;
            q.push_back(e);
        }
    while (!q.empty()) {
        const int e = q.front();
        q.pop_front();
        if (lat.eside[static_cast<std::size_t>(e)] & s_to) {
            std::vector<std::int32_t> path;
            for (int x = e; x != -1; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const int me : med.adj[static_cast<std::size_t>(e)]) {
            const MedialEdge& m = med.edges[static_cast<std::size_t>(me)];
            const int other = m.ea == e ? m.eb : m.ea;
            if (parent[static_cast<std::size_t>(other)] != -2) continue;
            if (edge_color(lat, cfg, other) != color) continue;
            parent[static_cast<std::size_t>(other)] = e;
            q.push_back(other);
        }
    }
    return std::nullopt;
}

bool has_bridge(const Lattice& lat, const MedialGraph& med, const Config& cfg, Color color, Dir dir) {
    return find_bridge(lat, med, cfg, color, dir).has_value();
}

bool has_cross(const Lattice& lat, const MedialGraph& med, const Config& cfg, Color color) {
    return has_bridge(lat, med, cfg, color, Dir::Horizontal) &&
           has_bridge(lat, med, cfg, color, Dir::Vertical);
}

const char* part_class_name(PartClass c) {
    switch (c) {
        case PartClass::GreenCross: return "green_cross";
        case PartClass::RedCross: return "red_cross";
        default: return "fault_line";
    }
}

PartClass classify(const Lattice& lat, const MedialGraph& med, const Config& cfg) {
    if (lat.bc == Bc::Periodic) {
        const DiagonalLattice diag = build_diagonal(lat);
        const TorusReport rep = torus_report(lat, med, diag, cfg);
        if (rep.green_cross) return PartClass::GreenCross;
        if (rep.red_cross) return PartClass::RedCross;
        return PartClass::FaultLine;
    }
    if (has_cross(lat, med, cfg, Color::Green)) return PartClass::GreenCross;
    if (has_cross(lat, med, cfg, Color::Red)) return PartClass::RedCross;
    return PartClass::FaultLine;
}

namespace {

// Path reconstruction over a restricted diagonal edge set.
std::optional<FaultPath> bfs_diag_path(const DiagonalLattice& diag,
                                       const std::vector<std::uint8_t>& allowed, Dir dir) {
    const int nv = diag.n_vertices();
    const std::uint8_t s_from = side_of(dir, false), s_to = side_of(dir, true);
    std::vector<std::int32_t> par_v(static_cast<std::size_t>(nv), -2);
    std::vector<std::int32_t> par_e(static_cast<std::size_t>(nv), -1);
    std::deque<int> q;
    for (int v = 0; v < nv; ++v)
        if (diag.vmask[static_cast<std::size_t>(v)] & s_from) {
            par_v[static_cast<std::size_t>(v)] = -1;
            q.push_back(v);
        }
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        if (diag.vmask[static_cast<std::size_t>(v)] & s_to) {
            FaultPath p;
            p.dir = dir;
            for (int x = v; x != -1; x = par_v[static_cast<std::size_t>(x)]) {
                p.verts.push_back(x);
                if (par_e[static_cast<std::size_t>(x)] >= 0)
                    p.steps.push_back(par_e[static_cast<std::size_t>(x)]);
            }
            std::reverse(p.verts.begin(), p.verts.end());
            std::reverse(p.steps.begin(), p.steps.end());
            return p;
        }
        for (const int eid : diag.adj[static_cast<std::size_t>(v)]) {
            if (!allowed[static_cast<std::size_t>(eid)]) continue;
            const int u = diag.other(eid, v);
            if (par_v[static_cast<std::size_t>(u)] != -2) continue;
            par_v[static_cast<std::size_t>(u)] = v;
            par_e[static_cast<std::size_t>(u)] = eid;
            q.push_back(u);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<FaultPath> find_fault_line(const Lattice& lat, const MedialGraph& med,
                                         const DiagonalLattice& diag, const Config& cfg, Dir dir) {
    if (lat.bc != Bc::Free) throw ConfigError("fault line search runs on the free boundary");
    // A vertical interface path exists iff no horizontal monochromatic bridge
    // does, so flood same-color adjacency from the side the path must cut off.
    const Dir block = dir == Dir::Vertical ? Dir::Horizontal : Dir::Vertical;
    const std::uint8_t s_from = side_of(block, false), s_to = side_of(block, true);
    const MtauGraph mtau = build_mtau(lat, med, cfg);

    std::vector<std::uint8_t> in_w(static_cast<std::size_t>(lat.n_real_edges), 0);
    std::deque<int> q;
    for (int e = 0; e < lat.n_real_edges; ++e)
        if (lat.eside[static_cast<std::size_t>(e)] & s_from) {
            in_w[static_cast<std::size_t>(e)] = 1;
            q.push_back(e);
        }
    while (!q.empty()) {
        const int e = q.front();
        q.pop_front();
        if (lat.eside[static_cast<std::size_t>(e)] & s_to) return std::nullopt;  // bridge blocks
        for (const int me : med.adj[static_cast<std::size_t>(e)]) {
            if (!mtau.present[static_cast<std::size_t>(me)]) continue;
            const MedialEdge& m = med.edges[static_cast<std::size_t>(me)];
            const int other = m.ea == e ? m.eb : m.ea;
            if (in_w[static_cast<std::size_t>(other)]) continue;
            in_w[static_cast<std::size_t>(other)] = 1;
            q.push_back(other);
        }
    }

    // Cut medial edges are bichromatic, so their dual diagonal edges lie on
    // the interface; the cut necessarily contains a crossing path.
    const LtauGraph ltau = build_ltau(lat, diag, cfg);
    std::vector<std::uint8_t> allowed(diag.edges.size(), 0);
    for (std::size_t i = 0; i < med.edges.size(); ++i) {
        const MedialEdge& m = med.edges[i];
        if (in_w[static_cast<std::size_t>(m.ea)] == in_w[static_cast<std::size_t>(m.eb)]) continue;
        const int did = 2 * m.at_vertex + MedialGraph::dual_kind(m.pair_kind);
        if (!ltau.diag_present[static_cast<std::size_t>(did)])
            throw InvalidWitness("cut medial edge without interface dual");
        allowed[static_cast<std::size_t>(did)] = 1;
    }
    std::optional<FaultPath> p = bfs_diag_path(diag, allowed, dir);
    if (!p) throw InvalidWitness("interface cut did not contain a crossing path");
    return p;
}

namespace {

struct DiagNeighbor {
    std::int32_t to;
    std::int32_t step;  // diag edge id, or -(1+k) for extra k
    bool present;       // on the interface
};

std::vector<std::vector<DiagNeighbor>> diag_neighbors(const DiagonalLattice& diag,
                                                      const LtauGraph& ltau) {
    std::vector<std::vector<DiagNeighbor>> adj(static_cast<std::size_t>(diag.n_vertices()));
    for (std::size_t i = 0; i < diag.edges.size(); ++i) {
        const DiagEdge& e = diag.edges[i];
        const bool pres = ltau.diag_present[i] != 0;
        // An absent edge can serve as the one missing step only if its vertex
        // carries no interface at all; crossing a split vertex along the wrong
        // diagonal would reverse a same-direction pair and break the ice rule.
        if (!pres && ltau.diag_present[i ^ 1]) continue;
        adj[static_cast<std::size_t>(e.va)].push_back({e.vb, static_cast<std::int32_t>(i), pres});
        adj[static_cast<std::size_t>(e.vb)].push_back({e.va, static_cast<std::int32_t>(i), pres});
    }
    for (std::size_t k = 0; k < ltau.extra.size(); ++k) {
        const LtauGraph::Extra& x = ltau.extra[k];
        const std::int32_t step = -static_cast<std::int32_t>(1 + k);
        adj[static_cast<std::size_t>(x.va)].push_back({x.vb, step, true});
        adj[static_cast<std::size_t>(x.vb)].push_back({x.va, step, true});
    }
    for (auto& v : adj)
        std::sort(v.begin(), v.end(), [](const DiagNeighbor& a, const DiagNeighbor& b) {
            return a.to != b.to ? a.to < b.to : a.step < b.step;
        });
    return adj;
}

// Rebuild step list for a vertex sequence; returns false if two consecutive
// vertices are not adjacent or more than one step is off the interface.
bool fill_steps(const std::vector<std::vector<DiagNeighbor>>& adj, FaultPath& p) {
    p.steps.clear();
    p.missing_count = 0;
    p.missing_index = -1;
    for (std::size_t i = 0; i + 1 < p.verts.size(); ++i) {
        const DiagNeighbor* found = nullptr;
        for (const DiagNeighbor& nb : adj[static_cast<std::size_t>(p.verts[i])])
            if (nb.to == p.verts[i + 1]) { found = &nb; break; }
        if (!found) return false;
        p.steps.push_back(found->step);
        if (!found->present) {
            if (++p.missing_count > 1) return false;
            p.missing_index = static_cast<int>(i);
        }
    }
    return true;
}

} // namespace

std::optional<FaultPath> find_almost_fault_line(const Lattice& lat, const DiagonalLattice& diag,
                                                const LtauGraph& ltau, const Config& cfg, Dir dir) {
    (void)cfg;
    if (lat.bc != Bc::Free) throw ConfigError("fault line search runs on the free boundary");
    const std::uint8_t s_from = side_of(dir, false), s_to = side_of(dir, true);
    const std::vector<std::vector<DiagNeighbor>> adj = diag_neighbors(diag, ltau);
    const int nv = diag.n_vertices();

    // Layer 1 once the free pass is spent.
    std::vector<std::int32_t> par(static_cast<std::size_t>(2 * nv), -2);
    std::deque<int> q;
    for (int v = 0; v < nv; ++v)
        if (diag.vmask[static_cast<std::size_t>(v)] & s_from) {
            par[static_cast<std::size_t>(v)] = -1;
            q.push_back(v);
        }
    int goal = -1;
    while (!q.empty() && goal < 0) {
        const int node = q.front();
        q.pop_front();
        const int v = node % nv, layer = node / nv;
        if (diag.vmask[static_cast<std::size_t>(v)] & s_to) { goal = node; break; }
        for (const DiagNeighbor& nb : adj[static_cast<std::size_t>(v)]) {
            int nlayer = layer;
            if (!nb.present) {
                if (layer == 1) continue;
                nlayer = 1;
            }
            const int nn = nlayer * nv + nb.to;
            if (par[static_cast<std::size_t>(nn)] != -2) continue;
            par[static_cast<std::size_t>(nn)] = node;
            q.push_back(nn);
        }
    }
    if (goal < 0) return std::nullopt;

    std::vector<std::int32_t> walk;
    for (int x = goal; x != -1; x = par[static_cast<std::size_t>(x)]) walk.push_back(x % nv);
    std::reverse(walk.begin(), walk.end());

    // The layered walk can visit a vertex once per layer; chronological loop
    // erasure keeps an edge subset, so at most one step stays off-interface.
    std::vector<std::int32_t> path;
    std::unordered_map<int, std::size_t> at;
    for (const int v : walk) {
        auto it = at.find(v);
        if (it != at.end()) {
            while (path.size() > it->second + 1) {
                at.erase(static_cast<int>(path.back()));
                path.pop_back();
            }
        } else {
            at.emplace(v, path.size());
            path.push_back(v);
        }
    }

    FaultPath p;
    p.dir = dir;
    p.verts = std::move(path);
    if (!fill_steps(adj, p)) throw InvalidWitness("loop erasure produced a broken path");
    return p;
}

namespace {

bool canonical_dfs(const std::vector<std::vector<DiagNeighbor>>& adj, const DiagonalLattice& diag,
                   std::uint8_t goal_mask, std::vector<std::int32_t>& path,
                   std::vector<std::uint8_t>& used, bool free_spent) {
    const int v = path.back();
    if (diag.vmask[static_cast<std::size_t>(v)] & goal_mask) return true;
    for (const DiagNeighbor& nb : adj[static_cast<std::size_t>(v)]) {
        if (used[static_cast<std::size_t>(nb.to)]) continue;
        if (!nb.present && free_spent) continue;
        used[static_cast<std::size_t>(nb.to)] = 1;
        path.push_back(nb.to);
        if (canonical_dfs(adj, diag, goal_mask, path, used, free_spent || !nb.present)) return true;
        path.pop_back();
        used[static_cast<std::size_t>(nb.to)] = 0;
    }
    return false;
}

} // namespace

std::optional<FaultPath> canonical_fault_path(const DiagonalLattice& diag, const LtauGraph& ltau,
                                              Dir dir) {
    const std::uint8_t s_from = side_of(dir, false), s_to = side_of(dir, true);
    const std::vector<std::vector<DiagNeighbor>> adj = diag_neighbors(diag, ltau);
    const int nv = diag.n_vertices();
    std::vector<std::uint8_t> used(static_cast<std::size_t>(nv), 0);
    for (int v0 = 0; v0 < nv; ++v0) {
        if (!(diag.vmask[static_cast<std::size_t>(v0)] & s_from)) continue;
        std::vector<std::int32_t> path{v0};
        std::fill(used.begin(), used.end(), 0);
        used[static_cast<std::size_t>(v0)] = 1;
        if (canonical_dfs(adj, diag, s_to, path, used, false)) {
            FaultPath p;
            p.dir = dir;
            p.verts = std::move(path);
            if (!fill_steps(adj, p)) throw InvalidWitness("canonical search produced a broken path");
            return p;
        }
    }
    return std::nullopt;
}

TopologyReport analyze(const Lattice& lat, const MedialGraph& med, const DiagonalLattice& diag,
                       const Config& cfg) {
    TopologyReport r;
    r.green_h = has_bridge(lat, med, cfg, Color::Green, Dir::Horizontal);
    r.green_v = has_bridge(lat, med, cfg, Color::Green, Dir::Vertical);
    r.red_h = has_bridge(lat, med, cfg, Color::Red, Dir::Horizontal);
    r.red_v = has_bridge(lat, med, cfg, Color::Red, Dir::Vertical);
    // Direct interface reachability; independent of the duality construction.
    const LtauGraph ltau = build_ltau(lat, diag, cfg);
    const std::vector<std::vector<DiagNeighbor>> adj = diag_neighbors(diag, ltau);
    auto reach = [&](Dir d) {
        const std::uint8_t s_from = side_of(d, false), s_to = side_of(d, true);
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(diag.n_vertices()), 0);
        std::deque<int> q;
        for (int v = 0; v < diag.n_vertices(); ++v)
            if (diag.vmask[static_cast<std::size_t>(v)] & s_from) {
                seen[static_cast<std::size_t>(v)] = 1;
                q.push_back(v);
            }
        while (!q.empty()) {
            const int v = q.front();
            q.pop_front();
            if (diag.vmask[static_cast<std::size_t>(v)] & s_to) return true;
            for (const DiagNeighbor& nb : adj[static_cast<std::size_t>(v)])
                if (nb.present && !seen[static_cast<std::size_t>(nb.to)]) {
                    seen[static_cast<std::size_t>(nb.to)] = 1;
                    q.push_back(nb.to);
                }
        }
        return false;
    };
    r.fault_h = reach(Dir::Horizontal);
    r.fault_v = reach(Dir::Vertical);
    r.almost_h = find_almost_fault_line(lat, diag, ltau, cfg, Dir::Horizontal).has_value();
    r.almost_v = find_almost_fault_line(lat, diag, ltau, cfg, Dir::Vertical).has_value();
    if (cfg.perfect()) r.cls = classify(lat, med, cfg);
    return r;
}

bool in_green_cross_class(const Lattice& lat, const MedialGraph& med, const Config& cfg) {
    return classify(lat, med, cfg) == PartClass::GreenCross;
}

bool one_flip_from_green(const Lattice& lat, const MedialGraph& med, const Config& cfg) {
    if (!cfg.perfect()) return false;
    Config work = cfg;
    for (const Face& f : lat.faces) {
        if (f.n_real == 0) continue;
        bool all_cw = true, all_ccw = true, has_defect = false;
        for (int k = 0; k < f.n_real; ++k) {
            const int e = f.flip_edge[static_cast<std::size_t>(k)];
            if (work.defect_slot(e) >= 0) { has_defect = true; break; }
            const bool cw = work.bit[static_cast<std::size_t>(e)] == f.flip_cw[static_cast<std::size_t>(k)];
            all_cw &= cw;
            all_ccw &= !cw;
        }
        if (has_defect || (!all_cw && !all_ccw)) continue;
        for (int k = 0; k < f.n_real; ++k)
            work.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(k)])] ^= 1;
        const bool hit = classify(lat, med, work) == PartClass::GreenCross;
        for (int k = 0; k < f.n_real; ++k)
            work.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(k)])] ^= 1;
        if (hit) return true;
    }
    return false;
}

namespace {

// Closed polygon: the path (4x coordinates) extended beyond both boundary
// endpoints and closed around the left (Vertical) or top (Horizontal) side of
// the region, so that "inside" is exactly the side whose edges get reversed.
struct Polygon {
    std::vector<std::pair<int, int>> pts;  // consecutive segments, closed
};

Polygon closed_extension(const DiagonalLattice& diag, const FaultPath& path) {
    Polygon poly;
    auto coord = [&](int v) {
        const int fr = v / diag.fcols, fc = v % diag.fcols;
        return std::pair<int, int>(4 * fc + 2, 4 * fr + 2);
    };
    const std::pair<int, int> first = coord(path.verts.front());
    const std::pair<int, int> last = coord(path.verts.back());
    const int hi = 4 * diag.frows + 6;
    if (path.dir == Dir::Vertical) {
        poly.pts.push_back({first.first, -6});
        for (const int v : path.verts) poly.pts.push_back(coord(v));
        poly.pts.push_back({last.first, hi});
        poly.pts.push_back({-10, hi});
        poly.pts.push_back({-10, -6});
    } else {
        poly.pts.push_back({-6, first.second});
        for (const int v : path.verts) poly.pts.push_back(coord(v));
        poly.pts.push_back({hi, last.second});
        poly.pts.push_back({hi, -10});
        poly.pts.push_back({-6, -10});
    }
    poly.pts.push_back(poly.pts.front());
    return poly;
}

// Even-odd test with a leftward ray at half-integer height; all path segments
// are axis-aligned or slope +-1 with integer endpoints, so arithmetic is exact.
bool point_inside(const Polygon& poly, int px, int py) {
    const int ry = 2 * py + 1;  // ray height, doubled once more to stay integral
    int crossings = 0;
    for (std::size_t i = 0; i + 1 < poly.pts.size(); ++i) {
        const auto [x1, y1] = poly.pts[i];
        const auto [x2, y2] = poly.pts[i + 1];
        if (y1 == y2) continue;
        const int lo = 2 * std::min(y1, y2), hi = 2 * std::max(y1, y2);
        if (ry < lo || ry > hi) continue;
        // x at the ray height, doubled: segments are vertical or slope +-1.
        long long x_at2;
        if (x1 == x2) {
            x_at2 = 2LL * x1;
        } else {
            const int sgn = ((x2 - x1) > 0) == ((y2 - y1) > 0) ? 1 : -1;
            x_at2 = 2LL * x1 + sgn * (ry - 2LL * y1);
        }
        if (x_at2 < 2LL * px) ++crossings;
    }
    return (crossings & 1) != 0;
}

} // namespace

EscapeResult peierls_map(const Lattice& lat, const DiagonalLattice& diag, const Config& cfg,
                         const FaultPath& path, const Weights& w) {
    if (lat.bc != Bc::Free) throw ConfigError("the escape map runs on the free boundary");
    if (!cfg.perfect()) throw InvalidWitness("the escape map takes perfect states");
    if (path.verts.size() < 2) throw InvalidWitness("crossing path too short");
    if (path.verts.size() != path.steps.size() + 1)
        throw InvalidWitness("crossing path steps do not match its vertices");
    const LtauGraph ltau = build_ltau(lat, diag, cfg);
    int missing = 0;
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        const int s = path.steps[i];
        if (s < 0) throw InvalidWitness("crossing path must use diagonal steps only");
        const DiagEdge& e = diag.edges[static_cast<std::size_t>(s)];
        const int va = path.verts[i], vb = path.verts[i + 1];
        if (!((e.va == va && e.vb == vb) || (e.va == vb && e.vb == va)))
            throw InvalidWitness("crossing path step does not join its vertices");
        if (ltau.diag_present[static_cast<std::size_t>(s)]) continue;
        if (ltau.diag_present[static_cast<std::size_t>(s ^ 1)])
            throw InvalidWitness("missing step crosses a split vertex");
        if (++missing > 1) throw InvalidWitness("crossing path has two missing steps");
    }
    const std::uint8_t m_from = side_of(path.dir, false), m_to = side_of(path.dir, true);
    if (!(diag.vmask[static_cast<std::size_t>(path.verts.front())] & m_from) ||
        !(diag.vmask[static_cast<std::size_t>(path.verts.back())] & m_to))
        throw InvalidWitness("crossing path endpoints are not on opposite boundaries");

    const Polygon poly = closed_extension(diag, path);
    EscapeResult res;
    res.image = cfg;
    const double before = log_weight(lat, cfg, w);
    for (int e = 0; e < lat.n_real_edges; ++e) {
        const auto [mx, my] = lat.edge_mid2(e);
        if (point_inside(poly, 2 * mx, 2 * my)) {
            res.image.bit[static_cast<std::size_t>(e)] ^= 1;
            res.reversed.push_back(e);
        }
    }
    res.log_ratio = log_weight(lat, res.image, w) - before;  // throws if image breaks the ice rule
    return res;
}

TorusReport torus_report(const Lattice& lat, const MedialGraph& med, const DiagonalLattice& diag,
                         const Config& cfg) {
    if (lat.bc != Bc::Periodic) throw ConfigError("torus report needs a periodic lattice");
    if (!lat.has_c_ground) throw ConfigError("torus topology needs the c-ground states (even n)");
    if (!cfg.perfect()) throw InvalidWitness("torus report takes perfect states");
    TorusReport rep;
    const int n = lat.n;

    // Homology rank of monochromatic cycles: lift midpoint positions over a
    // BFS tree; every non-tree medial edge closes a cycle whose winding is the
    // lift discrepancy over the 2n-periodic plane.
    auto color_rank2 = [&](Color color) {
        std::vector<std::int64_t> lx(static_cast<std::size_t>(lat.n_real_edges)),
            ly(static_cast<std::size_t>(lat.n_real_edges));
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(lat.n_real_edges), 0);
        // Local slot offsets around a vertex, doubled coordinates.
        static const int sx[4] = {-1, 0, 1, 0}, sy[4] = {0, -1, 0, 1};
        std::pair<int, int> g1{0, 0};
        bool have_g1 = false;
        for (int root = 0; root < lat.n_real_edges; ++root) {
            if (seen[static_cast<std::size_t>(root)] || edge_color(lat, cfg, root) != color) continue;
            seen[static_cast<std::size_t>(root)] = 1;
            lx[static_cast<std::size_t>(root)] = 0;
            ly[static_cast<std::size_t>(root)] = 0;
            std::deque<int> q{root};
            while (!q.empty()) {
                const int e = q.front();
                q.pop_front();
                for (const int me : med.adj[static_cast<std::size_t>(e)]) {
                    const MedialEdge& m = med.edges[static_cast<std::size_t>(me)];
                    const int other = m.ea == e ? m.eb : m.ea;
                    if (edge_color(lat, cfg, other) != color) continue;
                    const int k = m.pair_kind;
                    // Displacement from slot k to slot k+1 at the shared vertex.
                    int dx = sx[(k + 1) % 4] - sx[k], dy = sy[(k + 1) % 4] - sy[k];
                    if (m.ea != e) { dx = -dx; dy = -dy; }
                    const std::int64_t nx = lx[static_cast<std::size_t>(e)] + dx;
                    const std::int64_t ny = ly[static_cast<std::size_t>(e)] + dy;
                    if (!seen[static_cast<std::size_t>(other)]) {
                        seen[static_cast<std::size_t>(other)] = 1;
                        lx[static_cast<std::size_t>(other)] = nx;
                        ly[static_cast<std::size_t>(other)] = ny;
                        q.push_back(other);
                    } else {
                        const std::int64_t wx = (nx - lx[static_cast<std::size_t>(other)]) / (2 * n);
                        const std::int64_t wy = (ny - ly[static_cast<std::size_t>(other)]) / (2 * n);
                        if (wx == 0 && wy == 0) continue;
                        const std::pair<int, int> g{static_cast<int>(wx), static_cast<int>(wy)};
                        if (!have_g1) {
                            g1 = g;
                            have_g1 = true;
                        } else if (static_cast<std::int64_t>(g1.first) * g.second -
                                       static_cast<std::int64_t>(g1.second) * g.first != 0) {
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    };
    rep.green_cross = color_rank2(Color::Green);
    rep.red_cross = color_rank2(Color::Red);

    // Interface cycles: stubs at face corners where the two adjacent sides
    // differ in color; at four-stub faces the two curves hug the red sides,
    // giving a deterministic non-crossing resolution.
    const LtauGraph ltau = build_ltau(lat, diag, cfg);
    const int NW = 0, NE = 1, SE = 2, SW = 3;
    // partner[(edge, face)] -> the other interface edge paired at that face
    std::unordered_map<std::int64_t, std::int32_t> partner;
    auto end_key = [&](int edge, int face) { return static_cast<std::int64_t>(edge) * diag.n_vertices() + face; };

    for (int fr = 0; fr < n; ++fr)
        for (int fc = 0; fc < n; ++fc) {
            const int fid = fr * n + fc;
            auto iv_at = [&](int r, int c) {
                return lat.internal_of_vertex[static_cast<std::size_t>(
                    lat.vertex_id(((r % n) + n) % n, ((c % n) + n) % n))];
            };
            // Diagonal edge entering this face at each corner.
            const int stub_edge[4] = {
                2 * iv_at(fr, fc) + 0,          // NW corner, NW-SE diagonal
                2 * iv_at(fr, fc + 1) + 1,      // NE corner, NE-SW diagonal
                2 * iv_at(fr + 1, fc + 1) + 0,  // SE corner
                2 * iv_at(fr + 1, fc) + 1,      // SW corner
            };
            int stubs[4], ns = 0;
            for (int k = 0; k < 4; ++k)
                if (ltau.diag_present[static_cast<std::size_t>(stub_edge[k])]) stubs[ns++] = k;
            if (ns == 0) continue;
            auto pair_up = [&](int ka, int kb) {
                partner[end_key(stub_edge[ka], fid)] = stub_edge[kb];
                partner[end_key(stub_edge[kb], fid)] = stub_edge[ka];
            };
            if (ns == 2) {
                pair_up(stubs[0], stubs[1]);
            } else if (ns == 4) {
                const Face& f = lat.faces[static_cast<std::size_t>(fid)];
                const Color north = edge_color(lat, cfg, f.side[0]);
                if (north == Color::Red) {
                    pair_up(NW, NE);
                    pair_up(SW, SE);
                } else {
                    pair_up(NW, SW);
                    pair_up(NE, SE);
                }
            } else {
                throw InvalidWitness("odd interface degree at a face");
            }
        }

    std::vector<std::uint8_t> visited(diag.edges.size(), 0);
    for (std::size_t e0 = 0; e0 < diag.edges.size(); ++e0) {
        if (!ltau.diag_present[e0] || visited[e0]) continue;
        TorusReport::Cycle cyc;
        int e = static_cast<int>(e0);
        int from_face = diag.edges[e0].va;
        long long wr = 0, wc = 0;
        do {
            visited[static_cast<std::size_t>(e)] = 1;
            const DiagEdge& de = diag.edges[static_cast<std::size_t>(e)];
            const int to_face = de.va == from_face ? de.vb : de.va;
            if (de.va == from_face) { wr += de.step_dr; wc += de.step_dc; }
            else { wr -= de.step_dr; wc -= de.step_dc; }
            ++cyc.length;
            const auto it = partner.find(end_key(e, to_face));
            if (it == partner.end()) throw InvalidWitness("interface stub without a partner");
            e = it->second;
            from_face = to_face;
        } while (!(e == static_cast<int>(e0) && from_face == diag.edges[e0].va));
        cyc.wind_r = static_cast<int>(wr / n);
        cyc.wind_c = static_cast<int>(wc / n);
        rep.ltau_cycles.push_back(cyc);
        if (cyc.wind_r != 0 || cyc.wind_c != 0) ++rep.noncontractible;
    }
    return rep;
}

} // namespace icebox
