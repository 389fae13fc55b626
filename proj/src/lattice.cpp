#include "icebox/lattice.hpp"

#include <stdexcept>

#include "icebox/errors.hpp"

namespace icebox {

namespace {

int wrap(int x, int n) { return ((x % n) + n) % n; }

} // namespace

Lattice build_lattice(int n, Bc bc) {
    if (n < 1) throw ConfigError("lattice size must be >= 1");
    Lattice L;
    L.bc = bc;
    L.n = n;

    if (bc == Bc::Free) {
        L.vrows = L.vcols = n + 2;
        L.frows = L.fcols = n + 1;
        const int nv = L.vrows * L.vcols;
        L.internal_of_vertex.assign(static_cast<std::size_t>(nv), -1);
        L.vside.assign(static_cast<std::size_t>(nv), 0);
        for (int r = 0; r < L.vrows; ++r)
            for (int c = 0; c < L.vcols; ++c) {
                const int v = L.vertex_id(r, c);
                if (r >= 1 && r <= n && c >= 1 && c <= n) {
                    L.internal_of_vertex[static_cast<std::size_t>(v)] =
                        static_cast<std::int32_t>(L.vertex_of_internal.size());
                    L.vertex_of_internal.push_back(v);
                } else {
                    std::uint8_t m = 0;
                    if (c == 0) m |= kSideLeft;
                    if (c == n + 1) m |= kSideRight;
                    if (r == 0) m |= kSideTop;
                    if (r == n + 1) m |= kSideBottom;
                    L.vside[static_cast<std::size_t>(v)] = m;
                }
            }

        // Real horizontal edges live in rows 1..n (n+1 per row), vertical ones
        // in columns 1..n; every real edge touches an internal vertex.
        auto add_edge = [&](int r, int c, bool horizontal) {
            Edge e;
            e.horizontal = horizontal;
            e.r = static_cast<std::int16_t>(r);
            e.c = static_cast<std::int16_t>(c);
            if (horizontal) {
                e.tail = L.vertex_id(r, c);
                e.head = L.vertex_id(r, c + 1);
            } else {
                e.tail = L.vertex_id(r + 1, c);  // lower endpoint; canonical points up
                e.head = L.vertex_id(r, c);
            }
            L.edges.push_back(e);
            return static_cast<int>(L.edges.size()) - 1;
        };
        for (int r = 1; r <= n; ++r)
            for (int c = 0; c <= n; ++c) add_edge(r, c, true);
        for (int r = 0; r <= n; ++r)
            for (int c = 1; c <= n; ++c) add_edge(r, c, false);
        L.n_real_edges = static_cast<int>(L.edges.size());

        // Virtual edges close the boundary ring so every face has four sides.
        auto add_virtual = [&](int r, int c, bool horizontal) {
            const int id = add_edge(r, c, horizontal);
            L.edges[static_cast<std::size_t>(id)].is_real = false;
            return id;
        };
        for (int c = 0; c <= n; ++c) { add_virtual(0, c, true); add_virtual(n + 1, c, true); }
        for (int r = 0; r <= n; ++r) { add_virtual(r, 0, false); add_virtual(r, n + 1, false); }
    } else {
        L.vrows = L.vcols = n;
        L.frows = L.fcols = n;
        const int nv = n * n;
        L.internal_of_vertex.assign(static_cast<std::size_t>(nv), -1);
        L.vside.assign(static_cast<std::size_t>(nv), 0);
        for (int v = 0; v < nv; ++v) {
            L.internal_of_vertex[static_cast<std::size_t>(v)] = v;
            L.vertex_of_internal.push_back(v);
        }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                Edge e;
                e.horizontal = true;
                e.r = static_cast<std::int16_t>(r);
                e.c = static_cast<std::int16_t>(c);
                e.tail = L.vertex_id(r, c);
                e.head = L.vertex_id(r, wrap(c + 1, n));
                L.edges.push_back(e);
            }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                Edge e;
                e.horizontal = false;
                e.r = static_cast<std::int16_t>(r);  // upper endpoint
                e.c = static_cast<std::int16_t>(c);
                e.tail = L.vertex_id(wrap(r + 1, n), c);
                e.head = L.vertex_id(r, c);
                L.edges.push_back(e);
            }
        L.n_real_edges = static_cast<int>(L.edges.size());
        L.has_c_ground = (n % 2 == 0);
    }

    // Edge lookup tables by lattice position.
    auto h_id = [&](int r, int c) -> int {
        if (bc == Bc::Free) return (r - 1) * (n + 1) + c;
        return wrap(r, n) * n + wrap(c, n);
    };
    auto v_id = [&](int r, int c) -> int {  // keyed by upper endpoint
        if (bc == Bc::Free) return n * (n + 1) + r * n + (c - 1);
        return n * n + wrap(r, n) * n + wrap(c, n);
    };

    // Slot table: left/top/right/bottom edge at each internal vertex.
    L.islot.resize(L.vertex_of_internal.size());
    for (std::size_t iv = 0; iv < L.vertex_of_internal.size(); ++iv) {
        const int v = L.vertex_of_internal[iv];
        const int r = v / L.vcols, c = v % L.vcols;
        std::array<std::int32_t, 4>& s = L.islot[iv];
        s[kLeft] = h_id(r, c - 1);
        s[kRight] = h_id(r, c);
        s[kTop] = v_id(r - 1, c);
        s[kBottom] = v_id(r, c);
    }

    // Faces. Face (fr,fc) has its top-left corner at vertex (fr,fc).
    L.n_faces = L.frows * L.fcols;
    L.faces.resize(static_cast<std::size_t>(L.n_faces));
    for (int fr = 0; fr < L.frows; ++fr)
        for (int fc = 0; fc < L.fcols; ++fc) {
            Face& f = L.faces[static_cast<std::size_t>(L.face_id(fr, fc))];
            int top, right, bottom, left;
            if (bc == Bc::Free) {
                // Virtual sides sit on the boundary ring; their ids follow the
                // real block in insertion order.
                const int vh = L.n_real_edges;                    // row 0 block start
                auto h_any = [&](int r, int c) {
                    if (r >= 1 && r <= n) return h_id(r, c);
                    return r == 0 ? vh + 2 * c : vh + 2 * c + 1;  // rows 0 / n+1 interleaved
                };
                const int vv = L.n_real_edges + 2 * (n + 1);
                auto v_any = [&](int r, int c) {
                    if (c >= 1 && c <= n) return v_id(r, c);
                    return c == 0 ? vv + 2 * r : vv + 2 * r + 1;
                };
                top = h_any(fr, fc);
                bottom = h_any(fr + 1, fc);
                left = v_any(fr, fc);
                right = v_any(fr, fc + 1);
            } else {
                top = h_id(fr, fc);
                bottom = h_id(fr + 1, fc);
                left = v_id(fr, fc);
                right = v_id(fr, fc + 1);
            }
            f.side = {top, right, bottom, left};
            // Clockwise traversal with rows growing downward: top edge follows
            // its canonical (rightward) direction, the right edge runs against
            // canonical (downward), etc.
            const std::array<std::uint8_t, 4> cwbit = {1, 0, 0, 1};
            for (int k = 0; k < 4; ++k) {
                const int e = f.side[static_cast<std::size_t>(k)];
                if (e < L.n_real_edges) {
                    f.flip_edge[static_cast<std::size_t>(f.n_real)] = e;
                    f.flip_cw[static_cast<std::size_t>(f.n_real)] = cwbit[static_cast<std::size_t>(k)];
                    ++f.n_real;
                }
            }
        }

    // Boundary side of each real edge (at most one endpoint is on the ring).
    L.eside.assign(static_cast<std::size_t>(L.n_real_edges), 0);
    if (bc == Bc::Free) {
        for (int e = 0; e < L.n_real_edges; ++e) {
            const Edge& ed = L.edges[static_cast<std::size_t>(e)];
            const std::uint8_t m = static_cast<std::uint8_t>(
                L.vside[static_cast<std::size_t>(ed.tail)] | L.vside[static_cast<std::size_t>(ed.head)]);
            L.eside[static_cast<std::size_t>(e)] = m;
            if (m != 0) {
                Lattice::BoundaryHalf h;
                h.edge = e;
                h.end = L.vside[static_cast<std::size_t>(ed.head)] ? 1 : 0;
                h.side = m;
                h.vertex = h.end ? ed.head : ed.tail;
                L.boundary_halves.push_back(h);
            }
        }
    }

    // Reference all-c state: checkerboard orientations. A horizontal edge with
    // left endpoint (r,c) points right iff r+c is even; a vertical edge with
    // upper endpoint (r,c) points up iff r+c is even. Every internal vertex
    // then has both horizontal halves in (or both vertical halves in).
    L.green_bit.assign(static_cast<std::size_t>(L.n_real_edges), 0);
    for (int e = 0; e < L.n_real_edges; ++e) {
        const Edge& ed = L.edges[static_cast<std::size_t>(e)];
        L.green_bit[static_cast<std::size_t>(e)] = static_cast<std::uint8_t>(((ed.r + ed.c) & 1) == 0);
    }

    return L;
}

DiagonalLattice build_diagonal(const Lattice& lat) {
    DiagonalLattice D;
    D.n = lat.n;
    D.bc = lat.bc;
    D.frows = lat.frows;
    D.fcols = lat.fcols;
    const int nv = D.frows * D.fcols;
    D.adj.resize(static_cast<std::size_t>(nv));
    D.vmask.assign(static_cast<std::size_t>(nv), 0);
    D.sublattice.assign(static_cast<std::size_t>(nv), 0);
    for (int fr = 0; fr < D.frows; ++fr)
        for (int fc = 0; fc < D.fcols; ++fc) {
            const int id = fr * D.fcols + fc;
            D.sublattice[static_cast<std::size_t>(id)] = static_cast<std::uint8_t>((fr + fc) & 1);
            if (lat.bc == Bc::Free) {
                std::uint8_t m = 0;
                if (fc == 0) m |= kSideLeft;
                if (fc == D.fcols - 1) m |= kSideRight;
                if (fr == 0) m |= kSideTop;
                if (fr == D.frows - 1) m |= kSideBottom;
                D.vmask[static_cast<std::size_t>(id)] = m;
            }
        }

    auto face_at = [&](int fr, int fc) {
        if (lat.bc == Bc::Periodic) {
            fr = ((fr % D.frows) + D.frows) % D.frows;
            fc = ((fc % D.fcols) + D.fcols) % D.fcols;
        }
        return fr * D.fcols + fc;
    };

    for (int iv = 0; iv < lat.n_internal(); ++iv) {
        const int v = lat.vertex_of_internal[static_cast<std::size_t>(iv)];
        const int r = v / lat.vcols, c = v % lat.vcols;
        // Face coordinates of the four faces around v; on Free the faces
        // around internal vertex (r,c) are (r-1,c-1)..(r,c).
        for (int kind = 0; kind < 2; ++kind) {
            DiagEdge e;
            e.through_vertex = iv;
            e.kind = static_cast<std::int8_t>(kind);
            if (kind == 0) {  // NW-SE
                e.va = face_at(r - 1, c - 1);
                e.vb = face_at(r, c);
                e.step_dr = 1;
                e.step_dc = 1;
            } else {  // NE-SW
                e.va = face_at(r - 1, c);
                e.vb = face_at(r, c - 1);
                e.step_dr = 1;
                e.step_dc = -1;
            }
            const int id = static_cast<int>(D.edges.size());
            D.edges.push_back(e);
            D.adj[static_cast<std::size_t>(e.va)].push_back(id);
            D.adj[static_cast<std::size_t>(e.vb)].push_back(id);
        }
    }
    return D;
}

MedialGraph build_medial(const Lattice& lat) {
    MedialGraph M;
    M.adj.resize(static_cast<std::size_t>(lat.n_real_edges));
    for (int iv = 0; iv < lat.n_internal(); ++iv) {
        const std::array<std::int32_t, 4>& s = lat.islot[static_cast<std::size_t>(iv)];
        for (int k = 0; k < 4; ++k) {
            MedialEdge e;
            e.ea = s[static_cast<std::size_t>(k)];
            e.eb = s[static_cast<std::size_t>((k + 1) % 4)];
            e.at_vertex = iv;
            e.pair_kind = static_cast<std::int8_t>(k);
            const int id = static_cast<int>(M.edges.size());
            M.edges.push_back(e);
            M.adj[static_cast<std::size_t>(e.ea)].push_back(id);
            M.adj[static_cast<std::size_t>(e.eb)].push_back(id);
        }
    }
    return M;
}

} // namespace icebox
