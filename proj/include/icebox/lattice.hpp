#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace icebox {

enum class Bc { Free, Periodic };

// Rotational order of the edges around an internal vertex. All adjacency
// ("rotationally adjacent") statements use consecutive slots in this cycle.
enum Slot : int { kLeft = 0, kTop = 1, kRight = 2, kBottom = 3 };

inline constexpr std::uint8_t kSideLeft = 1, kSideTop = 2, kSideRight = 4, kSideBottom = 8;

// Canonical direction is tail -> head: rightward for horizontal edges,
// upward (towards smaller row) for vertical ones.
struct Edge {
    std::int32_t tail = -1;
    std::int32_t head = -1;
    bool horizontal = false;
    bool is_real = true;
    // Lattice position: horizontal edges keyed by their left endpoint (r,c),
    // vertical edges by their upper endpoint.
    std::int16_t r = 0;
    std::int16_t c = 0;
};

struct Face {
    // Side edge ids in the order top, right, bottom, left; virtual sides are
    // present on Free boundary faces.
    std::array<std::int32_t, 4> side{{-1, -1, -1, -1}};
    // Real sides only, paired with the orientation bit that realizes a
    // clockwise traversal of the face (top edge rightward, left edge upward).
    std::array<std::int32_t, 4> flip_edge{{-1, -1, -1, -1}};
    std::array<std::uint8_t, 4> flip_cw{{0, 0, 0, 0}};
    int n_real = 0;
};

// Square-ice region with n internal vertices per side.
//
// Free: vertex grid (n+2) x (n+2); the outer ring has degree <= 1 in real
// edges and is exempt from the ice rule; virtual edges run along the ring so
// that every one of the (n+1)^2 unit faces has four sides.
// Periodic: n x n torus, every vertex internal, 2n^2 edges, n^2 faces.
struct Lattice {
    Bc bc = Bc::Free;
    int n = 0;
    int vrows = 0, vcols = 0;
    int n_real_edges = 0;
    int n_faces = 0;
    int frows = 0, fcols = 0;

    std::vector<Edge> edges; // real edges first (ids [0, n_real_edges)), then virtual
    std::vector<std::int32_t> internal_of_vertex; // -1 for boundary ring vertices
    std::vector<std::int32_t> vertex_of_internal;
    std::vector<std::array<std::int32_t, 4>> islot; // per internal vertex: edge id at kLeft..kBottom
    std::vector<std::uint8_t> vside;  // per vertex: boundary side mask (Free), 0 inside
    std::vector<std::uint8_t> eside;  // per real edge: boundary side mask of its boundary endpoint
    std::vector<Face> faces;
    // Per real edge: orientation bit of the all-c reference state ("green").
    std::vector<std::uint8_t> green_bit;
    // True when the two c-ground-states exist on this geometry (always on Free,
    // only for even n on the torus).
    bool has_c_ground = true;

    struct BoundaryHalf {
        std::int32_t edge;
        std::uint8_t end;  // 0 = tail, 1 = head is the boundary vertex
        std::uint8_t side;
        std::int32_t vertex;
    };
    std::vector<BoundaryHalf> boundary_halves; // Free: 4n entries in edge id order

    int n_internal() const { return static_cast<int>(vertex_of_internal.size()); }
    int vertex_id(int r, int c) const { return r * vcols + c; }
    int face_id(int fr, int fc) const { return fr * fcols + fc; }

    // Which end of the edge in slot s of a vertex is that vertex:
    // left/bottom slots hold the head, right/top slots the tail.
    static bool slot_vertex_is_head(int s) { return s == kLeft || s == kBottom; }

    // Scaled-by-2 planar coordinates; vertices land on (even,even),
    // edge midpoints on (odd,even)/(even,odd), face centers on (odd,odd).
    std::pair<int, int> edge_mid2(int e) const {
        const Edge& ed = edges[static_cast<std::size_t>(e)];
        if (ed.horizontal) return {2 * ed.c + 1, 2 * ed.r};
        return {2 * ed.c, 2 * ed.r + 1};
    }
};

Lattice build_lattice(int n, Bc bc);

// Half-integer lattice restricted to the region: one vertex per face center,
// split into the two diagonal sublattices by (fr+fc) parity. Every diagonal
// edge passes through exactly one internal vertex; there are two per vertex.
struct DiagEdge {
    std::int32_t va = -1, vb = -1;  // face/diag-vertex ids
    std::int32_t through_vertex = -1;
    std::int8_t kind = 0;  // 0: NW-SE, 1: NE-SW
    std::int8_t step_dr = 0, step_dc = 0;  // va -> vb step in face coordinates
};

struct DiagonalLattice {
    int n = 0;
    Bc bc = Bc::Free;
    int frows = 0, fcols = 0;
    std::vector<DiagEdge> edges;  // id = 2*internal_vertex_index + kind
    std::vector<std::vector<std::int32_t>> adj;  // diag vertex -> incident edge ids
    std::vector<std::uint8_t> vmask;       // boundary side mask per diag vertex (Free)
    std::vector<std::uint8_t> sublattice;  // (fr+fc) & 1

    int n_vertices() const { return frows * fcols; }
    int other(int eid, int v) const {
        const DiagEdge& e = edges[static_cast<std::size_t>(eid)];
        return e.va == v ? e.vb : e.va;
    }
};

DiagonalLattice build_diagonal(const Lattice& lat);

// Medial graph: one vertex per real edge, one medial edge per rotationally
// adjacent pair at an internal vertex (four per vertex). Each medial edge is
// crossed by exactly one of the two diagonal edges through its vertex.
struct MedialEdge {
    std::int32_t ea = -1, eb = -1;  // real edge ids
    std::int32_t at_vertex = -1;    // internal vertex index
    std::int8_t pair_kind = 0;      // 0:(L,T) 1:(T,R) 2:(R,B) 3:(B,L)
};

struct MedialGraph {
    std::vector<MedialEdge> edges;  // id = 4*internal_vertex_index + pair_kind
    std::vector<std::vector<std::int32_t>> adj;  // real edge -> incident medial edge ids

    // Diagonal edge crossing a medial edge: (L,T),(R,B) pairs are cut by the
    // NW-SE diagonal, (T,R),(B,L) by the NE-SW one.
    static int dual_kind(int pair_kind) { return (pair_kind == 0 || pair_kind == 2) ? 0 : 1; }
};

MedialGraph build_medial(const Lattice& lat);

} // namespace icebox
