#include "doctest.h"

#include <map>
#include <set>

#include "icebox/lattice.hpp"

using namespace icebox;

TEST_CASE("free lattice counts") {
    for (int n = 1; n <= 4; ++n) {
        const Lattice lat = build_lattice(n, Bc::Free);
        CHECK(lat.vrows == n + 2);
        CHECK(lat.vcols == n + 2);
        CHECK(lat.n_internal() == n * n);
        CHECK(lat.n_real_edges == 2 * n * (n + 1));
        CHECK(lat.n_faces == (n + 1) * (n + 1));
        CHECK(lat.frows == n + 1);
        CHECK(lat.fcols == n + 1);
        CHECK(lat.boundary_halves.size() == static_cast<std::size_t>(4 * n));
        CHECK(lat.has_c_ground);
    }
}

TEST_CASE("periodic lattice counts") {
    for (int n = 1; n <= 4; ++n) {
        const Lattice lat = build_lattice(n, Bc::Periodic);
        CHECK(lat.vrows == n);
        CHECK(lat.vcols == n);
        CHECK(lat.n_internal() == n * n);
        CHECK(lat.n_real_edges == 2 * n * n);
        CHECK(lat.n_faces == n * n);
        CHECK(lat.boundary_halves.empty());
        CHECK(lat.has_c_ground == (n % 2 == 0));
        CHECK(lat.edges.size() == static_cast<std::size_t>(lat.n_real_edges));
    }
}

TEST_CASE("slots agree with edge endpoints") {
    for (const Bc bc : {Bc::Free, Bc::Periodic}) {
        for (int n = 1; n <= 3; ++n) {
            const Lattice lat = build_lattice(n, bc);
            for (int iv = 0; iv < lat.n_internal(); ++iv) {
                const int v = lat.vertex_of_internal[iv];
                std::set<int> seen;
                for (int s = 0; s < 4; ++s) {
                    const int e = lat.islot[iv][static_cast<std::size_t>(s)];
                    REQUIRE(e >= 0);
                    REQUIRE(e < lat.n_real_edges);
                    const Edge& ed = lat.edges[static_cast<std::size_t>(e)];
                    const int end_v = Lattice::slot_vertex_is_head(s) ? ed.head : ed.tail;
                    CHECK(end_v == v);
                    // Horizontal edges sit in left/right slots.
                    CHECK(ed.horizontal == (s == kLeft || s == kRight));
                    seen.insert(4 * e + (Lattice::slot_vertex_is_head(s) ? 1 : 0));
                }
                // Four distinct half-edges; a torus self-loop may reuse an edge
                // but never the same end twice.
                CHECK(seen.size() == 4);
            }
        }
    }
}

TEST_CASE("every real edge half is a slot or a boundary half") {
    for (const Bc bc : {Bc::Free, Bc::Periodic}) {
        for (int n = 1; n <= 3; ++n) {
            const Lattice lat = build_lattice(n, bc);
            std::map<std::pair<int, int>, int> uses;  // (edge, end) -> count
            for (int iv = 0; iv < lat.n_internal(); ++iv)
                for (int s = 0; s < 4; ++s)
                    ++uses[{lat.islot[iv][static_cast<std::size_t>(s)],
                            Lattice::slot_vertex_is_head(s) ? 1 : 0}];
            for (const auto& bh : lat.boundary_halves) ++uses[{bh.edge, bh.end}];
            for (int e = 0; e < lat.n_real_edges; ++e)
                for (int end = 0; end < 2; ++end) {
                    INFO("edge ", e, " end ", end);
                    CHECK(uses[{e, end}] == 1);
                }
        }
    }
}

TEST_CASE("boundary halves carry consistent side masks") {
    const Lattice lat = build_lattice(3, Bc::Free);
    int sides_seen = 0;
    for (const auto& bh : lat.boundary_halves) {
        CHECK(lat.vside[static_cast<std::size_t>(bh.vertex)] == bh.side);
        CHECK((lat.eside[static_cast<std::size_t>(bh.edge)] & bh.side) != 0);
        const Edge& ed = lat.edges[static_cast<std::size_t>(bh.edge)];
        CHECK((bh.end == 1 ? ed.head : ed.tail) == bh.vertex);
        CHECK(lat.internal_of_vertex[static_cast<std::size_t>(bh.vertex)] == -1);
        sides_seen |= bh.side;
    }
    CHECK(sides_seen == (kSideLeft | kSideTop | kSideRight | kSideBottom));
}

TEST_CASE("faces close up and flips are cyclic") {
    for (const Bc bc : {Bc::Free, Bc::Periodic}) {
        const Lattice lat = build_lattice(3, bc);
        int total_real_sides = 0;
        for (int f = 0; f < lat.n_faces; ++f) {
            const Face& face = lat.faces[static_cast<std::size_t>(f)];
            int real_here = 0;
            for (int k = 0; k < 4; ++k)
                if (face.side[static_cast<std::size_t>(k)] >= 0 &&
                    face.side[static_cast<std::size_t>(k)] < lat.n_real_edges)
                    ++real_here;
            CHECK(real_here == face.n_real);
            total_real_sides += face.n_real;
        }
        // Every real edge borders exactly two faces on the torus; on the free
        // boundary the ring-adjacent edges still border two of the (n+1)^2
        // faces, so the sum counts each real edge twice.
        CHECK(total_real_sides == 2 * lat.n_real_edges);
    }
}

TEST_CASE("corner faces of the free region have two real sides") {
    const Lattice lat = build_lattice(2, Bc::Free);
    CHECK(lat.faces[static_cast<std::size_t>(lat.face_id(0, 0))].n_real == 2);
    CHECK(lat.faces[static_cast<std::size_t>(lat.face_id(0, lat.fcols - 1))].n_real == 2);
    CHECK(lat.faces[static_cast<std::size_t>(lat.face_id(lat.frows - 1, 0))].n_real == 2);
    CHECK(lat.faces[static_cast<std::size_t>(lat.face_id(lat.frows - 1, lat.fcols - 1))].n_real ==
          2);
    // The central face has all four.
    CHECK(lat.faces[static_cast<std::size_t>(lat.face_id(1, 1))].n_real == 4);
}

TEST_CASE("diagonal lattice structure") {
    for (const Bc bc : {Bc::Free, Bc::Periodic}) {
        for (int n = 2; n <= 3; ++n) {
            const Lattice lat = build_lattice(n, bc);
            const DiagonalLattice diag = build_diagonal(lat);
            CHECK(diag.edges.size() == static_cast<std::size_t>(2 * lat.n_internal()));
            for (std::size_t i = 0; i < diag.edges.size(); ++i) {
                const DiagEdge& e = diag.edges[i];
                CHECK(e.through_vertex == static_cast<std::int32_t>(i / 2));
                CHECK(e.kind == static_cast<std::int8_t>(i % 2));
                CHECK(e.va != e.vb);
                if (bc == Bc::Free) {
                    // Endpoints differ by one diagonal step.
                    const int ra = e.va / diag.fcols, ca = e.va % diag.fcols;
                    const int rb = e.vb / diag.fcols, cb = e.vb % diag.fcols;
                    CHECK(rb - ra == e.step_dr);
                    CHECK(cb - ca == e.step_dc);
                    CHECK(std::abs(e.step_dr) == 1);
                    CHECK(std::abs(e.step_dc) == 1);
                    // Both endpoints share a sublattice.
                    CHECK(diag.sublattice[static_cast<std::size_t>(e.va)] ==
                          diag.sublattice[static_cast<std::size_t>(e.vb)]);
                }
            }
            // Adjacency lists cover every edge twice (once per endpoint),
            // except torus self-adjacency cannot occur for n >= 2.
            std::size_t adj_total = 0;
            for (const auto& a : diag.adj) adj_total += a.size();
            CHECK(adj_total == 2 * diag.edges.size());
        }
    }
}

TEST_CASE("diagonal boundary masks mark the four sides") {
    const Lattice lat = build_lattice(2, Bc::Free);
    const DiagonalLattice diag = build_diagonal(lat);
    for (int v = 0; v < diag.n_vertices(); ++v) {
        const int fr = v / diag.fcols, fc = v % diag.fcols;
        std::uint8_t want = 0;
        if (fc == 0) want |= kSideLeft;
        if (fr == 0) want |= kSideTop;
        if (fc == diag.fcols - 1) want |= kSideRight;
        if (fr == diag.frows - 1) want |= kSideBottom;
        CHECK(diag.vmask[static_cast<std::size_t>(v)] == want);
    }
}

TEST_CASE("medial graph pairs rotationally adjacent edges") {
    for (const Bc bc : {Bc::Free, Bc::Periodic}) {
        const Lattice lat = build_lattice(3, bc);
        const MedialGraph med = build_medial(lat);
        CHECK(med.edges.size() == static_cast<std::size_t>(4 * lat.n_internal()));
        for (std::size_t i = 0; i < med.edges.size(); ++i) {
            const MedialEdge& m = med.edges[i];
            CHECK(m.at_vertex == static_cast<std::int32_t>(i / 4));
            CHECK(m.pair_kind == static_cast<std::int8_t>(i % 4));
            // The pair occupies consecutive slots at the vertex.
            const int s0 = m.pair_kind, s1 = (m.pair_kind + 1) % 4;
            CHECK(lat.islot[static_cast<std::size_t>(m.at_vertex)][static_cast<std::size_t>(s0)] ==
                  m.ea);
            CHECK(lat.islot[static_cast<std::size_t>(m.at_vertex)][static_cast<std::size_t>(s1)] ==
                  m.eb);
        }
        std::size_t adj_total = 0;
        for (const auto& a : med.adj) adj_total += a.size();
        // Each medial edge appears in the lists of its two real edges; a torus
        // self-loop pairs an edge with itself and is listed twice there.
        CHECK(adj_total == 2 * med.edges.size());
    }
}

TEST_CASE("edge midpoints separate by type") {
    const Lattice lat = build_lattice(2, Bc::Free);
    std::set<std::pair<int, int>> mids;
    for (int e = 0; e < lat.n_real_edges; ++e) {
        const auto [x, y] = lat.edge_mid2(e);
        CHECK((x + y) % 2 == 1);  // one odd coordinate
        CHECK(mids.insert({x, y}).second);
    }
}
