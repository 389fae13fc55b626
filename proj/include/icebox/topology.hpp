#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icebox/lattice.hpp"
#include "icebox/state.hpp"

namespace icebox {

enum class Dir { Horizontal, Vertical };

// Same-color adjacency between rotationally adjacent edges. For near-perfect
// states the comparison uses the half-edge colors at the shared vertex.
struct MtauGraph {
    std::vector<std::uint8_t> present;  // per medial edge id
};
MtauGraph build_mtau(const Lattice& lat, const MedialGraph& med, const Config& cfg);

// Interface edges: at every internal vertex whose four half-edges split
// 2-green/2-red, the diagonal edge separating the pair; for near-perfect
// states also the two axis-aligned half-integer edges through the defect
// edges' midpoints.
struct LtauGraph {
    std::vector<std::uint8_t> diag_present;  // per diagonal edge id
    struct Extra {
        std::int32_t va = -1, vb = -1;       // diag vertex ids
        std::int32_t through_edge = -1;      // defect edge
    };
    std::vector<Extra> extra;
};
LtauGraph build_ltau(const Lattice& lat, const DiagonalLattice& diag, const Config& cfg);

// Self-avoiding interface path between opposite boundaries of the diagonal
// lattice; Horizontal connects left to right, Vertical top to bottom. Steps
// are diagonal edge ids, or -(1+k) for extra edge k; at most one step may be
// missing from the interface (an almost fault line).
struct FaultPath {
    Dir dir = Dir::Vertical;
    std::vector<std::int32_t> verts;
    std::vector<std::int32_t> steps;
    int missing_count = 0;
    int missing_index = -1;

    int length() const { return static_cast<int>(steps.size()); }
};

// Monochromatic bridge: a path of same-colored edges joining a boundary edge
// on one side to one on the opposite side (left-right for Horizontal).
std::optional<std::vector<std::int32_t>> find_bridge(const Lattice& lat, const MedialGraph& med,
                                                     const Config& cfg, Color color, Dir dir);
bool has_bridge(const Lattice& lat, const MedialGraph& med, const Config& cfg, Color color, Dir dir);
bool has_cross(const Lattice& lat, const MedialGraph& med, const Config& cfg, Color color);

enum class PartClass { GreenCross, RedCross, FaultLine };
const char* part_class_name(PartClass c);

// Free boundary: crosses are bridge pairs. Torus: crosses are pairs of
// homologically independent monochromatic cycles.
PartClass classify(const Lattice& lat, const MedialGraph& med, const Config& cfg);

// Duality construction: flood the medial subgraph of same-color adjacencies
// from one side; if the opposite side is unreached, the cut edges' dual
// diagonal edges contain a crossing interface path. Returns nullopt iff a
// blocking monochromatic bridge exists. Free boundary only.
std::optional<FaultPath> find_fault_line(const Lattice& lat, const MedialGraph& med,
                                         const DiagonalLattice& diag, const Config& cfg, Dir dir);

// Two-layer search (one free pass through a non-interface diagonal edge),
// loop-erased to a self-avoiding path. Free boundary only.
std::optional<FaultPath> find_almost_fault_line(const Lattice& lat, const DiagonalLattice& diag,
                                                const LtauGraph& ltau, const Config& cfg, Dir dir);

// Lexicographically least crossing path (by diagonal vertex id sequence) with
// at most one missing step; used to group states for the escape-map counting.
std::optional<FaultPath> canonical_fault_path(const DiagonalLattice& diag, const LtauGraph& ltau,
                                              Dir dir);

// Membership snapshot for one state.
struct TopologyReport {
    bool green_h = false, green_v = false, red_h = false, red_v = false;
    bool fault_h = false, fault_v = false;        // fault line exists
    bool almost_h = false, almost_v = false;      // path with <= 1 missing step exists
    PartClass cls = PartClass::FaultLine;
};
TopologyReport analyze(const Lattice& lat, const MedialGraph& med, const DiagonalLattice& diag,
                       const Config& cfg);

bool in_green_cross_class(const Lattice& lat, const MedialGraph& med, const Config& cfg);
// True when some single face flip lands in the green-cross class.
bool one_flip_from_green(const Lattice& lat, const MedialGraph& med, const Config& cfg);

// Direction reversal of every edge strictly on the left (Vertical) or upper
// (Horizontal) side of a crossing path; side membership decided by exact
// integer ray casting against the closed extension of the path. Perfect
// states only.
struct EscapeResult {
    Config image;
    std::vector<std::int32_t> reversed;
    double log_ratio = 0;  // log w(image) - log w(cfg)
};
EscapeResult peierls_map(const Lattice& lat, const DiagonalLattice& diag, const Config& cfg,
                         const FaultPath& path, const Weights& w);

// Torus topology: homology crosses per color and the interface cycles traced
// with a deterministic non-crossing resolution at degree-4 interface vertices.
struct TorusReport {
    bool green_cross = false;
    bool red_cross = false;
    struct Cycle {
        int wind_r = 0, wind_c = 0;
        int length = 0;
    };
    std::vector<Cycle> ltau_cycles;
    int noncontractible = 0;
};
TorusReport torus_report(const Lattice& lat, const MedialGraph& med, const DiagonalLattice& diag,
                         const Config& cfg);

} // namespace icebox
