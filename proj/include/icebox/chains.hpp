#pragma once

#include <cstdint>
#include <vector>

#include "icebox/lattice.hpp"
#include "icebox/rng.hpp"
#include "icebox/state.hpp"
#include "icebox/topology.hpp"

namespace icebox {

enum class MoveKind : std::uint8_t { Lazy, Reject, FaceFlip, DefectCreate, DefectShift, DefectMerge };

struct StepOutcome {
    bool moved = false;  // false exactly for Lazy and Reject
    MoveKind kind = MoveKind::Lazy;
    std::vector<std::int32_t> touched;  // real edges whose record changed
};

// One defect-walk move: flip the in/out sense of two half-edges, either both
// at one internal vertex (opposite senses, preserving the ice rule) or both
// on the boundary ring. vertex is the shared internal vertex, or -1 for
// boundary moves. Applying the same move again undoes it.
struct DlMove {
    std::int32_t vertex = -1;
    std::int32_t ea = -1;
    std::int32_t eb = -1;
    std::uint8_t enda = 0;  // 0 = tail, 1 = head
    std::uint8_t endb = 0;
};

// Every valid move out of cfg, each unordered half-pair listed exactly once.
// From a perfect state these are defect-pair creations; from a two-defect
// state, shifts of one defect and merges of the pair.
void enumerate_moves(const Lattice& lat, const Config& cfg, std::vector<DlMove>& out);
std::vector<DlMove> enumerate_moves(const Lattice& lat, const Config& cfg);

// Applies a move in place and reports what it was. The defect list stays
// sorted by edge id. Does not check that the move is one of enumerate_moves'.
MoveKind apply_move(const Lattice& lat, Config& cfg, const DlMove& mv);

// Heat-bath single-face dynamics on perfect states, 1/2-lazy, free boundary
// only (face flips preserve each torus winding number, so the periodic chain
// is stuck in its start sector).
StepOutcome glauber_step(const Lattice& lat, Config& cfg, const Weights& w, Rng& rng);

// Defect-walk dynamics over perfect and two-defect states, 1/2-lazy, uniform
// proposal over enumerate_moves with a Metropolis correction for the varying
// move counts. Works on both boundary conditions; on the torus all moves are
// interior ones.
StepOutcome directed_loop_step(const Lattice& lat, Config& cfg, const Weights& w, Rng& rng);

enum class ChainKind : std::uint8_t { Glauber, DirectedLoop };

struct HitResult {
    bool hit = false;
    std::uint64_t steps = 0;  // steps taken until the hit, or the cap
};

// Runs the chain until the classification of the current state (checked on
// perfect states every `stride` steps) equals `target`, up to `cap` steps.
HitResult hitting_time(const Lattice& lat, const MedialGraph& med, Config& cfg, const Weights& w,
                       Rng& rng, ChainKind kind, PartClass target, std::uint64_t stride,
                       std::uint64_t cap);

} // namespace icebox
