#include "icebox/chains.hpp"

#include <cmath>

#include "icebox/errors.hpp"

namespace icebox {

namespace {

int endpoint_vertex(const Lattice& lat, int edge, int end) {
    const Edge& ed = lat.edges[static_cast<std::size_t>(edge)];
    return end ? ed.head : ed.tail;
}

// Slot of a specific end: self-loop edges on tiny tori occupy two slots of one
// vertex, so the lookup keys on which end the slot holds.
int slot_of_end(const Lattice& lat, int iv, int edge, int end) {
    for (int s = 0; s < 4; ++s)
        if (lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(s)] == edge &&
            Lattice::slot_vertex_is_head(s) == (end == 1))
            return s;
    throw InvalidWitness("edge end is not incident to the vertex");
}

} // namespace

void enumerate_moves(const Lattice& lat, const Config& cfg, std::vector<DlMove>& out) {
    out.clear();
    if (cfg.perfect()) {
        // Pair creations: one in-half with one out-half at an internal vertex.
        for (int iv = 0; iv < lat.n_internal(); ++iv) {
            int ins[4], outs[4], ni = 0, no = 0;
            for (int s = 0; s < 4; ++s) {
                if (half_points_in(lat, cfg, iv, s)) ins[ni++] = s;
                else outs[no++] = s;
            }
            for (int i = 0; i < ni; ++i)
                for (int o = 0; o < no; ++o) {
                    DlMove mv;
                    mv.vertex = iv;
                    mv.ea = lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(ins[i])];
                    mv.enda = Lattice::slot_vertex_is_head(ins[i]) ? 1 : 0;
                    mv.eb = lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(outs[o])];
                    mv.endb = Lattice::slot_vertex_is_head(outs[o]) ? 1 : 0;
                    if (mv.ea == mv.eb) continue;  // self-loop on a tiny torus
                    out.push_back(mv);
                }
        }
        // Ring creations: any in-half with any out-half on the boundary.
        const std::size_t nb = lat.boundary_halves.size();
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = i + 1; j < nb; ++j) {
                const Lattice::BoundaryHalf& ha = lat.boundary_halves[i];
                const Lattice::BoundaryHalf& hb = lat.boundary_halves[j];
                if (half_points_in_at_end(cfg, ha.edge, ha.end) ==
                    half_points_in_at_end(cfg, hb.edge, hb.end))
                    continue;
                DlMove mv;
                mv.ea = ha.edge;
                mv.enda = ha.end;
                mv.eb = hb.edge;
                mv.endb = hb.end;
                out.push_back(mv);
            }
        return;
    }
    // Two defects: shift one across a vertex or the ring, or merge the pair.
    for (int i = 0; i < cfg.n_defects; ++i) {
        const Defect& d = cfg.defect[static_cast<std::size_t>(i)];
        for (int end = 0; end < 2; ++end) {
            const int v = endpoint_vertex(lat, d.edge, end);
            const int iv = lat.internal_of_vertex[static_cast<std::size_t>(v)];
            if (iv >= 0) {
                const int se = slot_of_end(lat, iv, d.edge, end);
                const bool sense_e = half_points_in(lat, cfg, iv, se);
                for (int s = 0; s < 4; ++s) {
                    if (s == se) continue;
                    const int f = lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(s)];
                    if (half_points_in(lat, cfg, iv, s) == sense_e) continue;
                    const int dj = cfg.defect_slot(f);
                    if (dj >= 0 && i >= dj) continue;  // merge counted from the lower index
                    DlMove mv;
                    mv.vertex = iv;
                    mv.ea = d.edge;
                    mv.enda = static_cast<std::uint8_t>(end);
                    mv.eb = f;
                    mv.endb = Lattice::slot_vertex_is_head(s) ? 1 : 0;
                    out.push_back(mv);
                }
            } else {
                const bool sense_e = half_points_in_at_end(cfg, d.edge, end);
                for (const Lattice::BoundaryHalf& g : lat.boundary_halves) {
                    if (g.edge == d.edge) continue;
                    const int dj = cfg.defect_slot(g.edge);
                    if (dj >= 0) {
                        if (i >= dj) continue;
                    } else if (half_points_in_at_end(cfg, g.edge, g.end) == sense_e) {
                        continue;
                    }
                    DlMove mv;
                    mv.ea = d.edge;
                    mv.enda = static_cast<std::uint8_t>(end);
                    mv.eb = g.edge;
                    mv.endb = g.end;
                    out.push_back(mv);
                }
            }
        }
    }
}

std::vector<DlMove> enumerate_moves(const Lattice& lat, const Config& cfg) {
    std::vector<DlMove> out;
    enumerate_moves(lat, cfg, out);
    return out;
}

MoveKind apply_move(const Lattice& lat, Config& cfg, const DlMove& mv) {
    (void)lat;
    const int e[2] = {mv.ea, mv.eb};
    const int end[2] = {mv.enda, mv.endb};
    int resolved = 0, created = 0;
    // Resolve defect halves first so the defect array never holds three.
    bool create_half[2] = {false, false};
    for (int k = 0; k < 2; ++k) {
        const int slot = cfg.defect_slot(e[k]);
        if (slot < 0) {
            create_half[k] = true;
            continue;
        }
        const Pol p = cfg.defect[static_cast<std::size_t>(slot)].pol;
        cfg.bit[static_cast<std::size_t>(e[k])] =
            static_cast<std::uint8_t>((p == Pol::Toward) == (end[k] == 1));
        // compact the defect list
        cfg.defect[static_cast<std::size_t>(slot)] = cfg.defect[static_cast<std::size_t>(cfg.n_defects - 1)];
        --cfg.n_defects;
        ++resolved;
    }
    for (int k = 0; k < 2; ++k) {
        if (!create_half[k]) continue;
        const bool in = half_points_in_at_end(cfg, e[k], end[k]);
        Defect d;
        d.edge = e[k];
        d.pol = in ? Pol::Toward : Pol::Away;
        cfg.defect[static_cast<std::size_t>(cfg.n_defects++)] = d;
        cfg.bit[static_cast<std::size_t>(e[k])] = 1;
        ++created;
    }
    if (cfg.n_defects == 2 &&
        cfg.defect[0].edge > cfg.defect[1].edge)
        std::swap(cfg.defect[0], cfg.defect[1]);
    if (resolved == 2) return MoveKind::DefectMerge;
    if (created == 2) return MoveKind::DefectCreate;
    return MoveKind::DefectShift;
}

StepOutcome glauber_step(const Lattice& lat, Config& cfg, const Weights& w, Rng& rng) {
    if (lat.bc != Bc::Free)
        throw NotIrreducible("face flips preserve torus winding numbers");
    if (!cfg.perfect()) throw ConfigError("face dynamics run on perfect states");
    StepOutcome out;
    if (rng.coin()) {
        out.kind = MoveKind::Lazy;
        return out;
    }
    const int fid = static_cast<int>(rng.below(static_cast<std::uint64_t>(lat.n_faces)));
    const Face& f = lat.faces[static_cast<std::size_t>(fid)];
    out.kind = MoveKind::Reject;
    bool all_cw = true, all_ccw = true;
    for (int k = 0; k < f.n_real; ++k) {
        const bool cw = cfg.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(k)])] ==
                        f.flip_cw[static_cast<std::size_t>(k)];
        all_cw &= cw;
        all_ccw &= !cw;
    }
    if (!all_cw && !all_ccw) return out;

    const int fr = fid / lat.fcols, fc = fid % lat.fcols;
    int ivs[4], nv = 0;
    for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc) {
            const int iv = lat.internal_of_vertex[static_cast<std::size_t>(lat.vertex_id(fr + dr, fc + dc))];
            if (iv >= 0) ivs[nv++] = iv;
        }
    double lw_cur = 0;
    for (int k = 0; k < nv; ++k)
        lw_cur += w.log_of_class(weight_class(vertex_type(lat, cfg, ivs[k])));
    for (int k = 0; k < f.n_real; ++k)
        cfg.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(k)])] ^= 1;
    double lw_other = 0;
    for (int k = 0; k < nv; ++k)
        lw_other += w.log_of_class(weight_class(vertex_type(lat, cfg, ivs[k])));
    const double p_other = 1.0 / (1.0 + std::exp(lw_cur - lw_other));
    if (rng.uniform() < p_other) {
        out.moved = true;
        out.kind = MoveKind::FaceFlip;
        for (int k = 0; k < f.n_real; ++k)
            out.touched.push_back(f.flip_edge[static_cast<std::size_t>(k)]);
        return out;
    }
    for (int k = 0; k < f.n_real; ++k)
        cfg.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(k)])] ^= 1;
    return out;
}

StepOutcome directed_loop_step(const Lattice& lat, Config& cfg, const Weights& w, Rng& rng) {
    StepOutcome out;
    if (rng.coin()) {
        out.kind = MoveKind::Lazy;
        return out;
    }
    thread_local std::vector<DlMove> moves;
    enumerate_moves(lat, cfg, moves);
    out.kind = MoveKind::Reject;
    if (moves.empty()) return out;
    const std::size_t nx = moves.size();
    const DlMove mv = moves[static_cast<std::size_t>(rng.below(nx))];

    // The move changes half senses only at its vertex, so the weight ratio is
    // local; ring moves are weight neutral.
    double lw_before = 0;
    if (mv.vertex >= 0)
        lw_before = w.log_of_class(weight_class(vertex_type(lat, cfg, mv.vertex)));
    const MoveKind kind = apply_move(lat, cfg, mv);
    double lw_after = 0;
    if (mv.vertex >= 0)
        lw_after = w.log_of_class(weight_class(vertex_type(lat, cfg, mv.vertex)));
    enumerate_moves(lat, cfg, moves);
    const std::size_t ny = moves.size();

    const double log_ratio = lw_after - lw_before +
                             std::log(static_cast<double>(nx)) -
                             std::log(static_cast<double>(ny));
    if (log_ratio >= 0 || std::log(rng.uniform()) < log_ratio) {
        out.moved = true;
        out.kind = kind;
        out.touched = {mv.ea, mv.eb};
        return out;
    }
    apply_move(lat, cfg, mv);  // involution: reapplying undoes the move
    return out;
}

HitResult hitting_time(const Lattice& lat, const MedialGraph& med, Config& cfg, const Weights& w,
                       Rng& rng, ChainKind kind, PartClass target, std::uint64_t stride,
                       std::uint64_t cap) {
    if (stride == 0) stride = 1;
    HitResult res;
    if (cfg.perfect() && classify(lat, med, cfg) == target) {
        res.hit = true;
        return res;
    }
    for (std::uint64_t t = 1; t <= cap; ++t) {
        if (kind == ChainKind::Glauber) glauber_step(lat, cfg, w, rng);
        else directed_loop_step(lat, cfg, w, rng);
        if (t % stride == 0 && cfg.perfect() && classify(lat, med, cfg) == target) {
            res.hit = true;
            res.steps = t;
            return res;
        }
    }
    res.steps = cap;
    return res;
}

} // namespace icebox
