#include "icebox/state.hpp"

#include <cmath>
#include <sstream>

#include "icebox/errors.hpp"

namespace icebox {

Weights Weights::make(double a, double b, double c) {
    if (!(a > 0) || !(b > 0) || !(c > 0)) throw ConfigError("vertex weights must be positive");
    Weights w;
    w.a = a; w.b = b; w.c = c;
    w.la = std::log(a); w.lb = std::log(b); w.lc = std::log(c);
    return w;
}

Phase phase_of(const Weights& w) {
    if (w.a > w.b + w.c || w.b > w.a + w.c) return Phase::Ferroelectric;
    if (w.c > w.a + w.b) return Phase::Antiferroelectric;
    if (w.a < w.b + w.c && w.b < w.a + w.c && w.c < w.a + w.b) return Phase::Disordered;
    return Phase::Boundary;
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Ferroelectric: return "ferroelectric";
        case Phase::Antiferroelectric: return "antiferroelectric";
        case Phase::Disordered: return "disordered";
        default: return "boundary";
    }
}

bool half_points_in_at_end(const Config& cfg, int edge, int end) {
    const int d = cfg.defect_slot(edge);
    if (d >= 0) return cfg.defect[static_cast<std::size_t>(d)].pol == Pol::Away;
    const bool b = cfg.bit[static_cast<std::size_t>(edge)] != 0;
    return end == 1 ? b : !b;
}

bool half_points_in(const Lattice& lat, const Config& cfg, int iv, int s) {
    const int e = lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(s)];
    return half_points_in_at_end(cfg, e, Lattice::slot_vertex_is_head(s) ? 1 : 0);
}

VertexType vertex_type(const Lattice& lat, const Config& cfg, int iv) {
    int mask = 0;
    for (int s = 0; s < 4; ++s)
        if (half_points_in(lat, cfg, iv, s)) mask |= 1 << s;
    // Bits: left=1, top=2, right=4, bottom=8.
    switch (mask) {
        case 1 | 8: return VertexType::T1;  // in from left+bottom: all arrows right/up
        case 4 | 2: return VertexType::T2;
        case 1 | 2: return VertexType::T3;  // in from left+top: all arrows right/down
        case 4 | 8: return VertexType::T4;
        case 1 | 4: return VertexType::T5;  // horizontal halves in
        case 2 | 8: return VertexType::T6;  // vertical halves in
        default:
            throw IceRuleViolation(lat.vertex_of_internal[static_cast<std::size_t>(iv)],
                                   "vertex has in-degree != 2");
    }
}

void check_valid(const Lattice& lat, const Config& cfg) {
    if (static_cast<int>(cfg.bit.size()) != lat.n_real_edges)
        throw InvalidWitness("orientation vector size does not match lattice");
    if (cfg.n_defects != 0) {
        if (cfg.n_defects != 2) throw InvalidWitness("defect count must be 0 or 2");
        const Defect& d0 = cfg.defect[0];
        const Defect& d1 = cfg.defect[1];
        if (d0.edge == d1.edge) throw InvalidWitness("defects on the same edge");
        if (d0.pol == d1.pol) throw InvalidWitness("defect pair must have opposite polarity");
        for (int i = 0; i < 2; ++i) {
            const Defect& d = cfg.defect[static_cast<std::size_t>(i)];
            if (d.edge < 0 || d.edge >= lat.n_real_edges) throw InvalidWitness("defect edge out of range");
            if (cfg.bit[static_cast<std::size_t>(d.edge)] != 1)
                throw InvalidWitness("defect edge must keep canonical bit");
        }
    }
    for (int iv = 0; iv < lat.n_internal(); ++iv) (void)vertex_type(lat, cfg, iv);
}

bool is_valid(const Lattice& lat, const Config& cfg) {
    try {
        check_valid(lat, cfg);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::array<int, 6> count_types(const Lattice& lat, const Config& cfg) {
    std::array<int, 6> c{};
    for (int iv = 0; iv < lat.n_internal(); ++iv)
        ++c[static_cast<std::size_t>(vertex_type(lat, cfg, iv))];
    return c;
}

double log_weight(const Lattice& lat, const Config& cfg, const Weights& w) {
    const std::array<int, 6> t = count_types(lat, cfg);
    return (t[0] + t[1]) * w.la + (t[2] + t[3]) * w.lb + (t[4] + t[5]) * w.lc;
}

Config reference_green(const Lattice& lat) {
    if (!lat.has_c_ground)
        throw ConfigError("no all-c state exists on an odd torus");
    Config cfg;
    cfg.bit.assign(lat.green_bit.begin(), lat.green_bit.end());
    return cfg;
}

Config total_reversal(const Lattice& lat, const Config& cfg) {
    Config r = cfg;
    for (int e = 0; e < lat.n_real_edges; ++e) {
        if (r.defect_slot(e) >= 0) continue;
        r.bit[static_cast<std::size_t>(e)] ^= 1;
    }
    // Reversing both halves of a defect swaps its polarity.
    for (int i = 0; i < r.n_defects; ++i) {
        Defect& d = r.defect[static_cast<std::size_t>(i)];
        d.pol = d.pol == Pol::Toward ? Pol::Away : Pol::Toward;
    }
    return r;
}

Config reference_red(const Lattice& lat) { return total_reversal(lat, reference_green(lat)); }

bool half_is_green(const Lattice& lat, const Config& cfg, int edge, int end) {
    const bool in_now = half_points_in_at_end(cfg, edge, end);
    const bool gb = lat.green_bit[static_cast<std::size_t>(edge)] != 0;
    const bool in_green = end == 1 ? gb : !gb;
    return in_now == in_green;
}

bool half_is_green_at_slot(const Lattice& lat, const Config& cfg, int iv, int s) {
    const int e = lat.islot[static_cast<std::size_t>(iv)][static_cast<std::size_t>(s)];
    return half_is_green(lat, cfg, e, Lattice::slot_vertex_is_head(s) ? 1 : 0);
}

Color edge_color(const Lattice& lat, const Config& cfg, int e) {
    if (cfg.defect_slot(e) >= 0) return Color::Mixed;
    return cfg.bit[static_cast<std::size_t>(e)] == lat.green_bit[static_cast<std::size_t>(e)]
               ? Color::Green
               : Color::Red;
}

std::string serialize(const Lattice& lat, const Config& cfg) {
    std::string out;
    out += std::to_string(lat.n);
    out += lat.bc == Bc::Free ? " free\n" : " periodic\n";
    for (int e = 0; e < lat.n_real_edges; ++e)
        out += cfg.bit[static_cast<std::size_t>(e)] ? '+' : '-';
    out += '\n';
    // Defects in edge id order for a unique encoding.
    std::array<Defect, 2> d = cfg.defect;
    if (cfg.n_defects == 2 && d[0].edge > d[1].edge) std::swap(d[0], d[1]);
    for (int i = 0; i < cfg.n_defects; ++i) {
        out += "D ";
        out += std::to_string(d[static_cast<std::size_t>(i)].edge);
        out += d[static_cast<std::size_t>(i)].pol == Pol::Toward ? " toward\n" : " away\n";
    }
    return out;
}

Config parse_config(const Lattice& lat, const std::string& text) {
    std::istringstream in(text);
    int n = 0;
    std::string bc;
    if (!(in >> n >> bc)) throw ConfigError("bad configuration header");
    if (n != lat.n || bc != (lat.bc == Bc::Free ? "free" : "periodic"))
        throw ConfigError("configuration header does not match lattice");
    std::string bits;
    if (!(in >> bits) || static_cast<int>(bits.size()) != lat.n_real_edges)
        throw ConfigError("orientation line has wrong length");
    Config cfg;
    cfg.bit.resize(static_cast<std::size_t>(lat.n_real_edges));
    for (int e = 0; e < lat.n_real_edges; ++e) {
        if (bits[static_cast<std::size_t>(e)] != '+' && bits[static_cast<std::size_t>(e)] != '-')
            throw ConfigError("orientation characters must be + or -");
        cfg.bit[static_cast<std::size_t>(e)] = bits[static_cast<std::size_t>(e)] == '+';
    }
    std::string tag;
    while (in >> tag) {
        if (tag != "D") throw ConfigError("unexpected token in configuration");
        if (cfg.n_defects >= 2) throw ConfigError("more than two defects");
        int e = -1;
        std::string pol;
        if (!(in >> e >> pol)) throw ConfigError("bad defect line");
        Defect d;
        d.edge = e;
        if (pol == "toward") d.pol = Pol::Toward;
        else if (pol == "away") d.pol = Pol::Away;
        else throw ConfigError("defect polarity must be toward or away");
        cfg.defect[static_cast<std::size_t>(cfg.n_defects++)] = d;
    }
    check_valid(lat, cfg);
    return cfg;
}

} // namespace icebox
