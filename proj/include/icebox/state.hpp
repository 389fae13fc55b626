#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icebox/lattice.hpp"

namespace icebox {

// Polarity of the two inconsistent half-edges of a defect edge: Toward means
// both halves point at the edge midpoint (out of both endpoints), Away means
// both point at their endpoints.
enum class Pol : std::uint8_t { Toward, Away };

struct Defect {
    std::int32_t edge = -1;
    Pol pol = Pol::Toward;
    friend bool operator==(const Defect&, const Defect&) = default;
};

// Edge orientations, one bit per real edge (1 = canonical right/up), plus at
// most two defect records for the near-perfect states the directed-loop chain
// walks through. Defect edges keep bit 1 so serialization is unique.
struct Config {
    std::vector<std::uint8_t> bit;
    std::array<Defect, 2> defect{};
    int n_defects = 0;

    bool perfect() const { return n_defects == 0; }
    int defect_slot(int edge) const {
        for (int i = 0; i < n_defects; ++i)
            if (defect[static_cast<std::size_t>(i)].edge == edge) return i;
        return -1;
    }
    friend bool operator==(const Config& a, const Config& b) {
        if (a.bit != b.bit || a.n_defects != b.n_defects) return false;
        for (int i = 0; i < a.n_defects; ++i)
            if (a.defect[static_cast<std::size_t>(i)] != b.defect[static_cast<std::size_t>(i)]) return false;
        return true;
    }
};

struct Weights {
    double a = 1, b = 1, c = 1;
    double la = 0, lb = 0, lc = 0;
    static Weights make(double a, double b, double c);
    double log_of_class(int cls) const { return cls == 0 ? la : cls == 1 ? lb : lc; }
};

enum class Phase { Ferroelectric, Antiferroelectric, Disordered, Boundary };
Phase phase_of(const Weights& w);
const char* phase_name(Phase p);

// Types 1..6 keyed by which two half-edges point into the vertex:
// {left,bottom}/{right,top} carry weight a, {left,top}/{right,bottom} weight b,
// {left,right}/{top,bottom} weight c.
enum class VertexType : std::uint8_t { T1, T2, T3, T4, T5, T6 };
inline int weight_class(VertexType t) { return static_cast<int>(t) / 2; }  // 0=a,1=b,2=c

// In/out sense of the half-edge sitting in slot s of an internal vertex.
// For a consistent edge with orientation bit b: the head half points into the
// head, the tail half out of the tail. Defect halves point out of both
// endpoints (Toward) or into both (Away).
bool half_points_in(const Lattice& lat, const Config& cfg, int iv, int s);

// Same for a named endpoint of an edge (end: 0 = tail, 1 = head).
bool half_points_in_at_end(const Config& cfg, int edge, int end);

VertexType vertex_type(const Lattice& lat, const Config& cfg, int iv);

// Throws IceRuleViolation / InvalidWitness when the configuration is not a
// perfect or near-perfect state.
void check_valid(const Lattice& lat, const Config& cfg);
bool is_valid(const Lattice& lat, const Config& cfg);

std::array<int, 6> count_types(const Lattice& lat, const Config& cfg);
double log_weight(const Lattice& lat, const Config& cfg, const Weights& w);

// All-c reference state ("green") and its total reversal ("red").
Config reference_green(const Lattice& lat);
Config reference_red(const Lattice& lat);
Config total_reversal(const Lattice& lat, const Config& cfg);

enum class Color : std::uint8_t { Green, Red, Mixed };
// Color of an edge: agrees with the green reference, with its reversal, or is
// a defect edge carrying one half of each color.
Color edge_color(const Lattice& lat, const Config& cfg, int e);
// Half-edge color at an endpoint; meaningful for defect edges too.
bool half_is_green(const Lattice& lat, const Config& cfg, int edge, int end);
bool half_is_green_at_slot(const Lattice& lat, const Config& cfg, int iv, int s);

// One line "n bc", one +/- per real edge in id order, then one "D edge pol"
// line per defect. Round-trips byte-exactly.
std::string serialize(const Lattice& lat, const Config& cfg);
Config parse_config(const Lattice& lat, const std::string& text);

} // namespace icebox
