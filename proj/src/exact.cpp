#include "icebox/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "icebox/errors.hpp"

namespace icebox {

std::int32_t StateSpace::id_of(const Lattice& lat, const Config& cfg) const {
    const auto it = index.find(serialize(lat, cfg));
    return it == index.end() ? -1 : it->second;
}

namespace {

struct EndRef {
    std::int32_t iv;
    std::uint8_t end;  // 0 = tail, 1 = head
};

// Internal endpoints of each real edge; self-loops on tiny tori list the same
// vertex twice, once per end.
std::vector<std::vector<EndRef>> edge_ends(const Lattice& lat) {
    std::vector<std::vector<EndRef>> ends(static_cast<std::size_t>(lat.n_real_edges));
    for (int e = 0; e < lat.n_real_edges; ++e) {
        const Edge& ed = lat.edges[static_cast<std::size_t>(e)];
        const int it = lat.internal_of_vertex[static_cast<std::size_t>(ed.tail)];
        const int ih = lat.internal_of_vertex[static_cast<std::size_t>(ed.head)];
        if (it >= 0) ends[static_cast<std::size_t>(e)].push_back({it, 0});
        if (ih >= 0) ends[static_cast<std::size_t>(e)].push_back({ih, 1});
    }
    return ends;
}

struct Dfs {
    const Lattice& lat;
    const std::vector<std::vector<EndRef>>& ends;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::int8_t> in, out, unassigned;
    std::vector<std::int8_t> fixed;  // edges excluded from assignment (defects)
    Config work;
    StateSpace* out_space;

    Dfs(const Lattice& l, const std::vector<std::vector<EndRef>>& e, std::uint64_t b,
        StateSpace* s)
        : lat(l), ends(e), budget(b), out_space(s) {
        const std::size_t nv = static_cast<std::size_t>(lat.n_internal());
        in.assign(nv, 0);
        out.assign(nv, 0);
        unassigned.assign(nv, 0);
        for (int e2 = 0; e2 < lat.n_real_edges; ++e2)
            for (const EndRef& er : ends[static_cast<std::size_t>(e2)])
                ++unassigned[static_cast<std::size_t>(er.iv)];
        fixed.assign(static_cast<std::size_t>(lat.n_real_edges), 0);
        work.bit.assign(static_cast<std::size_t>(lat.n_real_edges), 0);
    }

    bool feasible(int iv) const {
        const std::size_t i = static_cast<std::size_t>(iv);
        return in[i] <= 2 && out[i] <= 2 && in[i] + unassigned[i] >= 2 &&
               out[i] + unassigned[i] >= 2;
    }

    // Registers one half sense; returns false when the vertex goes infeasible.
    bool add_half(int iv, bool points_in) {
        const std::size_t i = static_cast<std::size_t>(iv);
        --unassigned[i];
        if (points_in) ++in[i];
        else ++out[i];
        return feasible(iv);
    }

    void remove_half(int iv, bool points_in) {
        const std::size_t i = static_cast<std::size_t>(iv);
        ++unassigned[i];
        if (points_in) --in[i];
        else --out[i];
    }

    // Sense of the half at (edge, end) given orientation bit b: the head half
    // points in exactly when b = 1, the tail half when b = 0.
    static bool half_in(std::uint8_t end, std::uint8_t b) { return end ? b != 0 : b == 0; }

    void rec(int e) {
        if (++nodes > budget) throw BudgetExceeded("state enumeration exceeded its node budget");
        while (e < lat.n_real_edges && fixed[static_cast<std::size_t>(e)]) ++e;
        if (e == lat.n_real_edges) {
            out_space->states.push_back(work);
            return;
        }
        for (std::uint8_t b = 0; b < 2; ++b) {
            work.bit[static_cast<std::size_t>(e)] = b;
            bool ok = true;
            std::size_t done = 0;
            const auto& ee = ends[static_cast<std::size_t>(e)];
            for (; done < ee.size(); ++done)
                if (!add_half(ee[done].iv, half_in(ee[done].end, b))) {
                    ++done;
                    ok = false;
                    break;
                }
            if (ok) rec(e + 1);
            for (std::size_t k = 0; k < done; ++k)
                remove_half(ee[k].iv, half_in(ee[k].end, b));
        }
    }
};

} // namespace

StateSpace enumerate_states(const Lattice& lat, bool include_near_perfect, std::uint64_t budget) {
    StateSpace ss;
    ss.bc = lat.bc;
    ss.n = lat.n;
    ss.includes_near = include_near_perfect;
    const std::vector<std::vector<EndRef>> ends = edge_ends(lat);

    Dfs dfs(lat, ends, budget, &ss);
    dfs.work.n_defects = 0;
    dfs.rec(0);
    ss.n_perfect = ss.states.size();

    if (include_near_perfect) {
        for (int e1 = 0; e1 < lat.n_real_edges; ++e1)
            for (int e2 = e1 + 1; e2 < lat.n_real_edges; ++e2)
                for (int p = 0; p < 2; ++p) {
                    Dfs d2(lat, ends, budget - dfs.nodes, &ss);
                    d2.work.n_defects = 2;
                    d2.work.defect[0] = {e1, p == 0 ? Pol::Toward : Pol::Away};
                    d2.work.defect[1] = {e2, p == 0 ? Pol::Away : Pol::Toward};
                    d2.fixed[static_cast<std::size_t>(e1)] = 1;
                    d2.fixed[static_cast<std::size_t>(e2)] = 1;
                    d2.work.bit[static_cast<std::size_t>(e1)] = 1;
                    d2.work.bit[static_cast<std::size_t>(e2)] = 1;
                    bool ok = true;
                    for (const int e : {e1, e2})
                        for (const EndRef& er : ends[static_cast<std::size_t>(e)]) {
                            const bool in = half_points_in_at_end(d2.work, e, er.end);
                            if (!d2.add_half(er.iv, in)) ok = false;
                        }
                    if (ok) d2.rec(0);
                    dfs.nodes += d2.nodes;
                }
    }

    ss.index.reserve(ss.states.size() * 2);
    for (std::size_t i = 0; i < ss.states.size(); ++i) {
        const auto [it, fresh] =
            ss.index.emplace(serialize(lat, ss.states[i]), static_cast<std::int32_t>(i));
        if (!fresh) throw InvalidWitness("duplicate state in enumeration");
    }
    return ss;
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    for (const char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

void save_statespace(const std::string& path, const Lattice& lat, const StateSpace& ss) {
    std::uint64_t h = 1469598103934665603ull;
    std::ostringstream body;
    for (const Config& cfg : ss.states) {
        const std::string s = serialize(lat, cfg);
        h = fnv1a(s, h);
        body << s;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << "icebox-statespace 1 n " << ss.n << " bc " << (ss.bc == Bc::Free ? "free" : "periodic")
      << " count " << ss.states.size() << " nperfect " << ss.n_perfect << " near "
      << (ss.includes_near ? 1 : 0) << " hash " << std::hex << h << std::dec << "\n";
    f << body.str();
    if (!f) throw ConfigError("short write to " + path);
}

StateSpace load_statespace(const std::string& path, const Lattice& lat) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read " + path);
    std::string word;
    f >> word;
    if (word != "icebox-statespace") throw ConfigError("not a state space file: " + path);
    int version = 0, n = 0, near = 0;
    std::size_t count = 0, nperfect = 0;
    std::string bc_name;
    std::uint64_t want_hash = 0;
    f >> version >> word >> n >> word >> bc_name >> word >> count >> word >> nperfect >> word >>
        near >> word >> std::hex >> want_hash >> std::dec;
    if (!f || version != 1) throw ConfigError("bad state space header in " + path);
    if (n != lat.n || bc_name != (lat.bc == Bc::Free ? "free" : "periodic"))
        throw ConfigError("state space file does not match the lattice");
    f.ignore(std::numeric_limits<std::streamsize>::max(), '\n');

    StateSpace ss;
    ss.bc = lat.bc;
    ss.n = n;
    ss.includes_near = near != 0;
    ss.n_perfect = nperfect;
    std::uint64_t h = 1469598103934665603ull;
    std::string line, block;
    auto flush_block = [&]() {
        if (block.empty()) return;
        try {
            ss.states.push_back(parse_config(lat, block));
        } catch (const std::exception&) {
            throw ConfigError("state space file is corrupt: unparsable state in " + path);
        }
        h = fnv1a(block, h);
        block.clear();
    };
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        // A state block opens with the "n bc" line; bit and defect lines never
        // start with a digit.
        const bool starts_state = std::isdigit(static_cast<unsigned char>(line[0])) != 0;
        if (starts_state) flush_block();
        block += line;
        block += '\n';
    }
    flush_block();
    if (ss.states.size() != count || h != want_hash)
        throw ConfigError("state space file is corrupt: count or hash mismatch");
    ss.index.reserve(ss.states.size() * 2);
    for (std::size_t i = 0; i < ss.states.size(); ++i)
        ss.index.emplace(serialize(lat, ss.states[i]), static_cast<std::int32_t>(i));
    return ss;
}

double log_partition(const Lattice& lat, const StateSpace& ss, const Weights& w) {
    std::vector<double> lw;
    lw.reserve(ss.n_perfect);
    for (std::size_t i = 0; i < ss.n_perfect; ++i) lw.push_back(log_weight(lat, ss.states[i], w));
    const double m = *std::max_element(lw.begin(), lw.end());
    double s = 0;
    for (const double x : lw) s += std::exp(x - m);
    return m + std::log(s);
}

std::vector<double> gibbs(const Lattice& lat, const StateSpace& ss, const Weights& w) {
    std::vector<double> lw;
    lw.reserve(ss.states.size());
    for (const Config& cfg : ss.states) lw.push_back(log_weight(lat, cfg, w));
    const double m = *std::max_element(lw.begin(), lw.end());
    double s = 0;
    for (const double x : lw) s += std::exp(x - m);
    std::vector<double> pi(lw.size());
    for (std::size_t i = 0; i < lw.size(); ++i) pi[i] = std::exp(lw[i] - m) / s;
    return pi;
}

ChainKernel transition_matrix(const Lattice& lat, const StateSpace& ss, ChainKind kind,
                              const Weights& w, std::size_t kernel_budget) {
    if (kind == ChainKind::Glauber && lat.bc == Bc::Periodic)
        throw NotIrreducible("face flips preserve torus winding numbers");
    if (kind == ChainKind::Glauber && ss.includes_near)
        throw ConfigError("face dynamics run on perfect states only");
    if (kind == ChainKind::DirectedLoop && !ss.includes_near)
        throw ConfigError("the defect walk needs the two-defect states enumerated");
    const std::size_t N = ss.states.size();
    if (N > kernel_budget) throw BudgetExceeded("state space too large for a dense kernel");

    ChainKernel k;
    k.kind = kind;
    k.w = w;
    k.n = N;
    k.T.assign(N * N, 0.0);
    k.pi = gibbs(lat, ss, w);

    std::vector<double> lw(N);
    for (std::size_t i = 0; i < N; ++i) lw[i] = log_weight(lat, ss.states[i], w);

    if (kind == ChainKind::Glauber) {
        const double per_face = 0.5 / static_cast<double>(lat.n_faces);
        Config work;
        for (std::size_t x = 0; x < N; ++x) {
            work = ss.states[x];
            double off = 0;
            for (const Face& f : lat.faces) {
                bool all_cw = true, all_ccw = true;
                for (int j = 0; j < f.n_real; ++j) {
                    const bool cw =
                        work.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(j)])] ==
                        f.flip_cw[static_cast<std::size_t>(j)];
                    all_cw &= cw;
                    all_ccw &= !cw;
                }
                if (!all_cw && !all_ccw) continue;
                for (int j = 0; j < f.n_real; ++j)
                    work.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(j)])] ^= 1;
                const std::int32_t y = ss.id_of(lat, work);
                if (y < 0) throw InvalidWitness("face flip left the enumerated space");
                const double p =
                    per_face / (1.0 + std::exp(lw[x] - lw[static_cast<std::size_t>(y)]));
                k.T[x * N + static_cast<std::size_t>(y)] += p;
                off += p;
                for (int j = 0; j < f.n_real; ++j)
                    work.bit[static_cast<std::size_t>(f.flip_edge[static_cast<std::size_t>(j)])] ^= 1;
            }
            k.T[x * N + x] = 1.0 - off;
        }
    } else {
        std::vector<DlMove> moves, moves_y;
        Config work;
        for (std::size_t x = 0; x < N; ++x) {
            enumerate_moves(lat, ss.states[x], moves);
            const double nx = static_cast<double>(moves.size());
            double off = 0;
            for (const DlMove& mv : moves) {
                work = ss.states[x];
                apply_move(lat, work, mv);
                const std::int32_t y = ss.id_of(lat, work);
                if (y < 0) throw InvalidWitness("defect move left the enumerated space");
                enumerate_moves(lat, work, moves_y);
                const double ny = static_cast<double>(moves_y.size());
                const double ratio =
                    std::exp(lw[static_cast<std::size_t>(y)] - lw[x]) * nx / ny;
                const double p = 0.5 / nx * std::min(1.0, ratio);
                k.T[x * N + static_cast<std::size_t>(y)] += p;
                off += p;
            }
            k.T[x * N + x] = 1.0 - off;
        }
    }
    return k;
}

double max_row_sum_error(const ChainKernel& k) {
    double worst = 0;
    for (std::size_t x = 0; x < k.n; ++x) {
        double s = 0;
        for (std::size_t y = 0; y < k.n; ++y) s += k.T[x * k.n + y];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

double min_diagonal(const ChainKernel& k) {
    double m = 1;
    for (std::size_t x = 0; x < k.n; ++x) m = std::min(m, k.T[x * k.n + x]);
    return m;
}

double detailed_balance_error(const ChainKernel& k) {
    double worst = 0;
    for (std::size_t x = 0; x < k.n; ++x)
        for (std::size_t y = x + 1; y < k.n; ++y)
            worst = std::max(worst,
                             std::abs(k.pi[x] * k.T[x * k.n + y] - k.pi[y] * k.T[y * k.n + x]));
    return worst;
}

double stationarity_error(const ChainKernel& k) {
    double worst = 0;
    for (std::size_t y = 0; y < k.n; ++y) {
        double s = 0;
        for (std::size_t x = 0; x < k.n; ++x) s += k.pi[x] * k.T[x * k.n + y];
        worst = std::max(worst, std::abs(s - k.pi[y]));
    }
    return worst;
}

bool strongly_connected(const ChainKernel& k) {
    if (k.n == 0) return true;
    auto reach = [&](bool forward) {
        std::vector<std::uint8_t> seen(k.n, 0);
        std::deque<std::size_t> q{0};
        seen[0] = 1;
        std::size_t cnt = 1;
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop_front();
            for (std::size_t u = 0; u < k.n; ++u) {
                if (seen[u] || u == v) continue;
                const double t = forward ? k.T[v * k.n + u] : k.T[u * k.n + v];
                if (t <= 0) continue;
                seen[u] = 1;
                ++cnt;
                q.push_back(u);
            }
        }
        return cnt == k.n;
    };
    return reach(true) && reach(false);
}

CutReport conductance(const ChainKernel& k, const std::vector<std::uint8_t>& in_s) {
    if (in_s.size() != k.n) throw ConfigError("cut indicator size mismatch");
    std::size_t cnt = 0;
    for (const std::uint8_t b : in_s) cnt += b ? 1 : 0;
    if (cnt == 0 || cnt == k.n) throw ConfigError("cut must split the space");

    CutReport r;
    for (std::size_t x = 0; x < k.n; ++x) (in_s[x] ? r.pi_s : r.pi_sc) += k.pi[x];
    r.swapped = r.pi_s > 0.5;
    double flow = 0;
    for (std::size_t x = 0; x < k.n; ++x) {
        if (!in_s[x]) continue;
        for (std::size_t y = 0; y < k.n; ++y)
            if (!in_s[y]) flow += k.pi[x] * k.T[x * k.n + y];
    }
    r.flow = flow;
    const double small = std::min(r.pi_s, r.pi_sc);
    r.phi = small > 0 ? flow / small : 0;
    r.disconnected = flow == 0;
    r.bound = r.phi > 0 ? 1.0 / (4.0 * r.phi) : std::numeric_limits<double>::infinity();
    return r;
}

RecipeReport verify_three_step_recipe(const ChainKernel& k, const std::vector<std::uint8_t>& label) {
    RecipeReport r;
    if (label.size() != k.n) return r;
    for (const std::uint8_t l : label)
        if (l > 2) return r;
    std::size_t count[3] = {0, 0, 0};
    for (std::size_t x = 0; x < k.n; ++x) {
        ++count[label[x]];
        if (label[x] == 0) r.pi_left += k.pi[x];
        else if (label[x] == 1) r.pi_middle += k.pi[x];
        else r.pi_right += k.pi[x];
        if (label[x] != 0) continue;
        for (std::size_t y = 0; y < k.n; ++y)
            if (label[y] == 2 && k.T[x * k.n + y] > 0) ++r.direct_transitions;
    }
    r.is_partition = count[0] > 0 && count[1] > 0 && count[2] > 0;
    const double small = std::min(r.pi_left, r.pi_right);
    r.ratio = small > 0 ? r.pi_middle / small : 0;
    return r;
}

} // namespace icebox
