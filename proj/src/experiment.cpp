#include "icebox/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "icebox/errors.hpp"
#include "icebox/exact.hpp"
#include "icebox/peierls.hpp"
#include "icebox/rng.hpp"
#include "icebox/topology.hpp"

namespace icebox {

using json = nlohmann::ordered_json;

namespace {

const char* bc_name(Bc bc) { return bc == Bc::Free ? "free" : "periodic"; }
const char* chain_name(ChainKind k) { return k == ChainKind::Glauber ? "glauber" : "loop"; }

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["n"] = cfg.n;
    j["bc"] = bc_name(cfg.bc);
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["c"] = cfg.c;
    j["chain"] = chain_name(cfg.chain);
    j["steps"] = cfg.steps;
    j["cap"] = cfg.cap;
    j["seed"] = cfg.seed;
    j["replicas"] = cfg.replicas;
    j["stride"] = cfg.stride;
    j["budget"] = cfg.budget;
    j["cs"] = cfg.cs;
    j["saw_cap"] = cfg.saw_cap;
    j["rooting"] = cfg.rooting;
    j["format"] = cfg.format;
    return j;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

struct EscapeRow {
    int replica;
    std::uint64_t seed;
    std::uint64_t steps;
    bool hit;
};

struct EscapeSummary {
    double hit_fraction = 0;
    std::uint64_t median_steps = 0;  // lower median over all replicas
    int capped = 0;
    bool censored = false;  // more than half the replicas hit the cap
};

EscapeSummary summarize(const std::vector<EscapeRow>& rows) {
    EscapeSummary s;
    std::vector<std::uint64_t> steps;
    for (const EscapeRow& r : rows) {
        steps.push_back(r.steps);
        if (r.hit) s.hit_fraction += 1;
        else ++s.capped;
    }
    s.hit_fraction /= static_cast<double>(rows.size());
    std::sort(steps.begin(), steps.end());
    s.median_steps = steps[(steps.size() - 1) / 2];
    s.censored = 2 * s.capped > static_cast<int>(rows.size());
    return s;
}

std::vector<EscapeRow> run_escape_replicas(const ExperimentConfig& cfg, const Lattice& lat,
                                           const MedialGraph& med, std::uint64_t seed_base) {
    const Weights w = cfg.weights();
    std::vector<EscapeRow> rows;
    for (int r = 0; r < cfg.replicas; ++r) {
        const std::uint64_t child = child_seed(cfg.seed, seed_base + static_cast<std::uint64_t>(r));
        Rng rng(child);
        Config state = reference_green(lat);
        const HitResult h = hitting_time(lat, med, state, w, rng, cfg.chain, PartClass::RedCross,
                                         cfg.stride, cfg.cap);
        rows.push_back({r, child, h.steps, h.hit});
    }
    return rows;
}

json escape_rows_json(const std::vector<EscapeRow>& rows) {
    json arr = json::array();
    for (const EscapeRow& r : rows) {
        json row;
        row["replica"] = r.replica;
        row["seed"] = r.seed;
        row["steps"] = r.steps;
        row["hit"] = r.hit;
        arr.push_back(std::move(row));
    }
    return arr;
}

json escape_summary_json(const EscapeSummary& s) {
    json j;
    j["hit_fraction"] = s.hit_fraction;
    j["median_steps"] = s.median_steps;
    j["capped"] = s.capped;
    j["censored"] = s.censored;
    return j;
}

} // namespace

void ExperimentConfig::validate() const {
    if (n < 1) throw ConfigError("n must be at least 1");
    if (!(a > 0) || !(b > 0) || !(c > 0)) throw ConfigError("weights must be positive");
    if (replicas < 1) throw ConfigError("replicas must be at least 1");
    if (stride < 1) throw ConfigError("stride must be at least 1");
    if (cap < 1) throw ConfigError("cap must be at least 1");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    if (rooting != "origin" && rooting != "boundary")
        throw ConfigError("rooting must be origin or boundary");
    if (saw_cap < 0 || saw_cap > 30) throw ConfigError("saw_cap must be within 0..30");
    for (const double v : cs)
        if (!(v > 0)) throw ConfigError("sweep c values must be positive");
}

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config file is not valid json: ") + e.what());
    }
    ExperimentConfig cfg;
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "n") cfg.n = val.get<int>();
            else if (key == "bc") {
                const std::string s = val.get<std::string>();
                if (s == "free") cfg.bc = Bc::Free;
                else if (s == "periodic") cfg.bc = Bc::Periodic;
                else throw ConfigError("bc must be free or periodic");
            } else if (key == "a") cfg.a = val.get<double>();
            else if (key == "b") cfg.b = val.get<double>();
            else if (key == "c") cfg.c = val.get<double>();
            else if (key == "chain") {
                const std::string s = val.get<std::string>();
                if (s == "glauber") cfg.chain = ChainKind::Glauber;
                else if (s == "loop") cfg.chain = ChainKind::DirectedLoop;
                else throw ConfigError("chain must be glauber or loop");
            } else if (key == "steps") cfg.steps = val.get<std::uint64_t>();
            else if (key == "cap") cfg.cap = val.get<std::uint64_t>();
            else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
            else if (key == "replicas") cfg.replicas = val.get<int>();
            else if (key == "stride") cfg.stride = val.get<std::uint64_t>();
            else if (key == "budget") cfg.budget = val.get<std::uint64_t>();
            else if (key == "cs") cfg.cs = val.get<std::vector<double>>();
            else if (key == "saw_cap") cfg.saw_cap = val.get<int>();
            else if (key == "rooting") cfg.rooting = val.get<std::string>();
            else if (key == "out") cfg.out = val.get<std::string>();
            else if (key == "format") cfg.format = val.get<std::string>();
            else if (key == "test_corrupt_classifier") cfg.corrupt_classifier = val.get<bool>();
            else throw ConfigError("unknown config key: " + key);
        } catch (const json::exception& e) {
            throw ConfigError("bad value for config key " + key + ": " + e.what());
        }
    }
    return cfg;
}

int cmd_enumerate(const ExperimentConfig& cfg, std::ostream& out) {
    const Lattice lat = build_lattice(cfg.n, cfg.bc);
    const MedialGraph med = build_medial(lat);
    const Weights w = cfg.weights();
    const StateSpace ss = enumerate_states(lat, true, cfg.budget);
    const std::vector<double> pi = gibbs(lat, ss, w);

    json rep;
    rep["version"] = kVersion;
    rep["config"] = config_json(cfg);
    rep["phase"] = phase_name(phase_of(w));
    rep["omega"] = ss.n_perfect;
    rep["omega_prime"] = ss.states.size() - ss.n_perfect;
    rep["log_z"] = log_partition(lat, ss, w);

    if (lat.has_c_ground) {
        // Class masses under Gibbs restricted to the perfect states.
        double z_perfect = 0;
        for (std::size_t i = 0; i < ss.n_perfect; ++i) z_perfect += pi[i];
        std::size_t counts[3] = {0, 0, 0};
        double masses[3] = {0, 0, 0};
        for (std::size_t i = 0; i < ss.n_perfect; ++i) {
            const PartClass c = classify(lat, med, ss.states[i]);
            ++counts[static_cast<int>(c)];
            masses[static_cast<int>(c)] += pi[i] / z_perfect;
        }
        json classes;
        for (const PartClass c :
             {PartClass::GreenCross, PartClass::RedCross, PartClass::FaultLine}) {
            json entry;
            entry["count"] = counts[static_cast<int>(c)];
            entry["mass"] = masses[static_cast<int>(c)];
            classes[part_class_name(c)] = std::move(entry);
        }
        rep["classes"] = std::move(classes);
    } else {
        rep["classes"] = nullptr;
        rep["note"] = "classification needs the two reference states (even torus sizes)";
    }
    emit(out, rep);
    return 0;
}

int cmd_escape(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.chain == ChainKind::Glauber && cfg.bc == Bc::Periodic)
        throw ConfigError("face dynamics are not irreducible on the torus; use the loop chain");
    const Lattice lat = build_lattice(cfg.n, cfg.bc);
    const MedialGraph med = build_medial(lat);
    const std::vector<EscapeRow> rows = run_escape_replicas(cfg, lat, med, 0);
    const EscapeSummary s = summarize(rows);

    if (cfg.format == "csv") {
        out << "# " << kVersion << "\n# config " << config_json(cfg).dump() << "\n";
        out << "replica,seed,steps,hit\n";
        for (const EscapeRow& r : rows)
            out << r.replica << "," << r.seed << "," << r.steps << "," << (r.hit ? 1 : 0) << "\n";
        out << "# summary " << escape_summary_json(s).dump() << "\n";
        return 0;
    }
    json rep;
    rep["version"] = kVersion;
    rep["config"] = config_json(cfg);
    rep["rows"] = escape_rows_json(rows);
    rep["summary"] = escape_summary_json(s);
    emit(out, rep);
    return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.cs.empty()) throw ConfigError("sweep needs a list of c values");
    if (cfg.chain == ChainKind::Glauber && cfg.bc == Bc::Periodic)
        throw ConfigError("face dynamics are not irreducible on the torus; use the loop chain");
    const Lattice lat = build_lattice(cfg.n, cfg.bc);
    const MedialGraph med = build_medial(lat);

    json rows = json::array();
    for (std::size_t ci = 0; ci < cfg.cs.size(); ++ci) {
        ExperimentConfig point = cfg;
        point.c = cfg.cs[ci];
        const std::vector<EscapeRow> reps = run_escape_replicas(
            point, lat, med, ci * static_cast<std::uint64_t>(cfg.replicas));
        const EscapeSummary s = summarize(reps);
        json row;
        row["c"] = point.c;
        row["hit_fraction"] = s.hit_fraction;
        row["median_steps"] = s.median_steps;
        row["censored"] = s.censored;
        // Exact conductance of the reference-state class when the space fits.
        row["phi_cg"] = nullptr;
        row["mixing_lower_bound"] = nullptr;
        try {
            const bool near = point.chain == ChainKind::DirectedLoop;
            const StateSpace ss = enumerate_states(lat, near, cfg.budget);
            const ChainKernel k = transition_matrix(lat, ss, point.chain, point.weights());
            std::vector<std::uint8_t> in_s(ss.states.size(), 0);
            for (std::size_t i = 0; i < ss.n_perfect; ++i)
                in_s[i] = classify(lat, med, ss.states[i]) == PartClass::GreenCross ? 1 : 0;
            const CutReport cut = conductance(k, in_s);
            row["phi_cg"] = cut.phi;
            row["mixing_lower_bound"] = cut.bound;
        } catch (const BudgetExceeded&) {
            // leave the exact columns empty
        }
        rows.push_back(std::move(row));
    }

    if (cfg.format == "csv") {
        out << "# " << kVersion << "\n# config " << config_json(cfg).dump() << "\n";
        out << "c,hit_fraction,median_steps,censored,phi_cg,mixing_lower_bound\n";
        for (const json& row : rows) {
            out << fmt_double(row["c"].get<double>()) << ","
                << fmt_double(row["hit_fraction"].get<double>()) << ","
                << row["median_steps"].get<std::uint64_t>() << ","
                << (row["censored"].get<bool>() ? 1 : 0) << ",";
            if (row["phi_cg"].is_null()) out << ",";
            else
                out << fmt_double(row["phi_cg"].get<double>()) << ","
                    << fmt_double(row["mixing_lower_bound"].get<double>());
            out << "\n";
        }
        return 0;
    }
    json rep;
    rep["version"] = kVersion;
    rep["config"] = config_json(cfg);
    rep["rows"] = std::move(rows);
    emit(out, rep);
    return 0;
}

namespace {

struct Check {
    explicit Check(std::string nm) : name(std::move(nm)) {}
    std::string name;
    std::string status = "pass";  // pass | fail | skip
    std::uint64_t violations = 0;
    double margin = 0;  // worst case; meaning is per check
    std::string note;
};

json check_json(const Check& c) {
    json j;
    j["name"] = c.name;
    j["status"] = c.status;
    j["violations"] = c.violations;
    j["margin"] = c.margin;
    j["note"] = c.note;
    return j;
}

} // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
    const Lattice lat = build_lattice(cfg.n, cfg.bc);
    const MedialGraph med = build_medial(lat);
    const DiagonalLattice diag = build_diagonal(lat);
    const Weights w = cfg.weights();
    std::vector<Check> checks;

    if (!lat.has_c_ground)
        throw ConfigError("verification needs the two reference states (even torus sizes)");

    const StateSpace ss = enumerate_states(lat, false, cfg.budget);

    // Lemma: monochromatic crosses of both colors cannot coexist.
    {
        Check c{"cross_coexistence"};
        for (const Config& s : ss.states) {
            const bool g = lat.bc == Bc::Free
                               ? has_cross(lat, med, s, Color::Green)
                               : torus_report(lat, med, diag, s).green_cross;
            const bool r = lat.bc == Bc::Free
                               ? has_cross(lat, med, s, Color::Red)
                               : torus_report(lat, med, diag, s).red_cross;
            if (g && r) ++c.violations;
        }
        if (c.violations) c.status = "fail";
        checks.push_back(c);
    }

    // Corollary: the three classes partition the perfect states.
    {
        Check c{"class_partition"};
        std::size_t counts[3] = {0, 0, 0};
        bool corrupted_one = false;
        for (const Config& s : ss.states) {
            PartClass cls = classify(lat, med, s);
            if (cfg.corrupt_classifier && !corrupted_one && cls == PartClass::FaultLine) {
                cls = PartClass::RedCross;  // negative-control hook
                corrupted_one = true;
            }
            ++counts[static_cast<int>(cls)];
            bool g, r;
            if (lat.bc == Bc::Free) {
                g = has_cross(lat, med, s, Color::Green);
                r = has_cross(lat, med, s, Color::Red);
            } else {
                const TorusReport tr = torus_report(lat, med, diag, s);
                g = tr.green_cross;
                r = tr.red_cross;
            }
            const PartClass expect = g   ? PartClass::GreenCross
                                     : r ? PartClass::RedCross
                                         : PartClass::FaultLine;
            if (cls != expect) ++c.violations;
        }
        if (counts[0] + counts[1] + counts[2] != ss.states.size()) ++c.violations;
        if (c.violations) c.status = "fail";
        checks.push_back(c);
    }

    if (lat.bc == Bc::Free) {
        // One flip away from the reference class implies a crossing interface
        // path with at most one gap.
        Check c{"boundary_lemma"};
        for (const Config& s : ss.states) {
            if (classify(lat, med, s) == PartClass::GreenCross) continue;
            if (!one_flip_from_green(lat, med, s)) continue;
            const LtauGraph ltau = build_ltau(lat, diag, s);
            const bool ok =
                find_almost_fault_line(lat, diag, ltau, s, Dir::Horizontal).has_value() ||
                find_almost_fault_line(lat, diag, ltau, s, Dir::Vertical).has_value();
            if (!ok) ++c.violations;
        }
        if (c.violations) c.status = "fail";
        checks.push_back(c);
    }

    if (lat.bc == Bc::Free) {
        // Escape map: injective per canonical path; weight magnification at
        // least (c/min)*(c/max)^(len-1) against the mapped state.
        Check inj{"escape_injective"};
        Check mag{"escape_magnification"};
        const double mn = std::min(w.a, w.b), mx = std::max(w.a, w.b);
        const bool mag_applies = w.c >= mx;
        mag.margin = std::numeric_limits<double>::infinity();
        std::unordered_map<std::string, std::unordered_map<std::string, int>> groups;
        for (const Config& s : ss.states) {
            const LtauGraph ltau = build_ltau(lat, diag, s);
            const std::optional<FaultPath> gamma = canonical_fault_path(diag, ltau, Dir::Vertical);
            if (!gamma) continue;
            std::string key;
            for (const std::int32_t v : gamma->verts) key += std::to_string(v) + ",";
            const EscapeResult esc = peierls_map(lat, diag, s, *gamma, w);
            const std::string image = serialize(lat, esc.image);
            auto& bucket = groups[key];
            if (++bucket[image] > 1) ++inj.violations;
            if (mag_applies) {
                const double len = static_cast<double>(gamma->steps.size());
                const double floor_log =
                    std::log(mn / w.c) + (len - 1) * std::log(w.c / mx);
                mag.margin = std::min(mag.margin, esc.log_ratio - floor_log);
                if (esc.log_ratio < floor_log - 1e-9) ++mag.violations;
            }
        }
        if (inj.violations) inj.status = "fail";
        if (!mag_applies) {
            mag.status = "skip";
            mag.note = "needs c at least max(a,b)";
            mag.margin = 0;
        } else if (mag.violations) {
            mag.status = "fail";
        }
        if (std::isinf(mag.margin)) mag.margin = 0;
        checks.push_back(inj);
        checks.push_back(mag);
    }

    if (lat.bc == Bc::Free) {
        // Exact crossing-path mass against the walk-count bound.
        Check c{"mass_within_bound"};
        const double mx = std::max(w.a, w.b);
        if (w.c >= 2.639 * mx) {
            const double mass = fault_mass_exact(lat, diag, ss, w);
            const PeierlsBound b = peierls_upper_bound(lat.n, w, 20);
            c.margin = b.sharp - mass;
            if (mass > b.sharp + 1e-12) {
                c.status = "fail";
                ++c.violations;
            }
            c.note = "mass " + fmt_double(mass) + " bound " + fmt_double(b.sharp);
        } else {
            c.status = "skip";
            c.note = "outside the regime c >= 2.639*max(a,b)";
        }
        checks.push_back(c);
    }

    // Exact kernels: stochasticity, laziness, reversibility, stationarity.
    auto kernel_checks = [&](ChainKind kind, const char* label) {
        Check c{label};
        try {
            const StateSpace space =
                kind == ChainKind::DirectedLoop ? enumerate_states(lat, true, cfg.budget) : ss;
            const ChainKernel k = transition_matrix(lat, space, kind, w);
            const double rows_err = max_row_sum_error(k);
            const double diag_min = min_diagonal(k);
            const double db = detailed_balance_error(k);
            const double st = stationarity_error(k);
            c.margin = std::max({rows_err, db, st, 0.5 - diag_min});
            if (rows_err > 1e-12 || db > 1e-12 || st > 1e-10 || diag_min < 0.5 - 1e-15) {
                c.status = "fail";
                ++c.violations;
            }
            c.note = "rows " + fmt_double(rows_err) + " balance " + fmt_double(db) +
                     " stationarity " + fmt_double(st);
            if (kind == ChainKind::Glauber && !strongly_connected(k)) {
                c.status = "fail";
                ++c.violations;
                c.note += " disconnected";
            }
            if (w.a == w.b && w.b == w.c) {
                double worst = 0;
                const double u = 1.0 / static_cast<double>(k.n);
                for (const double p : k.pi) worst = std::max(worst, std::abs(p - u));
                if (worst > 1e-12) {
                    c.status = "fail";
                    ++c.violations;
                    c.note += " nonuniform";
                }
            }
        } catch (const BudgetExceeded&) {
            c.status = "skip";
            c.note = "state space exceeds the kernel budget";
        } catch (const NotIrreducible& e) {
            c.status = "skip";
            c.note = e.what();
        }
        checks.push_back(c);
    };
    kernel_checks(ChainKind::Glauber, "kernel_glauber");
    kernel_checks(ChainKind::DirectedLoop, "kernel_loop");

    // Walk-count suite: anchors, submultiplicativity, growth floor.
    {
        Check c{"saw_counts"};
        const SawTable t = saw_table(cfg.saw_cap, SawRoot::Origin);
        if (t.c.size() > 1 && t.c[1] != 4) ++c.violations;
        if (t.c.size() > 2 && t.c[2] != 12) ++c.violations;
        c.margin = std::numeric_limits<double>::infinity();
        for (std::size_t l = 1; l < t.c.size(); ++l) {
            for (std::size_t m = l; l + m < t.c.size(); ++m)
                if (t.c[l + m] > t.c[l] * t.c[m]) ++c.violations;
            const double growth = std::pow(static_cast<double>(t.c[l]), 1.0 / static_cast<double>(l));
            c.margin = std::min(c.margin, growth - 2.638);
            if (growth < 2.638) ++c.violations;
        }
        if (std::isinf(c.margin)) c.margin = 0;
        if (c.violations) c.status = "fail";
        checks.push_back(c);
    }

    if (lat.bc == Bc::Periodic) {
        // Interface cycles on the torus close up in pairs across homology.
        Check c{"torus_cycle_parity"};
        for (const Config& s : ss.states) {
            const TorusReport tr = torus_report(lat, med, diag, s);
            if (tr.noncontractible % 2 != 0) ++c.violations;
        }
        if (c.violations) c.status = "fail";
        checks.push_back(c);
    }

    bool all_pass = true;
    json arr = json::array();
    for (const Check& c : checks) {
        if (c.status == "fail") all_pass = false;
        arr.push_back(check_json(c));
    }
    json rep;
    rep["version"] = kVersion;
    rep["config"] = config_json(cfg);
    rep["checks"] = std::move(arr);
    rep["all_pass"] = all_pass;
    emit(out, rep);
    return all_pass ? 0 : 1;
}

int cmd_geom(const ExperimentConfig& cfg, std::ostream& out) {
    const Lattice lat = build_lattice(cfg.n, cfg.bc);
    const DiagonalLattice diag = build_diagonal(lat);
    const MedialGraph med = build_medial(lat);
    json rep;
    rep["version"] = kVersion;
    rep["config"] = config_json(cfg);
    rep["vertices"] = lat.vrows * lat.vcols;
    rep["internal_vertices"] = lat.n_internal();
    rep["real_edges"] = lat.n_real_edges;
    rep["faces"] = lat.n_faces;
    rep["boundary_halves"] = lat.boundary_halves.size();
    rep["diagonal_vertices"] = diag.n_vertices();
    rep["diagonal_edges"] = diag.edges.size();
    rep["medial_edges"] = med.edges.size();
    rep["has_reference_states"] = lat.has_c_ground;
    emit(out, rep);
    return 0;
}

int cmd_saw(const ExperimentConfig& cfg, std::ostream& out) {
    const SawRoot root = cfg.rooting == "origin" ? SawRoot::Origin : SawRoot::Boundary;
    const SawTable t = saw_table(cfg.saw_cap, root);
    if (cfg.format == "csv") {
        out << "# " << kVersion << "\n# config " << config_json(cfg).dump() << "\n";
        out << "l,c_l,growth\n";
        for (std::size_t l = 0; l < t.c.size(); ++l) {
            const double growth =
                l == 0 ? 0.0
                       : std::pow(static_cast<double>(t.c[l]), 1.0 / static_cast<double>(l));
            out << l << "," << t.c[l] << "," << fmt_double(growth) << "\n";
        }
        return 0;
    }
    json rows = json::array();
    for (std::size_t l = 0; l < t.c.size(); ++l) {
        json row;
        row["l"] = l;
        row["c_l"] = t.c[l];
        row["growth"] =
            l == 0 ? 0.0 : std::pow(static_cast<double>(t.c[l]), 1.0 / static_cast<double>(l));
        rows.push_back(std::move(row));
    }
    json rep;
    rep["version"] = kVersion;
    rep["config"] = config_json(cfg);
    rep["rows"] = std::move(rows);
    emit(out, rep);
    return 0;
}

int run_command(const std::string& name, const ExperimentConfig& cfg) {
    try {
        cfg.validate();
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw ConfigError("cannot open output file " + cfg.out);
            os = &file;
        }
        if (name == "enumerate") return cmd_enumerate(cfg, *os);
        if (name == "escape") return cmd_escape(cfg, *os);
        if (name == "sweep") return cmd_sweep(cfg, *os);
        if (name == "verify") return cmd_verify(cfg, *os);
        if (name == "geom") return cmd_geom(cfg, *os);
        if (name == "saw") return cmd_saw(cfg, *os);
        throw ConfigError("unknown command: " + name);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what()
                  << " (raise --budget or shrink n)\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "bad config: " << e.what() << "\n";
        return 2;
    } catch (const NotIrreducible& e) {
        std::cerr << "bad config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace icebox
