// chshov: CHSH-overlap entanglement analysis from the command line.
//
// Subcommands: overlaps | concurrence | gte | distill | scan | table | state.
// Reports print as aligned text by default; --format json switches to a
// machine format carrying full double precision. Exit codes: 0 success,
// 2 input or validation error, 3 resource cap exceeded.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chshov/chshov.hpp"

namespace {

using nlohmann::ordered_json;
using namespace chshov;

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_resource_cap = 3;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "unreadable";
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_digest(ss.str());
}

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

std::string generator_label(const GeneratorIndex& g) {
    return "(" + std::to_string(g.s + 1) + "," + std::to_string(g.t + 1) + ")";
}

// "1|23" or "1,2|3,4" with 1-based party labels
Bipartition parse_partition(const std::string& spec, const std::vector<std::size_t>& dims) {
    const auto bar = spec.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("partition '" + spec + "': expected 'left|right'");
    auto parse_side = [&](const std::string& side) {
        std::vector<std::size_t> parties;
        if (side.find(',') != std::string::npos) {
            std::stringstream ss(side);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) throw std::invalid_argument("partition '" + spec + "': empty label");
                const long v = std::stol(tok);
                if (v < 1) throw std::invalid_argument("partition labels are 1-based");
                parties.push_back(static_cast<std::size_t>(v - 1));
            }
        } else {
            for (char c : side) {
                if (c < '1' || c > '9')
                    throw std::invalid_argument("partition '" + spec + "': bad party label '" +
                                                std::string(1, c) + "'");
                parties.push_back(static_cast<std::size_t>(c - '1'));
            }
        }
        return parties;
    };
    const auto left = parse_side(spec.substr(0, bar));
    auto right = parse_side(spec.substr(bar + 1));
    const Bipartition p = Bipartition::of(dims, left);
    std::sort(right.begin(), right.end());
    if (right != p.right)
        throw std::invalid_argument("partition '" + spec + "' does not cover all " +
                                    std::to_string(dims.size()) + " parties exactly once");
    return p;
}

struct Options {
    std::string format = "text";
    double tol = 1e-7;
    std::uint64_t seed = 0;
    std::string command_echo;
};

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

ordered_json input_block(const std::string& path, const QState& s) {
    ordered_json j;
    j["file"] = path;
    j["kind"] = s.is_pure() ? "pure" : "mixed";
    j["dims"] = s.dims();
    j["digest"] = file_digest(path);
    return j;
}

// machine format: full precision, no wall time so identical runs emit
// identical bytes
void emit(const Options& opt, ordered_json rep, const Stopwatch& watch,
          const std::function<void()>& text_body) {
    if (opt.format == "json") {
        std::cout << rep.dump(2) << '\n';
        return;
    }
    std::printf("command:  %s\n", opt.command_echo.c_str());
    if (rep.contains("input")) {
        const auto& in = rep["input"];
        std::string dims;
        for (const auto& d : in["dims"]) {
            if (!dims.empty()) dims += "x";
            dims += std::to_string(d.get<std::size_t>());
        }
        std::printf("input:    %s  (%s, dims %s, digest %s)\n",
                    in["file"].get<std::string>().c_str(), in["kind"].get<std::string>().c_str(),
                    dims.c_str(), in["digest"].get<std::string>().c_str());
    }
    text_body();
    std::printf("wall_ms:  %s\n", fmt6(watch.ms()).c_str());
}

int run_overlaps(const Options& opt, const std::string& path, const std::string& partition_spec) {
    Stopwatch watch;
    const QState s = load_state(path);
    const Bipartition p = partition_spec.empty()
                              ? Bipartition::of(s.dims(), {0})
                              : parse_partition(partition_spec, s.dims());
    const auto records = all_pair_overlaps(s, p);

    double max_q = 0.0, sum_y2q = 0.0;
    for (const auto& r : records) {
        max_q = std::max(max_q, r.q);
        sum_y2q += r.y * r.y * r.q;
    }

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["input"] = input_block(path, s);
    rep["partition"] = p.label();
    auto& rows = rep["pairs"];
    rows = ordered_json::array();
    for (const auto& r : records) {
        ordered_json row;
        row["alpha"] = {r.alpha.s + 1, r.alpha.t + 1};
        row["beta"] = {r.beta.s + 1, r.beta.t + 1};
        row["y"] = r.y;
        row["gamma"] = r.gamma;
        row["q"] = r.q;
        rows.push_back(std::move(row));
    }
    rep["max_q"] = max_q;
    rep["sum_y2q"] = sum_y2q;

    emit(opt, std::move(rep), watch, [&] {
        std::printf("partition: %s  (%zu pair records)\n", p.label().c_str(), records.size());
        std::printf("%-10s %-10s %12s %12s %12s\n", "alpha", "beta", "y", "gamma", "Q");
        for (const auto& r : records)
            std::printf("%-10s %-10s %12s %12s %12s\n", generator_label(r.alpha).c_str(),
                        generator_label(r.beta).c_str(), fmt6(r.y).c_str(), fmt6(r.gamma).c_str(),
                        fmt6(r.q).c_str());
        std::printf("max_q:    %s\n", fmt6(max_q).c_str());
        std::printf("sum_y2q:  %s\n", fmt6(sum_y2q).c_str());
    });
    return exit_ok;
}

int run_concurrence(const Options& opt, const std::string& path) {
    Stopwatch watch;
    const QState s = load_state(path);
    const ConcurrenceReport rc = concurrence_report(s);

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["input"] = input_block(path, s);
    if (rc.value) rep["concurrence"] = *rc.value;
    rep["lower_bound"] = rc.lower_bound;
    auto& rows = rep["per_partition"];
    rows = ordered_json::array();
    for (const auto& [p, sum] : rc.per_partition) {
        ordered_json row;
        row["partition"] = p.label();
        row["sum_y2q"] = sum;
        rows.push_back(std::move(row));
    }

    emit(opt, std::move(rep), watch, [&] {
        if (rc.value) std::printf("concurrence:  %s (exact, pure input)\n", fmt6(*rc.value).c_str());
        std::printf("lower_bound:  %s\n", fmt6(rc.lower_bound).c_str());
        std::printf("%-12s %14s\n", "partition", "sum y^2 Q");
        for (const auto& [p, sum] : rc.per_partition)
            std::printf("%-12s %14s\n", p.label().c_str(), fmt6(sum).c_str());
    });
    return exit_ok;
}

int run_gte(const Options& opt, const std::string& path) {
    Stopwatch watch;
    const QState s = load_state(path);
    if (s.parties() != 3) {
        std::cerr << "gte: input must have exactly 3 parties, got " << s.parties() << "\n";
        return exit_input_error;
    }
    const GteReport g = gte_report(s);

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["input"] = input_block(path, s);
    rep["x"] = g.x;
    rep["y"] = g.y;
    rep["z"] = g.z;
    rep["sum"] = g.sum;
    rep["gte_detected"] = g.mixed_gte_detected;
    if (g.bound) {
        rep["bound"] = *g.bound;
        rep["bound_clamped"] = std::max(0.0, *g.bound);
    }
    if (g.pure_gte != TriState::not_applicable) rep["pure_gte"] = g.pure_gte == TriState::yes;
    if (g.pure_concurrence_gte) rep["gte_concurrence"] = *g.pure_concurrence_gte;

    emit(opt, std::move(rep), watch, [&] {
        std::printf("X:             %s\n", fmt6(g.x).c_str());
        std::printf("Y:             %s\n", fmt6(g.y).c_str());
        std::printf("Z:             %s\n", fmt6(g.z).c_str());
        std::printf("X+Y+Z:         %s\n", fmt6(g.sum).c_str());
        std::printf("gte (sum>8):   %s\n", g.mixed_gte_detected ? "detected" : "not detected");
        if (g.bound)
            std::printf("bound:         %s (clamped %s)\n", fmt6(*g.bound).c_str(),
                        fmt6(std::max(0.0, *g.bound)).c_str());
        if (g.pure_gte != TriState::not_applicable)
            std::printf("pure gte:      %s\n", g.pure_gte == TriState::yes ? "yes" : "no");
        if (g.pure_concurrence_gte)
            std::printf("gte conc.:     %s\n", fmt6(*g.pure_concurrence_gte).c_str());
    });
    return exit_ok;
}

int run_distill(const Options& opt, const std::string& path, const std::string& partition_spec,
                std::size_t copies, std::size_t lu_iters, std::size_t dim_cap) {
    Stopwatch watch;
    const QState s = load_state(path);
    const Bipartition p = partition_spec.empty()
                              ? Bipartition::of(s.dims(), {0})
                              : parse_partition(partition_spec, s.dims());

    DistillReport chsh_rep = distillable_chsh(s, p, copies, dim_cap);
    const auto [rc_min_eig, rc_violated] = reduction_criterion(s, p);
    std::optional<DistillReport> lu_rep;
    if (lu_iters > 0) lu_rep = lu_enhanced_overlap(s, p, lu_iters, opt.seed);

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["input"] = input_block(path, s);
    rep["partition"] = p.label();
    rep["copies"] = copies;
    rep["max_q"] = chsh_rep.max_q;
    rep["distillable_chsh"] = chsh_rep.distillable_chsh;
    rep["rc_min_eig"] = rc_min_eig;
    rep["distillable_rc"] = rc_violated;
    if (lu_rep) {
        ordered_json lu;
        lu["seed"] = lu_rep->lu->seed;
        lu["iterations"] = lu_iters;
        lu["max_q"] = lu_rep->max_q;
        lu["trace"] = lu_rep->lu->best_q;
        rep["lu_search"] = std::move(lu);
    }

    emit(opt, std::move(rep), watch, [&] {
        std::printf("partition:     %s\n", p.label().c_str());
        std::printf("copies:        %zu\n", copies);
        std::printf("max_q:         %s\n", fmt6(chsh_rep.max_q).c_str());
        std::printf("chsh verdict:  %s\n",
                    chsh_rep.distillable_chsh ? "distillable" : "not detected");
        std::printf("rc_min_eig:    %s\n", fmt6(rc_min_eig).c_str());
        std::printf("rc verdict:    %s\n", rc_violated ? "distillable" : "not detected");
        if (lu_rep) {
            std::printf("lu max_q:      %s  (%zu iterations, seed %llu)\n",
                        fmt6(lu_rep->max_q).c_str(), lu_iters,
                        static_cast<unsigned long long>(opt.seed));
        }
    });
    return exit_ok;
}

int run_scan(const Options& opt, const std::string& family, std::size_t d,
             const std::string& criterion, double lo, double hi) {
    Stopwatch watch;
    ThresholdScan scan;
    scan.family.name = family_from_string(family);
    scan.family.d = d;
    scan.family.parties = scan.family.name == FamilyName::ghz_noise ? 3 : 2;
    scan.criterion = criterion_from_string(criterion);
    scan.lo = lo;
    scan.hi = hi;
    scan.tol = opt.tol;
    const double x_star = bisect_threshold(scan);

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["family"] = family;
    rep["d"] = d;
    rep["criterion"] = criterion;
    rep["bracket"] = {lo, hi};
    rep["tol"] = scan.tol;
    rep["x_star"] = x_star;

    emit(opt, std::move(rep), watch, [&] {
        std::printf("family:     %s (d=%zu)\n", family.c_str(), d);
        std::printf("criterion:  %s\n", criterion.c_str());
        std::printf("bracket:    [%s, %s], tol %s\n", fmt6(lo).c_str(), fmt6(hi).c_str(),
                    fmt6(scan.tol).c_str());
        std::printf("x_star:     %.6f\n", x_star);
    });
    return exit_ok;
}

int run_table(const Options& opt, const std::string& name) {
    Stopwatch watch;
    const TableId id = table_from_string(name);
    const auto rows = reproduce_table(id, opt.tol);

    double max_dev = 0.0;
    for (const auto& row : rows) max_dev = std::max(max_dev, std::abs(row.computed - row.reference));

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["table"] = rows.front().table;
    auto& jr = rep["rows"];
    jr = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["range"] = row.range;
        r["d"] = row.d;
        r["criterion"] = to_string(row.criterion);
        r["computed"] = row.computed;
        r["reference"] = row.reference;
        r["deviation"] = std::abs(row.computed - row.reference);
        jr.push_back(std::move(r));
    }
    rep["max_deviation"] = max_dev;

    emit(opt, std::move(rep), watch, [&] {
        std::printf("table %s (%zu thresholds)\n", rows.front().table.c_str(), rows.size());
        std::printf("%-6s %-3s %-12s %12s %12s %12s\n", "range", "d", "criterion", "computed",
                    "reference", "|dev|");
        for (const auto& row : rows)
            std::printf("%-6d %-3zu %-12s %12.6f %12.6f %12.2e\n", row.range, row.d,
                        to_string(row.criterion).c_str(), row.computed, row.reference,
                        std::abs(row.computed - row.reference));
        std::printf("max_deviation: %.2e\n", max_dev);
    });
    return exit_ok;
}

int run_state(const Options& opt, const std::string& family, std::size_t d, std::size_t parties,
              double x, const std::string& out_path) {
    Stopwatch watch;
    FamilySpec spec;
    spec.name = family_from_string(family);
    spec.d = d;
    spec.parties = parties;
    spec.x = x;
    const QState s = make_family(spec);
    save_state(s, out_path);

    ordered_json rep;
    rep["command"] = opt.command_echo;
    rep["family"] = family;
    rep["d"] = d;
    rep["parties"] = s.parties();
    rep["x"] = x;
    rep["kind"] = s.is_pure() ? "pure" : "mixed";
    rep["file"] = out_path;

    emit(opt, std::move(rep), watch, [&] {
        std::printf("wrote %s state '%s' (d=%zu, %zu parties) to %s\n",
                    s.is_pure() ? "pure" : "mixed", family.c_str(), d, s.parties(),
                    out_path.c_str());
    });
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHSH-overlap entanglement analysis"};
    app.fallthrough();

    Options opt;
    opt.command_echo = join_args(argc, argv);
    app.add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--tol", opt.tol, "Bisection tolerance for scan/table")->capture_default_str();
    app.add_option("--seed", opt.seed, "Seed for the local-unitary search")->capture_default_str();
    app.require_subcommand(1);

    std::string state_path, partition_spec, family, criterion, table_name, out_path;
    std::size_t copies = 1, lu_iters = 0, dim_cap = default_dim_cap;
    std::size_t d = 2, parties = 0;
    double lo = 0.0, hi = 1.0, x = 1.0;

    auto* overlaps = app.add_subcommand("overlaps", "Pair weights, gammas and overlaps");
    overlaps->add_option("state-file", state_path)->required();
    overlaps->add_option("--partition", partition_spec, "e.g. 1|23 (default: 1|rest)");

    auto* concurrence = app.add_subcommand("concurrence", "Concurrence and its lower bound");
    concurrence->add_option("state-file", state_path)->required();

    auto* gte = app.add_subcommand("gte", "Genuine tripartite entanglement tests");
    gte->add_option("state-file", state_path)->required();

    auto* distill = app.add_subcommand("distill", "Bipartite distillability tests");
    distill->add_option("state-file", state_path)->required();
    distill->add_option("--partition", partition_spec, "e.g. 1|23 (default: 1|rest)");
    distill->add_option("--copies", copies, "Number of state copies")->capture_default_str();
    distill->add_option("--lu-iters", lu_iters, "Local-unitary search iterations")
        ->capture_default_str();
    distill->add_option("--dim-cap", dim_cap, "Total dimension cap for the n-copy state")
        ->capture_default_str();

    auto* scan = app.add_subcommand("scan", "Bisect a criterion threshold over a family");
    scan->add_option("--family", family, "isotropic or ghz_noise")->required();
    scan->add_option("--d", d, "Local dimension")->capture_default_str();
    scan->add_option("--criterion", criterion, "overlap_pos | gte_sum | gte_bound | rc")
        ->required();
    scan->add_option("--lo", lo, "Bracket lower end")->capture_default_str();
    scan->add_option("--hi", hi, "Bracket upper end")->capture_default_str();

    auto* table = app.add_subcommand("table", "Recompute a reference threshold table");
    table->add_option("--name", table_name, "I, II or III")->required();

    auto* state = app.add_subcommand("state", "Write a family state to a StateFile");
    state->add_option("--family", family, "Family or fixture name")->required();
    state->add_option("--d", d, "Local dimension")->capture_default_str();
    state->add_option("--parties", parties, "Party count (max_entangled only)");
    state->add_option("--x", x, "Mixing parameter")->capture_default_str();
    state->add_option("-o,--output", out_path, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    try {
        if (*overlaps) return run_overlaps(opt, state_path, partition_spec);
        if (*concurrence) return run_concurrence(opt, state_path);
        if (*gte) return run_gte(opt, state_path);
        if (*distill) return run_distill(opt, state_path, partition_spec, copies, lu_iters, dim_cap);
        if (*scan) return run_scan(opt, family, d, criterion, lo, hi);
        if (*table) return run_table(opt, table_name);
        if (*state) {
            if (parties == 0) parties = family == "ghz_noise" ? 3 : 2;
            return run_state(opt, family, d, parties, x, out_path);
        }
    } catch (const DimensionCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource_cap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}
