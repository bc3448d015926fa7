// Acceptance suite: one checkable criterion per function, one line of
// output per criterion. Run with --criterion N for a single criterion,
// or with no arguments for all ten.
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "lrc/analyzer.hpp"
#include "lrc/builder.hpp"
#include "lrc/codec.hpp"
#include "lrc/rng.hpp"
#include "lrc/simstore.hpp"
#include "lrc/updatemeter.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace lrc;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_secs(double s) {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << s << "s";
    return out.str();
}

// ---------- CLI plumbing (criteria 1 and 10 exercise the binary) ----------

std::string lrctk_bin() {
    if (const char* bin = std::getenv("LRCTK_BIN")) return bin;
    return "";
}

fs::path scratch_dir() {
    fs::path p = fs::temp_directory_path() / ("lrc-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
}

int run_tool(const std::string& args) {
    std::string cmd = lrctk_bin() + " " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CodeRealization example_realization(BuildMethod method, std::uint64_t seed = 1) {
    BuildConfig cfg;
    cfg.params = nu_params(15, 9, 4);
    cfg.method = method;
    cfg.seed = seed;
    return build(cfg);
}

// parallel sweep helper: applies fn to every sweep point, collecting
// per-point failure notes in order
std::vector<std::string> sweep_parallel(const std::function<std::string(const CodeParams&)>& fn) {
    auto sweep = lrctest::full_sweep();
    std::vector<std::string> notes(sweep.size());
    std::atomic<std::size_t> next{0};
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < sweep.size(); i = next.fetch_add(1))
                notes[i] = fn(sweep[i]);
        });
    for (auto& t : pool) t.join();
    std::vector<std::string> failures;
    for (auto& n : notes)
        if (!n.empty()) failures.push_back(n);
    return failures;
}

std::string param_tag(const CodeParams& p) {
    return "(" + std::to_string(p.n) + "," + std::to_string(p.k) + "," + std::to_string(p.d) + "," +
           std::to_string(p.r) + ")";
}

// ---------- criteria ----------

// Example-1 proposed code: d = 5 exactly, locality 4 everywhere, the cover
// condition over gamma in [3,6], and u_bar_1 = 4 with histogram {4:9}.
Outcome criterion1() {
    auto t0 = Clock::now();
    fs::path dir = scratch_dir();
    std::string prefix = (dir / "c1").string();
    if (!lrctk_bin().empty()) {
        int rc = run_tool("construct --n 15 --k 9 --r 4 --method proposed --seed 1 --out " + prefix);
        if (rc != 0) return {false, "construct exited with " + std::to_string(rc)};
    }
    CodeRealization real = example_realization(BuildMethod::Proposed);
    if (!lrctk_bin().empty()) {
        // the CLI artifacts must describe the same realization
        if (slurp(prefix + ".matrix.txt") != write_matrix_text(real))
            return {false, "CLI matrix artifact differs from the library build"};
    }

    auto dist = min_distance(real.H);
    if (dist.d_exact != 5) return {false, "d_exact = " + std::to_string(dist.d_exact) + ", expected 5"};

    auto loc = structural_locality(real.graph);
    for (int ri : loc.r_i)
        if (ri != 4) return {false, "locality " + std::to_string(ri) + " != 4"};

    auto cover = cover_check(real.graph, 5);
    if (cover.gamma_lo != 3 || cover.gamma_hi != 6 || !cover.ok())
        return {false, "cover condition failed on gamma range [" + std::to_string(cover.gamma_lo) + "," +
                           std::to_string(cover.gamma_hi) + "]"};

    auto uc = uc_curve(numeric_support(real.P), 1);
    if (!(uc.u_bar == Rat(4)))
        return {false, "u_bar_1 = " + uc.u_bar.to_string() + ", expected 4"};
    if (uc.histogram != std::map<int, std::int64_t>{{4, 9}}) return {false, "u_1 histogram is not {4: 9}"};

    double dt = seconds_since(t0);
    if (dt >= 10.0) return {false, "took " + fmt_secs(dt) + ", budget 10s"};
    return {true, "d=5 exact, r=4 all nodes, cover gamma [3,6] ok, u_bar_1 = 4 with {4:9}, " + fmt_secs(dt)};
}

// Example-1 baseline: u_bar_1 = 44/9 with {4:1,5:8}; u_bar_2 = 196/36 with {5:20,6:16}.
Outcome criterion2() {
    auto t0 = Clock::now();
    CodeRealization real = example_realization(BuildMethod::Baseline);
    SupportMatrix s = numeric_support(real.P);
    auto u1 = uc_curve(s, 1);
    if (!(u1.u_bar == Rat(44, 9)) || u1.u_bar.to_decimal(2) != "4.89")
        return {false, "u_bar_1 = " + u1.u_bar.to_string() + ", expected 44/9"};
    if (u1.histogram != std::map<int, std::int64_t>{{4, 1}, {5, 8}})
        return {false, "u_1 histogram is not {4:1, 5:8}"};
    auto u2 = uc_curve(s, 2);
    if (!(u2.u_bar == Rat(196, 36)) || u2.u_bar.to_decimal(2) != "5.44")
        return {false, "u_bar_2 = " + u2.u_bar.to_string() + ", expected 196/36"};
    if (u2.histogram != std::map<int, std::int64_t>{{5, 20}, {6, 16}})
        return {false, "u_2 histogram is not {5:20, 6:16}"};
    double dt = seconds_since(t0);
    if (dt >= 5.0) return {false, "took " + fmt_secs(dt) + ", budget 5s"};
    return {true, "u_bar_1 = 44/9 (4.89) {4:1,5:8}; u_bar_2 = 196/36 (5.44) {5:20,6:16}, " + fmt_secs(dt)};
}

// Improvement at x=1 is exactly 800/44 percent and renders as 18.2.
Outcome criterion3() {
    auto proposed = uc_curve(numeric_support(example_realization(BuildMethod::Proposed).P), 1);
    auto baseline = uc_curve(numeric_support(example_realization(BuildMethod::Baseline).P), 1);
    Rat imp = compare_improvement(proposed, baseline);
    if (!(imp == Rat(800, 44))) return {false, "improvement = " + imp.to_string() + ", expected 800/44"};
    std::string rendered = imp.to_decimal(1);
    if (rendered != "18.2") return {false, "rendering '" + rendered + "' != '18.2'"};
    double drift = std::abs(imp.to_double() - 18.2);
    if (drift > 0.05) return {false, "rounding drift above 0.05 percentage points"};
    return {true, "improvement = 800/44 % = 18.18..., renders 18.2%"};
}

// u_bar_2 of the proposed construction: exact report, per-pair bounds
// 5 <= u_2 <= 6, u_bar_2 at most the baseline's 196/36, deviation from the
// 190/36 reference flagged.
Outcome criterion4() {
    CodeRealization real = example_realization(BuildMethod::Proposed);
    SupportMatrix s = numeric_support(real.P);
    auto u2 = uc_curve(s, 2);
    std::string report = "u_bar_2 = " + u2.u_bar.to_string() + " (" + u2.u_bar.to_decimal(2) + ")";

    if (!(u2.u_bar <= Rat(196, 36)))
        return {false, report + " exceeds the baseline's 196/36"};
    if (!(u2.u_bar == Rat(190, 36)))
        report += "; deviates from the paper's reference 190/36 (flagged)";

    std::vector<std::pair<int, int>> low_pairs;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) {
            int pair[] = {a, b};
            int u = u_of_set(s, pair);
            if (u < 5 || u > 6) low_pairs.push_back({a, b});
        }
    if (!low_pairs.empty()) {
        std::string who;
        for (auto [a, b] : low_pairs) who += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return {false, report + "; per-pair bound 5 <= u_2 <= 6 fails on" + who +
                           " [unreachable together with criterion 1: four same-group information nodes"
                           " share three global-check pairs, so two must collide at u_2 = 4]"};
    }
    return {true, report + "; all pairs within [5,6]"};
}

// Theorem-1 property sweep: numeric u_1 within [d-1, d] everywhere; flat
// u_1 = d-1 whenever the balance predicate holds. Under two minutes.
Outcome criterion5() {
    auto t0 = Clock::now();
    auto field = FieldContext::make(16);
    std::atomic<int> points{0};
    auto failures = sweep_parallel([&](const CodeParams& p) -> std::string {
        ++points;
        TannerGraph g = algorithm1(p);
        RealizeOptions opt;
        opt.seed = 1;
        opt.verify_distance = false;  // distance is criterion 6's subject
        CodeRealization real = realize(g, field, opt);
        SupportMatrix s = numeric_support(real.P);
        bool balanced = balance_predicate(p);
        for (int i = 0; i < p.k; ++i) {
            int u1 = s.row_weight(i);
            if (u1 < p.d - 1 || u1 > p.d)
                return param_tag(p) + " node " + std::to_string(i) + " has u_1 = " + std::to_string(u1);
            if (balanced && u1 != p.d - 1)
                return param_tag(p) + " balance holds but node " + std::to_string(i) + " has u_1 = " +
                       std::to_string(u1) + " != d-1";
        }
        return "";
    });
    double dt = seconds_since(t0);
    std::string timing = std::to_string(points.load()) + " points in " + fmt_secs(dt);
    if (!failures.empty()) {
        std::string detail = "bounds d-1 <= u_1 <= d hold everywhere, but the balance clause fails on " +
                             std::to_string(failures.size()) + " points, e.g. " + failures.front() +
                             " [Remark-4 divisibility is provably insufficient at d = 3: the degree floor"
                             " g-(lambda-mu) is 0 there, yet the cover condition forces every plain-group"
                             " information node onto a global check, landing u_1 at d]";
        // distinguish a genuine bound violation from the known balance gap
        for (const auto& f : failures)
            if (f.find("balance") == std::string::npos)
                return {false, "BOUND violation: " + f + "; " + timing};
        return {false, detail + "; " + timing};
    }
    if (dt >= 120.0) return {false, "took " + fmt_secs(dt) + ", budget 120s"};
    return {true, "all nodes within [d-1, d], balance clause flat at d-1; " + timing};
}

// Cover condition and exact distance across the sweep: three realizations
// per graph must reach d, with at most 1% of draws falling short.
Outcome criterion6() {
    auto t0 = Clock::now();
    auto field = FieldContext::make(16);
    std::atomic<std::uint64_t> draws{0}, shortfalls{0};
    std::atomic<int> points{0};
    auto failures = sweep_parallel([&](const CodeParams& p) -> std::string {
        ++points;
        TannerGraph g = algorithm1(p);
        auto cover = cover_check(g, p.d);
        if (!cover.ok()) return param_tag(p) + " fails the cover condition";
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            RealizeOptions opt;
            opt.seed = seed;
            opt.verify_distance = true;
            try {
                CodeRealization real = realize(g, field, opt);
                draws += static_cast<std::uint64_t>(real.draws);
                shortfalls += static_cast<std::uint64_t>(real.draws - 1);
            } catch (const RealizationFailure& e) {
                return param_tag(p) + " seed " + std::to_string(seed) + ": " + e.what();
            }
        }
        return "";
    });
    double dt = seconds_since(t0);
    if (!failures.empty())
        return {false, failures.front() + " (+" + std::to_string(failures.size() - 1) + " more)"};
    double rate = draws == 0 ? 0.0 : 100.0 * static_cast<double>(shortfalls) / static_cast<double>(draws);
    std::ostringstream detail;
    detail.precision(2);
    detail << std::fixed << points.load() << " points, cover ok, 3 realizations each at exact d; "
           << shortfalls.load() << "/" << draws.load() << " draws fell short (" << rate << "%), "
           << fmt_secs(dt);
    if (rate > 1.0) {
        detail << " [the 1% draw budget is unreachable at GF(2^16) on the low-rate corners: e.g."
                  " (21,6,16,6) must keep all C(21,15) = 54264 column 15-subsets independent, and with"
                  " independent uniform coefficients roughly half of the draws lose one of them, measured"
                  " 13/25 across seeds; the aggregate rate stays near 2% for any seed choice]";
        return {false, detail.str()};
    }
    return {true, detail.str()};
}

// Structural and numeric support patterns agree bit for bit, ten seeds per
// sweep point.
Outcome criterion7() {
    auto t0 = Clock::now();
    auto field = FieldContext::make(16);
    auto failures = sweep_parallel([&](const CodeParams& p) -> std::string {
        TannerGraph g = algorithm1(p);
        SupportMatrix structural = structural_support(g);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            RealizeOptions opt;
            opt.seed = seed;
            opt.verify_distance = false;
            if (!(numeric_support(realize(g, field, opt).P) == structural))
                return param_tag(p) + " seed " + std::to_string(seed) + ": support mismatch";
        }
        return "";
    });
    if (!failures.empty()) return {false, failures.front()};
    return {true, "numeric_support == structural_support for 10 seeds at every sweep point, " +
                      fmt_secs(seconds_since(t0))};
}

// All 1365 four-erasure patterns decode; every single failure repairs with
// exactly four block reads. Under 30 seconds.
Outcome criterion8() {
    auto t0 = Clock::now();
    CodeRealization real = example_realization(BuildMethod::Proposed);
    SplitMix64 rng(0xACCE);
    std::vector<Gf> data(9);
    for (auto& v : data) v = static_cast<Gf>(rng.bounded(real.field->order()));
    Stripe original = encode(real, data, 1);

    int patterns = 0;
    std::vector<int> e(4);
    for (e[0] = 0; e[0] < 15; ++e[0])
        for (e[1] = e[0] + 1; e[1] < 15; ++e[1])
            for (e[2] = e[1] + 1; e[2] < 15; ++e[2])
                for (e[3] = e[2] + 1; e[3] < 15; ++e[3]) {
                    Stripe holes = original;
                    for (int b : e) holes.at(0, b) = 0;
                    DecodeResult result;
                    try {
                        result = decode_erasures(real, holes, ErasurePattern{e});
                    } catch (const Undecodable&) {
                        return {false, "pattern of 4 erasures undecodable"};
                    }
                    if (!(result.stripe == original)) return {false, "decode mismatch on a 4-erasure pattern"};
                    ++patterns;
                }
    if (patterns != 1365) return {false, "enumerated " + std::to_string(patterns) + " patterns, expected 1365"};

    for (int failed = 0; failed < 15; ++failed) {
        auto rep = local_repair(real, original, failed);
        if (rep.blocks_read.size() != 4)
            return {false, "repair of block " + std::to_string(failed) + " read " +
                               std::to_string(rep.blocks_read.size()) + " blocks"};
        for (int row = 0; row < original.l; ++row)
            if (rep.column[row] != original.at(row, failed))
                return {false, "repair of block " + std::to_string(failed) + " is wrong"};
    }
    double dt = seconds_since(t0);
    if (dt >= 30.0) return {false, "took " + fmt_secs(dt) + ", budget 30s"};
    return {true, "1365/1365 four-erasure patterns decode, all 15 single repairs read 4 blocks, " +
                      fmt_secs(dt)};
}

// Replay metrics match the exact enumeration: all-singles trace vs
// uc_curve(1), all-pairs batch trace vs uc_curve(2).
Outcome criterion9() {
    for (auto method : {BuildMethod::Proposed, BuildMethod::Baseline}) {
        CodeRealization real = example_realization(method);
        SupportMatrix s = numeric_support(real.P);
        const char* tag = method == BuildMethod::Proposed ? "proposed" : "baseline";

        Cluster c1 = provision(real);
        std::vector<WorkloadEvent> singles;
        for (int i = 0; i < 9; ++i) {
            WorkloadEvent ev;
            ev.seq = singles.size();
            ev.kind = WorkloadEvent::Kind::Update;
            ev.stripe_id = "s0";
            ev.indices = {i};
            ev.payloads = {{static_cast<Gf>(i + 1)}};
            singles.push_back(std::move(ev));
        }
        Metrics m1 = replay(c1, singles);
        if (!(m1.mean_parity_writes() == uc_curve(s, 1).u_bar))
            return {false, std::string(tag) + ": singles mean " + m1.mean_parity_writes().to_string() +
                               " != u_bar_1"};

        Cluster c2 = provision(real);
        std::vector<WorkloadEvent> pairs;
        for (int a = 0; a < 9; ++a)
            for (int b = a + 1; b < 9; ++b) {
                WorkloadEvent ev;
                ev.seq = pairs.size();
                ev.kind = WorkloadEvent::Kind::BatchUpdate;
                ev.stripe_id = "s0";
                ev.indices = {a, b};
                ev.payloads = {{static_cast<Gf>(a + 2)}, {static_cast<Gf>(b + 3)}};
                pairs.push_back(std::move(ev));
            }
        Metrics m2 = replay(c2, pairs);
        if (!(m2.mean_parity_writes() == uc_curve(s, 2).u_bar))
            return {false, std::string(tag) + ": pairs mean " + m2.mean_parity_writes().to_string() +
                               " != u_bar_2"};
    }
    return {true, "replay means equal uc_curve exactly for x=1 and x=2, proposed and baseline"};
}

// Artifact-producing commands are reproducible: identical seeds and reruns
// from manifests give byte-identical files.
Outcome criterion10() {
    if (lrctk_bin().empty()) return {false, "LRCTK_BIN not set; cannot exercise the command line"};
    fs::path dir = scratch_dir();
    auto file = [&](const std::string& name) { return (dir / name).string(); };

    if (run_tool("construct --n 15 --k 9 --r 4 --seed 33 --out " + file("r1")) != 0)
        return {false, "construct failed"};
    if (run_tool("construct --n 15 --k 9 --r 4 --seed 33 --out " + file("r2")) != 0)
        return {false, "construct rerun failed"};
    if (slurp(file("r1.graph.json")) != slurp(file("r2.graph.json")) ||
        slurp(file("r1.matrix.txt")) != slurp(file("r2.matrix.txt")))
        return {false, "same-seed construct artifacts differ"};

    std::string graph = slurp(file("r1.graph.json"));
    std::string matrix = slurp(file("r1.matrix.txt"));
    if (run_tool("rerun --manifest " + file("r1.manifest.json")) != 0) return {false, "rerun failed"};
    if (slurp(file("r1.graph.json")) != graph || slurp(file("r1.matrix.txt")) != matrix)
        return {false, "rerun artifacts differ from the originals"};

    if (run_tool("sim gen-trace --n 15 --k 9 --r 4 --mix updates=0.7,batches=0.2,failures=0.1 --length 30"
                 " --seed 5 --out " +
                 file("t.jsonl")) != 0)
        return {false, "gen-trace failed"};
    std::string trace = slurp(file("t.jsonl"));
    if (run_tool("rerun --manifest " + file("t.jsonl.manifest.json")) != 0)
        return {false, "gen-trace rerun failed"};
    if (slurp(file("t.jsonl")) != trace) return {false, "gen-trace rerun artifact differs"};

    if (run_tool("uc --graph " + file("r1.graph.json") + " --matrix " + file("r1.matrix.txt") +
                 " --x 1,2 --out-csv " + file("uc.csv")) != 0)
        return {false, "uc failed"};
    std::string csv = slurp(file("uc.csv"));
    if (run_tool("uc --graph " + file("r1.graph.json") + " --matrix " + file("r1.matrix.txt") +
                 " --x 1,2 --out-csv " + file("uc.csv")) != 0)
        return {false, "uc rerun failed"};
    if (slurp(file("uc.csv")) != csv) return {false, "uc rerun artifact differs"};

    return {true, "construct, gen-trace and uc artifacts reproduce byte-identically"};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    }

    int failures = 0;
    for (auto& [num, fn] : criteria) {
        if (only != 0 && num != only) continue;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "CRITERION " << num << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << '\n';
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
