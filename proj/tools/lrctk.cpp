// lrctk: construct, verify, measure, and simulate locally repairable codes.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lrc/analyzer.hpp"
#include "lrc/builder.hpp"
#include "lrc/codec.hpp"
#include "lrc/graph.hpp"
#include "lrc/simstore.hpp"
#include "lrc/updatemeter.hpp"
#include "lrc/version.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lrc::IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw lrc::IoError("cannot write " + path);
    out << content;
    if (!out) throw lrc::IoError("write failed for " + path);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw lrc::InvalidParams("empty list: '" + s + "'");
    return out;
}

struct FieldArgs {
    int m = 16;
    std::string poly_hex;

    lrc::FieldPtr make() const {
        std::uint32_t poly = 0;
        if (!poly_hex.empty()) poly = static_cast<std::uint32_t>(std::stoul(poly_hex, nullptr, 16));
        return lrc::FieldContext::make(m, poly);
    }
};

void add_field_options(CLI::App* cmd, FieldArgs& fa) {
    int env_m = 0;
    if (const char* e = std::getenv("LRCTK_FIELD_M")) env_m = std::atoi(e);
    if (const char* e = std::getenv("LRCTK_FIELD_POLY")) fa.poly_hex = e;
    if (env_m > 0) fa.m = env_m;
    cmd->add_option("--m", fa.m, "field extension degree (default 16, env LRCTK_FIELD_M)");
    cmd->add_option("--poly", fa.poly_hex, "reduction polynomial, hex (default per degree, env LRCTK_FIELD_POLY)");
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::vector<std::string> g_argv;  // captured for manifests

void write_manifest(const std::string& path, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, const ordered_json& config) {
    ordered_json j;
    j["tool"] = "lrctk";
    j["version"] = lrc::kToolVersion;
    j["command"] = g_argv;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["timestamp"] = timestamp_utc();
    write_file(path, j.dump(2) + "\n");
}

lrc::CodeRealization load_realization(const std::string& graph_path, const std::string& matrix_path) {
    lrc::TannerGraph g = lrc::parse_graph(read_file(graph_path));
    lrc::MatrixFile mf = lrc::parse_matrix_text(read_file(matrix_path));
    return lrc::attach_matrix(g, mf);
}

int run_cli(const std::vector<std::string>& args);

// ---------- params ----------

int cmd_params(int n, int k, int r, bool as_json) {
    lrc::CodeParams p = lrc::nu_params(n, k, r);
    auto opt = lrc::optimality_check(p);
    if (as_json) {
        ordered_json j;
        j["n"] = p.n;
        j["k"] = p.k;
        j["d"] = p.d;
        j["r"] = p.r;
        j["groups"] = p.group_count();
        j["local_checks"] = p.local_check_count();
        j["global_checks"] = p.global_check_count();
        j["optimal"] = opt.optimal;
        j["detail"] = opt.detail;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "(n,k,d,r) = (" << p.n << ',' << p.k << ',' << p.d << ',' << p.r << ")\n"
                  << p.group_count() << " groups of " << p.r + 1 << ", " << p.local_check_count()
                  << " local checks, " << p.global_check_count() << " global checks\n"
                  << "optimal: " << (opt.optimal ? "yes" : "no") << " (" << opt.detail << ")\n";
    }
    return kExitOk;
}

// ---------- construct ----------

int cmd_construct(int n, int k, int r, const std::string& method, const FieldArgs& fa, std::uint64_t seed,
                  int retries, const std::string& out_prefix) {
    lrc::CodeParams p = lrc::nu_params(n, k, r);
    lrc::TannerGraph g =
        method == "baseline" ? lrc::baseline_graph(p) : lrc::algorithm1(p);
    lrc::RealizeOptions opt;
    opt.seed = seed;
    opt.max_retries = retries;
    lrc::CodeRealization real = lrc::realize(g, fa.make(), opt);

    std::string graph_path = out_prefix + ".graph.json";
    std::string matrix_path = out_prefix + ".matrix.txt";
    write_file(graph_path, lrc::serialize(g));
    write_file(matrix_path, lrc::write_matrix_text(real));
    ordered_json config = {{"n", n},       {"k", k},           {"r", r},
                           {"d", p.d},     {"method", method}, {"field_degree", real.field->degree()},
                           {"poly", real.field->reduction_poly()}, {"seed", seed},
                           {"max_retries", retries}};
    write_manifest(out_prefix + ".manifest.json", {}, {graph_path, matrix_path}, config);
    std::cout << "constructed " << method << " (n,k,d,r)=(" << p.n << ',' << p.k << ',' << p.d << ',' << p.r
              << ") over GF(2^" << real.field->degree() << "), seed " << seed << ", draws " << real.draws
              << "\n  " << graph_path << "\n  " << matrix_path << '\n';
    return kExitOk;
}

// ---------- verify ----------

int cmd_verify(const std::string& graph_path, const std::string& matrix_path, std::uint64_t budget,
               const std::string& out_path) {
    lrc::TannerGraph g = lrc::parse_graph(read_file(graph_path));
    lrc::MatrixFile mf = lrc::parse_matrix_text(read_file(matrix_path));

    ordered_json checks = ordered_json::array();
    bool all_ok = true;
    auto note = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        all_ok = all_ok && ok;
        std::cout << (ok ? "  ok   " : "  FAIL ") << name << ": " << detail << '\n';
    };

    auto violations = lrc::validate(g);
    note("graph_structure", violations.empty(),
         violations.empty() ? "all invariants hold" : violations.front());

    lrc::CodeRealization real;
    bool attached = false;
    try {
        real = lrc::attach_matrix(g, mf);
        attached = true;
        note("matrix_attach", true, "params and information columns match");
    } catch (const lrc::ParseError& e) {
        note("matrix_attach", false, e.what());
    }

    if (attached) {
        // support pattern must equal the biadjacency exactly
        bool support_ok = true;
        std::string support_detail = "support(H) equals the graph biadjacency";
        for (int ci = 0; ci < g.params.n - g.params.k && support_ok; ++ci) {
            std::vector<bool> adj(g.params.n, false);
            for (int v : g.checks[ci].neighbors) adj[v] = true;
            for (int v = 0; v < g.params.n; ++v) {
                bool nz = real.H.at(ci, v) != 0;
                if (nz != adj[v]) {
                    support_ok = false;
                    support_detail = "support mismatch at check " + std::to_string(ci) + ", variable " +
                                     std::to_string(v) + (nz ? " (coefficient off the graph)" : " (missing coefficient)");
                    break;
                }
            }
        }
        note("support_pattern", support_ok, support_detail);

        bool ght = (real.generator() * real.h_code_order().transposed()).is_zero();
        note("generator_orthogonality", ght, ght ? "G * H^T = 0" : "G * H^T != 0");

        int rank = real.H.rank();
        note("full_row_rank", rank == g.params.n - g.params.k,
             "rank(H) = " + std::to_string(rank) + " of " + std::to_string(g.params.n - g.params.k));

        auto cover = lrc::cover_check(g, g.params.d, budget);
        std::string cover_detail = "gamma in [" + std::to_string(cover.gamma_lo) + "," +
                                   std::to_string(cover.gamma_hi) + "], " +
                                   std::to_string(cover.subsets_checked) + " subsets";
        if (!cover.ok()) {
            const auto& f = cover.failures.front();
            cover_detail = "gamma=" + std::to_string(f.gamma) + " subset {";
            for (std::size_t i = 0; i < f.checks.size(); ++i)
                cover_detail += (i ? "," : "") + std::to_string(f.checks[i]);
            cover_detail += "} covers only " + std::to_string(f.covered);
        }
        note("cover_condition", cover.ok(), cover_detail);

        auto dist = lrc::min_distance(real.H, budget);
        note("min_distance", dist.d_exact == g.params.d,
             "d_exact = " + std::to_string(dist.d_exact) + " (" + dist.strategy + ", " +
                 std::to_string(dist.subsets_tested) + " subsets)");

        auto loc = lrc::structural_locality(g);
        note("locality", loc.r == g.params.r, "r = " + std::to_string(loc.r));

        auto optrep = lrc::optimality_check(g.params);
        note("optimality", optrep.optimal, optrep.detail);
    }

    ordered_json j;
    j["ok"] = all_ok;
    j["checks"] = std::move(checks);
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    std::cout << (all_ok ? "verification passed" : "verification FAILED") << '\n';
    return all_ok ? kExitOk : kExitVerification;
}

// ---------- uc ----------

int cmd_uc(const std::string& graph_path, const std::string& matrix_path, const std::string& x_list,
           std::uint64_t budget, std::uint64_t seed, const std::string& out_json, const std::string& out_csv,
           const std::string& reference) {
    lrc::TannerGraph g = lrc::parse_graph(read_file(graph_path));
    lrc::SupportMatrix support;
    std::string source;
    if (!matrix_path.empty()) {
        auto real = lrc::attach_matrix(g, lrc::parse_matrix_text(read_file(matrix_path)));
        support = lrc::numeric_support(real.P);
        source = "numeric";
        if (support != lrc::structural_support(g))
            std::cerr << "note: numeric support differs from structural support (coefficient cancellation)\n";
    } else {
        support = lrc::structural_support(g);
        source = "structural";
    }

    ordered_json reports = ordered_json::array();
    std::string csv = lrc::csv_header() + "\n";
    for (int x : parse_int_list(x_list)) {
        auto rep = lrc::uc_curve(support, x, budget, seed);
        ordered_json jr = ordered_json::parse(lrc::to_json(rep));
        if (!reference.empty()) {
            auto slash = reference.find('/');
            if (slash == std::string::npos) throw lrc::InvalidParams("--reference expects NUM/DEN");
            lrc::Rat ref(std::stoll(reference.substr(0, slash)), std::stoll(reference.substr(slash + 1)));
            jr["reference"] = {{"num", ref.num()}, {"den", ref.den()}};
            jr["matches_reference"] = ref == rep.u_bar;
            if (ref != rep.u_bar)
                std::cout << "note: x=" << x << " u_bar " << rep.u_bar.to_string() << " deviates from reference "
                          << ref.to_string() << '\n';
        }
        reports.push_back(std::move(jr));
        csv += lrc::csv_row(source, g.params, rep) + "\n";
        std::cout << "x=" << x << ": u_bar = " << rep.u_bar.to_string() << " (" << rep.u_bar.to_decimal(2)
                  << "), range [" << rep.u_min << "," << rep.u_max << "], "
                  << (rep.mode == lrc::UcReport::Mode::Exact ? "exact" : "sampled") << '\n';
    }
    ordered_json j;
    j["params"] = {{"n", g.params.n}, {"k", g.params.k}, {"d", g.params.d}, {"r", g.params.r}};
    j["support_source"] = source;
    j["reports"] = std::move(reports);
    if (!out_json.empty()) {
        write_file(out_json, j.dump(2) + "\n");
        write_manifest(out_json + ".manifest.json", {graph_path, matrix_path}, {out_json}, j["params"]);
    }
    if (!out_csv.empty()) write_file(out_csv, csv);
    return kExitOk;
}

// ---------- compare ----------

int compare_one(const lrc::CodeParams& p, const std::vector<int>& xs, ordered_json& out_rows, std::string& csv) {
    lrc::TannerGraph ga = lrc::algorithm1(p);
    lrc::TannerGraph gb = lrc::baseline_graph(p);
    auto sa = lrc::structural_support(ga);
    auto sb = lrc::structural_support(gb);
    for (int x : xs) {
        auto ra = lrc::uc_curve(sa, x);
        auto rb = lrc::uc_curve(sb, x);
        lrc::Rat imp = lrc::compare_improvement(ra, rb);
        csv += lrc::csv_row("proposed", p, ra) + "\n" + lrc::csv_row("baseline", p, rb) + "\n";
        ordered_json row;
        row["n"] = p.n;
        row["k"] = p.k;
        row["d"] = p.d;
        row["r"] = p.r;
        row["x"] = x;
        row["proposed_u_bar"] = {{"num", ra.u_bar.num()}, {"den", ra.u_bar.den()}};
        row["baseline_u_bar"] = {{"num", rb.u_bar.num()}, {"den", rb.u_bar.den()}};
        row["improvement_percent"] = {{"num", imp.num()}, {"den", imp.den()}, {"decimal", imp.to_decimal(1)}};
        out_rows.push_back(std::move(row));
        std::cout << "(n,k,d,r)=(" << p.n << ',' << p.k << ',' << p.d << ',' << p.r << ") x=" << x
                  << ": proposed " << ra.u_bar.to_decimal(2) << " vs baseline " << rb.u_bar.to_decimal(2)
                  << " -> improvement " << imp.to_decimal(1) << "%\n";
    }
    return kExitOk;
}

int cmd_compare(int n, int k, int r, const std::string& x_list, bool sweep, const std::string& lengths,
                const std::string& rates, const std::string& localities, const std::string& out_csv,
                const std::string& out_json) {
    auto xs = parse_int_list(x_list);
    ordered_json rows = ordered_json::array();
    std::string csv = lrc::csv_header() + "\n";
    if (sweep) {
        std::vector<int> ns = parse_int_list(lengths.empty() ? "15,20" : lengths);
        std::vector<int> rs = parse_int_list(localities.empty() ? "4" : localities);
        std::vector<double> rates_v;
        {
            std::stringstream ss(rates.empty() ? "0.6,0.5" : rates);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) rates_v.push_back(std::stod(item));
        }
        for (int nn : ns)
            for (double rate : rates_v)
                for (int rr : rs) {
                    int kk = static_cast<int>(rate * nn + 0.5);
                    try {
                        compare_one(lrc::nu_params(nn, kk, rr), xs, rows, csv);
                    } catch (const lrc::Error& e) {
                        std::cerr << "skip n=" << nn << " rate=" << rate << " r=" << rr << ": " << e.what()
                                  << '\n';
                    }
                }
    } else {
        compare_one(lrc::nu_params(n, k, r), xs, rows, csv);
    }
    if (!out_csv.empty()) {
        write_file(out_csv, csv);
        write_manifest(out_csv + ".manifest.json", {}, {out_csv},
                       {{"x", x_list}, {"sweep", sweep}});
    }
    if (!out_json.empty()) write_file(out_json, rows.dump(2) + "\n");
    return kExitOk;
}

// ---------- codec commands ----------

int cmd_encode(const std::string& graph_path, const std::string& matrix_path, const std::string& data_path,
               const std::string& out_path) {
    auto real = load_realization(graph_path, matrix_path);
    const auto& p = real.graph.params;
    std::string raw = read_file(data_path);
    int per = real.field->degree() <= 8 ? 1 : 2;
    if (raw.size() % (static_cast<std::size_t>(per) * p.k) != 0)
        throw lrc::ShapeMismatch("data size " + std::to_string(raw.size()) + " bytes is not a multiple of k=" +
                                 std::to_string(p.k) + " blocks of " + std::to_string(per) + " byte symbols");
    int l = static_cast<int>(raw.size() / (static_cast<std::size_t>(per) * p.k));
    std::vector<lrc::Gf> data(static_cast<std::size_t>(l) * p.k);
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::uint32_t v = static_cast<unsigned char>(raw[i * per]);
        if (per == 2) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(raw[i * per + 1])) << 8;
        if (v >= real.field->order()) throw lrc::ShapeMismatch("data symbol out of field range");
        data[i] = static_cast<lrc::Gf>(v);
    }
    lrc::Stripe s = lrc::encode(real, data, l);
    write_file(out_path, lrc::write_stripe_bytes(s, *real.field));
    write_manifest(out_path + ".manifest.json", {graph_path, matrix_path, data_path}, {out_path},
                   {{"l", l}, {"n", p.n}, {"k", p.k}});
    std::cout << "encoded " << l << " row(s) into " << p.n << " blocks -> " << out_path << '\n';
    return kExitOk;
}

int cmd_decode(const std::string& graph_path, const std::string& matrix_path, const std::string& stripe_path,
               const std::string& erased, const std::string& out_path, const std::string& out_data) {
    auto real = load_realization(graph_path, matrix_path);
    lrc::Stripe holes = lrc::parse_stripe_bytes(read_file(stripe_path), *real.field);
    lrc::ErasurePattern pattern;
    if (!erased.empty()) pattern.erased = parse_int_list(erased);
    auto result = lrc::decode_erasures(real, holes, pattern);
    if (!out_path.empty()) write_file(out_path, lrc::write_stripe_bytes(result.stripe, *real.field));
    if (!out_data.empty()) {
        std::string raw;
        int per = real.field->degree() <= 8 ? 1 : 2;
        for (int row = 0; row < result.stripe.l; ++row)
            for (int b = 0; b < result.stripe.k; ++b) {
                lrc::Gf v = result.stripe.at(row, b);
                raw.push_back(static_cast<char>(v & 0xFF));
                if (per == 2) raw.push_back(static_cast<char>(v >> 8));
            }
        write_file(out_data, raw);
    }
    std::cout << "decoded " << pattern.erased.size() << " erased block(s), read " << result.blocks_read.size()
              << " block(s)\n";
    return kExitOk;
}

int cmd_repair(const std::string& graph_path, const std::string& matrix_path, const std::string& stripe_path,
               int node, const std::string& out_path) {
    auto real = load_realization(graph_path, matrix_path);
    lrc::Stripe s = lrc::parse_stripe_bytes(read_file(stripe_path), *real.field);
    auto rep = lrc::local_repair(real, s, node);
    for (int row = 0; row < s.l; ++row) s.at(row, node) = rep.column[row];
    if (!out_path.empty()) write_file(out_path, lrc::write_stripe_bytes(s, *real.field));
    std::cout << "repaired block " << node << " from " << rep.blocks_read.size() << " block reads (";
    for (std::size_t i = 0; i < rep.blocks_read.size(); ++i)
        std::cout << (i ? "," : "") << rep.blocks_read[i];
    std::cout << ")\n";
    return kExitOk;
}

// ---------- sim ----------

int cmd_sim_gen(int n, int k, int r, const std::string& mix_str, int length, std::uint64_t seed, int stripes,
                int rows, int m, const std::string& out_path) {
    lrc::CodeParams p = lrc::nu_params(n, k, r);
    lrc::WorkloadMix mix;
    if (!mix_str.empty()) {
        mix = {0, 0, 0};
        std::stringstream ss(mix_str);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw lrc::InvalidParams("mix item '" + item + "' is not key=value");
            std::string key = item.substr(0, eq);
            double val = std::stod(item.substr(eq + 1));
            if (key == "updates") mix.updates = val;
            else if (key == "batches") mix.batches = val;
            else if (key == "failures") mix.failures = val;
            else throw lrc::InvalidParams("unknown mix key '" + key + "'");
        }
    }
    auto trace = lrc::random_workload(p, mix, length, seed, stripes, rows, m);
    write_file(out_path, lrc::write_trace_jsonl(trace));
    write_manifest(out_path + ".manifest.json", {}, {out_path},
                   {{"n", n}, {"k", k}, {"r", r}, {"length", length}, {"seed", seed}, {"stripes", stripes},
                    {"rows", rows}});
    std::cout << "wrote " << trace.size() << " events to " << out_path << '\n';
    return kExitOk;
}

int cmd_sim_run(const std::string& graph_path, const std::string& matrix_path, const std::string& trace_path,
                int rows, const std::string& out_metrics, const std::string& out_csv) {
    auto real = load_realization(graph_path, matrix_path);
    auto trace = lrc::parse_trace_jsonl(read_file(trace_path));
    auto cluster = lrc::provision(real, rows);
    auto metrics = lrc::replay(cluster, trace);
    if (!out_metrics.empty()) {
        write_file(out_metrics, lrc::to_json(metrics) + "\n");
        write_manifest(out_metrics + ".manifest.json", {graph_path, matrix_path, trace_path}, {out_metrics}, {});
    }
    if (!out_csv.empty()) write_file(out_csv, lrc::metrics_csv(metrics));
    std::cout << "replayed " << trace.size() << " events: " << metrics.parity_writes << " parity writes over "
              << metrics.updates << " updates (mean " << metrics.mean_parity_writes().to_decimal(2) << "), "
              << metrics.repair_reads << " repair reads\n";
    return kExitOk;
}

// ---------- rerun ----------

int cmd_rerun(const std::string& manifest_path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw lrc::ParseError(std::string("manifest: ") + e.what());
    }
    if (!j.contains("command")) throw lrc::ParseError("manifest: missing 'command'");
    std::vector<std::string> args = j.at("command").get<std::vector<std::string>>();
    if (!args.empty() && args.front() == "rerun") throw lrc::ParseError("manifest: refusing nested rerun");
    std::cout << "rerunning:";
    for (const auto& a : args) std::cout << ' ' << a;
    std::cout << '\n';
    return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"toolkit for optimal locally repairable codes with small update complexity"};
    app.require_subcommand(1);
    g_argv = args;

    int n = 0, k = 0, r = 0;
    bool as_json = false;
    auto* params = app.add_subcommand("params", "derive (n,k,d,r) and check optimality");
    params->add_option("--n", n, "code length")->required();
    params->add_option("--k", k, "dimension")->required();
    params->add_option("--r", r, "locality")->required();
    params->add_flag("--json", as_json, "JSON output");

    int cn = 0, ck = 0, cr = 0, retries = 32;
    std::string method = "proposed", out_prefix;
    std::uint64_t seed = 0;
    FieldArgs cfa;
    auto* construct = app.add_subcommand("construct", "build a Tanner graph and realize it over GF(2^m)");
    construct->add_option("--n", cn)->required();
    construct->add_option("--k", ck)->required();
    construct->add_option("--r", cr)->required();
    construct->add_option("--method", method, "proposed | baseline")
        ->check(CLI::IsMember({"proposed", "baseline"}));
    add_field_options(construct, cfa);
    construct->add_option("--seed", seed, "realization seed");
    construct->add_option("--retries", retries, "maximum coefficient redraws");
    construct->add_option("--out", out_prefix, "output prefix (.graph.json, .matrix.txt, .manifest.json)")
        ->required();

    std::string v_graph, v_matrix, v_out;
    std::uint64_t v_budget = 10'000'000;
    auto* verify = app.add_subcommand("verify", "validate structure, cover condition, distance, locality");
    verify->add_option("--graph", v_graph)->required();
    verify->add_option("--matrix", v_matrix)->required();
    verify->add_option("--budget", v_budget, "subset enumeration budget");
    verify->add_option("--out", v_out, "write the report JSON here");

    std::string u_graph, u_matrix, u_x = "1", u_json, u_csv, u_ref;
    std::uint64_t u_budget = 1'000'000, u_seed = 0;
    auto* uc = app.add_subcommand("uc", "update-complexity statistics");
    uc->add_option("--graph", u_graph)->required();
    uc->add_option("--matrix", u_matrix, "use the realized P instead of the structural pattern");
    uc->add_option("--x", u_x, "comma list of update multiplicities");
    uc->add_option("--budget", u_budget, "exact enumeration budget");
    uc->add_option("--seed", u_seed, "sampling seed");
    uc->add_option("--out-json", u_json);
    uc->add_option("--out-csv", u_csv);
    uc->add_option("--reference", u_ref, "flag deviation from this NUM/DEN reference value");

    int pn = 0, pk = 0, pr = 0;
    std::string p_x = "1,2", p_lengths, p_rates, p_localities, p_csv, p_json;
    bool p_sweep = false;
    auto* compare = app.add_subcommand("compare", "proposed vs baseline update complexity");
    compare->add_option("--n", pn);
    compare->add_option("--k", pk);
    compare->add_option("--r", pr);
    compare->add_option("--x", p_x, "comma list of update multiplicities");
    compare->add_flag("--sweep", p_sweep, "grid mode over lengths x rates x localities");
    compare->add_option("--lengths", p_lengths, "sweep lengths (default 15,20)");
    compare->add_option("--rates", p_rates, "sweep code rates (default 0.6,0.5)");
    compare->add_option("--localities", p_localities, "sweep localities (default 4)");
    compare->add_option("--out-csv", p_csv);
    compare->add_option("--out-json", p_json);

    std::string e_graph, e_matrix, e_data, e_out;
    auto* encode = app.add_subcommand("encode", "encode a data file into a stripe");
    encode->add_option("--graph", e_graph)->required();
    encode->add_option("--matrix", e_matrix)->required();
    encode->add_option("--data", e_data)->required();
    encode->add_option("--out", e_out)->required();

    std::string d_graph, d_matrix, d_stripe, d_erased, d_out, d_out_data;
    auto* decode = app.add_subcommand("decode", "recover erased blocks of a stripe");
    decode->add_option("--graph", d_graph)->required();
    decode->add_option("--matrix", d_matrix)->required();
    decode->add_option("--stripe", d_stripe)->required();
    decode->add_option("--erased", d_erased, "comma list of erased block indices");
    decode->add_option("--out", d_out, "write the repaired stripe here");
    decode->add_option("--out-data", d_out_data, "write the recovered data bytes here");

    std::string r_graph, r_matrix, r_stripe, r_out;
    int r_node = -1;
    auto* repair = app.add_subcommand("repair", "single-block local repair");
    repair->add_option("--graph", r_graph)->required();
    repair->add_option("--matrix", r_matrix)->required();
    repair->add_option("--stripe", r_stripe)->required();
    repair->add_option("--node", r_node, "failed block index")->required();
    repair->add_option("--out", r_out);

    auto* sim = app.add_subcommand("sim", "workload simulation");
    sim->require_subcommand(1);
    int g_n = 0, g_k = 0, g_r = 0, g_len = 0, g_stripes = 1, g_rows = 1, g_m = 16;
    std::string g_mix, g_out;
    std::uint64_t g_seed = 0;
    auto* gen = sim->add_subcommand("gen-trace", "generate a seeded workload trace");
    gen->add_option("--n", g_n)->required();
    gen->add_option("--k", g_k)->required();
    gen->add_option("--r", g_r)->required();
    gen->add_option("--mix", g_mix, "updates=..,batches=..,failures=.. (default all updates)");
    gen->add_option("--length", g_len)->required();
    gen->add_option("--seed", g_seed);
    gen->add_option("--stripes", g_stripes, "number of stripe ids");
    gen->add_option("--l", g_rows, "stripe rows");
    gen->add_option("--m", g_m, "field degree used for payload symbols");
    gen->add_option("--out", g_out)->required();

    std::string s_graph, s_matrix, s_trace, s_metrics, s_csv;
    int s_rows = 1;
    auto* run = sim->add_subcommand("run", "replay a trace against a realized code");
    run->add_option("--graph", s_graph)->required();
    run->add_option("--matrix", s_matrix)->required();
    run->add_option("--trace", s_trace)->required();
    run->add_option("--l", s_rows, "stripe rows");
    run->add_option("--out-metrics", s_metrics);
    run->add_option("--out-csv", s_csv);

    std::string m_manifest;
    auto* rerun = app.add_subcommand("rerun", "re-execute a command from its manifest");
    rerun->add_option("--manifest", m_manifest)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*params) return cmd_params(n, k, r, as_json);
        if (*construct) return cmd_construct(cn, ck, cr, method, cfa, seed, retries, out_prefix);
        if (*verify) return cmd_verify(v_graph, v_matrix, v_budget, v_out);
        if (*uc) return cmd_uc(u_graph, u_matrix, u_x, u_budget, u_seed, u_json, u_csv, u_ref);
        if (*compare) return cmd_compare(pn, pk, pr, p_x, p_sweep, p_lengths, p_rates, p_localities, p_csv, p_json);
        if (*encode) return cmd_encode(e_graph, e_matrix, e_data, e_out);
        if (*decode) return cmd_decode(d_graph, d_matrix, d_stripe, d_erased, d_out, d_out_data);
        if (*repair) return cmd_repair(r_graph, r_matrix, r_stripe, r_node, r_out);
        if (*gen) return cmd_sim_gen(g_n, g_k, g_r, g_mix, g_len, g_seed, g_stripes, g_rows, g_m, g_out);
        if (*run) return cmd_sim_run(s_graph, s_matrix, s_trace, s_rows, s_metrics, s_csv);
        if (*rerun) return cmd_rerun(m_manifest);
    } catch (const lrc::ConstructionFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConstruction;
    } catch (const lrc::RealizationFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConstruction;
    } catch (const lrc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const lrc::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const lrc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerification;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args);
}
