#include "lrc/builder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lrc/analyzer.hpp"
#include "lrc/rng.hpp"

namespace lrc {

CodeParams nu_params(int n, int k, int r) {
    if (r < 1 || k < r || k >= n)
        throw InvalidParams("need 1 <= r <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k) +
                            " r=" + std::to_string(r));
    if (n % (r + 1) != 0)
        throw InvalidParams("(r+1) = " + std::to_string(r + 1) + " does not divide n = " + std::to_string(n));
    int ceil_kr = (k + r - 1) / r;
    int d = n - k - ceil_kr + 2;
    if (d < 2)
        throw InvalidParams("parameters admit no code with d >= 2: n-k-ceil(k/r)+2 = " + std::to_string(d));
    CodeParams p{n, k, d, r};
    if (p.global_check_count() != (d - 2) - p.mu())
        throw NotNuOptimal("global check count identity failed: n-k-n/(r+1) = " +
                           std::to_string(p.global_check_count()) + " but d-2-floor((d-2)/(r+1)) = " +
                           std::to_string((d - 2) - p.mu()));
    return p;
}

namespace {

// Canonical placement: the g global parity nodes fill the highest-indexed
// groups back to front, at most r per group (the local parity slot stays
// reserved); the partially filled boundary group is the infomixed group.
std::vector<int> global_parities_per_group(const CodeParams& p) {
    std::vector<int> gp(p.group_count(), 0);
    int rem = p.global_check_count();
    for (int gi = p.group_count() - 1; gi >= 0 && rem > 0; --gi) {
        gp[gi] = std::min(p.r, rem);
        rem -= gp[gi];
    }
    return gp;
}

}  // namespace

TannerGraph build_skeleton(const CodeParams& params) {
    auto violations = params.check();
    if (!violations.empty()) throw InvalidParams("invalid params: " + violations.front());
    TannerGraph g;
    g.params = params;
    const int ngroups = params.group_count();
    auto gp_counts = global_parities_per_group(params);

    for (int gi = 0; gi < ngroups; ++gi) {
        std::vector<int> cell;
        int base = gi * (params.r + 1);
        int n_info = params.r - gp_counts[gi];
        for (int s = 0; s <= params.r; ++s) {
            VariableNode v;
            v.index = base + s;
            v.group_id = gi;
            v.kind = s < n_info                 ? VarKind::Information
                     : s < n_info + gp_counts[gi] ? VarKind::GlobalParity
                                                  : VarKind::LocalParity;
            g.variables.push_back(v);
            cell.push_back(v.index);
        }
        g.groups.push_back(std::move(cell));
    }
    for (int gi = 0; gi < ngroups; ++gi) {
        CheckNode c;
        c.index = gi;
        c.kind = CheckKind::Local;
        c.neighbors = g.groups[gi];
        g.checks.push_back(std::move(c));
    }
    auto gps = g.global_parity_nodes();
    for (std::size_t j = 0; j < gps.size(); ++j) {
        CheckNode c;
        c.index = ngroups + static_cast<int>(j);
        c.kind = CheckKind::Global;
        c.neighbors = {gps[j]};
        g.checks.push_back(std::move(c));
    }
    return g;
}

namespace {

struct EdgeState {
    TannerGraph* g;
    std::vector<std::set<int>> gnb;    // neighbor sets of global checks
    std::vector<int> gdeg;             // per-variable global-check degree
    std::vector<int> gp_group;         // mixed group hosting each global check's parity

    explicit EdgeState(TannerGraph& graph) : g(&graph), gdeg(graph.params.n, 0) {
        int ngroups = graph.params.group_count();
        auto gps = graph.global_parity_nodes();
        for (int j = 0; j < graph.params.global_check_count(); ++j) {
            const auto& nb = graph.checks[ngroups + j].neighbors;
            gnb.emplace_back(nb.begin(), nb.end());
            for (int v : nb)
                if (graph.variables[v].kind == VarKind::Information) ++gdeg[v];
            gp_group.push_back(graph.variables[gps[j]].group_id);
        }
    }

    void connect(int check_j, int v) {
        if (gnb[check_j].insert(v).second) ++gdeg[v];
    }

    // mixed groups whose parities already depend on v
    std::set<int> groups_reached(int v) const {
        std::set<int> out;
        for (std::size_t j = 0; j < gnb.size(); ++j)
            if (gnb[j].count(v)) out.insert(gp_group[j]);
        return out;
    }

    int info_degree(int check_j) const {
        int c = 0;
        for (int v : gnb[check_j])
            if (g->variables[v].kind == VarKind::Information) ++c;
        return c;
    }

    void flush() {
        int ngroups = g->params.group_count();
        for (std::size_t j = 0; j < gnb.size(); ++j)
            g->checks[ngroups + j].neighbors = std::vector<int>(gnb[j].begin(), gnb[j].end());
    }
};

// group-id combinations of the given size, reverse-lexicographic. Sets
// containing the constrained high-index mixed groups come first; fixing
// them first is what keeps information-node degrees at the balanced
// minimum (lexicographic order overshoots on all-plain sets).
std::vector<std::vector<int>> group_sets_revlex(int ngroups, int size) {
    std::vector<std::vector<int>> sets;
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
        sets.push_back(idx);
        int i = size - 1;
        while (i >= 0 && idx[i] == ngroups - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::reverse(sets.begin(), sets.end());
    return sets;
}

}  // namespace

TannerGraph algorithm1(const CodeParams& params) {
    TannerGraph g = build_skeleton(params);
    const int ngroups = params.group_count();
    const int nglobal = params.global_check_count();
    if (nglobal == 0) return g;

    const int mu = params.mu();
    const int threshold = (params.r + 1) * (mu + 1) - (params.d - 2);
    const int lambda = params.mixed_group_count();
    auto klass = classify_groups(g);
    EdgeState st(g);

    // every information node of the infomixed group joins all global checks
    for (int gi = 0; gi < ngroups; ++gi) {
        if (klass[gi] != GroupClass::Infomixed) continue;
        for (int v : g.groups[gi])
            if (g.variables[v].kind == VarKind::Information)
                for (int j = 0; j < nglobal; ++j) st.connect(j, v);
    }

    // top up each global check until every set of mu+1 groups has at least
    // `threshold` of its variables connected
    auto sets = group_sets_revlex(ngroups, mu + 1);
    for (int j = 0; j < nglobal; ++j) {
        for (bool again = true; again;) {
            again = false;
            for (const auto& set : sets) {
                int covered = 0;
                for (int gi : set)
                    for (int v : g.groups[gi]) covered += st.gnb[j].count(v) ? 1 : 0;
                if (covered >= threshold) continue;
                std::vector<int> cand;
                for (int gi : set)
                    for (int v : g.groups[gi])
                        if (g.variables[v].kind == VarKind::Information && !st.gnb[j].count(v))
                            cand.push_back(v);
                int need = threshold - covered;
                if (static_cast<int>(cand.size()) < need)
                    throw ConstructionFailure(
                        "global check " + std::to_string(j) + " cannot reach " + std::to_string(threshold) +
                        " connections in a group set: only " + std::to_string(cand.size()) +
                        " information nodes available");
                std::sort(cand.begin(), cand.end(),
                          [&](int a, int b) { return std::pair(st.gdeg[a], a) < std::pair(st.gdeg[b], b); });
                for (int i = 0; i < need; ++i) st.connect(j, cand[i]);
                again = true;
                break;
            }
        }
    }

    // raise under-connected information nodes of non-mixed groups to the
    // degree floor g - (lambda - mu); prefer checks whose parity group is
    // not reached from the node yet, then checks with fewer information
    // neighbors, then lowest index
    int floor_deg = nglobal - (lambda - mu);
    for (int v = 0; v < params.n; ++v) {
        if (g.variables[v].kind != VarKind::Information) continue;
        if (klass[g.variables[v].group_id] != GroupClass::Plain) continue;
        while (st.gdeg[v] < floor_deg) {
            int best = -1;
            auto reached = st.groups_reached(v);
            std::tuple<int, int, int> best_key;
            for (int j = 0; j < nglobal; ++j) {
                if (st.gnb[j].count(v)) continue;
                std::tuple<int, int, int> key(reached.count(st.gp_group[j]) ? 1 : 0, st.info_degree(j), j);
                if (best < 0 || key < best_key) {
                    best = j;
                    best_key = key;
                }
            }
            if (best < 0)
                throw ConstructionFailure("information node " + std::to_string(v) +
                                          " cannot reach global degree " + std::to_string(floor_deg));
            st.connect(best, v);
        }
    }

    st.flush();
    return g;
}

TannerGraph baseline_graph(const CodeParams& params) {
    TannerGraph g = build_skeleton(params);
    auto info = g.information_nodes();
    for (auto& c : g.checks) {
        if (c.kind != CheckKind::Global) continue;
        std::vector<int> nb = c.neighbors;
        nb.insert(nb.end(), info.begin(), info.end());
        std::sort(nb.begin(), nb.end());
        c.neighbors = std::move(nb);
    }
    return g;
}

FieldMatrix CodeRealization::generator() const {
    const int k = graph.params.k;
    const int nk = graph.params.n - k;
    FieldMatrix g(field, k, k + nk);
    for (int i = 0; i < k; ++i) {
        g.at(i, i) = 1;
        for (int j = 0; j < nk; ++j) g.at(i, k + j) = P.at(i, j);
    }
    return g;
}

FieldMatrix CodeRealization::h_code_order() const {
    std::vector<int> order = info_cols;
    order.insert(order.end(), parity_cols.begin(), parity_cols.end());
    return H.columns(order);
}

CodeRealization realize(const TannerGraph& graph, FieldPtr field, const RealizeOptions& opt) {
    auto violations = validate(graph);
    if (!violations.empty()) throw InvalidParams("graph invalid: " + violations.front());

    const CodeParams& p = graph.params;
    CodeRealization real;
    real.graph = graph;
    real.field = field;
    real.seed = opt.seed;
    real.code_of_node.assign(p.n, -1);
    for (const auto& v : graph.variables)
        (v.kind == VarKind::Information ? real.info_cols : real.parity_cols).push_back(v.index);
    for (int c = 0; c < p.k; ++c) real.code_of_node[real.info_cols[c]] = c;
    for (int j = 0; j < p.n - p.k; ++j) real.code_of_node[real.parity_cols[j]] = p.k + j;

    const std::uint32_t q = field->order();
    int singular_fails = 0, distance_fails = 0;
    for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
        SplitMix64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(attempt)));
        FieldMatrix H(field, p.n - p.k, p.n);
        for (const auto& c : graph.checks)
            for (int v : c.neighbors) H.at(c.index, v) = static_cast<Gf>(1 + rng.bounded(q - 1));
        FieldMatrix hp = H.columns(real.parity_cols);
        FieldMatrix hi = H.columns(real.info_cols);
        FieldMatrix x;
        try {
            x = hp.solve(hi);  // (n-k) x k
        } catch (const Singular&) {
            ++singular_fails;
            continue;
        }
        real.H = std::move(H);
        real.P = x.transposed();
        real.draws = attempt + 1;
        if (opt.verify_distance) {
            auto dist = min_distance(real.H, opt.distance_budget);
            if (dist.d_exact != p.d) {
                ++distance_fails;
                continue;
            }
        }
        return real;
    }
    std::string dominant = distance_fails >= singular_fails ? "distance shortfall" : "singular parity submatrix";
    throw RealizationFailure("no valid realization after " + std::to_string(opt.max_retries) +
                             " draws; most frequent failure: " + dominant + " (" +
                             std::to_string(distance_fails) + " distance shortfalls, " +
                             std::to_string(singular_fails) + " singular draws)");
}

CodeRealization build(const BuildConfig& config) {
    CodeParams p = config.params;
    TannerGraph g = config.method == BuildMethod::Proposed ? algorithm1(p) : baseline_graph(p);
    auto field = FieldContext::make(config.field_degree, config.reduction_poly);
    RealizeOptions opt;
    opt.seed = config.seed;
    opt.max_retries = config.max_retries;
    return realize(g, field, opt);
}

namespace {

void write_matrix_block(std::ostringstream& out, const FieldMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << std::hex << static_cast<unsigned>(m.at(i, j)) << std::dec;
        }
        out << '\n';
    }
}

}  // namespace

std::string write_matrix_text(const CodeRealization& real) {
    const CodeParams& p = real.graph.params;
    std::ostringstream out;
    out << "lrc-matrix 1\n";
    out << "params " << p.n << ' ' << p.k << ' ' << p.d << ' ' << p.r << '\n';
    out << "field " << real.field->degree() << " 0x" << std::hex << real.field->reduction_poly() << std::dec
        << '\n';
    out << "seed " << real.seed << '\n';
    out << "infocols";
    for (int c : real.info_cols) out << ' ' << c;
    out << '\n';
    out << "H\n";
    write_matrix_block(out, real.H);
    out << "P\n";
    write_matrix_block(out, real.P);
    return out.str();
}

MatrixFile parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    MatrixFile mf;
    auto fail = [](const std::string& what) -> void { throw ParseError("matrix document: " + what); };
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "lrc-matrix" || version != 1)
        fail("bad header, expected 'lrc-matrix 1'");
    if (!(in >> tag) || tag != "params") fail("missing 'params'");
    if (!(in >> mf.params.n >> mf.params.k >> mf.params.d >> mf.params.r)) fail("bad params line");
    if (!(in >> tag) || tag != "field") fail("missing 'field'");
    if (!(in >> mf.field_degree >> std::hex >> mf.reduction_poly >> std::dec)) fail("bad field line");
    if (!(in >> tag) || tag != "seed") fail("missing 'seed'");
    if (!(in >> mf.seed)) fail("bad seed line");
    if (!(in >> tag) || tag != "infocols") fail("missing 'infocols'");
    mf.info_cols.resize(mf.params.k);
    for (int i = 0; i < mf.params.k; ++i)
        if (!(in >> mf.info_cols[i])) fail("short infocols line");
    auto pviol = mf.params.check();
    if (!pviol.empty()) fail(pviol.front());
    FieldPtr field;
    try {
        field = FieldContext::make(mf.field_degree, mf.reduction_poly);
    } catch (const InvalidParams& e) {
        fail(e.what());
    }
    auto read_block = [&](int rows, int cols) {
        FieldMatrix m(field, rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                unsigned v;
                if (!(in >> std::hex >> v >> std::dec)) fail("short matrix block");
                if (v >= field->order()) fail("matrix entry out of field range");
                m.at(i, j) = static_cast<Gf>(v);
            }
        return m;
    };
    if (!(in >> tag) || tag != "H") fail("missing 'H'");
    mf.H = read_block(mf.params.n - mf.params.k, mf.params.n);
    if (!(in >> tag) || tag != "P") fail("missing 'P'");
    mf.P = read_block(mf.params.k, mf.params.n - mf.params.k);
    return mf;
}

CodeRealization attach_matrix(const TannerGraph& graph, const MatrixFile& mf) {
    if (!(graph.params == mf.params)) throw ParseError("matrix params do not match graph params");
    CodeRealization real;
    real.graph = graph;
    real.field = mf.H.field_ptr();
    real.H = mf.H;
    real.P = mf.P;
    real.seed = mf.seed;
    real.code_of_node.assign(graph.params.n, -1);
    for (const auto& v : graph.variables)
        (v.kind == VarKind::Information ? real.info_cols : real.parity_cols).push_back(v.index);
    if (real.info_cols != mf.info_cols)
        throw ParseError("matrix information columns do not match the graph's information nodes");
    for (int c = 0; c < graph.params.k; ++c) real.code_of_node[real.info_cols[c]] = c;
    for (int j = 0; j < graph.params.n - graph.params.k; ++j)
        real.code_of_node[real.parity_cols[j]] = graph.params.k + j;
    return real;
}

}  // namespace lrc
