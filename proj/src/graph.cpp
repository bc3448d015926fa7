#include "lrc/graph.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace lrc {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> CodeParams::check() const {
    std::vector<std::string> out;
    if (!(1 <= k && k < n)) out.push_back("dimension out of range: need 1 <= k < n");
    if (d < 2) out.push_back("minimum distance out of range: need d >= 2");
    if (!(1 <= r && r <= k)) out.push_back("locality out of range: need 1 <= r <= k");
    if (r >= 1 && n % (r + 1) != 0) out.push_back("(r+1) does not divide n");
    return out;
}

std::vector<int> TannerGraph::information_nodes() const {
    std::vector<int> out;
    for (const auto& v : variables)
        if (v.kind == VarKind::Information) out.push_back(v.index);
    return out;
}

std::vector<int> TannerGraph::parity_nodes() const {
    std::vector<int> out;
    for (const auto& v : variables)
        if (v.kind != VarKind::Information) out.push_back(v.index);
    return out;
}

std::vector<int> TannerGraph::global_parity_nodes() const {
    std::vector<int> out;
    for (const auto& v : variables)
        if (v.kind == VarKind::GlobalParity) out.push_back(v.index);
    return out;
}

std::map<int, GroupClass> classify_groups(const TannerGraph& g) {
    std::map<int, GroupClass> out;
    for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
        bool has_info = false, has_gp = false;
        for (int v : g.groups[gi]) {
            if (g.variables[v].kind == VarKind::Information) has_info = true;
            if (g.variables[v].kind == VarKind::GlobalParity) has_gp = true;
        }
        out[static_cast<int>(gi)] = !has_gp ? GroupClass::Plain
                                  : has_info ? GroupClass::Infomixed
                                             : GroupClass::Mixed;
    }
    return out;
}

std::vector<std::string> validate(const TannerGraph& g) {
    std::vector<std::string> out;
    const CodeParams& p = g.params;
    for (const auto& v : p.check()) out.push_back("params: " + v);
    if (!out.empty()) return out;

    const int n = p.n;
    const int nk = p.n - p.k;
    const int ngroups = p.group_count();

    if (static_cast<int>(g.variables.size()) != n)
        out.push_back("variable count " + std::to_string(g.variables.size()) + " != n " + std::to_string(n));
    if (static_cast<int>(g.checks.size()) != nk)
        out.push_back("check count " + std::to_string(g.checks.size()) + " != n-k " + std::to_string(nk));
    if (static_cast<int>(g.groups.size()) != ngroups)
        out.push_back("group count " + std::to_string(g.groups.size()) + " != n/(r+1) " + std::to_string(ngroups));
    if (!out.empty()) return out;

    // groups partition [0, n) into cells of size r+1
    std::vector<int> group_of(n, -1);
    for (int gi = 0; gi < ngroups; ++gi) {
        if (static_cast<int>(g.groups[gi].size()) != p.r + 1)
            out.push_back("group " + std::to_string(gi) + " has size " + std::to_string(g.groups[gi].size()) +
                          ", expected r+1 = " + std::to_string(p.r + 1));
        for (int v : g.groups[gi]) {
            if (v < 0 || v >= n) {
                out.push_back("group " + std::to_string(gi) + " references variable " + std::to_string(v));
                continue;
            }
            if (group_of[v] != -1)
                out.push_back("variable " + std::to_string(v) + " appears in groups " +
                              std::to_string(group_of[v]) + " and " + std::to_string(gi));
            group_of[v] = gi;
        }
    }
    for (int v = 0; v < n; ++v)
        if (group_of[v] == -1) out.push_back("variable " + std::to_string(v) + " belongs to no group");

    // variable node bookkeeping and kind census
    int n_info = 0, n_lp = 0, n_gp = 0;
    for (int v = 0; v < n; ++v) {
        const VariableNode& var = g.variables[v];
        if (var.index != v) out.push_back("variable at position " + std::to_string(v) + " has index " +
                                          std::to_string(var.index));
        if (group_of[v] != -1 && var.group_id != group_of[v])
            out.push_back("variable " + std::to_string(v) + " group_id " + std::to_string(var.group_id) +
                          " does not match its partition cell " + std::to_string(group_of[v]));
        switch (var.kind) {
            case VarKind::Information: ++n_info; break;
            case VarKind::LocalParity: ++n_lp; break;
            case VarKind::GlobalParity: ++n_gp; break;
        }
    }
    if (n_info != p.k) out.push_back("information node count " + std::to_string(n_info) + " != k");
    if (n_lp != ngroups) out.push_back("local parity node count " + std::to_string(n_lp) + " != n/(r+1)");
    if (n_gp != p.global_check_count())
        out.push_back("global parity node count " + std::to_string(n_gp) +
                      " != n-k-n/(r+1) = " + std::to_string(p.global_check_count()));

    // check node structure
    std::vector<int> local_of_group(ngroups, -1);
    std::set<int> owned_gps;
    for (int ci = 0; ci < nk; ++ci) {
        const CheckNode& c = g.checks[ci];
        if (c.index != ci)
            out.push_back("check at position " + std::to_string(ci) + " has index " + std::to_string(c.index));
        std::vector<int> nb = c.neighbors;
        if (!std::is_sorted(nb.begin(), nb.end()) || std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            out.push_back("check " + std::to_string(ci) + " neighbor list is not a sorted set");
        for (int v : nb)
            if (v < 0 || v >= n) out.push_back("check " + std::to_string(ci) + " references variable " +
                                               std::to_string(v));
        if (c.kind == CheckKind::Local) {
            if (static_cast<int>(nb.size()) != p.r + 1)
                out.push_back("local check " + std::to_string(ci) + " has degree " + std::to_string(nb.size()) +
                              ", expected r+1");
            // must equal exactly one group cell
            int gi = nb.empty() || nb[0] < 0 || nb[0] >= n ? -1 : group_of[nb[0]];
            std::vector<int> cell;
            if (gi >= 0) {
                cell = g.groups[gi];
                std::sort(cell.begin(), cell.end());
            }
            if (gi < 0 || nb != cell)
                out.push_back("local check " + std::to_string(ci) + " neighbors are not exactly one group");
            else if (local_of_group[gi] != -1)
                out.push_back("duplicate local check: group " + std::to_string(gi) + " served by checks " +
                              std::to_string(local_of_group[gi]) + " and " + std::to_string(ci));
            else
                local_of_group[gi] = ci;
        } else {
            int gp_count = 0, gp_node = -1;
            for (int v : nb) {
                if (v >= 0 && v < n && g.variables[v].kind == VarKind::GlobalParity) {
                    ++gp_count;
                    gp_node = v;
                }
            }
            if (gp_count != 1)
                out.push_back("global check " + std::to_string(ci) + " has " + std::to_string(gp_count) +
                              " global parity neighbors, expected exactly 1");
            else if (!owned_gps.insert(gp_node).second)
                out.push_back("global parity node " + std::to_string(gp_node) + " owned by more than one check");
        }
    }
    for (int gi = 0; gi < ngroups; ++gi)
        if (local_of_group[gi] == -1) out.push_back("group " + std::to_string(gi) + " has no local check");
    return out;
}

const char* to_string(VarKind k) {
    switch (k) {
        case VarKind::Information: return "information";
        case VarKind::LocalParity: return "local_parity";
        case VarKind::GlobalParity: return "global_parity";
    }
    return "?";
}

const char* to_string(CheckKind k) { return k == CheckKind::Local ? "local" : "global"; }

const char* to_string(GroupClass c) {
    switch (c) {
        case GroupClass::Plain: return "plain";
        case GroupClass::Mixed: return "mixed";
        case GroupClass::Infomixed: return "infomixed";
    }
    return "?";
}

namespace {

VarKind var_kind_from(const std::string& s, const std::string& where) {
    if (s == "information") return VarKind::Information;
    if (s == "local_parity") return VarKind::LocalParity;
    if (s == "global_parity") return VarKind::GlobalParity;
    throw ParseError(where + ": unknown variable kind '" + s + "'");
}

CheckKind check_kind_from(const std::string& s, const std::string& where) {
    if (s == "local") return CheckKind::Local;
    if (s == "global") return CheckKind::Global;
    throw ParseError(where + ": unknown check kind '" + s + "'");
}

}  // namespace

std::string serialize(const TannerGraph& g) {
    ordered_json j;
    j["version"] = "1";
    j["params"] = {{"n", g.params.n}, {"k", g.params.k}, {"d", g.params.d}, {"r", g.params.r}};
    j["groups"] = g.groups;
    ordered_json vars = ordered_json::array();
    for (const auto& v : g.variables)
        vars.push_back({{"index", v.index}, {"kind", to_string(v.kind)}, {"group", v.group_id}});
    j["variables"] = std::move(vars);
    ordered_json checks = ordered_json::array();
    for (const auto& c : g.checks)
        checks.push_back({{"index", c.index}, {"kind", to_string(c.kind)}, {"neighbors", c.neighbors}});
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

TannerGraph parse_graph(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("graph document: ") + e.what());
    }
    try {
        if (!j.contains("version")) throw ParseError("graph document: missing 'version'");
        if (j.at("version").get<std::string>() != "1")
            throw ParseError("graph document: unsupported version '" + j.at("version").get<std::string>() + "'");
        if (!j.contains("params")) throw ParseError("graph document: missing 'params'");
        TannerGraph g;
        const auto& p = j.at("params");
        g.params.n = p.at("n").get<int>();
        g.params.k = p.at("k").get<int>();
        g.params.d = p.at("d").get<int>();
        g.params.r = p.at("r").get<int>();
        g.groups = j.at("groups").get<std::vector<std::vector<int>>>();
        for (const auto& jv : j.at("variables")) {
            VariableNode v;
            v.index = jv.at("index").get<int>();
            v.kind = var_kind_from(jv.at("kind").get<std::string>(),
                                   "variable " + std::to_string(v.index));
            v.group_id = jv.at("group").get<int>();
            g.variables.push_back(v);
        }
        for (const auto& jc : j.at("checks")) {
            CheckNode c;
            c.index = jc.at("index").get<int>();
            c.kind = check_kind_from(jc.at("kind").get<std::string>(), "check " + std::to_string(c.index));
            c.neighbors = jc.at("neighbors").get<std::vector<int>>();
            g.checks.push_back(c);
        }
        auto violations = validate(g);
        if (!violations.empty())
            throw ParseError("graph document inconsistent: " + violations.front() +
                             (violations.size() > 1
                                  ? " (+" + std::to_string(violations.size() - 1) + " more)"
                                  : ""));
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph document: ") + e.what());
    }
}

}  // namespace lrc
