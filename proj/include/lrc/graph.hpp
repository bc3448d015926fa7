#ifndef LRC_GRAPH_HPP
#define LRC_GRAPH_HPP

#include <map>
#include <string>
#include <vector>

#include "lrc/errors.hpp"

namespace lrc {

/*
 * Code parameter tuple of an (n,k,d,r) locally repairable code with
 * (r+1) | n and uniform non-overlapping local groups.
 */
struct CodeParams {
    int n = 0;  // code length (blocks)
    int k = 0;  // dimension (information blocks)
    int d = 0;  // minimum distance
    int r = 0;  // locality

    int group_count() const { return n / (r + 1); }
    int local_check_count() const { return group_count(); }
    int global_check_count() const { return n - k - group_count(); }
    // floor((d-2)/(r+1)); group-set size in the cover condition is this + 1
    int mu() const { return (d - 2) / (r + 1); }
    // number of groups holding global parity nodes under the canonical layout
    int mixed_group_count() const {
        int g = global_check_count();
        return g == 0 ? 0 : (g + r - 1) / r;
    }

    // Range/divisibility violations; empty for a well-formed tuple.
    std::vector<std::string> check() const;

    bool operator==(const CodeParams& o) const = default;
};

enum class VarKind { Information, LocalParity, GlobalParity };
enum class CheckKind { Local, Global };
enum class GroupClass { Plain, Mixed, Infomixed };

struct VariableNode {
    int index = 0;
    VarKind kind = VarKind::Information;
    int group_id = 0;

    bool operator==(const VariableNode& o) const = default;
};

struct CheckNode {
    int index = 0;
    CheckKind kind = CheckKind::Local;
    std::vector<int> neighbors;  // ascending variable indices

    bool operator==(const CheckNode& o) const = default;
};

/*
 * Bipartite Tanner graph of a nu-LRC: n variable nodes, n-k check nodes,
 * and the partition of variables into n/(r+1) local groups of size r+1.
 *
 * Canonical layout: variables run group by group; within a group,
 * information nodes first, then global parity nodes, then the single
 * local parity node last. Check i for i < n/(r+1) is the local check of
 * group i; global checks follow, the j-th owning the j-th global parity
 * node in index order.
 *
 * Immutable after validation; safe to share read-only across threads.
 */
struct TannerGraph {
    CodeParams params;
    std::vector<VariableNode> variables;
    std::vector<CheckNode> checks;
    std::vector<std::vector<int>> groups;

    std::vector<int> information_nodes() const;
    std::vector<int> parity_nodes() const;  // local + global parity, ascending
    std::vector<int> global_parity_nodes() const;
    const CheckNode& local_check_of(int group_id) const { return checks[group_id]; }

    bool operator==(const TannerGraph& o) const = default;
};

// Per-group classification: Plain (no global parity), Mixed (global parity
// but no information), Infomixed (both).
std::map<int, GroupClass> classify_groups(const TannerGraph& g);

// Structural invariant check; empty result means the graph is valid.
// Each violation names the invariant and the offending indices.
std::vector<std::string> validate(const TannerGraph& g);

// Canonical JSON serialization (schema version "1"); round-trips exactly.
std::string serialize(const TannerGraph& g);
TannerGraph parse_graph(const std::string& text);  // throws ParseError

const char* to_string(VarKind k);
const char* to_string(CheckKind k);
const char* to_string(GroupClass c);

}  // namespace lrc

#endif
