#ifndef LRC_ANALYZER_HPP
#define LRC_ANALYZER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lrc/field.hpp"
#include "lrc/graph.hpp"

namespace lrc {

struct CoverReport {
    struct Failure {
        int gamma = 0;
        std::vector<int> checks;  // the failing check subset
        int covered = 0;          // variables covered, < gamma + k
    };
    int gamma_lo = 0, gamma_hi = 0;
    std::uint64_t subsets_checked = 0;
    std::vector<Failure> failures;

    bool ok() const { return failures.empty(); }
};

/*
 * Cover condition for minimum distance d: every gamma-subset of check nodes
 * must cover at least gamma + k variable nodes, for every gamma in
 * [n-k-d+2, n-k]. Exhaustive subset enumeration; failures are reported in
 * canonical (size, lexicographic) order.
 */
CoverReport cover_check(const TannerGraph& g, int d, std::uint64_t budget = 10'000'000);

struct DistanceReport {
    int d_exact = 0;
    std::vector<int> witness;  // a minimal linearly dependent column set of H
    std::uint64_t subsets_tested = 0;
    std::string strategy;  // "column-search" or "hyperplane"
};

// Auto picks per level; the forced modes exist for cross-checking the two
// routes against each other.
enum class DistanceStrategy { Auto, ColumnSearch, Hyperplane };

/*
 * Exact minimum distance: the smallest w such that some w columns of H are
 * linearly dependent. Runs an increasing-w column subset search; when a
 * level would cost more than enumerating codeword zero-sets through
 * (k-1)-subsets of generator columns (the hyperplane route, exact for any
 * d), it switches. Throws BudgetExceeded if neither route fits the budget.
 */
DistanceReport min_distance(const FieldMatrix& H, std::uint64_t budget = 10'000'000,
                            DistanceStrategy strategy = DistanceStrategy::Auto);

struct LocalityReport {
    std::vector<int> r_i;  // per variable node
    int r = 0;             // max
};

// Structural locality from the group model: r_i = |group of i| - 1.
LocalityReport structural_locality(const TannerGraph& g);

struct OptimalityReport {
    bool optimal = false;
    int d_optimal = 0;       // n - k - ceil(k/r) + 2
    int global_checks = 0;   // n - k - n/(r+1)
    int identity_rhs = 0;    // d - 2 - floor((d-2)/(r+1))
    std::string detail;
};

// True iff d equals the bound value and the global-check-count identity holds.
OptimalityReport optimality_check(const CodeParams& params);

std::string to_json(const CoverReport& r);
std::string to_json(const DistanceReport& r);
std::string to_json(const LocalityReport& r);
std::string to_json(const OptimalityReport& r);

}  // namespace lrc

#endif
