#include "lrc/analyzer.hpp"

#include <algorithm>
#include <bit>

#include <nlohmann/json.hpp>

namespace lrc {

namespace {

// C(n, w) capped to avoid overflow in budget arithmetic
std::uint64_t binom_capped(int n, int w, std::uint64_t cap) {
    if (w < 0 || w > n) return 0;
    w = std::min(w, n - w);
    std::uint64_t v = 1;
    for (int i = 1; i <= w; ++i) {
        if (v > cap) return cap + 1;
        v = v * static_cast<std::uint64_t>(n - w + i) / static_cast<std::uint64_t>(i);
    }
    return std::min(v, cap + 1);
}

}  // namespace

CoverReport cover_check(const TannerGraph& g, int d, std::uint64_t budget) {
    auto violations = validate(g);
    if (!violations.empty()) throw InvalidParams("graph invalid: " + violations.front());
    const int n = g.params.n;
    const int nk = n - g.params.k;
    if (d < 2 || d > nk + 1)
        throw InvalidParams("cover check needs 2 <= d <= n-k+1, got d=" + std::to_string(d));
    if (n > 64) throw InvalidParams("cover check supports n <= 64");

    CoverReport report;
    report.gamma_lo = nk - d + 2;
    report.gamma_hi = nk;

    std::uint64_t total = 0;
    for (int gamma = report.gamma_lo; gamma <= report.gamma_hi; ++gamma)
        total += binom_capped(nk, gamma, budget);
    if (total > budget)
        throw BudgetExceeded("cover check needs " + std::to_string(total) + " subsets, budget is " +
                             std::to_string(budget));

    std::vector<std::uint64_t> mask(nk, 0);
    for (int ci = 0; ci < nk; ++ci)
        for (int v : g.checks[ci].neighbors) mask[ci] |= 1ULL << v;

    const int need_base = g.params.k;
    std::vector<int> chosen;
    for (int gamma = report.gamma_lo; gamma <= report.gamma_hi; ++gamma) {
        chosen.clear();
        auto rec = [&](auto&& self, int start, std::uint64_t covered) -> void {
            if (static_cast<int>(chosen.size()) == gamma) {
                ++report.subsets_checked;
                int count = std::popcount(covered);
                if (count < gamma + need_base) report.failures.push_back({gamma, chosen, count});
                return;
            }
            int remaining = gamma - static_cast<int>(chosen.size());
            for (int ci = start; ci <= nk - remaining; ++ci) {
                chosen.push_back(ci);
                self(self, ci + 1, covered | mask[ci]);
                chosen.pop_back();
            }
        };
        rec(rec, 0, 0);
    }
    return report;
}

namespace {

/*
 * Increasing-w column dependence search over H with a shared-prefix
 * elimination tree. At level w every proper prefix is independent (smaller
 * levels found no dependence), so dependence can only appear when the last
 * column reduces to zero.
 */
struct ColumnSearch {
    const FieldMatrix& h;
    const FieldContext& f;
    int n, rows;
    std::uint64_t visited = 0;
    std::uint64_t limit;
    bool out_of_budget = false;
    std::vector<std::vector<Gf>> basis;  // reduced columns, pivot normalized to 1
    std::vector<int> pivots;
    std::vector<int> stack;
    std::vector<int> witness;

    ColumnSearch(const FieldMatrix& hm, std::uint64_t lim)
        : h(hm), f(hm.field()), n(hm.cols()), rows(hm.rows()), limit(lim) {}

    // reduce column c against the basis; true + appended if independent
    bool push_column(int c, std::vector<Gf>& tmp) {
        for (int i = 0; i < rows; ++i) tmp[i] = h.at(i, c);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Gf factor = tmp[pivots[b]];
            if (factor == 0) continue;
            const auto& vec = basis[b];
            for (int i = 0; i < rows; ++i) tmp[i] ^= f.mul(factor, vec[i]);
        }
        int pivot = -1;
        for (int i = 0; i < rows; ++i)
            if (tmp[i] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return false;
        Gf inv = f.inv(tmp[pivot]);
        for (int i = 0; i < rows; ++i) tmp[i] = f.mul(tmp[i], inv);
        basis.push_back(tmp);
        pivots.push_back(pivot);
        return true;
    }

    bool run_level(int w) {
        std::vector<Gf> tmp(rows);
        auto rec = [&](auto&& self, int start) -> bool {
            int depth = static_cast<int>(stack.size());
            for (int c = start; c <= n - (w - depth); ++c) {
                if (++visited > limit) {
                    out_of_budget = true;
                    return false;
                }
                bool independent = push_column(c, tmp);
                if (!independent) {
                    // smaller levels were exhausted, so this prefix + c is minimal
                    witness = stack;
                    witness.push_back(c);
                    return true;
                }
                if (depth + 1 < w) {
                    stack.push_back(c);
                    bool found = self(self, c + 1);
                    stack.pop_back();
                    basis.pop_back();
                    pivots.pop_back();
                    if (found || out_of_budget) return found;
                } else {
                    basis.pop_back();
                    pivots.pop_back();
                }
            }
            return false;
        };
        return rec(rec, 0);
    }
};

/*
 * Hyperplane route: d = n - (maximum number of generator columns lying in a
 * common hyperplane). The maximum is attained by a hyperplane spanned by
 * k-1 independent columns, so enumerating independent (k-1)-subsets with a
 * back-substituted normal vector is exact for any distance.
 */
struct HyperplaneSearch {
    const FieldContext& f;
    int n, k;
    std::vector<std::vector<Gf>> cols;  // generator columns, length k
    std::uint64_t visited = 0;
    std::uint64_t limit;
    bool out_of_budget = false;

    std::vector<std::vector<Gf>> basis;
    std::vector<int> pivots;
    int best_zeros = -1;
    std::vector<Gf> best_normal;

    HyperplaneSearch(const FieldMatrix& gen, std::uint64_t lim)
        : f(gen.field()), n(gen.cols()), k(gen.rows()), limit(lim) {
        cols.assign(n, std::vector<Gf>(k));
        for (int c = 0; c < n; ++c)
            for (int i = 0; i < k; ++i) cols[c][i] = gen.at(i, c);
    }

    void consider(const std::vector<Gf>& normal) {
        int zeros = 0;
        for (int c = 0; c < n; ++c) {
            Gf dot = 0;
            for (int i = 0; i < k; ++i)
                if (normal[i] && cols[c][i]) dot ^= f.mul(normal[i], cols[c][i]);
            if (dot == 0) ++zeros;
        }
        if (zeros > best_zeros) {
            best_zeros = zeros;
            best_normal = normal;
        }
    }

    // normal vector orthogonal to all basis columns: one free position,
    // back-substituted in reverse pivot order
    std::vector<Gf> solve_normal() {
        std::vector<bool> is_pivot(k, false);
        for (int p : pivots) is_pivot[p] = true;
        int free_pos = 0;
        while (is_pivot[free_pos]) ++free_pos;
        std::vector<Gf> h(k, 0);
        h[free_pos] = 1;
        for (int b = static_cast<int>(basis.size()) - 1; b >= 0; --b) {
            Gf acc = 0;
            for (int i = 0; i < k; ++i)
                if (i != pivots[b] && h[i] && basis[b][i]) acc ^= f.mul(h[i], basis[b][i]);
            h[pivots[b]] = acc;  // pivot entry is normalized to 1
        }
        return h;
    }

    bool push_column(int c, std::vector<Gf>& tmp) {
        tmp = cols[c];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Gf factor = tmp[pivots[b]];
            if (factor == 0) continue;
            for (int i = 0; i < k; ++i) tmp[i] ^= f.mul(factor, basis[b][i]);
        }
        int pivot = -1;
        for (int i = 0; i < k; ++i)
            if (tmp[i] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return false;
        Gf inv = f.inv(tmp[pivot]);
        for (int i = 0; i < k; ++i) tmp[i] = f.mul(tmp[i], inv);
        basis.push_back(tmp);
        pivots.push_back(pivot);
        return true;
    }

    void run() {
        if (k == 1) {
            consider({1});
            ++visited;
            return;
        }
        std::vector<Gf> tmp(k);
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(basis.size()) == k - 1) {
                ++visited;
                if (visited > limit) {
                    out_of_budget = true;
                    return;
                }
                consider(solve_normal());
                return;
            }
            for (int c = start; c < n && !out_of_budget; ++c) {
                if (!push_column(c, tmp)) continue;  // dependent prefixes are covered elsewhere
                self(self, c + 1);
                basis.pop_back();
                pivots.pop_back();
            }
        };
        rec(rec, 0);
    }
};

// Null-space basis of H as a k x n generator-like matrix (rows span the code).
FieldMatrix null_space(const FieldMatrix& h) {
    const FieldContext& f = h.field();
    const int rows = h.rows(), n = h.cols();
    FieldMatrix w = h;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (w.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        for (int c = 0; c < n; ++c) std::swap(w.at(rank, c), w.at(piv, c));
        Gf inv = f.inv(w.at(rank, col));
        for (int c = 0; c < n; ++c) w.at(rank, c) = f.mul(w.at(rank, c), inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Gf factor = w.at(r, col);
            if (factor == 0) continue;
            for (int c = 0; c < n; ++c) w.at(r, c) ^= f.mul(factor, w.at(rank, c));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    FieldMatrix gen(h.field_ptr(), n - rank, n);
    int row = 0;
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        gen.at(row, fc) = 1;
        for (int i = 0; i < rank; ++i) gen.at(row, pivot_col[i]) = w.at(i, fc);
        ++row;
    }
    return gen;
}

}  // namespace

DistanceReport min_distance(const FieldMatrix& h, std::uint64_t budget, DistanceStrategy strategy) {
    const int n = h.cols();
    const int rows = h.rows();
    if (n == 0 || rows == 0) throw InvalidParams("min_distance needs a nonempty matrix");

    FieldMatrix gen = null_space(h);
    const int k = gen.rows();
    if (k == 0) throw InvalidParams("matrix has a trivial null space; not a parity-check matrix");

    std::uint64_t hyper_cost = k >= 2 ? binom_capped(n, k - 1, budget) : 1;

    DistanceReport report;
    ColumnSearch col(h, budget);
    for (int w = 1; w <= rows + 1; ++w) {
        std::uint64_t level_cost = binom_capped(n, w, budget);
        bool level_affordable = col.visited + level_cost <= budget;
        bool switch_to_hyperplane = strategy == DistanceStrategy::Hyperplane ||
                                    (strategy == DistanceStrategy::Auto &&
                                     (level_cost > hyper_cost || !level_affordable));
        if (strategy == DistanceStrategy::ColumnSearch && !level_affordable)
            throw BudgetExceeded("min_distance: column search exceeds the budget of " + std::to_string(budget) +
                                 " subsets");
        if (switch_to_hyperplane) {
            // switch to the hyperplane route
            if (col.visited + hyper_cost > budget)
                throw BudgetExceeded("min_distance: both search routes exceed the budget of " +
                                     std::to_string(budget) + " subsets");
            HyperplaneSearch hyp(gen, budget - col.visited);
            hyp.run();
            if (hyp.out_of_budget)
                throw BudgetExceeded("min_distance: hyperplane route exceeded the budget of " +
                                     std::to_string(budget) + " subsets");
            report.d_exact = n - hyp.best_zeros;
            const FieldContext& f = gen.field();
            for (int c = 0; c < n; ++c) {
                Gf dot = 0;
                for (int i = 0; i < k; ++i)
                    if (hyp.best_normal[i] && gen.at(i, c)) dot ^= f.mul(hyp.best_normal[i], gen.at(i, c));
                if (dot != 0) report.witness.push_back(c);
            }
            report.subsets_tested = col.visited + hyp.visited;
            report.strategy = "hyperplane";
            return report;
        }
        if (col.run_level(w)) {
            report.witness = col.witness;
            report.d_exact = static_cast<int>(report.witness.size());
            report.subsets_tested = col.visited;
            report.strategy = "column-search";
            return report;
        }
        if (col.out_of_budget)
            throw BudgetExceeded("min_distance: column search exceeded the budget of " + std::to_string(budget) +
                                 " subsets");
    }
    throw Error("min_distance: no dependent column set up to n-k+1 columns (matrix not full row rank?)");
}

LocalityReport structural_locality(const TannerGraph& g) {
    auto violations = validate(g);
    if (!violations.empty()) throw InvalidParams("graph invalid: " + violations.front());
    LocalityReport rep;
    rep.r_i.assign(g.params.n, 0);
    for (const auto& cell : g.groups)
        for (int v : cell) rep.r_i[v] = static_cast<int>(cell.size()) - 1;
    rep.r = *std::max_element(rep.r_i.begin(), rep.r_i.end());
    return rep;
}

OptimalityReport optimality_check(const CodeParams& p) {
    OptimalityReport rep;
    auto violations = p.check();
    if (!violations.empty()) {
        rep.optimal = false;
        rep.detail = "invalid params: " + violations.front();
        return rep;
    }
    rep.d_optimal = p.n - p.k - (p.k + p.r - 1) / p.r + 2;
    rep.global_checks = p.global_check_count();
    rep.identity_rhs = (p.d - 2) - p.mu();
    bool d_ok = p.d == rep.d_optimal;
    bool id_ok = rep.global_checks == rep.identity_rhs;
    rep.optimal = d_ok && id_ok;
    if (!d_ok)
        rep.detail = "d = " + std::to_string(p.d) + " but the bound value is " + std::to_string(rep.d_optimal);
    else if (!id_ok)
        rep.detail = "global check identity fails: " + std::to_string(rep.global_checks) +
                     " != " + std::to_string(rep.identity_rhs);
    else
        rep.detail = "d meets the bound and the global-check identity holds";
    return rep;
}

std::string to_json(const CoverReport& r) {
    nlohmann::ordered_json j;
    j["gamma_range"] = {r.gamma_lo, r.gamma_hi};
    j["subsets_checked"] = r.subsets_checked;
    j["ok"] = r.ok();
    auto fails = nlohmann::ordered_json::array();
    for (const auto& f : r.failures)
        fails.push_back({{"gamma", f.gamma}, {"checks", f.checks}, {"covered", f.covered}});
    j["failures"] = std::move(fails);
    return j.dump(2);
}

std::string to_json(const DistanceReport& r) {
    nlohmann::ordered_json j;
    j["d_exact"] = r.d_exact;
    j["witness"] = r.witness;
    j["subsets_tested"] = r.subsets_tested;
    j["strategy"] = r.strategy;
    return j.dump(2);
}

std::string to_json(const LocalityReport& r) {
    nlohmann::ordered_json j;
    j["r"] = r.r;
    j["r_i"] = r.r_i;
    return j.dump(2);
}

std::string to_json(const OptimalityReport& r) {
    nlohmann::ordered_json j;
    j["optimal"] = r.optimal;
    j["d_optimal"] = r.d_optimal;
    j["global_checks"] = r.global_checks;
    j["identity_rhs"] = r.identity_rhs;
    j["detail"] = r.detail;
    return j.dump(2);
}

}  // namespace lrc
