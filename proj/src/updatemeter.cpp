#include "lrc/updatemeter.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lrc/rng.hpp"

namespace lrc {

int SupportMatrix::row_weight(int i) const {
    int w = 0;
    for (int word = 0; word < words_; ++word) w += std::popcount(bits_[static_cast<std::size_t>(i) * words_ + word]);
    return w;
}

SupportMatrix structural_support(const TannerGraph& g) {
    auto violations = validate(g);
    if (!violations.empty()) throw InvalidParams("graph invalid: " + violations.front());
    const CodeParams& p = g.params;
    auto info = g.information_nodes();
    auto parities = g.parity_nodes();

    std::vector<int> info_code(p.n, -1), parity_code(p.n, -1);
    for (std::size_t c = 0; c < info.size(); ++c) info_code[info[c]] = static_cast<int>(c);
    for (std::size_t c = 0; c < parities.size(); ++c) parity_code[parities[c]] = static_cast<int>(c);

    // dependence of each global parity: the information neighbors of its check
    std::vector<std::vector<int>> dep(p.n);
    for (const auto& c : g.checks) {
        if (c.kind != CheckKind::Global) continue;
        int own = -1;
        std::vector<int> infos;
        for (int v : c.neighbors) {
            if (g.variables[v].kind == VarKind::GlobalParity) own = v;
            if (g.variables[v].kind == VarKind::Information) infos.push_back(info_code[v]);
        }
        dep[own] = std::move(infos);
    }

    SupportMatrix s(p.k, p.n - p.k);
    for (int v = 0; v < p.n; ++v) {
        if (g.variables[v].kind != VarKind::GlobalParity) continue;
        for (int i : dep[v]) s.set(i, parity_code[v]);
    }
    // a local parity depends on its group's information members plus
    // everything its group's global parities depend on
    for (const auto& cell : g.groups) {
        int lp = -1;
        std::vector<bool> row(p.k, false);
        for (int v : cell) {
            switch (g.variables[v].kind) {
                case VarKind::Information: row[info_code[v]] = true; break;
                case VarKind::GlobalParity:
                    for (int i : dep[v]) row[i] = true;
                    break;
                case VarKind::LocalParity: lp = v; break;
            }
        }
        for (int i = 0; i < p.k; ++i)
            if (row[i]) s.set(i, parity_code[lp]);
    }
    return s;
}

SupportMatrix numeric_support(const FieldMatrix& p) {
    SupportMatrix s(p.rows(), p.cols());
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < p.cols(); ++j)
            if (p.at(i, j) != 0) s.set(i, j);
    return s;
}

int u_of_set(const SupportMatrix& s, std::span<const int> set) {
    if (set.empty()) throw InvalidParams("u_of_set needs a nonempty set");
    std::vector<std::uint64_t> acc(s.words(), 0);
    for (int i : set) {
        if (i < 0 || i >= s.info_count())
            throw InvalidParams("information index " + std::to_string(i) + " out of range");
        auto row = s.row(i);
        for (int w = 0; w < s.words(); ++w) acc[w] |= row[w];
    }
    int count = 0;
    for (auto word : acc) count += std::popcount(word);
    return count;
}

namespace {

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

UcReport uc_curve(const SupportMatrix& s, int x, std::uint64_t budget, std::uint64_t seed,
                  std::uint64_t samples) {
    const int k = s.info_count();
    if (x < 1 || x > k) throw InvalidParams("uc_curve needs 1 <= x <= k");
    UcReport rep;
    rep.x = x;
    std::uint64_t total = binom_capped(k, x, budget);
    std::int64_t weight_sum = 0;
    std::uint64_t count = 0;
    auto note = [&](int u) {
        ++rep.histogram[u];
        weight_sum += u;
        ++count;
    };
    if (total <= budget) {
        rep.mode = UcReport::Mode::Exact;
        std::vector<std::uint64_t> acc_stack(static_cast<std::size_t>(x + 1) * s.words(), 0);
        std::vector<int> chosen;
        auto rec = [&](auto&& self, int start) -> void {
            int depth = static_cast<int>(chosen.size());
            if (depth == x) {
                int u = 0;
                for (int w = 0; w < s.words(); ++w)
                    u += std::popcount(acc_stack[static_cast<std::size_t>(depth) * s.words() + w]);
                note(u);
                return;
            }
            for (int i = start; i <= k - (x - depth); ++i) {
                auto row = s.row(i);
                for (int w = 0; w < s.words(); ++w)
                    acc_stack[static_cast<std::size_t>(depth + 1) * s.words() + w] =
                        acc_stack[static_cast<std::size_t>(depth) * s.words() + w] | row[w];
                chosen.push_back(i);
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        rec(rec, 0);
    } else {
        rep.mode = UcReport::Mode::Sampled;
        rep.sample_count = samples;
        rep.seed = seed;
        SplitMix64 rng(derive_seed(seed, 0xECu));
        std::vector<int> pick;
        for (std::uint64_t it = 0; it < samples; ++it) {
            // Floyd's uniform x-subset of [0, k)
            pick.clear();
            for (int j = k - x; j < k; ++j) {
                int t = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(j) + 1));
                if (std::find(pick.begin(), pick.end(), t) != pick.end()) pick.push_back(j);
                else pick.push_back(t);
            }
            note(u_of_set(s, pick));
        }
    }
    rep.u_min = rep.histogram.begin()->first;
    rep.u_max = rep.histogram.rbegin()->first;
    rep.u_bar = Rat(weight_sum, static_cast<std::int64_t>(count));
    return rep;
}

std::pair<int, int> uc_bounds_u1(const CodeParams& params) {
    auto violations = params.check();
    if (!violations.empty()) throw InvalidParams("invalid params: " + violations.front());
    return {params.d - 1, params.d};
}

bool balance_predicate(const CodeParams& params) {
    auto violations = params.check();
    if (!violations.empty()) throw InvalidParams("invalid params: " + violations.front());
    int mu = params.mu();
    int divisor = (params.r + 1) * (mu + 1) - (params.d - 2);
    int beta = params.r * (mu + 1);
    return beta % divisor == 0;
}

Rat compare_improvement(const UcReport& a, const UcReport& b, bool strict) {
    if (a.x != b.x) throw ModeMismatch("compare needs reports for the same x");
    if (strict && (a.mode == UcReport::Mode::Sampled || b.mode == UcReport::Mode::Sampled))
        throw ModeMismatch("strict compare rejects sampled reports");
    return Rat(100) * (b.u_bar - a.u_bar) / b.u_bar;
}

std::string to_json(const UcReport& r) {
    nlohmann::ordered_json j;
    j["x"] = r.x;
    j["mode"] = r.mode == UcReport::Mode::Exact ? "exact" : "sampled";
    if (r.mode == UcReport::Mode::Sampled) {
        j["sample_count"] = r.sample_count;
        j["seed"] = r.seed;
    }
    j["u_min"] = r.u_min;
    j["u_max"] = r.u_max;
    j["u_bar"] = {{"num", r.u_bar.num()}, {"den", r.u_bar.den()}, {"decimal", r.u_bar.to_decimal(2)}};
    auto hist = nlohmann::ordered_json::object();
    for (const auto& [u, c] : r.histogram) hist[std::to_string(u)] = c;
    j["histogram"] = std::move(hist);
    return j.dump(2);
}

std::string csv_header() { return "method,n,k,d,r,x,u_min,u_bar_num,u_bar_den,u_max"; }

std::string csv_row(const std::string& method, const CodeParams& p, const UcReport& r) {
    std::ostringstream out;
    out << method << ',' << p.n << ',' << p.k << ',' << p.d << ',' << p.r << ',' << r.x << ',' << r.u_min << ','
        << r.u_bar.num() << ',' << r.u_bar.den() << ',' << r.u_max;
    return out.str();
}

}  // namespace lrc
