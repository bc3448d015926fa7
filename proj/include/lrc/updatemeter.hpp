#ifndef LRC_UPDATEMETER_HPP
#define LRC_UPDATEMETER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lrc/field.hpp"
#include "lrc/graph.hpp"
#include "lrc/rational.hpp"

namespace lrc {

/*
 * k x (n-k) dependence pattern: bit (i,j) is set iff parity block j changes
 * when information block i changes. Rows are information code coordinates,
 * columns are parity code coordinates (parity nodes in ascending graph
 * order). Row weight of i equals u_1(i).
 */
class SupportMatrix {
  public:
    SupportMatrix() : k_(0), p_(0), words_(0) {}
    SupportMatrix(int k, int parities)
        : k_(k), p_(parities), words_((parities + 63) / 64), bits_(static_cast<std::size_t>(k) * words_, 0) {}

    int info_count() const { return k_; }
    int parity_count() const { return p_; }

    void set(int i, int j) { bits_[static_cast<std::size_t>(i) * words_ + j / 64] |= 1ULL << (j % 64); }
    bool test(int i, int j) const {
        return bits_[static_cast<std::size_t>(i) * words_ + j / 64] >> (j % 64) & 1;
    }
    int row_weight(int i) const;
    std::span<const std::uint64_t> row(int i) const { return {bits_.data() + static_cast<std::size_t>(i) * words_, static_cast<std::size_t>(words_)}; }
    int words() const { return words_; }

    bool operator==(const SupportMatrix& o) const = default;

  private:
    int k_, p_, words_;
    std::vector<std::uint64_t> bits_;
};

// Dependence propagation on the graph, assuming cancellation-free
// coefficients: a global parity depends on its check's information
// neighbors; a local parity depends on its group's information members and,
// through any global parities in the group, on their dependencies.
SupportMatrix structural_support(const TannerGraph& g);

// Nonzero pattern of P.
SupportMatrix numeric_support(const FieldMatrix& P);

// Number of parity blocks touched when the information blocks in `set`
// update together: cardinality of the union of their support rows.
int u_of_set(const SupportMatrix& s, std::span<const int> set);

struct UcReport {
    enum class Mode { Exact, Sampled };
    int x = 1;
    int u_min = 0, u_max = 0;
    Rat u_bar;
    std::map<int, std::int64_t> histogram;
    Mode mode = Mode::Exact;
    std::uint64_t sample_count = 0;  // Sampled mode only
    std::uint64_t seed = 0;          // Sampled mode only
};

// Exact enumeration of all C(k,x) update sets when that fits the budget,
// otherwise seeded uniform sampling.
UcReport uc_curve(const SupportMatrix& s, int x, std::uint64_t budget = 1'000'000, std::uint64_t seed = 0,
                  std::uint64_t samples = 100'000);

// Single-update bounds for an optimal nu-LRC: (d-1, d).
std::pair<int, int> uc_bounds_u1(const CodeParams& params);

// Balance condition for u_1 = d-1 everywhere:
// ((r+1)(floor((d-2)/(r+1))+1) - (d-2)) divides r*(floor((d-2)/(r+1))+1).
// Sufficient in spirit only; see the notes in the acceptance suite.
bool balance_predicate(const CodeParams& params);

// Improvement of a over b in percent: 100 * (b.u_bar - a.u_bar) / b.u_bar.
// strict mode rejects sampled inputs.
Rat compare_improvement(const UcReport& a, const UcReport& b, bool strict = false);

std::string to_json(const UcReport& r);

// CSV row in the schema method,n,k,d,r,x,u_min,u_bar_num,u_bar_den,u_max
std::string csv_header();
std::string csv_row(const std::string& method, const CodeParams& p, const UcReport& r);

}  // namespace lrc

#endif
