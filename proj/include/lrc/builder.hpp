#ifndef LRC_BUILDER_HPP
#define LRC_BUILDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lrc/field.hpp"
#include "lrc/graph.hpp"

namespace lrc {

enum class BuildMethod { Proposed, Baseline };

struct BuildConfig {
    CodeParams params;
    BuildMethod method = BuildMethod::Proposed;
    int field_degree = 16;
    std::uint32_t reduction_poly = 0;  // 0 = default for the degree
    std::uint64_t seed = 0;
    int max_retries = 32;
};

/*
 * A Tanner graph realized as a code over a concrete field.
 *
 * H lives in graph column order (support equals the biadjacency exactly).
 * Code coordinates put the k information blocks first: code column c < k is
 * graph node info_cols[c], code column k+j is graph node parity_cols[j].
 * G = [I_k | P] in code order, so G * H_code_order^T = 0.
 */
struct CodeRealization {
    TannerGraph graph;
    FieldPtr field;
    FieldMatrix H;  // (n-k) x n
    FieldMatrix P;  // k x (n-k)
    std::vector<int> info_cols;
    std::vector<int> parity_cols;
    std::vector<int> code_of_node;
    std::uint64_t seed = 0;
    int draws = 1;

    FieldMatrix generator() const;     // [I_k | P]
    FieldMatrix h_code_order() const;  // column-permuted H matching G
    int node_of_code(int code_col) const {
        return code_col < graph.params.k ? info_cols[code_col] : parity_cols[code_col - graph.params.k];
    }
};

// Derives the optimal distance d = n - k - ceil(k/r) + 2 and checks the
// global-check-count identity n-k-n/(r+1) = d-2-floor((d-2)/(r+1)).
// Throws InvalidParams / NotNuOptimal.
CodeParams nu_params(int n, int k, int r);

// Group structure, local checks, and global checks wired only to their own
// global parity node. No information-to-global edges yet.
TannerGraph build_skeleton(const CodeParams& params);

// The proposed construction: skeleton, then (a) infomixed information nodes
// join every global check, (b) each global check is topped up until every
// set of mu+1 groups has at least (r+1)(mu+1)-(d-2) of its variables
// connected, (c) under-connected information nodes in non-mixed groups are
// raised to degree g - (lambda - mu). Throws ConstructionFailure if a
// deficient set runs out of connectable information nodes.
TannerGraph algorithm1(const CodeParams& params);

// The conventional comparison point: every global check is connected to all
// k information nodes plus its own global parity node (degree k+1).
TannerGraph baseline_graph(const CodeParams& params);

struct RealizeOptions {
    std::uint64_t seed = 0;
    int max_retries = 32;
    bool verify_distance = true;
    std::uint64_t distance_budget = 10'000'000;
};

// Draws nonzero coefficients on exactly the graph's edges (seeded), solves
// P from the parity-column submatrix, and redraws on distance shortfall.
// Throws RealizationFailure after max_retries.
CodeRealization realize(const TannerGraph& graph, FieldPtr field, const RealizeOptions& opt);

// construct + realize in one step
CodeRealization build(const BuildConfig& config);

// Matrix artifact: header (params, field, seed, info columns) plus
// row-major hex H and P.
std::string write_matrix_text(const CodeRealization& real);
struct MatrixFile {
    CodeParams params;
    int field_degree = 0;
    std::uint32_t reduction_poly = 0;
    std::uint64_t seed = 0;
    std::vector<int> info_cols;
    FieldMatrix H, P;
};
MatrixFile parse_matrix_text(const std::string& text);  // throws ParseError

// Reattaches a parsed matrix file to its graph, checking consistency
// (params, column classification, support pattern). Throws ParseError.
CodeRealization attach_matrix(const TannerGraph& graph, const MatrixFile& mf);

}  // namespace lrc

#endif
