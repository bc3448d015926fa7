#ifndef LRC_CODEC_HPP
#define LRC_CODEC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lrc/builder.hpp"
#include "lrc/field.hpp"

namespace lrc {

/*
 * A stripe of l rows encoded into n blocks (code coordinates: columns
 * [0, k) are the data blocks, [k, n) the parities). Symbols are stored
 * column-major; block b is column b.
 */
struct Stripe {
    int l = 0, n = 0, k = 0;
    std::vector<Gf> symbols;  // column-major, l * n

    Gf at(int row, int block) const { return symbols[static_cast<std::size_t>(block) * l + row]; }
    Gf& at(int row, int block) { return symbols[static_cast<std::size_t>(block) * l + row]; }
    std::span<const Gf> block(int b) const { return {symbols.data() + static_cast<std::size_t>(b) * l, static_cast<std::size_t>(l)}; }

    bool operator==(const Stripe& o) const = default;
};

struct ErasurePattern {
    std::vector<int> erased;  // block indices in [0, n), code coordinates
};

// Systematic encode: coded columns [0,k) equal the data columns, parity
// column j is data * P column j. data is l x k row-major.
Stripe encode(const CodeRealization& real, const std::vector<Gf>& data, int l);

struct DecodeResult {
    Stripe stripe;
    std::vector<int> blocks_read;  // surviving blocks referenced by the solver
};

// Recovers erased blocks by solving the H-restricted system per row.
// Exact for any pattern of at most d-1 erasures; beyond that decided by
// rank (throws Undecodable when the restricted system is rank deficient).
DecodeResult decode_erasures(const CodeRealization& real, const Stripe& holes, const ErasurePattern& pattern);

struct RepairResult {
    std::vector<Gf> column;        // the reconstructed block
    std::vector<int> blocks_read;  // the other r members of its group
};

// Single-block repair through the failed block's local check equation only.
RepairResult local_repair(const CodeRealization& real, const Stripe& stripe, int failed);

struct UpdateResult {
    std::vector<int> parities_written;  // support row of the updated block
};

// Delta-update of information block i: parity j changes by delta * P(i,j).
// Zero deltas still count their structural parity set (read-modify-write
// accounting).
UpdateResult apply_update(const CodeRealization& real, Stripe& stripe, int info_index,
                          std::span<const Gf> new_column);

// Stripe file: magic, header (n, k, l, m, reduction polynomial), then
// column-major symbols packed little-endian (1 byte per symbol for m <= 8,
// 2 bytes for m <= 16).
std::string write_stripe_bytes(const Stripe& stripe, const FieldContext& field);
Stripe parse_stripe_bytes(const std::string& bytes, const FieldContext& field);  // throws ParseError

}  // namespace lrc

#endif
