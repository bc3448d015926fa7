#include "lrc/codec.hpp"

#include <algorithm>
#include <set>

namespace lrc {

Stripe encode(const CodeRealization& real, const std::vector<Gf>& data, int l) {
    const CodeParams& p = real.graph.params;
    if (l < 1 || data.size() != static_cast<std::size_t>(l) * p.k)
        throw ShapeMismatch("encode expects l*k data symbols, got " + std::to_string(data.size()));
    const FieldContext& f = *real.field;
    for (Gf v : data)
        if (v >= f.order()) throw ShapeMismatch("data symbol out of field range");
    Stripe s;
    s.l = l;
    s.n = p.n;
    s.k = p.k;
    s.symbols.assign(static_cast<std::size_t>(l) * p.n, 0);
    for (int row = 0; row < l; ++row)
        for (int i = 0; i < p.k; ++i) s.at(row, i) = data[static_cast<std::size_t>(row) * p.k + i];
    for (int j = 0; j < p.n - p.k; ++j)
        for (int row = 0; row < l; ++row) {
            Gf acc = 0;
            for (int i = 0; i < p.k; ++i) {
                Gf coeff = real.P.at(i, j);
                if (coeff && s.at(row, i)) acc ^= f.mul(coeff, s.at(row, i));
            }
            s.at(row, p.k + j) = acc;
        }
    return s;
}

DecodeResult decode_erasures(const CodeRealization& real, const Stripe& holes, const ErasurePattern& pattern) {
    const CodeParams& p = real.graph.params;
    if (holes.n != p.n || holes.k != p.k) throw ShapeMismatch("stripe shape does not match the realization");
    const FieldContext& f = *real.field;
    const int nk = p.n - p.k;

    std::vector<int> erased = pattern.erased;
    std::sort(erased.begin(), erased.end());
    erased.erase(std::unique(erased.begin(), erased.end()), erased.end());
    for (int b : erased)
        if (b < 0 || b >= p.n) throw InvalidParams("erased block " + std::to_string(b) + " out of range");

    DecodeResult out;
    out.stripe = holes;
    if (erased.empty()) return out;

    // graph-order erased flags (H columns are graph-ordered)
    std::vector<bool> erased_node(p.n, false);
    for (int b : erased) erased_node[real.node_of_code(b)] = true;

    const int e = static_cast<int>(erased.size());
    // restricted system: for each check row, sum over erased columns equals
    // the known sum over surviving columns
    FieldMatrix he(real.field, nk, e);
    for (int row = 0; row < nk; ++row)
        for (int j = 0; j < e; ++j) he.at(row, j) = real.H.at(row, real.node_of_code(erased[j]));

    // eliminate [he | rhs-builder] once; rhs carries one column per stripe row
    FieldMatrix rhs(real.field, nk, holes.l);
    std::set<int> reads;
    for (int row = 0; row < nk; ++row) {
        bool relevant = false;
        for (int j = 0; j < e; ++j)
            if (he.at(row, j) != 0) relevant = true;
        if (!relevant) continue;
        for (int v = 0; v < p.n; ++v) {
            Gf coeff = real.H.at(row, v);
            if (coeff == 0 || erased_node[v]) continue;
            int b = real.code_of_node[v];
            reads.insert(b);
            for (int sr = 0; sr < holes.l; ++sr)
                if (holes.at(sr, b)) rhs.at(row, sr) ^= f.mul(coeff, holes.at(sr, b));
        }
    }

    // Gaussian elimination on he, applied to rhs
    int rank = 0;
    std::vector<int> pivot_row_of(e, -1);
    for (int col = 0; col < e; ++col) {
        int piv = -1;
        for (int row = rank; row < nk; ++row)
            if (he.at(row, col) != 0) {
                piv = row;
                break;
            }
        if (piv < 0) continue;
        for (int c = 0; c < e; ++c) std::swap(he.at(rank, c), he.at(piv, c));
        for (int c = 0; c < holes.l; ++c) std::swap(rhs.at(rank, c), rhs.at(piv, c));
        Gf inv = f.inv(he.at(rank, col));
        for (int c = 0; c < e; ++c) he.at(rank, c) = f.mul(he.at(rank, c), inv);
        for (int c = 0; c < holes.l; ++c) rhs.at(rank, c) = f.mul(rhs.at(rank, c), inv);
        for (int row = 0; row < nk; ++row) {
            if (row == rank) continue;
            Gf factor = he.at(row, col);
            if (factor == 0) continue;
            for (int c = 0; c < e; ++c) he.at(row, c) ^= f.mul(factor, he.at(rank, c));
            for (int c = 0; c < holes.l; ++c) rhs.at(row, c) ^= f.mul(factor, rhs.at(rank, c));
        }
        pivot_row_of[col] = rank;
        ++rank;
    }
    if (rank < e)
        throw Undecodable("erasure pattern of " + std::to_string(e) + " blocks is rank deficient (rank " +
                          std::to_string(rank) + ")");
    for (int j = 0; j < e; ++j)
        for (int sr = 0; sr < holes.l; ++sr) out.stripe.at(sr, erased[j]) = rhs.at(pivot_row_of[j], sr);
    out.blocks_read.assign(reads.begin(), reads.end());
    return out;
}

RepairResult local_repair(const CodeRealization& real, const Stripe& stripe, int failed) {
    const CodeParams& p = real.graph.params;
    if (stripe.n != p.n) throw ShapeMismatch("stripe shape does not match the realization");
    if (failed < 0 || failed >= p.n) throw InvalidParams("failed block out of range");
    const FieldContext& f = *real.field;

    int node = real.node_of_code(failed);
    int group = real.graph.variables[node].group_id;
    const CheckNode& check = real.graph.local_check_of(group);

    RepairResult out;
    out.column.assign(stripe.l, 0);
    Gf self_coeff = real.H.at(check.index, node);
    Gf self_inv = f.inv(self_coeff);
    for (int v : check.neighbors) {
        if (v == node) continue;
        int b = real.code_of_node[v];
        out.blocks_read.push_back(b);
        Gf coeff = real.H.at(check.index, v);
        for (int row = 0; row < stripe.l; ++row)
            if (stripe.at(row, b)) out.column[row] ^= f.mul(coeff, stripe.at(row, b));
    }
    for (int row = 0; row < stripe.l; ++row) out.column[row] = f.mul(out.column[row], self_inv);
    std::sort(out.blocks_read.begin(), out.blocks_read.end());
    return out;
}

UpdateResult apply_update(const CodeRealization& real, Stripe& stripe, int info_index,
                          std::span<const Gf> new_column) {
    const CodeParams& p = real.graph.params;
    if (stripe.n != p.n) throw ShapeMismatch("stripe shape does not match the realization");
    if (info_index < 0 || info_index >= p.k) throw InvalidParams("information index out of range");
    if (static_cast<int>(new_column.size()) != stripe.l)
        throw ShapeMismatch("update column must have l symbols");
    const FieldContext& f = *real.field;

    UpdateResult out;
    std::vector<Gf> delta(stripe.l);
    for (int row = 0; row < stripe.l; ++row) delta[row] = stripe.at(row, info_index) ^ new_column[row];
    for (int row = 0; row < stripe.l; ++row) stripe.at(row, info_index) = new_column[row];
    for (int j = 0; j < p.n - p.k; ++j) {
        Gf coeff = real.P.at(info_index, j);
        if (coeff == 0) continue;
        out.parities_written.push_back(p.k + j);
        for (int row = 0; row < stripe.l; ++row)
            if (delta[row]) stripe.at(row, p.k + j) ^= f.mul(coeff, delta[row]);
    }
    return out;
}

namespace {
constexpr char kStripeMagic[8] = {'L', 'R', 'C', 'S', 'T', 'R', 'P', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
    return v;
}
}  // namespace

std::string write_stripe_bytes(const Stripe& stripe, const FieldContext& field) {
    std::string out(kStripeMagic, sizeof kStripeMagic);
    put_u32(out, static_cast<std::uint32_t>(stripe.n));
    put_u32(out, static_cast<std::uint32_t>(stripe.k));
    put_u32(out, static_cast<std::uint32_t>(stripe.l));
    put_u32(out, static_cast<std::uint32_t>(field.degree()));
    put_u32(out, field.reduction_poly());
    int bytes = field.degree() <= 8 ? 1 : 2;
    for (Gf v : stripe.symbols) {
        out.push_back(static_cast<char>(v & 0xFF));
        if (bytes == 2) out.push_back(static_cast<char>(v >> 8));
    }
    return out;
}

Stripe parse_stripe_bytes(const std::string& bytes, const FieldContext& field) {
    if (bytes.size() < 28 || bytes.compare(0, 8, kStripeMagic, 8) != 0)
        throw ParseError("stripe file: bad magic");
    Stripe s;
    s.n = static_cast<int>(get_u32(bytes, 8));
    s.k = static_cast<int>(get_u32(bytes, 12));
    s.l = static_cast<int>(get_u32(bytes, 16));
    int m = static_cast<int>(get_u32(bytes, 20));
    std::uint32_t poly = get_u32(bytes, 24);
    if (m != field.degree() || poly != field.reduction_poly())
        throw ParseError("stripe file: field mismatch (file has m=" + std::to_string(m) + ")");
    if (s.n <= 0 || s.k <= 0 || s.k > s.n || s.l <= 0) throw ParseError("stripe file: bad dimensions");
    int per = m <= 8 ? 1 : 2;
    std::size_t expect = 28 + static_cast<std::size_t>(s.l) * s.n * per;
    if (bytes.size() != expect)
        throw ParseError("stripe file: expected " + std::to_string(expect) + " bytes, got " +
                         std::to_string(bytes.size()));
    s.symbols.resize(static_cast<std::size_t>(s.l) * s.n);
    for (std::size_t i = 0; i < s.symbols.size(); ++i) {
        std::uint32_t v = static_cast<unsigned char>(bytes[28 + i * per]);
        if (per == 2) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[28 + i * per + 1])) << 8;
        if (v >= field.order()) throw ParseError("stripe file: symbol out of field range");
        s.symbols[i] = static_cast<Gf>(v);
    }
    return s;
}

}  // namespace lrc
