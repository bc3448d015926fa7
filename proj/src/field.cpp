#include "lrc/field.hpp"

#include <bit>
#include <string>

#if defined(__PCLMUL__)
#include <immintrin.h>
#endif

namespace lrc {

namespace {

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Carry-less product of two GF(2) polynomials (bit patterns).
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
    __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
    __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_clmulepi64_si128(va, vb, 0)));
#else
    std::uint64_t p = 0;
    while (b) {
        p ^= a & (0 - (b & 1));
        a <<= 1;
        b >>= 1;
    }
    return p;
#endif
}

std::uint32_t poly_mod(std::uint64_t a, std::uint32_t mod) {
    int dm = poly_degree(mod);
    while (a >> dm) {
        int da = 63 - static_cast<int>(std::countl_zero(a));
        a ^= static_cast<std::uint64_t>(mod) << (da - dm);
    }
    return static_cast<std::uint32_t>(a);
}

bool is_irreducible(std::uint32_t p) {
    int m = poly_degree(p);
    if (m < 1) return false;
    // exhaustive divisor check: any factorization has a factor of degree <= m/2
    for (std::uint32_t q = 2; q < (1u << (m / 2 + 1)); ++q) {
        if (poly_degree(q) < 1) continue;
        if (poly_mod(p, q) == 0) return false;
    }
    return true;
}

}  // namespace

std::uint32_t FieldContext::default_poly(int degree) {
    // Low-weight irreducible polynomials; degree 8 and 16 follow the
    // common 0x11B / 0x1100B conventions.
    static constexpr std::uint32_t kPolys[17] = {
        0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,    0x89,  0x11B,
        0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003,  0x1100B};
    if (degree < 1 || degree > 16) throw InvalidParams("field degree must be in [1,16], got " + std::to_string(degree));
    return kPolys[degree];
}

FieldPtr FieldContext::make(int degree, std::uint32_t poly) {
    if (poly == 0) poly = default_poly(degree);
    return std::shared_ptr<const FieldContext>(new FieldContext(degree, poly));
}

FieldContext::FieldContext(int degree, std::uint32_t poly) : m_(degree), poly_(poly) {
    if (m_ < 1 || m_ > 16) throw InvalidParams("field degree must be in [1,16], got " + std::to_string(m_));
    if (poly_degree(poly_) != m_)
        throw InvalidParams("reduction polynomial " + std::to_string(poly_) + " does not have degree " +
                            std::to_string(m_));
    if (!is_irreducible(poly_)) throw InvalidParams("reduction polynomial is not irreducible");
    q_ = 1u << m_;
    use_tables_ = m_ <= 12;
    if (use_tables_) {
        if (q_ == 2) {  // GF(2): trivial multiplicative group
            exp_.assign(2, 1);
            log_.assign(2, 0);
            return;
        }
        // find a generator of the multiplicative group (x need not be one,
        // e.g. for the degree-8 polynomial 0x11B) and tabulate its powers
        exp_.assign(2 * (q_ - 1), 0);
        log_.assign(q_, 0);
        for (std::uint32_t gen = 2; gen < q_; ++gen) {
            std::uint32_t v = 1;
            bool ok = true;
            for (std::uint32_t i = 0; i + 1 < q_; ++i) {
                exp_[i] = static_cast<Gf>(v);
                if (v == 1 && i > 0) {
                    ok = false;  // order of gen divides i < q-1
                    break;
                }
                v = poly_mod(clmul(v, gen), poly_);
            }
            if (ok && v == 1) {
                for (std::uint32_t i = 0; i + 1 < q_; ++i) {
                    log_[exp_[i]] = static_cast<Gf>(i);
                    exp_[i + q_ - 1] = exp_[i];
                }
                return;
            }
        }
        throw Error("no multiplicative generator found (unreachable for an irreducible modulus)");
    }
    // reduction table for the carry-less path: entry h is h*x^m mod poly
    reduce_hi_.assign(1u << (m_ - 1), 0);
    for (std::uint32_t h = 1; h < (1u << (m_ - 1)); ++h)
        reduce_hi_[h] = static_cast<Gf>(poly_mod(static_cast<std::uint64_t>(h) << m_, poly_));
}

Gf FieldContext::clmul_reduce(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t p = clmul(a, b);  // degree <= 2m-2, so high part fits the table
    return static_cast<Gf>((p & (q_ - 1)) ^ reduce_hi_[p >> m_]);
}

Gf FieldContext::pow(Gf a, std::uint64_t e) const {
    Gf r = 1;
    Gf base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Gf FieldContext::inv(Gf a) const {
    if (a == 0) throw ZeroInverse("inverse of zero field element");
    if (use_tables_) {
        if (a == 1) return 1;
        return exp_[q_ - 1 - log_[a]];
    }
    return pow(a, q_ - 2);  // Fermat
}

FieldMatrix::FieldMatrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw ShapeMismatch("negative matrix dimension");
}

FieldMatrix FieldMatrix::identity(FieldPtr field, int n) {
    FieldMatrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw ShapeMismatch("matrix product shape mismatch: " + std::to_string(cols_) + " vs " +
                            std::to_string(rhs.rows_));
    const FieldContext& f = *field_;
    FieldMatrix out(field_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            Gf v = at(i, j);
            if (v == 0) continue;
            for (int c = 0; c < rhs.cols_; ++c) out.at(i, c) ^= f.mul(v, rhs.at(j, c));
        }
    }
    return out;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix out(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

FieldMatrix FieldMatrix::columns(const std::vector<int>& idx) const {
    FieldMatrix out(field_, rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out.at(i, static_cast<int>(j)) = at(i, idx[j]);
    return out;
}

int FieldMatrix::rank() const {
    FieldMatrix w = *this;
    const FieldContext& f = *field_;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r) {
            if (w.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int c = 0; c < cols_; ++c) std::swap(w.at(rank, c), w.at(pivot, c));
        Gf piv_inv = f.inv(w.at(rank, col));
        for (int r = rank + 1; r < rows_; ++r) {
            Gf factor = f.mul(w.at(r, col), piv_inv);
            if (factor == 0) continue;
            for (int c = col; c < cols_; ++c) w.at(r, c) ^= f.mul(factor, w.at(rank, c));
        }
        ++rank;
    }
    return rank;
}

FieldMatrix FieldMatrix::solve(const FieldMatrix& rhs) const {
    if (rows_ != cols_) throw ShapeMismatch("solve requires a square matrix");
    if (rhs.rows_ != rows_) throw ShapeMismatch("solve right-hand side row mismatch");
    const FieldContext& f = *field_;
    FieldMatrix w = *this;
    FieldMatrix x = rhs;
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int r = col; r < rows_; ++r) {
            if (w.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) throw Singular("singular matrix (rank < " + std::to_string(cols_) + ")");
        if (pivot != col) {
            for (int c = 0; c < cols_; ++c) std::swap(w.at(col, c), w.at(pivot, c));
            for (int c = 0; c < x.cols_; ++c) std::swap(x.at(col, c), x.at(pivot, c));
        }
        Gf piv_inv = f.inv(w.at(col, col));
        for (int c = 0; c < cols_; ++c) w.at(col, c) = f.mul(w.at(col, c), piv_inv);
        for (int c = 0; c < x.cols_; ++c) x.at(col, c) = f.mul(x.at(col, c), piv_inv);
        for (int r = 0; r < rows_; ++r) {
            if (r == col) continue;
            Gf factor = w.at(r, col);
            if (factor == 0) continue;
            for (int c = 0; c < cols_; ++c) w.at(r, c) ^= f.mul(factor, w.at(col, c));
            for (int c = 0; c < x.cols_; ++c) x.at(r, c) ^= f.mul(factor, x.at(col, c));
        }
    }
    return x;
}

FieldMatrix FieldMatrix::inverted() const { return solve(identity(field_, rows_)); }

bool FieldMatrix::is_zero() const {
    for (Gf v : a_)
        if (v != 0) return false;
    return true;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

}  // namespace lrc
