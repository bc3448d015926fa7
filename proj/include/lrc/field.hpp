#ifndef LRC_FIELD_HPP
#define LRC_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "lrc/errors.hpp"

namespace lrc {

// A field element of GF(2^m), m <= 16, stored by its polynomial bit pattern.
using Gf = std::uint16_t;

/*
 * Arithmetic context for GF(2^m) with a fixed reduction polynomial.
 *
 * The reduction polynomial must have degree exactly m and be irreducible
 * over GF(2); this is validated at construction by an exhaustive divisor
 * check. Multiplication uses log/antilog tables for m <= 12 and a
 * carry-less multiply followed by table-assisted reduction above that;
 * the two strategies agree (see the schoolbook oracle in the test suite).
 *
 * Immutable after construction; safe to share across threads.
 */
class FieldContext {
  public:
    static std::shared_ptr<const FieldContext> make(int degree, std::uint32_t poly = 0);

    // A fixed published irreducible polynomial per degree, for reproducibility.
    static std::uint32_t default_poly(int degree);

    int degree() const { return m_; }
    std::uint32_t reduction_poly() const { return poly_; }
    std::uint32_t order() const { return q_; }  // number of field elements, 2^m

    Gf add(Gf a, Gf b) const { return a ^ b; }
    Gf sub(Gf a, Gf b) const { return a ^ b; }
    Gf mul(Gf a, Gf b) const {
        if (use_tables_) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return clmul_reduce(a, b);
    }
    Gf inv(Gf a) const;
    Gf div(Gf a, Gf b) const { return mul(a, inv(b)); }
    Gf pow(Gf a, std::uint64_t e) const;

    bool operator==(const FieldContext& o) const { return m_ == o.m_ && poly_ == o.poly_; }

  private:
    FieldContext(int degree, std::uint32_t poly);
    Gf clmul_reduce(std::uint32_t a, std::uint32_t b) const;

    int m_;
    std::uint32_t poly_;
    std::uint32_t q_;
    bool use_tables_;
    std::vector<Gf> exp_;        // 2*(q-1) entries, generator powers (m <= 12)
    std::vector<Gf> log_;        // q entries (m <= 12)
    std::vector<Gf> reduce_hi_;  // reduction of h*x^m for h < 2^(m-1) (m > 12)
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/*
 * Dense matrix over GF(2^m). Row-major. Holds G, H, P and message/codeword
 * vectors (as 1-row matrices). Rank, inverse and solve use Gaussian
 * elimination over the field.
 */
class FieldMatrix {
  public:
    FieldMatrix() : rows_(0), cols_(0) {}
    FieldMatrix(FieldPtr field, int rows, int cols);

    static FieldMatrix identity(FieldPtr field, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldContext& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }

    Gf at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    Gf& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    FieldMatrix operator*(const FieldMatrix& rhs) const;  // throws ShapeMismatch
    FieldMatrix transposed() const;
    FieldMatrix columns(const std::vector<int>& idx) const;

    int rank() const;
    FieldMatrix inverted() const;                    // throws Singular
    FieldMatrix solve(const FieldMatrix& rhs) const;  // this * X = rhs, this square

    bool is_zero() const;
    bool operator==(const FieldMatrix& o) const;
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

  private:
    FieldPtr field_;
    int rows_, cols_;
    std::vector<Gf> a_;
};

}  // namespace lrc

#endif
