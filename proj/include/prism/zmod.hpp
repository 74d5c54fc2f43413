#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact linear algebra over Z/p^N.  Everything downstream (ideal
// membership, division by distinguished elements, kernel computations)
// reduces to the routines in this header.  Z/p^N is not a domain, so the
// canonical echelon form with correct row-span semantics is the Howell
// form, not Hermite or Smith.

namespace prism {

struct zmod_error : std::runtime_error {
    explicit zmod_error(const std::string& what) : std::runtime_error(what) {}
};

// Dense matrix over Z/p^N, entries reduced to [0, p^N).
struct ZModMatrix {
    std::uint64_t p = 2;
    unsigned N = 1;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> a;  // row-major

    ZModMatrix() = default;
    ZModMatrix(std::uint64_t p_, unsigned N_, std::size_t r, std::size_t c);

    std::uint64_t modulus() const;
    std::uint64_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static ZModMatrix identity(std::uint64_t p, unsigned N, std::size_t n);
    static ZModMatrix from_rows(std::uint64_t p, unsigned N,
                                const std::vector<std::vector<std::uint64_t>>& rows);

    bool row_is_zero(std::size_t r) const;
    std::vector<std::uint64_t> row(std::size_t r) const;
    bool operator==(const ZModMatrix& o) const;
};

ZModMatrix matmul(const ZModMatrix& x, const ZModMatrix& y);

// p-adic valuation of x in Z/p^N; val(0) = N.
unsigned padic_val(std::uint64_t x, std::uint64_t p, unsigned N);

std::uint64_t pow_u64(std::uint64_t b, unsigned e);

// Inverse of a unit mod p^N. Throws if not a unit.
std::uint64_t unit_inverse(std::uint64_t u, std::uint64_t p, unsigned N);

// Result of howell_form.  The input is padded with `cols` zero rows so
// that every row operation is unimodular; h = t * padded(m) holds exactly
// and t is invertible over Z/p^N.  The first `pivot_count` rows of h are
// the canonical nonzero part.
struct HowellForm {
    ZModMatrix h;
    ZModMatrix t;
    std::size_t padded_rows = 0;
    std::size_t pivot_count = 0;
    // pivot_col[i], pivot_val[i] for row i < pivot_count
    std::vector<std::size_t> pivot_col;
    std::vector<unsigned> pivot_val;
};

HowellForm howell_form(const ZModMatrix& m);

// Canonical matrix of the row span: the nonzero rows of the Howell form.
ZModMatrix span_basis(const ZModMatrix& m);

struct ReduceResult {
    bool member = false;
    // coefficients expressing v against the rows of the original
    // generator matrix (only meaningful when member)
    std::optional<std::vector<std::uint64_t>> witness;
    std::vector<std::uint64_t> normal_form;
};

// Canonical residue of v against the row span of gens; member iff the
// residue vanishes.
ReduceResult ideal_reduce(const ZModMatrix& gens, const std::vector<std::uint64_t>& v);
ReduceResult ideal_reduce(const HowellForm& hf, std::size_t gen_rows,
                          const std::vector<std::uint64_t>& v);

struct SolveResult {
    std::vector<std::uint64_t> x0;   // one solution of x * m = b
    ZModMatrix kernel;               // generating set of {x : x * m = 0}
};

// Solve x * m = b (row-vector convention, matching the repo-wide rule that
// module elements are rows and generators are stacked as rows).
std::optional<SolveResult> solve_mod(const ZModMatrix& m, const std::vector<std::uint64_t>& b);

// log_p of the cardinality of the row span.
unsigned span_logp_cardinality(const ZModMatrix& m);

bool span_contains(const HowellForm& hf, const std::vector<std::uint64_t>& v);

// Union of the row spans of x and y, as stacked rows.
ZModMatrix stack(const ZModMatrix& x, const ZModMatrix& y);

bool spans_equal(const ZModMatrix& x, const ZModMatrix& y);

}  // namespace prism
