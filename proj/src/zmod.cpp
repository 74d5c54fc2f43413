#include "prism/zmod.hpp"

#include <algorithm>

namespace prism {

namespace {

std::uint64_t mulmod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % m);
}

std::uint64_t submod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
    return x >= y ? x - y : x + (m - y);
}

}  // namespace

ZModMatrix::ZModMatrix(std::uint64_t p_, unsigned N_, std::size_t r, std::size_t c)
    : p(p_), N(N_), rows(r), cols(c), a(r * c, 0) {}

std::uint64_t ZModMatrix::modulus() const { return pow_u64(p, N); }

ZModMatrix ZModMatrix::identity(std::uint64_t p, unsigned N, std::size_t n) {
    ZModMatrix m(p, N, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ZModMatrix ZModMatrix::from_rows(std::uint64_t p, unsigned N,
                                 const std::vector<std::vector<std::uint64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    ZModMatrix m(p, N, rows.size(), c);
    std::uint64_t mod = m.modulus();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw zmod_error("ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j] % mod;
    }
    return m;
}

bool ZModMatrix::row_is_zero(std::size_t r) const {
    for (std::size_t j = 0; j < cols; ++j)
        if (at(r, j) != 0) return false;
    return true;
}

std::vector<std::uint64_t> ZModMatrix::row(std::size_t r) const {
    return std::vector<std::uint64_t>(a.begin() + r * cols, a.begin() + (r + 1) * cols);
}

bool ZModMatrix::operator==(const ZModMatrix& o) const {
    return p == o.p && N == o.N && rows == o.rows && cols == o.cols && a == o.a;
}

ZModMatrix matmul(const ZModMatrix& x, const ZModMatrix& y) {
    if (x.cols != y.rows || x.p != y.p || x.N != y.N) throw zmod_error("matmul shape mismatch");
    ZModMatrix z(x.p, x.N, x.rows, y.cols);
    std::uint64_t mod = x.modulus();
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            std::uint64_t v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                std::uint64_t t = z.at(i, j) + mulmod(v, y.at(k, j), mod);
                z.at(i, j) = t >= mod ? t - mod : t;
            }
        }
    return z;
}

unsigned padic_val(std::uint64_t x, std::uint64_t p, unsigned N) {
    if (x == 0) return N;
    unsigned v = 0;
    while (v < N && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::uint64_t unit_inverse(std::uint64_t u, std::uint64_t p, unsigned N) {
    std::uint64_t mod = pow_u64(p, N);
    u %= mod;
    if (u % p == 0) throw zmod_error("unit_inverse: not a unit");
    // Newton/Hensel lift of the inverse mod p.
    std::uint64_t x = 1;
    {
        // inverse mod p by brute extended gcd (p is small or we just use
        // Fermat when p is prime; p is always prime here)
        std::uint64_t up = u % p;
        std::uint64_t acc = 1, base = up, e = p - 2;
        while (e) {
            if (e & 1) acc = (acc * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        x = acc == 0 ? 1 : acc;
    }
    // x := x(2 - ux) doubles correct digits each step
    for (int i = 0; i < 7; ++i) {
        unsigned __int128 ux = static_cast<unsigned __int128>(u) * x % mod;
        std::uint64_t two_minus = submod(2 % mod, static_cast<std::uint64_t>(ux), mod);
        x = mulmod(x, two_minus, mod);
    }
    if (mulmod(u, x, mod) != 1) throw zmod_error("unit_inverse: lift failed");
    return x;
}

namespace {

struct Work {
    std::uint64_t p;
    unsigned N;
    std::uint64_t mod;
    std::size_t cols;
    ZModMatrix w;  // padded working matrix
    ZModMatrix t;  // transform
    // pad rows that have never been written; spawned partial-pivot rows
    // must land on one of these, or kernel generators get merged
    std::vector<bool> virgin;
    // row' -= f * row
    void axpy(std::size_t dst, std::size_t src, std::uint64_t f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < cols; ++j)
            w.at(dst, j) = submod(w.at(dst, j), mulmod(f, w.at(src, j), mod), mod);
        for (std::size_t j = 0; j < t.cols; ++j)
            t.at(dst, j) = submod(t.at(dst, j), mulmod(f, t.at(src, j), mod), mod);
        virgin[dst] = false;
    }
    void scale(std::size_t r, std::uint64_t u) {
        for (std::size_t j = 0; j < cols; ++j) w.at(r, j) = mulmod(w.at(r, j), u, mod);
        for (std::size_t j = 0; j < t.cols; ++j) t.at(r, j) = mulmod(t.at(r, j), u, mod);
    }
    void swap_rows(std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(w.at(r1, j), w.at(r2, j));
        for (std::size_t j = 0; j < t.cols; ++j) std::swap(t.at(r1, j), t.at(r2, j));
        std::swap(virgin[r1], virgin[r2]);
    }
};

}  // namespace

HowellForm howell_form(const ZModMatrix& m) {
    const std::uint64_t p = m.p;
    const unsigned N = m.N;
    const std::uint64_t mod = pow_u64(p, N);
    const std::size_t pr = m.rows + m.cols;  // pad with cols zero rows

    Work wk{p,
            N,
            mod,
            m.cols,
            ZModMatrix(p, N, pr, m.cols),
            ZModMatrix::identity(p, N, pr),
            std::vector<bool>(pr, false)};
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) wk.w.at(i, j) = m.at(i, j);
    for (std::size_t i = m.rows; i < pr; ++i) wk.virgin[i] = true;

    std::size_t done = 0;  // rows 0..done-1 are placed pivots
    std::vector<std::size_t> pcol;
    std::vector<unsigned> pval;

    for (std::size_t c = 0; c < m.cols; ++c) {
        // best pivot among rows [done, pr)
        std::size_t best = pr;
        unsigned bestv = N;
        for (std::size_t r = done; r < pr; ++r) {
            unsigned v = padic_val(wk.w.at(r, c), p, N);
            if (v < bestv) {
                bestv = v;
                best = r;
            }
        }
        if (best == pr) continue;  // column has no pivot
        wk.swap_rows(done, best);
        // normalize leading entry to p^v
        std::uint64_t lead = wk.w.at(done, c);
        std::uint64_t upart = lead / pow_u64(p, bestv);
        wk.scale(done, unit_inverse(upart, p, N));
        std::uint64_t pv = pow_u64(p, bestv);
        // eliminate below
        for (std::size_t r = done + 1; r < pr; ++r) {
            std::uint64_t e = wk.w.at(r, c);
            if (e == 0) continue;
            wk.axpy(r, done, e / pv);
        }
        // spawn the p^(N-v) multiple into a fresh pad row; it generates the
        // partial-pivot span needed for Howell semantics
        if (bestv > 0) {
            std::size_t pad = done + 1;
            while (pad < pr && !wk.virgin[pad]) ++pad;
            if (pad >= pr) throw zmod_error("howell_form: pad rows exhausted");
            // pad += p^(N-v) * pivot  (add a multiple of a row to a zero row)
            wk.axpy(pad, done, mod - pow_u64(p, N - bestv));
        }
        pcol.push_back(c);
        pval.push_back(bestv);
        ++done;
    }

    // canonical reduction above pivots: entry above pivot p^v reduced mod p^v
    for (std::size_t i = 0; i < done; ++i) {
        std::uint64_t pv = pow_u64(p, pval[i]);
        for (std::size_t r = 0; r < i; ++r) {
            std::uint64_t e = wk.w.at(r, pcol[i]);
            std::uint64_t f = e / pv;
            wk.axpy(r, i, f);
        }
    }

    HowellForm out;
    out.h = std::move(wk.w);
    out.t = std::move(wk.t);
    out.padded_rows = pr;
    out.pivot_count = done;
    out.pivot_col = std::move(pcol);
    out.pivot_val = std::move(pval);
    return out;
}

ZModMatrix span_basis(const ZModMatrix& m) {
    HowellForm hf = howell_form(m);
    ZModMatrix b(m.p, m.N, hf.pivot_count, m.cols);
    for (std::size_t i = 0; i < hf.pivot_count; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) b.at(i, j) = hf.h.at(i, j);
    return b;
}

ReduceResult ideal_reduce(const HowellForm& hf, std::size_t gen_rows,
                          const std::vector<std::uint64_t>& v) {
    const ZModMatrix& h = hf.h;
    if (v.size() != h.cols) throw zmod_error("ideal_reduce dimension mismatch");
    const std::uint64_t p = h.p;
    const unsigned N = h.N;
    const std::uint64_t mod = pow_u64(p, N);

    std::vector<std::uint64_t> r = v;
    for (auto& x : r) x %= mod;
    std::vector<std::uint64_t> coeff(hf.padded_rows, 0);
    for (std::size_t i = 0; i < hf.pivot_count; ++i) {
        std::size_t c = hf.pivot_col[i];
        std::uint64_t pv = pow_u64(p, hf.pivot_val[i]);
        std::uint64_t f = r[c] / pv;  // canonical: leave residue mod p^v
        if (f == 0) continue;
        for (std::size_t j = 0; j < h.cols; ++j)
            r[j] = submod(r[j], mulmod(f, h.at(i, j), mod), mod);
        coeff[i] = f;
    }
    ReduceResult out;
    out.normal_form = r;
    out.member = std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
    if (out.member) {
        // witness in terms of the original generator rows: coeff * t,
        // restricted to the unpadded coordinates
        std::vector<std::uint64_t> w(gen_rows, 0);
        for (std::size_t i = 0; i < hf.padded_rows; ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t j = 0; j < gen_rows; ++j) {
                std::uint64_t s = w[j] + mulmod(coeff[i], hf.t.at(i, j), mod);
                w[j] = s >= mod ? s - mod : s;
            }
        }
        out.witness = std::move(w);
    }
    return out;
}

ReduceResult ideal_reduce(const ZModMatrix& gens, const std::vector<std::uint64_t>& v) {
    return ideal_reduce(howell_form(gens), gens.rows, v);
}

std::optional<SolveResult> solve_mod(const ZModMatrix& m, const std::vector<std::uint64_t>& b) {
    if (b.size() != m.cols) throw zmod_error("solve_mod dimension mismatch");
    HowellForm hf = howell_form(m);
    const std::uint64_t p = m.p;
    const unsigned N = m.N;
    const std::uint64_t mod = pow_u64(p, N);

    std::vector<std::uint64_t> r = b;
    for (auto& x : r) x %= mod;
    std::vector<std::uint64_t> coeff(hf.padded_rows, 0);
    for (std::size_t i = 0; i < hf.pivot_count; ++i) {
        std::size_t c = hf.pivot_col[i];
        std::uint64_t pv = pow_u64(p, hf.pivot_val[i]);
        if (r[c] % pv != 0) return std::nullopt;
        std::uint64_t f = r[c] / pv;
        if (f == 0) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            r[j] = submod(r[j], mulmod(f, hf.h.at(i, j), mod), mod);
        coeff[i] = f;
    }
    if (!std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; }))
        return std::nullopt;

    SolveResult out;
    out.x0.assign(m.rows, 0);
    for (std::size_t i = 0; i < hf.padded_rows; ++i) {
        if (coeff[i] == 0) continue;
        for (std::size_t j = 0; j < m.rows; ++j) {
            std::uint64_t s = out.x0[j] + mulmod(coeff[i], hf.t.at(i, j), mod);
            out.x0[j] = s >= mod ? s - mod : s;
        }
    }
    // kernel generators: transform rows sitting over zero rows of h,
    // restricted to the original coordinates
    std::vector<std::vector<std::uint64_t>> kg;
    for (std::size_t i = hf.pivot_count; i < hf.padded_rows; ++i) {
        std::vector<std::uint64_t> g(m.rows, 0);
        bool nz = false;
        for (std::size_t j = 0; j < m.rows; ++j) {
            g[j] = hf.t.at(i, j);
            nz = nz || g[j] != 0;
        }
        if (nz) kg.push_back(std::move(g));
    }
    if (kg.empty())
        out.kernel = ZModMatrix(p, N, 0, m.rows);
    else
        out.kernel = span_basis(ZModMatrix::from_rows(p, N, kg));
    return out;
}

unsigned span_logp_cardinality(const ZModMatrix& m) {
    HowellForm hf = howell_form(m);
    unsigned s = 0;
    for (std::size_t i = 0; i < hf.pivot_count; ++i) s += m.N - hf.pivot_val[i];
    return s;
}

bool span_contains(const HowellForm& hf, const std::vector<std::uint64_t>& v) {
    return ideal_reduce(hf, 0, v).member;
}

ZModMatrix stack(const ZModMatrix& x, const ZModMatrix& y) {
    if (x.cols != y.cols || x.p != y.p || x.N != y.N) throw zmod_error("stack shape mismatch");
    ZModMatrix z(x.p, x.N, x.rows + y.rows, x.cols);
    std::copy(x.a.begin(), x.a.end(), z.a.begin());
    std::copy(y.a.begin(), y.a.end(), z.a.begin() + x.a.size());
    return z;
}

bool spans_equal(const ZModMatrix& x, const ZModMatrix& y) {
    return span_basis(x) == span_basis(y);
}

}  // namespace prism
