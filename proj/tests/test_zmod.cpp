#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "prism/zmod.hpp"

using namespace prism;

namespace {

// Brute-force row span over Z/p^N for tiny matrices.
std::set<std::vector<std::uint64_t>> brute_span(const ZModMatrix& m) {
    std::uint64_t mod = m.modulus();
    std::set<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> coeff(m.rows, 0);
    while (true) {
        std::vector<std::uint64_t> v(m.cols, 0);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                v[j] = (v[j] + coeff[i] * m.at(i, j)) % mod;
        out.insert(v);
        std::size_t k = 0;
        while (k < m.rows && ++coeff[k] == mod) coeff[k++] = 0;
        if (k == m.rows) break;
    }
    return out;
}

ZModMatrix random_matrix(std::mt19937_64& rng, std::uint64_t p, unsigned N, std::size_t r,
                         std::size_t c) {
    ZModMatrix m(p, N, r, c);
    std::uint64_t mod = m.modulus();
    for (auto& x : m.a) x = rng() % mod;
    return m;
}

}  // namespace

TEST_CASE("howell examples from small moduli") {
    // [[2,0],[0,2]] mod 4 is already canonical
    auto m = ZModMatrix::from_rows(2, 2, {{2, 0}, {0, 2}});
    auto hf = howell_form(m);
    CHECK(hf.pivot_count == 2);
    CHECK(hf.h.at(0, 0) == 2);
    CHECK(hf.h.at(0, 1) == 0);
    CHECK(hf.h.at(1, 0) == 0);
    CHECK(hf.h.at(1, 1) == 2);

    // [[2]] mod 4: span contains 2 but not 1
    auto m2 = ZModMatrix::from_rows(2, 2, {{2}});
    auto hf2 = howell_form(m2);
    CHECK(span_contains(hf2, {2}));
    CHECK(!span_contains(hf2, {1}));

    // [[3,1],[1,3]] mod 8: unit pivot in column 1
    auto m3 = ZModMatrix::from_rows(2, 3, {{3, 1}, {1, 3}});
    auto hf3 = howell_form(m3);
    REQUIRE(hf3.pivot_count >= 1);
    CHECK(hf3.pivot_col[0] == 0);
    CHECK(hf3.pivot_val[0] == 0);
    // oracle: span of the two vectors over Z/8 equals span of the Howell rows
    CHECK(brute_span(m3) == brute_span(span_basis(m3)));
}

TEST_CASE("howell: h = t * padded(m) with unimodular t") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint64_t p = trial % 2 ? 2 : 3;
        unsigned N = 1 + trial % 3;
        auto m = random_matrix(rng, p, N, 1 + trial % 3, 1 + (trial / 2) % 3);
        auto hf = howell_form(m);
        ZModMatrix padded(p, N, hf.padded_rows, m.cols);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) padded.at(i, j) = m.at(i, j);
        CHECK(matmul(hf.t, padded) == hf.h);
        // t invertible: its Howell form must have full unit pivots
        auto tf = howell_form(hf.t);
        REQUIRE(tf.pivot_count == hf.padded_rows);
        for (auto v : tf.pivot_val) CHECK(v == 0);
    }
}

TEST_CASE("howell is idempotent and canonical on span-equal matrices") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint64_t p = trial % 2 ? 2 : 3;
        unsigned N = 1 + trial % 2;
        auto m = random_matrix(rng, p, N, 2, 2);
        auto b = span_basis(m);
        CHECK(span_basis(b) == b);  // idempotent
        // append random combinations of rows: same span, same canonical form
        ZModMatrix m2 = m;
        std::uint64_t mod = m.modulus();
        m2.rows += 1;
        std::uint64_t c0 = rng() % mod, c1 = rng() % mod;
        for (std::size_t j = 0; j < m.cols; ++j)
            m2.a.push_back((c0 * m.at(0, j) + c1 * m.at(1, j)) % mod);
        CHECK(span_basis(m2) == b);
        CHECK(brute_span(m) == brute_span(b));
    }
}

TEST_CASE("solve_mod examples") {
    // 2x = 4 mod 8: x0 = 2, kernel generated by 4
    auto m = ZModMatrix::from_rows(2, 3, {{2}});
    auto sol = solve_mod(m, {4});
    REQUIRE(sol.has_value());
    CHECK((sol->x0[0] * 2) % 8 == 4);
    REQUIRE(sol->kernel.rows == 1);
    CHECK(sol->kernel.at(0, 0) == 4);

    // 2x = 1 mod 8: no solution
    CHECK(!solve_mod(m, {1}).has_value());

    // 0 * x = 0 mod 4: kernel is everything
    auto z = ZModMatrix::from_rows(2, 2, {{0}});
    auto sol2 = solve_mod(z, {0});
    REQUIRE(sol2.has_value());
    CHECK(sol2->x0[0] == 0);
    REQUIRE(sol2->kernel.rows == 1);
    CHECK(sol2->kernel.at(0, 0) == 1);
}

TEST_CASE("solve_mod agrees with exhaustive search at tiny sizes") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        std::uint64_t p = trial % 2 ? 2 : 3;
        unsigned N = (trial % 4 < 2) ? 1 : 2;
        std::size_t rows = 1 + trial % 3, cols = 1 + (trial / 3) % 2;
        auto m = random_matrix(rng, p, N, rows, cols);
        std::vector<std::uint64_t> b(cols);
        std::uint64_t mod = m.modulus();
        for (auto& x : b) x = rng() % mod;

        // exhaustive: enumerate all x
        bool brute_found = false;
        std::set<std::vector<std::uint64_t>> brute_kernel;
        std::vector<std::uint64_t> x(rows, 0);
        while (true) {
            std::vector<std::uint64_t> v(cols, 0);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) v[j] = (v[j] + x[i] * m.at(i, j)) % mod;
            if (v == b) brute_found = true;
            if (std::all_of(v.begin(), v.end(), [](std::uint64_t t) { return t == 0; }))
                brute_kernel.insert(x);
            std::size_t k = 0;
            while (k < rows && ++x[k] == mod) x[k++] = 0;
            if (k == rows) break;
        }

        auto sol = solve_mod(m, b);
        CHECK(sol.has_value() == brute_found);
        if (sol) {
            std::vector<std::uint64_t> v(cols, 0);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    v[j] = (v[j] + sol->x0[i] * m.at(i, j)) % mod;
            CHECK(v == b);
            // kernel span equals brute kernel
            ZModMatrix kg = sol->kernel;
            if (kg.rows == 0) kg = ZModMatrix(p, N, 0, rows);
            CHECK(brute_span(kg).size() == brute_kernel.size());
            for (auto& g : brute_kernel) {
                auto red = ideal_reduce(kg, g);
                CHECK(red.member);
            }
        }
    }
}

TEST_CASE("ideal_reduce examples and exhaustive agreement") {
    // gens {(2,0),(0,2)} mod 4, v=(2,2): member with witness (1,1)
    auto g = ZModMatrix::from_rows(2, 2, {{2, 0}, {0, 2}});
    auto r = ideal_reduce(g, {2, 2});
    CHECK(r.member);
    REQUIRE(r.witness.has_value());
    CHECK(((*r.witness)[0] * 2) % 4 == 2);

    // gens {(2,1)} mod 4, v=(0,2): member via 2*(2,1)
    auto g2 = ZModMatrix::from_rows(2, 2, {{2, 1}});
    auto r2 = ideal_reduce(g2, {0, 2});
    CHECK(r2.member);

    // gens {(2,0)} mod 4, v=(1,0): not member
    auto g3 = ZModMatrix::from_rows(2, 2, {{2, 0}});
    auto r3 = ideal_reduce(g3, {1, 0});
    CHECK(!r3.member);
    CHECK(r3.normal_form[0] == 1);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 80; ++trial) {
        std::uint64_t p = trial % 2 ? 2 : 3;
        unsigned N = 1 + trial % 2;
        auto m = random_matrix(rng, p, N, 2, 2);
        auto span = brute_span(m);
        std::uint64_t mod = m.modulus();
        std::vector<std::uint64_t> v{rng() % mod, rng() % mod};
        auto rr = ideal_reduce(m, v);
        CHECK(rr.member == (span.count(v) > 0));
        if (rr.member) {
            // witness reconstructs v
            std::vector<std::uint64_t> chk(2, 0);
            for (std::size_t i = 0; i < m.rows; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    chk[j] = (chk[j] + (*rr.witness)[i] * m.at(i, j)) % mod;
            CHECK(chk == v);
        }
    }
}
