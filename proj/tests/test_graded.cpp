#include <doctest.h>

#include "stackcoh/errors.hpp"
#include "stackcoh/graded.hpp"

using namespace stackcoh;

namespace {

CochainComplex line_complex(std::uint32_t p, int lo, const std::vector<std::int64_t>& maps)
{
    // k -> k -> ... -> k, one copy of k per degree, d^i = x maps[i].
    int hi = lo + static_cast<int>(maps.size());
    CochainComplex c(p, lo, hi);
    for (int n = lo; n <= hi; ++n)
        c.set_term(n, Term{1, {}, {"e" + std::to_string(n)}});
    for (std::size_t i = 0; i < maps.size(); ++i)
        c.set_differential(lo + int(i), FpMatrix::from_rows(p, {{maps[i]}}));
    return c;
}

CochainComplex shifted_line(std::uint32_t p, int deg)
{
    CochainComplex c(p, deg, deg);
    c.set_term(deg, Term{1, {}, {"x"}});
    return c;
}

}  // namespace

TEST_SUITE("graded")
{
TEST_CASE("cohomology of small complexes")
{
    CochainComplex single(3, 0, 0);
    single.set_term(0, 1);
    auto h = cohomology(single, {-1, 1});
    CHECK(h.total_dim(0) == 1);
    CHECK(h.total_dim(1) == 0);

    auto id = line_complex(5, 0, {1});
    auto hid = cohomology(id, {0, 1});
    CHECK(hid.total_dim(0) == 0);
    CHECK(hid.total_dim(1) == 0);

    // k --0--> k --xn--> k with p | n
    auto c = line_complex(3, 0, {0, 6});
    auto hc = cohomology(c, {0, 2}, true);
    CHECK(hc.total_dim(0) == 1);
    CHECK(hc.total_dim(1) == 1);
    CHECK(hc.total_dim(2) == 1);
    CHECK(hc.cells().at({2, 0, 0}).labels == std::vector<std::string>{"e2"});
}

TEST_CASE("unbounded complexes report indeterminate edges")
{
    CochainComplex c(2, 0, 3, false);
    for (int n = 0; n <= 3; ++n)
        c.set_term(n, 1);
    auto h = cohomology(c, {-1, 4});
    CHECK(h.indeterminate({0, 0, 0}));
    CHECK(h.indeterminate({3, 0, 0}));
    CHECK(h.indeterminate({-1, 0, 0}));
    CHECK_FALSE(h.indeterminate({1, 0, 0}));
    CHECK(h.total_dim(1) == 1);
}

TEST_CASE("d squared check names the degree")
{
    auto c = line_complex(7, 0, {1, 1});
    CHECK_THROWS_WITH_AS(c.check(), doctest::Contains("degree 0"), Error);
}

TEST_CASE("weight splitting")
{
    CochainComplex c(3, 0, 1);
    c.set_term(0, Term{2, {0, 1}, {"a", "b"}});
    c.set_term(1, Term{2, {0, 1}, {"x", "y"}});
    c.set_differential(0, FpMatrix::from_rows(3, {{1, 0}, {0, 0}}));
    c.check();
    auto h = cohomology(c, {0, 1});
    CHECK(h.dim({0, 0, 0}) == 0);
    CHECK(h.dim({0, 0, 1}) == 1);
    CHECK(h.dim({1, 0, 1}) == 1);
    CHECK(h.dim({1, 0, 0}) == 0);

    CochainComplex bad(3, 0, 1);
    bad.set_term(0, Term{1, {0}, {}});
    bad.set_term(1, Term{1, {1}, {}});
    bad.set_differential(0, FpMatrix::from_rows(3, {{1}}));
    CHECK_THROWS_AS(bad.check(), Error);
}

TEST_CASE("mapping fiber of multiplication by n on k[-1]")
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto a = shifted_line(p, 1);
        auto b = shifted_line(p, 1);
        for (std::int64_t n : {std::int64_t(p), std::int64_t(p + 1), std::int64_t(2 * p), std::int64_t(2 * p + 1)}) {
            ChainMap f{&a, &b, {{1, FpMatrix::from_rows(p, {{n}})}}};
            auto fib = mapping_fiber(f);
            auto h = cohomology(fib, {0, 3});
            std::size_t expect = n % p == 0 ? 1 : 0;
            CHECK(h.total_dim(1) == expect);
            CHECK(h.total_dim(2) == expect);
            CHECK(h.total_dim(0) == 0);
            CHECK(h.total_dim(3) == 0);
        }
    }
    auto a = line_complex(3, 0, {1});
    ChainMap id{&a, &a, {{0, FpMatrix::identity(3, 1)}, {1, FpMatrix::identity(3, 1)}}};
    auto h = cohomology(mapping_fiber(id), {-1, 3});
    for (int n = -1; n <= 3; ++n)
        CHECK(h.total_dim(n) == 0);
}

TEST_CASE("mapping fiber rejects non-commuting squares")
{
    auto a = line_complex(3, 0, {1});
    auto b = line_complex(3, 0, {1});
    ChainMap f{&a, &b, {{0, FpMatrix::identity(3, 1)}}};
    CHECK_THROWS_WITH_AS(mapping_fiber(f), doctest::Contains("degree 0"), Error);
}

TEST_CASE("long exact sequence dimension count for fibers")
{
    // chi(fib) = chi(C) - chi(D) on enumerated maps between two-term complexes
    std::uint32_t p = 3;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            auto C = line_complex(p, 0, {x});
            auto D = line_complex(p, 0, {y});
            // f^0 = 1, f^1 must satisfy y*1 = f1*x
            for (int f1 = 0; f1 < 3; ++f1) {
                if ((y - f1 * x) % 3 != 0)
                    continue;
                ChainMap f{&C, &D, {{0, FpMatrix::from_rows(p, {{1}})}, {1, FpMatrix::from_rows(p, {{f1}})}}};
                auto h = cohomology(mapping_fiber(f), {-2, 4});
                long chi = 0;
                for (int n = -2; n <= 4; ++n)
                    chi += (n % 2 == 0 ? 1 : -1) * long(h.total_dim(n));
                CHECK(chi == 0);
            }
        }
}

TEST_CASE("Euler characteristic of cohomology equals that of the complex")
{
    std::uint32_t p = 5;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            if ((a * b) % 5 != 0)
                continue;
            auto c = line_complex(p, 0, {a, b});
            auto h = cohomology(c, {-1, 3});
            long chi = long(h.total_dim(0)) - long(h.total_dim(1)) + long(h.total_dim(2));
            CHECK(chi == 1);
        }
}

TEST_CASE("kunneth examples")
{
    GradedSpace unit;
    unit.add({0, 0, 0}, 1, {"1"});
    GradedSpace x;
    x.add({1, 0, 2}, 2, {"a", "b"});
    x.add({3, 1, 0}, 1, {"c"});
    CHECK(kunneth(x, unit) == x);

    // E(d) (x) P(c) in de Rham grading, truncated to degree <= 6
    GradedSpace dr;
    for (int n = 0; n <= 6; ++n)
        dr.add({n, 0, 0}, 1, {n % 2 ? "d*c^" + std::to_string(n / 2) : "c^" + std::to_string(n / 2)});
    auto sq = kunneth(dr, dr, Window{0, 6, std::nullopt});
    CHECK(sq.total_dim(3) == 4);

    GradedSpace ed;
    ed.add({0, 0, 0}, 1, {"1"});
    ed.add({1, 0, 0}, 1, {"d"});
    auto ee = kunneth(ed, ed);
    CHECK(ee.total_dim(2) == 1);
    CHECK(ee.cells().at({2, 0, 0}).labels == std::vector<std::string>{"d⊗d"});
}

TEST_CASE("kunneth is the convolution of dimension tables")
{
    GradedSpace a, b;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) {
            a.add({i, j, i + j}, std::size_t((i * 3 + j) % 4));
            b.add({j, i, i - j}, std::size_t((i + 2 * j) % 3));
        }
    auto k = kunneth(a, b);
    std::map<GradeIndex, std::size_t> conv;
    for (const auto& [ga, ca] : a.cells())
        for (const auto& [gb, cb] : b.cells())
            conv[{ga.deg + gb.deg, ga.wedge + gb.wedge, ga.weight + gb.weight}] += ca.dim * cb.dim;
    for (const auto& [g, d] : conv)
        CHECK(k.dim(g) == d);
}

TEST_CASE("totalization of bicomplexes")
{
    // single cell
    Bicomplex one;
    one.prime = 3;
    one.cell = [](int p, int q) { return (p == 0 && q == 0) ? Term{1, {}, {"x"}} : Term{}; };
    one.horizontal = [](int, int) { return FpMatrix(3, 0, 0); };
    one.vertical = [](int, int) { return FpMatrix(3, 0, 0); };
    auto t = totalize_bicomplex(one, {-2, 2});
    CHECK(t.cohomology.total_dim(0) == 1);
    CHECK(t.unstable.empty());

    // two columns joined by the identity
    Bicomplex two;
    two.prime = 5;
    two.col_min = 0;
    two.col_max = 1;
    two.cell = [](int p, int q) { return (q == 0 && (p == 0 || p == 1)) ? Term{1, {}, {}} : Term{}; };
    two.horizontal = [](int p, int q) {
        std::size_t s = (q == 0 && (p == 0 || p == 1)) ? 1 : 0, t = (q == 0 && (p + 1 == 0 || p + 1 == 1)) ? 1 : 0;
        FpMatrix m(5, t, s);
        if (s && t)
            m.set(0, 0, 1);
        return m;
    };
    two.vertical = [](int p, int q) {
        std::size_t s = (q == 0 && (p == 0 || p == 1)) ? 1 : 0;
        std::size_t t = (q + 1 == 0 && (p == 0 || p == 1)) ? 1 : 0;
        return FpMatrix(5, t, s);
    };
    auto t2 = totalize_bicomplex(two, {-1, 3});
    for (int n = -1; n <= 3; ++n)
        CHECK(t2.cohomology.total_dim(n) == 0);
}

TEST_CASE("periodic bicomplex of the ground field")
{
    // cells (k, k) for every k: zero maps, window [-4, 0]
    Bicomplex b;
    b.prime = 2;
    b.col_min = -2;
    b.col_max = 2;
    b.grow_left = true;
    b.cell = [](int p, int q) { return p == q ? Term{1, {}, {"u^" + std::to_string(p)}} : Term{}; };
    b.horizontal = [](int p, int q) { return FpMatrix(2, p + 1 == q ? 1 : 0, p == q ? 1 : 0); };
    b.vertical = [](int p, int q) { return FpMatrix(2, p == q + 1 ? 1 : 0, p == q ? 1 : 0); };
    auto t = totalize_bicomplex(b, {-4, 0});
    for (int n = -4; n <= 0; ++n) {
        CHECK(t.cohomology.total_dim(n) == (n % 2 == 0 ? 1u : 0u));
        CHECK(t.unstable.count(n) == 0);
    }
}

TEST_CASE("format_vector")
{
    CHECK(format_vector(Vec{0, 2, 1}, {"a", "b", "c"}) == "2*b + c");
    CHECK(format_vector(Vec{0, 0}, {"a", "b"}) == "0");
}
}
