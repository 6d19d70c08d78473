#include <doctest.h>

#include "stackcoh/errors.hpp"
#include "stackcoh/ext.hpp"

using namespace stackcoh;

namespace {

bool is_zero(const Vec& v)
{
    for (auto e : v)
        if (e)
            return false;
    return true;
}

std::map<std::pair<int, int>, std::size_t> ext_table(const ExtRing& r)
{
    std::map<std::pair<int, int>, std::size_t> t;
    for (int n = 0; n <= r.max_deg(); ++n)
        for (std::size_t i = 0; i < r.dim(n); ++i)
            ++t[{n, r.weight(n, i)}];
    return t;
}

std::map<std::pair<int, int>, std::size_t> space_table(const GradedSpace& g)
{
    std::map<std::pair<int, int>, std::size_t> t;
    for (const auto& [k, c] : g.cells())
        if (c.dim)
            t[{k.deg, k.weight}] += c.dim;
    return t;
}

}  // namespace

TEST_SUITE("ext")
{
TEST_CASE("periodic resolutions are exact")
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto r = periodic_resolution(truncated_poly(p, p, -1, "s"), 10);
        CHECK_NOTHROW(r.check_exact());
        for (std::size_t n = 0; n <= 10; ++n)
            CHECK(r.rank(n) == 1);
    }
    auto r4 = periodic_resolution(truncated_poly(3, 4, 1), 8);
    CHECK_NOTHROW(r4.check_exact());
    CHECK_THROWS_AS(periodic_resolution(tensor(truncated_poly(2, 2, 1), truncated_poly(2, 2, 1)), 3), Error);
}

TEST_CASE("a broken resolution is rejected")
{
    auto r = periodic_resolution(truncated_poly(3, 3, 1), 4);
    r.d[2][0][0] = r.d[1][0][0];
    CHECK_THROWS_AS(r.check_exact(), Error);
}

TEST_CASE("Ext over k[s]/(s^p) has one class per degree with weights (1, p)")
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto e = ext_ring(truncated_poly(p, p, -1, "s"), 10);
        for (int n = 0; n <= 10; ++n) {
            REQUIRE(e.dim(n) == 1);
            int expect = (n / 2) * static_cast<int>(p) + n % 2;
            CHECK(e.weight(n, 0) == expect);
        }
        e.find_generators({"a", "b"});
        if (p == 2) {
            REQUIRE(e.generators().size() == 1);
            CHECK(e.generators()[0].kind == GenKind::Polynomial);
            CHECK(e.generators()[0].weight == 1);
        } else {
            REQUIRE(e.generators().size() == 2);
            CHECK(e.generators()[0].kind == GenKind::Exterior);
            CHECK(e.generators()[1].kind == GenKind::Polynomial);
            CHECK(e.generators()[0].weight == 1);
            CHECK(e.generators()[1].weight == static_cast<int>(p));
            CHECK(e.free_on_generators());
        }
    }
}

TEST_CASE("alpha squared vanishes at p = 3 and not at p = 2")
{
    auto e3 = ext_ring(truncated_poly(3, 3, -1, "s"), 6);
    CHECK(is_zero(e3.product(1, e3.unit_class(1, 0), 1, e3.unit_class(1, 0))));
    // β^k is nonzero through the window
    Vec b = e3.unit_class(2, 0);
    Vec pw = b;
    for (int k = 2; 2 * k <= 6; ++k) {
        pw = e3.product(2, b, 2 * (k - 1), pw);
        CHECK_FALSE(is_zero(pw));
    }
    auto e2 = ext_ring(truncated_poly(2, 2, -1, "s"), 6);
    CHECK_FALSE(is_zero(e2.product(1, e2.unit_class(1, 0), 1, e2.unit_class(1, 0))));
    Vec x = e2.unit_class(1, 0), acc = x;
    for (int k = 2; k <= 6; ++k) {
        acc = e2.product(1, x, k - 1, acc);
        CHECK_FALSE(is_zero(acc));
    }
}

TEST_CASE("minimal, periodic and bar routes agree with weights")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto A = truncated_poly(p, p, -1, "s");
        auto per = ext_ring(A, 6, ResolutionMethod::Periodic);
        auto min = ext_ring(A, 6, ResolutionMethod::Minimal);
        CHECK(ext_table(per) == ext_table(min));
        CHECK(ext_table(per) == space_table(bar_ext_dims(A, 6)));
        ExtRing bar(bar_resolution_oracle(A, 7), 6);
        CHECK(ext_table(bar) == ext_table(per));
    }
    auto A5 = truncated_poly(5, 5, -1, "s");
    CHECK(ext_table(ext_ring(A5, 6)) == space_table(bar_ext_dims(A5, 6)));
}

TEST_CASE("products of two truncated algebras")
{
    auto A = tensor(truncated_poly(3, 3, -1, "s"), truncated_poly(3, 3, -1, "r"));
    auto e = ext_ring(A, 4);
    CHECK(ext_table(e) == space_table(bar_ext_dims(A, 4)));
    CHECK(e.dim(1) == 2);
    CHECK(e.dim(2) == 3);
    e.find_generators();
    CHECK(e.generators().size() == 4);
    CHECK(e.free_on_generators());
    // graded commutativity in degrees (1, 1) and (1, 2)
    for (std::size_t i = 0; i < e.dim(1); ++i)
        for (std::size_t j = 0; j < e.dim(1); ++j) {
            Vec a = e.product(1, e.unit_class(1, i), 1, e.unit_class(1, j));
            Vec b = e.product(1, e.unit_class(1, j), 1, e.unit_class(1, i));
            for (std::size_t t = 0; t < a.size(); ++t)
                CHECK((a[t] + b[t]) % 3 == 0);
        }
    for (std::size_t i = 0; i < e.dim(1); ++i)
        for (std::size_t j = 0; j < e.dim(2); ++j)
            CHECK(e.product(1, e.unit_class(1, i), 2, e.unit_class(2, j)) ==
                  e.product(2, e.unit_class(2, j), 1, e.unit_class(1, i)));
}

TEST_CASE("products are additive in weight")
{
    auto A = tensor(truncated_poly(2, 2, -1, "s"), truncated_poly(2, 4, -1, "r"));
    auto e = ext_ring(A, 4);
    CHECK(ext_table(e) == space_table(bar_ext_dims(A, 4)));
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; a + b <= 4; ++b)
            for (std::size_t i = 0; i < e.dim(a); ++i)
                for (std::size_t j = 0; j < e.dim(b); ++j) {
                    Vec z = e.product(a, e.unit_class(a, i), b, e.unit_class(b, j));
                    for (std::size_t t = 0; t < z.size(); ++t)
                        if (z[t])
                            CHECK(e.weight(a + b, t) == e.weight(a, i) + e.weight(b, j));
                }
}

TEST_CASE("semisimple algebras have Ext concentrated in degree zero")
{
    auto e = ext_ring(cartier_dual(mu_p(3)).algebra, 6);
    CHECK(e.dim(0) == 1);
    for (int n = 1; n <= 6; ++n)
        CHECK(e.dim(n) == 0);
    auto g = bar_ext_dims(local_block(cartier_dual(mu_p(2)).algebra), 4);
    CHECK(g.total_dim(0) == 1);
    for (int n = 1; n <= 4; ++n)
        CHECK(g.total_dim(n) == 0);
}

TEST_CASE("budgets are enforced")
{
    auto A = truncated_poly(5, 5, 1);
    CHECK_THROWS_AS(bar_resolution_oracle(A, 8, 100), Error);
    try {
        bar_ext_dims(A, 12, 1000);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}
}
