#include <doctest.h>

#include "stackcoh/errors.hpp"
#include "stackcoh/hochschild.hpp"

using namespace stackcoh;

namespace {

std::map<std::pair<int, int>, std::size_t> table_of(const HHResult& h)
{
    std::map<std::pair<int, int>, std::size_t> t;
    for (const auto& [g, c] : h.table.cells())
        if (c.dim)
            t[{g.deg, g.weight}] += c.dim;
    return t;
}

}  // namespace

TEST_SUITE("hochschild")
{
TEST_CASE("b and B square to zero and anticommute")
{
    std::vector<PresentedAlgebra> algs{truncated_poly(2, 2, 1), truncated_poly(3, 3, 1), truncated_poly(3, 2, 1),
                                       truncated_poly(5, 4, 2),
                                       tensor(truncated_poly(2, 2, 1), truncated_poly(2, 2, 1)),
                                       tensor(truncated_poly(3, 3, 1), truncated_poly(3, 2, 1))};
    for (const auto& a : algs) {
        HochschildComplex c(a, 5);
        for (int n = 2; n <= 5; ++n)
            CHECK((c.b_matrix(n - 1) * c.b_matrix(n)).is_zero());
        for (int n = 0; n + 2 <= 5; ++n)
            CHECK((c.B_matrix(n + 1) * c.B_matrix(n)).is_zero());
        for (int n = 1; n + 1 <= 5; ++n)
            CHECK((c.b_matrix(n + 1) * c.B_matrix(n) + c.B_matrix(n - 1) * c.b_matrix(n)).is_zero());
        // weight 0 maps
        for (int n = 1; n <= 5; ++n)
            for (std::size_t j = 0; j < c.dim(n); ++j)
                for (const auto& [r, v] : c.b_column(n, j))
                    CHECK(c.weight(n - 1, r) == c.weight(n, j));
    }
}

TEST_CASE("B kills the unit")
{
    HochschildComplex c(truncated_poly(3, 3, 1), 2);
    CHECK(c.B_column(0, 0).empty());
}

TEST_CASE("bar and small complexes agree")
{
    struct Case {
        std::uint32_t p;
        std::size_t n;
    };
    for (auto [p, n] : {Case{2, 2}, Case{3, 3}, Case{3, 2}, Case{5, 5}, Case{2, 3}, Case{3, 4}}) {
        Window w{0, 6, std::nullopt};
        auto bar = hochschild_bar(truncated_poly(p, n, 1), w);
        auto small = hochschild_small(p, n, 1, w);
        CHECK(table_of(bar) == table_of(small));
        if (n == p)
            for (int d = 0; d <= 6; ++d)
                CHECK(bar.table.total_dim(d) == p);
    }
}

TEST_CASE("small examples")
{
    Window w{0, 4, std::nullopt};
    auto h = hochschild_small(3, 2, 1, w);
    CHECK(h.dims() == std::map<int, std::size_t>{{0, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
    auto k = hochschild_bar(truncated_poly(3, 1, 0), w);
    CHECK(k.dims() == std::map<int, std::size_t>{{0, 1}});
    auto t = hochschild_bar(truncated_poly(3, 3, 1), w);
    CHECK(t.dims() == std::map<int, std::size_t>{{0, 3}, {1, 3}, {2, 3}, {3, 3}, {4, 3}});
}

TEST_CASE("weight window gives the same blocks")
{
    auto full = hochschild_bar(truncated_poly(3, 3, 1), Window{0, 5, std::nullopt});
    auto cut = hochschild_bar(truncated_poly(3, 3, 1), Window{0, 5, 6});
    for (const auto& [g, c] : cut.table.cells())
        CHECK(full.table.dim(g) == c.dim);
    for (const auto& [g, c] : full.table.cells())
        if (g.weight <= 6)
            CHECK(cut.table.dim(g) == c.dim);
}

TEST_CASE("representatives")
{
    auto h = hochschild_bar(truncated_poly(3, 3, 1), Window{0, 2, std::nullopt}, true);
    const auto& cell = h.table.cells().at({1, 0, 1});
    REQUIRE(cell.labels.size() == 1);
    CHECK(cell.labels[0] == "1[t]");
}

TEST_CASE("B maps t to a nonzero class in HH_1")
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        HochschildComplex c(truncated_poly(p, p, 1), 3);
        FpMatrix m = connes_on_homology(c, 0, 1);
        REQUIRE(m.rows() == 1);
        REQUIRE(m.cols() == 1);
        CHECK(m.at(0, 0) != 0);
    }
}

TEST_CASE("cyclic homology windows")
{
    auto hp = cyclic_window(truncated_poly(2, 1, 0), CyclicVariant::Periodic, Window{-4, 4, std::nullopt}, 4);
    for (int d = -4; d <= 4; ++d) {
        CHECK(hp.total_dim(d) == (d % 2 == 0 ? 1u : 0u));
        CHECK_FALSE(hp.degree_indeterminate(d));
    }
    auto hc = cyclic_window(truncated_poly(2, 2, 1), CyclicVariant::Negative, Window{-2, 2, 6}, 4);
    CHECK_FALSE(hc.degree_indeterminate(0));
    CHECK(hc.total_dim(0) >= 1);
}

TEST_CASE("Frobenius on HH_0")
{
    FpMatrix f = frobenius_on_HH0(truncated_poly(3, 3, 1));
    CHECK(rank(f) == 1);
    CHECK(f.at(0, 0) == 1);
    FpMatrix g = frobenius_on_HH0(truncated_poly(3, 9, 1));
    CHECK(g.at(3, 1) == 1);
    CHECK(frobenius_on_HH0(truncated_poly(5, 1, 0)) == FpMatrix::identity(5, 1));
}

TEST_CASE("budget")
{
    CHECK_THROWS_AS(hochschild_bar(truncated_poly(5, 5, 1), Window{0, 9, std::nullopt}, false, 10000), Error);
}
}
