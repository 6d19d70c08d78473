#include <doctest.h>

#include "stackcoh/errors.hpp"
#include "stackcoh/fp_linalg.hpp"

using namespace stackcoh;

namespace {

// Small LCG so the "random" matrices are a fixed enumeration.
struct Lcg {
    std::uint64_t s;
    std::uint32_t next() { s = s * 6364136223846793005ULL + 1442695040888963407ULL; return std::uint32_t(s >> 33); }
};

FpMatrix sample(std::uint32_t p, std::size_t r, std::size_t c, Lcg& g, unsigned sparsity)
{
    FpMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (g.next() % sparsity == 0)
                m.set(i, j, g.next());
    return m;
}

}  // namespace

TEST_SUITE("fp_linalg")
{
TEST_CASE("rref of identity and zero")
{
    auto id = FpMatrix::identity(3, 3);
    auto e = rref(id);
    CHECK(e.reduced == id);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1, 2});

    FpMatrix z(5, 2, 2);
    auto ez = rref(z);
    CHECK(ez.reduced == z);
    CHECK(ez.pivots.empty());
}

TEST_CASE("rref of a rank one matrix over F_5")
{
    auto m = FpMatrix::from_rows(5, {{1, 2}, {2, 4}});
    auto e = rref(m);
    CHECK(e.reduced == FpMatrix::from_rows(5, {{1, 2}, {0, 0}}));
    CHECK(e.pivots == std::vector<std::size_t>{0});
    CHECK(rank(m) == 1);
}

TEST_CASE("kernel examples")
{
    auto k = kernel_basis(FpMatrix::from_rows(2, {{1, 1}}));
    REQUIRE(k.cols() == 1);
    CHECK(k.column(0) == Vec{1, 1});

    auto inv = FpMatrix::from_rows(7, {{2, 1}, {1, 1}});
    CHECK(kernel_basis(inv).cols() == 0);

    FpMatrix z(3, 4, 4);
    CHECK(kernel_basis(z).cols() == 4);
}

TEST_CASE("subquotient examples")
{
    CHECK(subquotient_dim(FpMatrix::identity(3, 2), FpMatrix(3, 2, 0)) == 2);
    auto a = FpMatrix::from_rows(5, {{1, 3}, {2, 0}});
    CHECK(subquotient_dim(a, a) == 0);
    CHECK(subquotient_dim(FpMatrix::from_rows(2, {{1}, {0}}), FpMatrix::from_rows(2, {{0}, {1}})) == 1);
}

TEST_CASE("scalars and field arithmetic")
{
    CHECK(FpScalar(-1, 5).value == 4);
    CHECK_THROWS_AS(FpScalar(1, 4), Error);
    PrimeField f(7);
    for (Entry a = 1; a < 7; ++a)
        CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(3, 6) == 1);
    CHECK_THROWS_AS(FpMatrix(6, 1, 1), Error);
}

TEST_CASE("rref idempotence, rank-nullity and kernel property on enumerated matrices")
{
    Lcg g{12345};
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t r = 1 + g.next() % 9, c = 1 + g.next() % 9;
            auto m = sample(p, r, c, g, 1 + trial % 3);
            auto e = rref(m);
            CHECK(rref(e.reduced).reduced == e.reduced);
            auto k = kernel_basis(m);
            CHECK(rank(m) + k.cols() == c);
            CHECK(rank(m) == e.rank());
            CHECK(rank(m) == rank(m.transpose()));
            CHECK((m * k).is_zero());
        }
    }
}

TEST_CASE("solve and subspace coordinates")
{
    Lcg g{99};
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t r = 1 + g.next() % 6, c = 1 + g.next() % 6;
            auto m = sample(p, r, c, g, 2);
            Vec x(c);
            for (auto& v : x)
                v = Entry(g.next() % p);
            Vec b = m.apply(x);
            auto y = solve(m, b);
            REQUIRE(y);
            CHECK(m.apply(*y) == b);

            SubspaceBasis sb(p, r);
            std::vector<Vec> cols;
            for (std::size_t j = 0; j < c; ++j)
                if (sb.insert(m.column(j)))
                    cols.push_back(m.column(j));
            CHECK(sb.dim() == rank(m));
            auto coords = sb.coordinates(b);
            REQUIRE(coords);
            Vec back(r, 0);
            PrimeField f(p);
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (std::size_t i = 0; i < r; ++i)
                    back[i] = f.add(back[i], f.mul((*coords)[j], cols[j][i]));
            CHECK(back == b);
        }
    }
    auto m = FpMatrix::from_rows(3, {{1, 0}, {0, 0}});
    CHECK_FALSE(solve(m, Vec{0, 1}));
}
}
