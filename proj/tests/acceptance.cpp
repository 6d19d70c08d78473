// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Every value is recomputed here; nothing is read from the
// fixtures.

#include "stackcoh/errors.hpp"
#include "stackcoh/ext.hpp"
#include "stackcoh/hochschild.hpp"
#include "stackcoh/spectral.hpp"
#include "stackcoh/stack.hpp"

#include <functional>
#include <iostream>
#include <sstream>

using namespace stackcoh;

namespace {

// Collects the first failed expectation of a criterion.
struct Check {
    std::ostringstream why;
    bool ok = true;

    void expect(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why << what;
        }
    }
};

std::map<std::pair<int, int>, std::size_t> by_deg_weight(const GradedSpace& g)
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& [k, c] : g.cells())
        if (c.dim)
            out[{k.deg, k.weight}] += c.dim;
    return out;
}

std::string p_str(std::uint32_t p)
{
    return "p=" + std::to_string(p) + ": ";
}

void ext_truncated(Check& c)
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto a = truncated_poly(p, p, -1, "s");
        auto ring = ext_ring(a, 10);
        ring.find_generators({"alpha", "beta"});
        for (int n = 0; n <= 10; ++n)
            c.expect(ring.dim(n) == 1, p_str(p) + "Ext^" + std::to_string(n) + " is not 1-dimensional");
        const auto& g = ring.generators();
        const int q = static_cast<int>(p);
        if (p == 2) {
            c.expect(g.size() == 1 && g[0].weight == 1, p_str(p) + "expected a single generator of weight 1");
            auto sq = ring.product(1, g[0].cls, 1, g[0].cls);
            c.expect(sq != Vec(sq.size(), 0), p_str(p) + "alpha^2 vanishes");
        } else {
            c.expect(g.size() == 2, p_str(p) + "expected generators alpha, beta");
            if (g.size() != 2)
                continue;
            c.expect(g[0].weight == 1 && g[1].weight == q, p_str(p) + "weights are not (1, p)");
            c.expect(g[0].kind == GenKind::Exterior && g[1].kind == GenKind::Polynomial,
                     p_str(p) + "alpha exterior / beta polynomial failed");
            auto sq = ring.product(1, g[0].cls, 1, g[0].cls);
            c.expect(sq == Vec(sq.size(), 0), p_str(p) + "alpha^2 does not vanish");
        }
        c.expect(ring.free_on_generators(), p_str(p) + "Ext is not free on its generators");
        auto oracle = bar_ext_dims(a, 6);
        auto table = by_deg_weight(ring.table());
        std::erase_if(table, [](const auto& kv) { return kv.first.first > 6; });
        c.expect(by_deg_weight(oracle) == table, p_str(p) + "bar oracle disagrees through degree 6");
    }
}

void hochschild_oracles(Check& c)
{
    for (auto [p, n] : {std::pair{2u, 2u}, {3u, 3u}, {3u, 2u}, {5u, 5u}}) {
        Window w{0, 6, std::nullopt};
        auto bar = hochschild_bar(truncated_poly(p, n, 1), w);
        auto small = hochschild_small(p, n, 1, w);
        auto tag = "(p,n)=(" + std::to_string(p) + "," + std::to_string(n) + "): ";
        c.expect(by_deg_weight(bar.table) == by_deg_weight(small.table), tag + "bar and small complexes disagree");
        if (p == n)
            for (int d = 0; d <= 6; ++d)
                c.expect(bar.table.total_dim(d) == p, tag + "HH_" + std::to_string(d) + " is not p-dimensional");
    }
}

void hodge_mu(Check& c)
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto h = hodge_BG(group_mu(p), 8);
        c.expect(h.presentation() == "E(d)*P(c)", p_str(p) + "presentation " + h.presentation());
        std::map<std::pair<int, int>, std::size_t> d;
        for (const auto& [k, cell] : h.table.cells())
            d[{k.deg, k.wedge}] += cell.dim;
        for (int s = 0; s <= 8; ++s)
            for (int t = 0; t <= 8; ++t) {
                std::size_t want = (t - s == 0 || t - s == 1) ? 1 : 0;
                c.expect(d[{s, t}] == want,
                         p_str(p) + "dim H^" + std::to_string(s) + "(wedge^" + std::to_string(t) + ") wrong");
            }
    }
}

void hodge_alpha(Check& c)
{
    auto h = hodge_BG(group_alpha(3), 8);
    std::vector<Generator> expected = {{"alpha", 1, 0, 1, GenKind::Exterior, 0},
                                       {"beta", 2, 0, 3, GenKind::Polynomial, 0},
                                       {"s", 0, 1, 3, GenKind::Exterior, 0},
                                       {"u", 1, 1, 1, GenKind::Polynomial, 0}};
    c.expect(h.gens.size() == expected.size(), "wrong number of generators");
    for (std::size_t i = 0; i < std::min(h.gens.size(), expected.size()); ++i) {
        const auto &a = h.gens[i], &b = expected[i];
        c.expect(a.name == b.name && a.s == b.s && a.t == b.t && a.weight == b.weight && a.kind == b.kind,
                 "generator " + b.name + " differs");
    }
    std::map<GradeIndex, std::size_t> want, got;
    for (const auto& e : enumerate_monomials(expected, 0, 16, 0, 8)) {
        auto m = monomial_info(expected, e);
        if (m.t <= 8)
            ++want[{m.s, m.t, m.weight}];
    }
    for (const auto& [k, cell] : h.table.cells())
        got[k] = cell.dim;
    c.expect(want == got, "table differs from the monomial count");
    c.expect(h.table.dim({1, 1, 1}) + h.table.dim({1, 1, 4}) == 2, "dim H^1(wedge^1) != 2");
}

void hkr_mu(Check& c)
{
    for (std::uint32_t p : {2u, 3u}) {
        auto sc = hkr_scenario(group_mu(p), 4);
        auto rep = forced_search(sc.page, sc.abutment, sc.r_max);
        c.expect(rep.unique, p_str(p) + "pattern not unique");
        if (!rep.unique)
            continue;
        const auto& pt = rep.patterns[0];
        Exponents cp{0, static_cast<int>(p)};
        c.expect(pt.assignments.size() == 1 && pt.assignments[0].r == static_cast<int>(p) &&
                     pt.assignments[0].source == "d" && pt.assignments[0].target == cp &&
                     pt.assignments[0].scalar != 0,
                 p_str(p) + "pattern is " + pt.describe(sc.page));
        for (int n = sc.abutment.n_min; n <= sc.abutment.n_max; ++n) {
            auto it = pt.e_infinity.find(n);
            std::size_t got = it == pt.e_infinity.end() ? 0 : it->second;
            c.expect(got == (n == 0 ? p : 0), p_str(p) + "E_infinity in total degree " + std::to_string(n));
        }
    }
}

void hkr_alpha(Check& c)
{
    auto sc = hkr_scenario(group_alpha(3), 6);
    for (int r = sc.page.r; r <= sc.r_max; ++r)
        for (const auto& cand : admissible_differentials(sc.page, r))
            c.expect(cand.source != "u", "u supports a candidate differential on page " + std::to_string(r));
    auto rep = forced_search(sc.page, sc.abutment, sc.r_max);
    c.expect(rep.unique, "pattern not unique");
    if (!rep.unique)
        return;
    const auto& pt = rep.patterns[0];
    c.expect(pt.describe(sc.page) == "d_3(s) = u^3", "pattern is " + pt.describe(sc.page));
    for (int n = 0; n <= 6; ++n)
        c.expect(pt.e_infinity.count(n) && pt.e_infinity.at(n) == 3, "HH_" + std::to_string(n) + " != 3");
}

void hodge_de_rham_alpha(Check& c)
{
    for (std::uint32_t p : {2u, 3u}) {
        auto dr = derham_BG(group_alpha(p), 8);
        c.expect(dr.differentials == std::vector<std::string>{"d_1(alpha) = u"}, p_str(p) + "Hodge-de Rham pattern");
        for (int n = 0; n <= 8; ++n)
            c.expect(dr.table.total_dim(n) == 1, p_str(p) + "H^" + std::to_string(n) + "_dR != 1");
        for (const auto& [k, cell] : dr.table.cells())
            c.expect(k.weight % static_cast<int>(p) == 0, p_str(p) + "weight outside pZ");
        auto conj = derham_conjugate(p, 8);
        std::string want = p == 2 ? "d_2(s) = alpha^2" : "d_2(s) = beta";
        c.expect(conj.differentials == std::vector<std::string>{want}, p_str(p) + "conjugate pattern");
        c.expect(by_deg_weight(conj.table) == by_deg_weight(dr.table), p_str(p) + "routes disagree");
    }
}

void derham_hp(Check& c)
{
    for (std::uint32_t p : {2u, 3u}) {
        auto sc = derham_hp_scenario(group_mu(p), 4);
        auto rep = forced_search(sc.page, sc.abutment, sc.r_max);
        c.expect(rep.unique, p_str(p) + "pattern not unique");
        if (!rep.unique)
            continue;
        const auto& pt = rep.patterns[0];
        c.expect(pt.assignments.size() == 1 && pt.assignments[0].r == static_cast<int>(p) &&
                     pt.assignments[0].source == "d" && pt.assignments[0].target[1] == static_cast<int>(p),
                 p_str(p) + "pattern is " + pt.describe(sc.page));
        for (int n = 0; n <= 4; ++n) {
            auto it = pt.e_infinity.find(n);
            std::size_t got = it == pt.e_infinity.end() ? 0 : it->second;
            c.expect(got == (n % 2 ? 0 : p), p_str(p) + "HP page in degree " + std::to_string(n));
        }
        auto a = derham_hp_scenario(group_alpha(p), 4);
        for (int r = a.page.r; r <= a.r_max; ++r)
            c.expect(admissible_differentials(a.page, r).empty(), p_str(p) + "alpha_p page has candidates");
    }
}

void crystalline(Check& c)
{
    for (std::uint32_t p : {2u, 3u}) {
        auto mu = crys_BG(group_mu(p), 3, 8);
        for (int n = 0; n <= 8; ++n) {
            std::string want = n == 0 ? "Z/p^3" : (n % 2 ? "0" : "Z/p");
            c.expect(mu.groups.at(n).to_string() == want, p_str(p) + "crys H^" + std::to_string(n) + " of mu_p");
        }
        for (auto g : {group_mu(p), group_alpha(p), group_product(group_mu(p), group_mu(p))}) {
            auto cr = crys_BG(g, 3, 9);
            auto dr = derham_BG(g, 9).table.dims_by_degree();
            auto bad = crys_mod_p_mismatch(cr, dr);
            c.expect(!bad, p_str(p) + g.name() + ": mod p identity fails in degree " + std::to_string(bad.value_or(0)));
        }
        auto tp = tp_accounting(group_mu(p), 8);
        c.expect(tp.degenerate && tp.split == std::optional<bool>(false), p_str(p) + "mu_p should degenerate, non-split");
        auto sq_group = group_product(group_mu(p), group_mu(p));
        auto sq = crys_BG(sq_group, 3, 8);
        c.expect(sq.groups.at(3).exponents == std::vector<int>{1}, p_str(p) + "H^3 of mu_p x mu_p is not Z/p");
        c.expect(!tp_accounting(sq_group, 8).degenerate, p_str(p) + "mu_p x mu_p should not degenerate");
        auto al = crys_BG(group_alpha(p), 3, 8);
        for (int n = 1; n <= 8; ++n)
            c.expect(al.groups.at(n).to_string() == (n % 2 ? "0" : "Z/p"), p_str(p) + "crys of alpha_p");
    }
}

void tate(Check& c)
{
    for (std::uint32_t p : {2u, 3u, 5u}) {
        HochschildComplex cx(truncated_poly(p, p, 1), 4);
        auto basis = homology_basis(cx, 0, 1);
        c.expect(basis.labels == std::vector<std::string>{"t"}, p_str(p) + "HH_0 weight 1 is not spanned by t");
        c.expect(!connes_on_homology(cx, 0, 1).is_zero(), p_str(p) + "B[t] vanishes in HH_1");
        auto t = tate_page(cx, Window{0, 2, std::nullopt});
        c.expect(!t.d2.at({0, 1}).is_zero(), p_str(p) + "tate d_2 vanishes on [t]");
    }
    GradedSpace concentrated;
    concentrated.add({0, 0, 0}, 3);
    c.expect(tate_page(concentrated).degenerate, "HH in degree 0 gives a nonzero d_2");
    HochschildComplex k(truncated_poly(3, 1, 0), 4);
    c.expect(tate_page(k, Window{0, 2, std::nullopt}).degenerate, "d_2 nonzero for k");
}

void pgl(Check& c)
{
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t n : {p, p + 1, 2 * p, 2 * p + 1}) {
            auto g = pgl_omega1(n, p);
            std::size_t want = n % p == 0 ? 1 : 0;
            c.expect(g.total_dim(1) == want && g.total_dim(2) == want,
                     p_str(p) + "n=" + std::to_string(n) + " gives wrong H^1, H^2");
        }
}

void properties(Check& c)
{
    // d^2 = 0 and bB + Bb = 0 on Hochschild chains
    for (auto a : {truncated_poly(2, 2, 1), truncated_poly(3, 3, 1), tensor(truncated_poly(2, 2, 1), truncated_poly(2, 2, 2)),
                   mu_p(3).algebra}) {
        HochschildComplex cx(a, 4);
        for (int n = 1; n < 4; ++n) {
            c.expect((cx.b_matrix(n) * cx.b_matrix(n + 1)).is_zero(), "b^2 != 0");
            c.expect((cx.B_matrix(n) * cx.B_matrix(n - 1)).is_zero(), "B^2 != 0");
            c.expect((cx.b_matrix(n + 1) * cx.B_matrix(n) + cx.B_matrix(n - 1) * cx.b_matrix(n)).is_zero(), "bB + Bb != 0");
        }
    }
    // d^2 = 0 on resolutions
    for (std::uint32_t p : {2u, 3u}) {
        auto res = minimal_resolution(tensor(truncated_poly(p, p, 1), truncated_poly(p, 2, 1, "r")), 5);
        res.check_exact();
    }

    // Leibniz and weight-0 differentials on forced pages
    for (std::uint32_t p : {2u, 3u}) {
        auto sc = hkr_scenario(group_alpha(p), 4);
        auto rep = forced_search(sc.page, sc.abutment, sc.r_max);
        auto pg = sc.page;
        for (const auto& a : rep.patterns.at(0).assignments)
            pg.differentials.push_back(a);
        auto e = expand_page(pg, sc.r_max);
        c.expect(check_leibniz(e, 0, 3) > 0, "no Leibniz pairs checked");
        for (const auto& [key, M] : e.D)
            for (std::size_t i = 0; i < M.rows(); ++i)
                for (std::size_t j = 0; j < M.cols(); ++j)
                    if (M.at(i, j))
                        c.expect(monomial_info(pg.gens, e.basis.at(key)[j]).weight ==
                                     monomial_info(pg.gens, e.basis.at({key.first + 1, key.second})[i]).weight,
                                 "differential changes weight");
    }

    // rank-nullity on every 2x3 matrix over F_3 and 3x3 matrix over F_2
    for (auto [p, rows, cols] : {std::tuple{3u, 2u, 3u}, {2u, 3u, 3u}}) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < rows * cols; ++i)
            total *= p;
        for (std::size_t code = 0; code < total; ++code) {
            FpMatrix m(p, rows, cols);
            std::size_t x = code;
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    m.set(i, j, static_cast<std::int64_t>(x % p));
                    x /= p;
                }
            auto k = kernel_basis(m);
            c.expect(rank(m) + k.cols() == cols, "rank + nullity != cols");
            c.expect((m * k).is_zero(), "kernel vector not killed");
        }
    }

    // Künneth as a convolution of dimension tables
    {
        auto a = hodge_BG(group_mu(3), 4).table, b = hodge_BG(group_alpha(3), 4).table;
        auto k = kunneth(a, b);
        std::map<GradeIndex, std::size_t> want, got;
        for (const auto& [x, cx] : a.cells())
            for (const auto& [y, cy] : b.cells())
                want[{x.deg + y.deg, x.wedge + y.wedge, x.weight + y.weight}] += cx.dim * cy.dim;
        for (const auto& [g, cell] : k.cells())
            got[g] = cell.dim;
        c.expect(want == got, "kunneth is not the convolution");
    }

    // Frobenius is multiplicative
    for (auto a : {truncated_poly(3, 3, 1), mu_p(3).algebra, cartier_dual(mu_p(2)).algebra,
                   tensor(truncated_poly(2, 2, 1), truncated_poly(2, 3, 1, "r"))}) {
        auto F = frobenius_on_algebra(a);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                c.expect(F.apply(a.product(i, j)) == a.multiply(F.column(i), F.column(j)), "F(xy) != F(x)F(y)");
    }

    // dlog(uv) = dlog u + dlog v over enumerated units
    for (std::uint32_t p : {2u, 3u}) {
        for (const auto& h : {Hypersurface{p, {0, 0, 0, 1}, 1, "t"}, Hypersurface{p, {-1, 0, 0, 1}, 0, "t"}}) {
            auto R = quotient_algebra(h);
            std::vector<Vec> units;
            std::size_t total = 1;
            for (std::size_t i = 0; i < R.dim(); ++i)
                total *= p;
            for (std::size_t code = 0; code < total; ++code) {
                Vec u(R.dim());
                std::size_t x = code;
                for (auto& e : u) {
                    e = static_cast<Entry>(x % p);
                    x /= p;
                }
                if (solve(R.left_multiplication(u), R.unit()))
                    units.push_back(u);
            }
            for (const auto& u : units)
                for (const auto& v : units)
                    c.expect(dlog(h, R.multiply(u, v)) == add_forms(h, dlog(h, u), dlog(h, v)), "dlog not additive");
        }
    }
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"Ext over k[s]/(s^p): dims, alpha^2, weights, bar oracle", ext_truncated},
        {"Hochschild bar complex agrees with the small complex", hochschild_oracles},
        {"Hodge table of B mu_p", hodge_mu},
        {"Hodge table of B alpha_3", hodge_alpha},
        {"forced HKR differential for B mu_p", hkr_mu},
        {"forced HKR differential for B alpha_3", hkr_alpha},
        {"Hodge-de Rham and conjugate routes for B alpha_p", hodge_de_rham_alpha},
        {"de Rham-HP for B mu_p and B alpha_p", derham_hp},
        {"crystalline cohomology and TP bookkeeping", crystalline},
        {"Tate d_2 from the Connes operator", tate},
        {"Omega^1 of BPGL_n", pgl},
        {"property suites", properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first;
        if (!c.ok) {
            std::cout << ": " << c.why.str();
            ++failed;
        }
        std::cout << "\n";
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
