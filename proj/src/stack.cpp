#include "stackcoh/stack.hpp"

#include "stackcoh/errors.hpp"
#include "stackcoh/ext.hpp"

#include <algorithm>
#include <sstream>

namespace stackcoh {

namespace {

std::string suffix(const GroupScheme& g, std::size_t i)
{
    return g.factors.size() > 1 ? std::to_string(i + 1) : std::string();
}

Generator make_gen(std::string name, int s, int t, int w, GenKind k)
{
    return Generator{std::move(name), s, t, w, k, 0};
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + v[i];
    return out;
}

}  // namespace

std::string GroupScheme::name() const
{
    std::vector<std::string> parts;
    for (auto f : factors)
        parts.push_back((f == GroupFactor::Mu ? "mu_" : "alpha_") + std::to_string(p));
    return join(parts, " x ");
}

Hypersurface GroupScheme::presentation(std::uint32_t p, GroupFactor f)
{
    std::vector<std::int64_t> c(p + 1, 0);
    c[p] = 1;
    if (f == GroupFactor::Mu) {
        c[0] = -1;
        return Hypersurface{p, c, 0, "x"};
    }
    return Hypersurface{p, c, 1, "t"};
}

HopfAlgebra GroupScheme::hopf() const
{
    require(!factors.empty(), "group scheme has no factors");
    auto one = [&](std::size_t i) {
        auto var = (factors[i] == GroupFactor::Mu ? "x" : "t") + suffix(*this, i);
        return factors[i] == GroupFactor::Mu ? mu_p(p, var) : alpha_p(p, var);
    };
    HopfAlgebra h = one(0);
    for (std::size_t i = 1; i < factors.size(); ++i)
        h = tensor(h, one(i));
    return h;
}

bool GroupScheme::all_mu() const
{
    return std::all_of(factors.begin(), factors.end(), [](GroupFactor f) { return f == GroupFactor::Mu; });
}

GroupScheme GroupScheme::parse(std::uint32_t p, const std::string& text)
{
    require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
    std::string norm;
    for (char ch : text)
        norm += ch == '*' ? std::string(" x ") : std::string(1, ch);
    GroupScheme g{p, {}};
    std::istringstream in(norm);
    std::string tok;
    bool expect_factor = true;
    while (in >> tok) {
        if (!expect_factor) {
            if (tok != "x")
                fail(ErrorKind::Parse, "expected 'x' between factors in '" + text + "'");
            expect_factor = true;
            continue;
        }
        auto us = tok.find('_');
        auto base = tok.substr(0, us);
        if (us != std::string::npos) {
            auto sub = tok.substr(us + 1);
            if (sub != "p" && sub != std::to_string(p))
                fail(ErrorKind::Parse, "factor '" + tok + "' does not match p = " + std::to_string(p));
        }
        if (base == "mu")
            g.factors.push_back(GroupFactor::Mu);
        else if (base == "alpha")
            g.factors.push_back(GroupFactor::Alpha);
        else
            fail(ErrorKind::Parse, "unknown group factor '" + tok + "'");
        expect_factor = false;
    }
    if (expect_factor)
        fail(ErrorKind::Parse, "incomplete group '" + text + "'");
    return g;
}

GroupScheme group_mu(std::uint32_t p)
{
    return GroupScheme{p, {GroupFactor::Mu}};
}

GroupScheme group_alpha(std::uint32_t p)
{
    return GroupScheme{p, {GroupFactor::Alpha}};
}

GroupScheme group_product(const GroupScheme& a, const GroupScheme& b)
{
    require(a.p == b.p, "product of group schemes over different primes");
    GroupScheme g = a;
    g.factors.insert(g.factors.end(), b.factors.begin(), b.factors.end());
    return g;
}

// ---------------------------------------------------------------- Hodge

std::string HodgeRing::presentation() const
{
    std::vector<std::string> parts;
    for (const auto& g : gens)
        parts.push_back(std::string(g.kind == GenKind::Exterior ? "E(" : "P(") + g.name + ")");
    return join(parts, "*");
}

HodgeRing hodge_BG(const GroupScheme& g, int max_deg)
{
    require(max_deg >= 0, "max_deg must be nonnegative");
    auto h = g.hopf();
    check_trivial_adjoint_coaction(h);
    const std::uint32_t p = g.p;

    // H^*(BG, O) = Ext over the Cartier dual, named factor by factor in the
    // order generators are found (degree 1 first).
    std::vector<std::string> names;
    for (std::size_t i = 0; i < g.factors.size(); ++i)
        if (g.factors[i] == GroupFactor::Alpha)
            names.push_back("alpha" + suffix(g, i));
    if (p != 2)
        for (std::size_t i = 0; i < g.factors.size(); ++i)
            if (g.factors[i] == GroupFactor::Alpha)
                names.push_back("beta" + suffix(g, i));
    ExtRing ext = ext_ring(cartier_dual(h).algebra, std::max(max_deg, 2));
    ext.find_generators(names);
    if (ext.generators().size() != names.size() || !ext.free_on_generators())
        fail(ErrorKind::Internal, "Ext of the Cartier dual of " + g.name() + " is not free on the expected generators");

    HodgeRing out;
    out.prime = p;
    out.gens = ext.generator_list();

    for (std::size_t i = 0; i < g.factors.size(); ++i) {
        bool mu = g.factors[i] == GroupFactor::Mu;
        auto cot = lci_cotangent(GroupScheme::presentation(p, g.factors[i]));
        auto co = cohomology(cot.colie(), Window{-1, 0, std::nullopt});
        for (const auto& [k, c] : co.cells()) {
            for (std::size_t j = 0; j < c.dim; ++j) {
                auto nm = std::string(k.deg == -1 ? (mu ? "d" : "s") : (mu ? "c" : "u")) + suffix(g, i) +
                          (c.dim > 1 ? "_" + std::to_string(j) : "");
                if (k.deg == -1)
                    out.gens.push_back(make_gen(nm, 0, 1, k.weight, GenKind::Exterior));
                else
                    out.gens.push_back(make_gen(nm, 1, 1, k.weight, GenKind::Polynomial));
            }
        }
    }
    check_parity(out.gens, p == 2);
    for (const auto& x : out.gens)
        if (x.kind == GenKind::Exterior)
            out.relations.push_back(x.name + "^2 = 0");

    out.table = GradedSpace(Window{0, max_deg, std::nullopt});
    for (const auto& e : enumerate_monomials(out.gens, 0, 2 * max_deg, 0, max_deg)) {
        auto m = monomial_info(out.gens, e);
        if (m.t <= max_deg)
            out.table.add({m.s, m.t, m.weight}, 1, {monomial_label(out.gens, e)});
    }
    for (const auto& x : out.gens)
        if (x.kind == GenKind::Polynomial && x.t == 1 && static_cast<long>(p) * x.s <= max_deg)
            out.divided_power_window = true;
    return out;
}

// ---------------------------------------------------------------- de Rham

namespace {

GradedSpace regrade(const GradedSpace& page, int max_deg)
{
    GradedSpace out(Window{0, max_deg, std::nullopt});
    for (const auto& [k, c] : page.cells()) {
        int n = k.deg + k.wedge;
        if (c.dim && n >= 0 && n <= max_deg)
            out.add({n, 0, k.weight}, c.dim, c.labels);
    }
    return out;
}

std::vector<Generator> alpha_derham_ring(std::uint32_t p)
{
    int q = static_cast<int>(p);
    return {make_gen("alpha'", 1, 0, q, GenKind::Exterior), make_gen("beta'", 2, 0, q, GenKind::Polynomial)};
}

void check_against_ring(const GradedSpace& t, const std::vector<Generator>& ring, int max_deg, const std::string& what)
{
    auto counts = monomial_counts(ring, 0, max_deg, max_deg);
    std::map<std::pair<int, int>, std::size_t> got;
    for (const auto& [k, c] : t.cells())
        if (c.dim)
            got[{k.deg, k.weight}] += c.dim;
    if (counts != got)
        fail(ErrorKind::Internal, what + ": surviving classes do not match the declared ring");
}

DeRhamResult search_route(const ForcedScenario& sc, int max_deg, const std::string& route)
{
    auto rep = forced_search(sc.page, sc.abutment, sc.r_max);
    if (!rep.unique) {
        std::vector<std::string> pats;
        for (const auto& pt : rep.patterns)
            pats.push_back(pt.describe(sc.page));
        fail(ErrorKind::AbutmentUnreachable,
             std::to_string(rep.patterns.size()) + " consistent patterns: " + join(pats, "; "));
    }
    auto pg = sc.page;
    for (const auto& a : rep.patterns[0].assignments)
        pg.differentials.push_back(a);
    auto e = expand_page(pg, sc.r_max);

    DeRhamResult out;
    out.route = route;
    out.table = regrade(e.verified_page(sc.r_max + 1), max_deg);
    for (const auto& a : rep.patterns[0].assignments) {
        Pattern one{{a}, {}};
        out.differentials.push_back(one.describe(sc.page));
    }
    out.ring = alpha_derham_ring(sc.page.prime);
    check_against_ring(out.table, out.ring, max_deg, route);
    return out;
}

}  // namespace

DeRhamResult derham_BG(const GroupScheme& g, int max_deg)
{
    require(max_deg >= 0, "max_deg must be nonnegative");
    if (g.all_mu()) {
        auto h = hodge_BG(g, max_deg);
        DeRhamResult out;
        out.route = "splitting";
        out.table = regrade(h.table, max_deg);
        for (const auto& x : h.gens)
            out.ring.push_back(make_gen(x.name, x.s + x.t, 0, x.weight, x.kind));
        return out;
    }
    if (g.factors.size() == 1)
        return search_route(hodge_de_rham_scenario(g.p, max_deg), max_deg, "hodge-de-rham search");

    DeRhamResult out;
    out.route = "kunneth";
    Window w{0, max_deg, std::nullopt};
    for (std::size_t i = 0; i < g.factors.size(); ++i) {
        auto f = derham_BG(g.factor(i), max_deg);
        out.table = i == 0 ? f.table : kunneth(out.table, f.table, w);
        for (auto x : f.ring) {
            x.name += suffix(g, i);
            out.ring.push_back(x);
        }
        for (const auto& d : f.differentials)
            out.differentials.push_back(d);
    }
    out.table.set_window(w);
    return out;
}

DeRhamResult derham_conjugate(std::uint32_t p, int max_deg)
{
    return search_route(conjugate_scenario(p, max_deg), max_deg, "conjugate search");
}

// ---------------------------------------------------------------- crystalline

std::size_t TorsionModule::free_rank() const
{
    return static_cast<std::size_t>(std::count(exponents.begin(), exponents.end(), m));
}

std::string TorsionModule::to_string() const
{
    if (exponents.empty())
        return "0";
    std::vector<std::string> parts;
    for (int e : exponents)
        parts.push_back(e == 1 ? "Z/p" : "Z/p^" + std::to_string(e));
    return join(parts, " + ");
}

namespace {

void push_sorted(TorsionModule& t, int e)
{
    t.exponents.push_back(e);
    std::sort(t.exponents.rbegin(), t.exponents.rend());
}

// Derived Künneth over W, with free summands written as Z/p^m.
std::map<int, TorsionModule> kunneth_crys(const std::map<int, TorsionModule>& a, const std::map<int, TorsionModule>& b,
                                          int m, int max_deg)
{
    std::map<int, TorsionModule> out;
    for (int n = 0; n <= max_deg; ++n)
        out[n] = TorsionModule{m, {}};
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            for (int ex : x.exponents)
                for (int ey : y.exponents) {
                    if (i + j <= max_deg)
                        push_sorted(out[i + j], std::min(ex, ey));
                    if (i + j - 1 <= max_deg && ex < m && ey < m)
                        push_sorted(out[i + j - 1], std::min(ex, ey));
                }
    return out;
}

std::map<int, TorsionModule> crys_impl(const GroupScheme& g, int m, int max_deg)
{
    if (g.factors.size() == 1) {
        // Killed by p above degree 0 (W[c]/(pc) and its α_p analogue), so
        // H^n = (Z/p)^{a_n} with a_1 = dR_0 - 1 and a_{n+1} = dR_n - a_n.
        auto dr = derham_BG(g, std::max(max_deg, 1)).table.dims_by_degree();
        std::map<int, TorsionModule> out;
        out[0] = TorsionModule{m, {m}};
        long prev = 0;
        for (int n = 1; n <= max_deg; ++n) {
            long a = static_cast<long>(dr[n - 1]) - (n == 1 ? 1 : prev);
            if (a < 0)
                fail(ErrorKind::Internal, "negative crystalline rank in degree " + std::to_string(n));
            out[n] = TorsionModule{m, std::vector<int>(static_cast<std::size_t>(a), 1)};
            prev = a;
        }
        return out;
    }
    // each Künneth step loses one degree to the Tor shift
    int top = max_deg + static_cast<int>(g.factors.size());
    auto acc = crys_impl(g.factor(0), m, top);
    for (std::size_t i = 1; i < g.factors.size(); ++i)
        acc = kunneth_crys(acc, crys_impl(g.factor(i), m, top), m, top - static_cast<int>(i));
    for (auto it = acc.begin(); it != acc.end();)
        it = it->first > max_deg ? acc.erase(it) : std::next(it);
    return acc;
}

}  // namespace

CrysResult crys_BG(const GroupScheme& g, int m, int max_deg)
{
    require(m >= 2, "Witt truncation m must be at least 2");
    require(max_deg >= 0, "max_deg must be nonnegative");
    CrysResult out;
    out.prime = g.p;
    out.m = m;
    out.groups = crys_impl(g, m, max_deg);
    auto next = crys_impl(g, m + 1, max_deg);
    for (const auto& [n, t] : out.groups) {
        const auto& u = next.at(n);
        std::vector<int> ta, tb;
        for (int e : t.exponents)
            if (e < m)
                ta.push_back(e);
        for (int e : u.exponents)
            if (e < m + 1)
                tb.push_back(e);
        if (ta != tb || t.free_rank() != u.free_rank())
            out.m_stable = false;
    }
    return out;
}

std::optional<int> crys_mod_p_mismatch(const CrysResult& c, const std::map<int, std::size_t>& derham)
{
    for (const auto& [n, t] : c.groups) {
        auto nx = c.groups.find(n + 1);
        if (nx == c.groups.end())
            break;
        auto dr = derham.count(n) ? derham.at(n) : 0;
        if (t.mod_p_dim() + nx->second.p_torsion_dim() != dr)
            return n;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- TP

TPReport tp_accounting(const GroupScheme& g, int max_deg, int m, TPAbutment abutment)
{
    auto c = crys_BG(g, m, max_deg);
    TPReport out;
    out.e2 = GradedSpace(Window{0, max_deg, std::nullopt});
    bool torsion = false;
    std::vector<std::string> torsion_at;
    for (const auto& [n, t] : c.groups) {
        if (t.zero())
            continue;
        out.e2.add({n, 0, 0}, t.mod_p_dim(), {t.to_string()});
        if (n % 2)
            out.odd_degrees.push_back(n);
        if (t.p_torsion_dim()) {
            torsion = true;
            torsion_at.push_back("H^" + std::to_string(n) + " = " + t.to_string());
        }
    }

    // d_r moves crystalline degree by 2r - 1, so an all-even page has no room.
    if (out.odd_degrees.empty()) {
        if (abutment.odd_classes)
            fail(ErrorKind::Precondition,
                 "declared abutment has odd classes but the page is concentrated in even degrees");
        out.degenerate = true;
        if (!torsion) {
            out.split = true;
            out.reason = "page concentrated in even degrees; all graded pieces free";
        } else if (abutment.torsion_free) {
            out.split = false;
            out.reason = "page concentrated in even degrees; E_infinity has torsion (" + torsion_at.front() +
                         ") while the abutment is torsion-free";
        } else {
            out.reason = "page concentrated in even degrees; splitting not decided by torsion";
        }
        return out;
    }
    if (abutment.odd_classes)
        fail(ErrorKind::Unsupported, "odd page classes against an abutment with odd classes: not decided by parity");
    out.degenerate = false;
    auto n = out.odd_degrees.front();
    out.reason = "H^" + std::to_string(n) + " = " + c.groups.at(n).to_string() +
                 " in odd degree against an even abutment forces a nonzero differential";
    return out;
}

// ---------------------------------------------------------------- BPGL_n

GradedSpace pgl_omega1(std::uint32_t n, std::uint32_t p)
{
    require(n >= 2, "n must be at least 2");
    require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
    CochainComplex src(p, 1, 1), dst(p, 1, 1);
    src.set_term(1, Term{1, {0}, {"x"}});
    dst.set_term(1, Term{1, {0}, {"y"}});
    ChainMap f{&src, &dst, {{1, FpMatrix::from_rows(p, {{static_cast<std::int64_t>(n)}})}}};
    auto fib = mapping_fiber(f);
    fib.check();
    return cohomology(fib, Window{0, 3, std::nullopt});
}

// ---------------------------------------------------------------- pages

ForcedScenario hkr_scenario(const GroupScheme& g, int max_deg)
{
    if (g.factors.size() != 1)
        fail(ErrorKind::Unsupported, "HKR search is implemented for a single factor, got " + g.name());
    require(max_deg >= 0, "max_deg must be nonnegative");
    const int q = static_cast<int>(g.p);
    ForcedScenario sc;
    sc.page.prime = g.p;
    sc.r_max = q + 1;
    if (g.factors[0] == GroupFactor::Mu) {
        // HH(Bμ_p) = k[c]/(c^p) in degree 0.
        sc.page.gens = {make_gen("d", 0, -1, 0, GenKind::Exterior), make_gen("c", 1, -1, 0, GenKind::Polynomial)};
        sc.page.window = PageWindow{-3, 2, 0, 4 * q, std::nullopt, 0};
        sc.abutment = AbutmentSpec{{{0, g.p}}, -2, 1, 0};
        return sc;
    }
    // HH(Bα_p) = E(α) P(β) k[u]/u^p (P(α) k[u]/u^p for p = 2): p per degree.
    auto alpha_kind = q == 2 ? GenKind::Polynomial : GenKind::Exterior;
    sc.page.gens = {make_gen("alpha", 1, 0, 1, alpha_kind)};
    if (q != 2)
        sc.page.gens.push_back(make_gen("beta", 2, 0, q, GenKind::Polynomial));
    sc.page.gens.push_back(make_gen("s", 0, -1, q, GenKind::Exterior));
    sc.page.gens.push_back(make_gen("u", 1, -1, 1, GenKind::Polynomial));
    sc.page.permanent = {"alpha"};
    if (q != 2)
        sc.page.permanent.insert("beta");
    sc.page.window = PageWindow{-2, max_deg + 1, 0, max_deg + 2 + 3 * q, std::nullopt, 0};
    sc.abutment.n_min = -1;
    sc.abutment.n_max = max_deg;
    for (int n = 0; n <= max_deg; ++n)
        sc.abutment.dims[n] = g.p;
    return sc;
}

namespace {

ForcedScenario alpha_derham_page(std::uint32_t p, int max_deg, bool conjugate)
{
    require(max_deg >= 0, "max_deg must be nonnegative");
    const int q = static_cast<int>(p);
    const int f = conjugate ? q : 1;
    auto alpha_kind = q == 2 ? GenKind::Polynomial : GenKind::Exterior;
    ForcedScenario sc;
    sc.page.prime = p;
    if (conjugate) {
        sc.page.r = 2;
        sc.page.gens = {make_gen("alpha", 1, 0, f, alpha_kind)};
        if (q != 2)
            sc.page.gens.push_back(make_gen("beta", 2, 0, q * f, GenKind::Polynomial));
        sc.page.gens.push_back(make_gen("s", 0, 1, q * f, GenKind::Exterior));
        sc.page.gens.push_back(make_gen("u", 1, 1, f, GenKind::Polynomial));
    } else {
        sc.page.r = 1;
        sc.page.gens = {make_gen("alpha", 0, 1, 1, alpha_kind)};
        if (q != 2)
            sc.page.gens.push_back(make_gen("beta", 0, 2, q, GenKind::Polynomial));
        sc.page.gens.push_back(make_gen("s", 1, 0, q, GenKind::Exterior));
        sc.page.gens.push_back(make_gen("u", 1, 1, 1, GenKind::Polynomial));
    }
    sc.page.window = PageWindow{-1, max_deg + 1, 0, max_deg + 5, std::nullopt, 0};
    sc.abutment.n_min = 0;
    sc.abutment.n_max = max_deg;
    for (int n = 0; n <= max_deg; ++n)
        sc.abutment.dims[n] = 1;
    sc.abutment.weight_divisor = q;
    sc.r_max = 3;
    return sc;
}

}  // namespace

ForcedScenario hodge_de_rham_scenario(std::uint32_t p, int max_deg)
{
    return alpha_derham_page(p, max_deg, false);
}

ForcedScenario conjugate_scenario(std::uint32_t p, int max_deg)
{
    return alpha_derham_page(p, max_deg, true);
}

ForcedScenario derham_hp_scenario(const GroupScheme& g, int max_deg)
{
    if (g.factors.size() != 1)
        fail(ErrorKind::Unsupported, "de Rham-HP search is implemented for a single factor, got " + g.name());
    require(max_deg >= 0, "max_deg must be nonnegative");
    const int q = static_cast<int>(g.p);
    ForcedScenario sc;
    sc.page.prime = g.p;
    sc.r_max = q + 1;
    int s_min = -(q + 1), s_max = max_deg + 3 * q + 2;
    sc.page.window = PageWindow{-1, max_deg + 1, s_min, s_max, std::nullopt, s_max - s_min + max_deg + 2};
    auto t = make_gen("t", 1, 1, 0, GenKind::Laurent);
    if (g.factors[0] == GroupFactor::Mu) {
        // t comes from the circle, c from BG_m: both permanent.  HP = P(t^±) k[c]/c^p.
        sc.page.gens = {make_gen("d", 1, 0, 0, GenKind::Exterior), make_gen("c", 2, 0, 0, GenKind::Polynomial), t};
        sc.page.permanent = {"c", "t"};
        sc.abutment.n_min = 0;
        sc.abutment.n_max = max_deg;
        for (int n = 0; n <= max_deg; n += 2)
            sc.abutment.dims[n] = g.p;
        return sc;
    }
    // No abutment is declared: the page admits no differentials at all.
    auto a = alpha_derham_ring(g.p);
    sc.page.gens = {make_gen("alpha'", 1, 0, q, a[0].kind), make_gen("beta'", 2, 0, q, GenKind::Polynomial), t};
    sc.page.permanent = {"t"};
    return sc;
}

}  // namespace stackcoh
