#include "stackcoh/spectral.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace stackcoh {

namespace {

int parity(long x)
{
    return static_cast<int>(((x % 2) + 2) % 2);
}

void add_term(Poly& p, const Exponents& e, Entry c, const PrimeField& F)
{
    if (!c)
        return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
        return;
    }
    it->second = F.add(it->second, c);
    if (!it->second)
        p.erase(it);
}

std::string describe_assignment(const PagePresentation& p, const Assignment& a)
{
    std::ostringstream os;
    os << "d_" << a.r << "(" << a.source << ") = ";
    if (a.scalar != 1)
        os << int(a.scalar) << "*";
    os << p.monomial(a.target);
    return os.str();
}

}  // namespace

std::size_t PagePresentation::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name)
            return i;
    fail(ErrorKind::Precondition, "unknown generator " + name);
}

FreeAlgebra::FreeAlgebra(std::uint32_t p, std::vector<Generator> gens) : p_(p), gens_(std::move(gens)) {}

bool FreeAlgebra::odd(const Exponents& e) const
{
    long t = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        t += long(e[i]) * gens_[i].total();
    return parity(t) == 1;
}

Entry FreeAlgebra::multiply(const Exponents& a, const Exponents& b, Exponents& out) const
{
    const std::size_t k = gens_.size();
    out.assign(k, 0);
    long sign = 0, odd_after = 0;
    for (std::size_t j = k; j-- > 0;) {
        const Generator& g = gens_[j];
        if (g.odd()) {
            sign += odd_after * b[j];
            odd_after += a[j];
        }
        int e = a[j] + b[j];
        if (g.kind == GenKind::Exterior && e > 1)
            return 0;
        if (g.kind != GenKind::Laurent && e < 0)
            return 0;
        if (g.truncation > 0 && e >= g.truncation)
            return 0;
        out[j] = e;
    }
    return parity(sign) ? static_cast<Entry>(p_ - 1) : 1;
}

Poly FreeAlgebra::multiply(const Poly& a, const Poly& b) const
{
    PrimeField F(p_);
    Poly out;
    Exponents e;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) {
            Entry s = multiply(x, y, e);
            if (s)
                add_term(out, e, F.mul(s, F.mul(cx, cy)), F);
        }
    return out;
}

Derivation::Derivation(const FreeAlgebra& alg, std::vector<Poly> on_generators)
    : alg_(&alg), d_(std::move(on_generators))
{
    if (d_.size() != alg.gens().size())
        fail(ErrorKind::Internal, "derivation needs one value per generator");
}

Poly Derivation::apply(const Exponents& m) const
{
    const auto& gens = alg_->gens();
    PrimeField F(alg_->prime());
    Poly out;
    Exponents prefix(gens.size(), 0), suffix, x, y;
    long prefix_total = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (m[i] != 0 && !d_[i].empty() && gens[i].kind != GenKind::Laurent) {
            Entry coeff = F.reduce(m[i]);
            if (coeff) {
                Exponents a = prefix;
                a[i] = m[i] - 1;
                suffix.assign(gens.size(), 0);
                for (std::size_t j = i + 1; j < gens.size(); ++j)
                    suffix[j] = m[j];
                Entry sign0 = parity(prefix_total) ? F.neg(1) : 1;
                for (const auto& [t, c] : d_[i]) {
                    Entry s1 = alg_->multiply(a, t, x);
                    if (!s1)
                        continue;
                    Entry s2 = alg_->multiply(x, suffix, y);
                    if (!s2)
                        continue;
                    add_term(out, y, F.mul(F.mul(sign0, coeff), F.mul(c, F.mul(s1, s2))), F);
                }
            }
        }
        prefix[i] = m[i];
        prefix_total += long(m[i]) * gens[i].total();
    }
    return out;
}

Poly Derivation::apply(const Poly& x) const
{
    PrimeField F(alg_->prime());
    Poly out;
    for (const auto& [m, c] : x)
        for (const auto& [t, v] : apply(m))
            add_term(out, t, F.mul(c, v), F);
    return out;
}

std::optional<std::size_t> Derivation::square_witness() const
{
    for (std::size_t i = 0; i < d_.size(); ++i)
        if (!apply(d_[i]).empty())
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Derivation::truncation_witness() const
{
    const auto& gens = alg_->gens();
    PrimeField F(alg_->prime());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int N = gens[i].truncation;
        if (N <= 0 || d_[i].empty() || F.reduce(N) == 0)
            continue;
        Exponents e(gens.size(), 0);
        e[i] = N - 1;
        Poly g{{e, 1}};
        if (!alg_->multiply(g, d_[i]).empty())
            return i;
    }
    return std::nullopt;
}

int ExpandedPage::s_of(const Exponents& e) const
{
    return monomial_info(algebra.gens(), e).s;
}

namespace {

std::vector<std::size_t> where(const std::vector<int>& s, const std::function<bool(int)>& pred)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (pred(s[i]))
            out.push_back(i);
    return out;
}

FpMatrix columns_embedded(const FpMatrix& ker, const std::vector<std::size_t>& idx, std::size_t n, std::uint32_t p)
{
    FpMatrix out(p, n, ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t t = 0; t < idx.size(); ++t)
            if (ker.at(t, j))
                out.set(idx[t], j, ker.at(t, j));
    return out;
}

}  // namespace

GradedSpace ExpandedPage::page(int r) const
{
    const std::uint32_t p = algebra.prime();
    r = std::max(r, r_start);
    GradedSpace out;
    auto svec = [&](const std::vector<Exponents>& b) {
        std::vector<int> s;
        for (const auto& e : b)
            s.push_back(s_of(e));
        return s;
    };
    static const std::vector<Exponents> none;
    auto basis_at = [&](int n, int w) -> const std::vector<Exponents>& {
        auto it = basis.find({n, w});
        return it == basis.end() ? none : it->second;
    };
    auto D_at = [&](int n, int w) {
        auto it = D.find({n, w});
        if (it != D.end())
            return it->second;
        return FpMatrix(p, basis_at(n + 1, w).size(), basis_at(n, w).size());
    };
    for (const auto& [key, V] : basis) {
        auto [n, w] = key;
        if (n < window.n_min || n > window.n_max)
            continue;
        const auto& U = basis_at(n - 1, w);
        const auto& W = basis_at(n + 1, w);
        auto sV = svec(V), sU = svec(U), sW = svec(W);
        FpMatrix Dn = D_at(n, w), Dp = D_at(n - 1, w);
        std::set<int> levels(sV.begin(), sV.end());
        for (int lvl : levels) {
            auto cZ = where(sV, [&](int s) { return s >= lvl; });
            auto rZ = where(sW, [&](int s) { return s < lvl + r; });
            FpMatrix kz = kernel_basis(Dn.select_rows(rZ).select_columns(cZ));
            auto c1 = where(sV, [&](int s) { return s >= lvl + 1; });
            FpMatrix k1 = kernel_basis(Dn.select_rows(rZ).select_columns(c1));
            auto cU = where(sU, [&](int s) { return s >= lvl - r + 1; });
            auto rU = where(sV, [&](int s) { return s < lvl; });
            FpMatrix ku = kernel_basis(Dp.select_rows(rU).select_columns(cU));
            FpMatrix spanZ1 = columns_embedded(k1, c1, V.size(), p);
            FpMatrix spanB = Dp * columns_embedded(ku, cU, U.size(), p);
            std::size_t lower = rank(spanZ1.hconcat(spanB));
            std::size_t d = kz.cols() - lower;
            if (d)
                out.add({lvl, n - lvl, w}, d);
        }
    }
    return out;
}

GradedSpace ExpandedPage::verified_page(int r) const
{
    GradedSpace all = page(r), out;
    for (const auto& [g, c] : all.cells())
        if (g.deg >= verify_s_min && g.deg <= verify_s_max)
            out.add(g, c.dim);
    return out;
}

FpMatrix ExpandedPage::component(int n, int w, int r) const
{
    const std::uint32_t p = algebra.prime();
    auto src = basis.find({n, w});
    auto dst = basis.find({n + 1, w});
    std::size_t rows = dst == basis.end() ? 0 : dst->second.size();
    std::size_t cols = src == basis.end() ? 0 : src->second.size();
    FpMatrix out(p, rows, cols);
    auto it = D.find({n, w});
    if (it == D.end())
        return out;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (s_of(dst->second[i]) - s_of(src->second[j]) == r)
                out.set(i, j, it->second.at(i, j));
    return out;
}

namespace {

struct Built {
    ExpandedPage page;
};

void validate(const PagePresentation& p)
{
    require(is_prime(p.prime) && p.prime < 256, "page prime must be a prime below 256");
    check_parity(p.gens, p.prime == 2);
    std::size_t laurent = 0;
    std::set<std::string> names;
    for (const auto& g : p.gens) {
        if (!names.insert(g.name).second)
            fail(ErrorKind::Precondition, "duplicate generator " + g.name);
        if (g.kind == GenKind::Laurent) {
            ++laurent;
            if (g.odd())
                fail(ErrorKind::Precondition, "Laurent generator " + g.name + " must be even");
            if (!p.permanent.count(g.name))
                fail(ErrorKind::Precondition, "Laurent generator " + g.name + " must be marked permanent");
        }
    }
    if (laurent > 1)
        fail(ErrorKind::Unsupported, "at most one Laurent generator is supported");
    for (const auto& name : p.permanent)
        p.index_of(name);
    const auto& W = p.window;
    require(W.n_min <= W.n_max && W.s_min <= W.s_max, "page window is empty");
}

std::vector<Poly> generator_values(const PagePresentation& p, const std::vector<Assignment>& as)
{
    PrimeField F(p.prime);
    std::vector<Poly> d(p.gens.size());
    for (const auto& a : as) {
        std::size_t i = p.index_of(a.source);
        const Generator& g = p.gens[i];
        if (a.target.size() != p.gens.size())
            fail(ErrorKind::Precondition, "target of d(" + a.source + ") has the wrong number of exponents");
        for (std::size_t j = 0; j < p.gens.size(); ++j)
            if (a.target[j] < 0 && p.gens[j].kind != GenKind::Laurent)
                fail(ErrorKind::Precondition, "target of d(" + a.source + ") has a negative exponent");
        if (a.r < p.r)
            fail(ErrorKind::Precondition, "differential on " + a.source + " precedes the starting page");
        if (p.permanent.count(a.source))
            fail(ErrorKind::Precondition, "generator " + a.source + " is marked permanent");
        auto m = monomial_info(p.gens, a.target);
        if (m.s != g.s + a.r || m.t != g.t + 1 - a.r)
            fail(ErrorKind::Precondition, "differential on " + a.source + " does not have bidegree (r, 1-r)");
        if (m.weight != g.weight)
            fail(ErrorKind::Precondition, "differential on " + a.source + " does not preserve weight");
        add_term(d[i], a.target, F.reduce(a.scalar), F);
    }
    return d;
}

Built build(const PagePresentation& p, const std::vector<Assignment>& as, int r_max)
{
    validate(p);
    FreeAlgebra alg(p.prime, p.gens);
    std::vector<Poly> dg = generator_values(p, as);
    Derivation D(alg, dg);
    if (auto w = D.square_witness())
        fail(ErrorKind::Precondition, "d^2 != 0 on generator " + p.gens[*w].name);
    if (auto w = D.truncation_witness())
        fail(ErrorKind::Precondition, "differential on " + p.gens[*w].name + " is incompatible with its truncation");

    ExpandedPage page{alg, p.r, r_max, p.window, 0, 0, {}, {}, dg};
    const auto& W = p.window;
    std::vector<Generator> nl;
    std::vector<std::size_t> nl_idx;
    std::optional<std::size_t> lau;
    for (std::size_t i = 0; i < p.gens.size(); ++i) {
        if (p.gens[i].kind == GenKind::Laurent) {
            lau = i;
        } else {
            nl.push_back(p.gens[i]);
            nl_idx.push_back(i);
        }
    }
    int K = lau ? W.laurent_bound : 0;
    int ls = lau ? std::abs(p.gens[*lau].s) : 0, ln = lau ? std::abs(p.gens[*lau].total()) : 0;
    auto mons = enumerate_monomials(nl, W.n_min - 1 - K * ln, W.n_max + 1 + K * ln, 0,
                                    std::max(0, W.s_max + K * ls));
    std::map<std::pair<int, int>, std::vector<std::pair<int, Exponents>>> raw;
    for (const auto& m : mons) {
        Exponents full(p.gens.size(), 0);
        for (std::size_t j = 0; j < nl_idx.size(); ++j)
            full[nl_idx[j]] = m[j];
        for (int e = -K; e <= K; ++e) {
            if (lau)
                full[*lau] = e;
            auto info = monomial_info(p.gens, full);
            int n = info.s + info.t;
            if (n < W.n_min - 1 || n > W.n_max + 1 || info.s < W.s_min || info.s > W.s_max)
                continue;
            if (W.weight_max && info.weight > *W.weight_max)
                continue;
            raw[{n, info.weight}].emplace_back(info.s, full);
        }
    }
    for (auto& [key, v] : raw) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second > b.second;
        });
        auto& dst = page.basis[key];
        for (auto& [s, e] : v)
            dst.push_back(std::move(e));
    }
    for (const auto& [key, V] : page.basis) {
        auto [n, w] = key;
        if (n > W.n_max)
            continue;
        auto tgt = page.basis.find({n + 1, w});
        std::map<Exponents, std::size_t> idx;
        if (tgt != page.basis.end())
            for (std::size_t i = 0; i < tgt->second.size(); ++i)
                idx[tgt->second[i]] = i;
        FpMatrix M(p.prime, idx.size(), V.size());
        for (std::size_t j = 0; j < V.size(); ++j)
            for (const auto& [t, c] : D.apply(V[j])) {
                auto it = idx.find(t);
                if (it != idx.end())
                    M.set(it->second, j, c);
            }
        page.D.emplace(key, std::move(M));
    }
    page.verify_s_max = W.s_max - r_max;
    page.verify_s_min = (lau || W.s_min > 0) ? W.s_min + r_max : W.s_min;
    return {std::move(page)};
}

int longest(const PagePresentation& p, const std::vector<Assignment>& as)
{
    int r = p.r;
    for (const auto& a : as)
        r = std::max(r, a.r);
    return r;
}

}  // namespace

ExpandedPage expand_page(const PagePresentation& p, std::optional<int> r_max)
{
    int r = std::max(r_max.value_or(0), longest(p, p.differentials));
    return build(p, p.differentials, r).page;
}

std::size_t check_leibniz(const ExpandedPage& page, int n_min, int n_max)
{
    const FreeAlgebra& alg = page.algebra;
    PrimeField F(alg.prime());
    Derivation D(alg, page.generator_differentials);
    std::vector<Exponents> mons;
    for (const auto& [key, V] : page.basis)
        if (key.first >= n_min && key.first <= n_max)
            mons.insert(mons.end(), V.begin(), V.end());
    std::size_t checked = 0;
    Exponents xy;
    for (const auto& x : mons)
        for (const auto& y : mons) {
            Poly px{{x, 1}}, py{{y, 1}};
            Poly prod = alg.multiply(px, py);
            Poly lhs = D.apply(prod);
            Poly rhs = alg.multiply(D.apply(x), py);
            Poly right = alg.multiply(px, D.apply(y));
            Entry sign = alg.odd(x) ? F.neg(1) : 1;
            for (const auto& [m, c] : right)
                add_term(rhs, m, F.mul(sign, c), F);
            if (lhs != rhs)
                fail(ErrorKind::Internal, "Leibniz fails on " + monomial_label(alg.gens(), x) + " * " +
                                              monomial_label(alg.gens(), y));
            ++checked;
        }
    return checked;
}

namespace {

std::vector<Candidate> candidates_on(const PagePresentation& p, const ExpandedPage& page, int r,
                                     const std::set<std::string>& busy)
{
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < p.gens.size(); ++i) {
        const Generator& g = p.gens[i];
        if (g.kind == GenKind::Laurent || p.permanent.count(g.name) || busy.count(g.name))
            continue;
        int s = g.s + r, t = g.t + 1 - r;
        if (s < page.verify_s_min || s > page.verify_s_max)
            continue;
        auto it = page.basis.find({s + t, g.weight});
        if (it == page.basis.end())
            continue;
        for (const auto& e : it->second) {
            auto m = monomial_info(p.gens, e);
            if (m.s != s)
                continue;
            bool bare_permanent = false;
            int deg = 0;
            std::size_t only = 0;
            for (std::size_t j = 0; j < e.size(); ++j)
                if (e[j]) {
                    deg += std::abs(e[j]);
                    only = j;
                }
            if (deg == 1 && e[only] == 1 && p.permanent.count(p.gens[only].name))
                bare_permanent = true;
            if (bare_permanent)
                continue;
            out.push_back({r, g.name, e, p.monomial(e)});
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.r != b.r)
            return a.r < b.r;
        if (a.source != b.source)
            return a.source < b.source;
        return a.target_label < b.target_label;
    });
    return out;
}

std::map<int, std::size_t> totals(const GradedSpace& g, int n_min, int n_max)
{
    std::map<int, std::size_t> out;
    for (int n = n_min; n <= n_max; ++n)
        out[n] = 0;
    for (const auto& [k, c] : g.cells()) {
        int n = k.deg + k.wedge;
        if (n >= n_min && n <= n_max)
            out[n] += c.dim;
    }
    return out;
}

}  // namespace

std::vector<Candidate> admissible_differentials(const PagePresentation& p, int r)
{
    ExpandedPage page = build(p, p.differentials, std::max(r, longest(p, p.differentials))).page;
    std::set<std::string> busy;
    for (const auto& a : p.differentials)
        busy.insert(a.source);
    return candidates_on(p, page, r, busy);
}

std::string Pattern::describe(const PagePresentation& p) const
{
    if (assignments.empty())
        return "no differentials";
    std::string s;
    for (const auto& a : assignments) {
        if (!s.empty())
            s += ", ";
        s += describe_assignment(p, a);
    }
    return s;
}

SearchReport forced_search(const PagePresentation& p, const AbutmentSpec& ab, int r_max, std::size_t branch_budget)
{
    require(r_max >= p.r, "search needs r_max >= starting page");
    require(ab.n_min >= p.window.n_min && ab.n_max <= p.window.n_max, "abutment degrees must lie in the page window");
    r_max = std::max(r_max, longest(p, p.differentials));
    SearchReport rep;
    std::vector<Assignment> chosen = p.differentials;
    std::set<std::string> busy;
    for (const auto& a : chosen)
        busy.insert(a.source);
    // candidate list per page depends only on the window, not on choices
    ExpandedPage base = build(p, chosen, r_max).page;
    std::map<int, std::vector<Candidate>> cands;
    for (int r = p.r; r <= r_max; ++r) {
        cands[r] = candidates_on(p, base, r, busy);
        if (cands[r].size() > 20)
            fail(ErrorKind::Resource, "page " + std::to_string(r) + " has " + std::to_string(cands[r].size()) +
                                          " candidate differentials, over the limit of 20");
    }
    auto distance = [&](const std::map<int, std::size_t>& e) {
        std::size_t d = 0;
        for (const auto& [n, v] : e) {
            auto it = ab.dims.find(n);
            std::size_t want = it == ab.dims.end() ? 0 : it->second;
            d += v > want ? v - want : want - v;
        }
        return d;
    };
    std::vector<std::pair<std::size_t, Pattern>> misses;
    auto evaluate = [&](const std::vector<Assignment>& as, int r) -> std::optional<GradedSpace> {
        try {
            return build(p, as, r_max).page.verified_page(r);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Precondition)
                throw;
            return std::nullopt;
        }
    };
    std::function<void(int)> page_rec;
    std::function<void(int, std::size_t, std::set<std::string>&)> choose;
    page_rec = [&](int r) {
        if (++rep.stats.branches > branch_budget)
            fail(ErrorKind::Resource, "forced search exceeded the branch budget of " + std::to_string(branch_budget));
        if (r > r_max) {
            auto e = evaluate(chosen, r_max + 1);
            if (!e)
                return;
            Pattern pat;
            for (const auto& a : chosen)
                if (std::find_if(p.differentials.begin(), p.differentials.end(), [&](const Assignment& d) {
                        return d.source == a.source && d.r == a.r;
                    }) == p.differentials.end())
                    pat.assignments.push_back(a);
            pat.e_infinity = totals(*e, ab.n_min, ab.n_max);
            bool ok = true;
            for (const auto& [n, v] : pat.e_infinity) {
                auto it = ab.dims.find(n);
                if (v != (it == ab.dims.end() ? 0 : it->second))
                    ok = false;
            }
            if (ok && ab.weight_divisor)
                for (const auto& [g, c] : e->cells()) {
                    int n = g.deg + g.wedge;
                    if (c.dim && n >= ab.n_min && n <= ab.n_max && g.weight % ab.weight_divisor != 0)
                        ok = false;
                }
            if (ok)
                rep.patterns.push_back(std::move(pat));
            else
                misses.emplace_back(distance(pat.e_infinity), std::move(pat));
            return;
        }
        std::set<std::string> used;
        choose(r, 0, used);
    };
    choose = [&](int r, std::size_t k, std::set<std::string>& used) {
        const auto& cs = cands[r];
        if (k == cs.size()) {
            // the page's choices are fixed: check D^2, usefulness, and dimensions
            std::size_t added = 0;
            for (const auto& a : chosen)
                if (a.r == r && !busy.count(a.source))
                    ++added;
            auto e = evaluate(chosen, r + 1);
            if (!e) {
                ++rep.stats.pruned_square;
                return;
            }
            if (added) {
                for (std::size_t i = 0; i < chosen.size(); ++i) {
                    if (chosen[i].r != r || busy.count(chosen[i].source))
                        continue;
                    auto without = chosen;
                    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
                    auto e2 = evaluate(without, r + 1);
                    if (e2 && *e2 == *e) {
                        ++rep.stats.pruned_redundant;
                        return;
                    }
                }
            }
            for (const auto& [n, v] : totals(*e, ab.n_min, ab.n_max)) {
                auto it = ab.dims.find(n);
                if (v < (it == ab.dims.end() ? 0 : it->second)) {
                    ++rep.stats.pruned_dimension;
                    return;
                }
            }
            page_rec(r + 1);
            return;
        }
        // skip candidate k
        choose(r, k + 1, used);
        const Candidate& c = cs[k];
        if (used.count(c.source))
            return;
        bool taken_earlier = false;
        for (const auto& a : chosen)
            if (a.source == c.source)
                taken_earlier = true;
        if (taken_earlier)
            return;
        used.insert(c.source);
        chosen.push_back({c.r, c.source, c.target, 1});
        choose(r, k + 1, used);
        chosen.pop_back();
        used.erase(c.source);
    };
    page_rec(p.r);
    std::sort(rep.patterns.begin(), rep.patterns.end(), [](const Pattern& a, const Pattern& b) {
        auto key = [](const Pattern& x) {
            std::vector<std::pair<int, std::string>> k;
            for (const auto& as : x.assignments)
                k.emplace_back(as.r, as.source);
            return k;
        };
        return key(a) < key(b);
    });
    rep.unique = rep.patterns.size() == 1;
    std::stable_sort(misses.begin(), misses.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < misses.size() && i < 3; ++i)
        rep.near_misses.push_back(misses[i].second);
    if (rep.patterns.empty()) {
        std::string msg = "abutment unreachable";
        for (const auto& m : rep.near_misses) {
            msg += "; closest: " + m.describe(p) + " with E_inf";
            for (const auto& [n, v] : m.e_infinity)
                msg += " " + std::to_string(n) + ":" + std::to_string(v);
        }
        fail(ErrorKind::AbutmentUnreachable, msg);
    }
    return rep;
}

TatePage tate_page(const HochschildComplex& c, const Window& w)
{
    require(w.deg_min >= 0, "Tate page needs nonnegative Hochschild degrees");
    if (c.top() < w.deg_max + 2)
        fail(ErrorKind::Precondition, "Hochschild complex too short for the Tate window");
    TatePage t;
    t.e2 = GradedSpace(w);
    t.e3 = GradedSpace(w);
    std::map<std::pair<int, int>, std::size_t> dims;
    int lo = std::max(0, w.deg_min - 1);
    for (int n = lo; n <= w.deg_max; ++n)
        for (int wt : c.weights_in(n)) {
            if (!w.contains_weight(wt))
                continue;
            FpMatrix d = connes_on_homology(c, n, wt);
            dims[{n, wt}] = d.cols();
            dims[{n + 1, wt}] = d.rows();
            if (!d.is_zero())
                t.degenerate = false;
            t.d2.emplace(std::make_pair(n, wt), std::move(d));
        }
    for (const auto& [key, dim] : dims) {
        auto [n, wt] = key;
        if (n < w.deg_min || n > w.deg_max || !dim)
            continue;
        t.e2.add({n, 0, wt}, dim);
        auto out = t.d2.find({n, wt});
        auto in = t.d2.find({n - 1, wt});
        std::size_t r_out = out == t.d2.end() ? 0 : rank(out->second);
        std::size_t r_in = in == t.d2.end() ? 0 : rank(in->second);
        t.e3.add({n, 0, wt}, dim - r_out - r_in);
    }
    return t;
}

TatePage tate_page(const GradedSpace& hh)
{
    TatePage t;
    t.e2 = hh;
    t.e3 = hh;
    for (const auto& [g, cell] : hh.cells()) {
        if (!cell.dim)
            continue;
        std::size_t target = hh.dim({g.deg + 1, g.wedge, g.weight});
        if (target)
            fail(ErrorKind::Precondition, "d_2 out of HH_" + std::to_string(g.deg) +
                                              " is not decided by degrees; the Connes operator is needed");
        t.d2.emplace(std::make_pair(g.deg, g.weight), FpMatrix(2, 0, cell.dim));
    }
    return t;
}

}  // namespace stackcoh
