#include "stackcoh/graded.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <sstream>

namespace stackcoh {

void GradedSpace::add(const GradeIndex& g, std::size_t dim, std::vector<std::string> labels)
{
    if (dim == 0 && labels.empty())
        return;
    auto& cell = cells_[g];
    cell.dim += dim;
    for (auto& l : labels)
        cell.labels.push_back(std::move(l));
}

void GradedSpace::mark_indeterminate(const GradeIndex& g)
{
    cells_[g].indeterminate = true;
}

std::size_t GradedSpace::dim(const GradeIndex& g) const
{
    auto it = cells_.find(g);
    return it == cells_.end() ? 0 : it->second.dim;
}

bool GradedSpace::indeterminate(const GradeIndex& g) const
{
    auto it = cells_.find(g);
    return it != cells_.end() && it->second.indeterminate;
}

bool GradedSpace::degree_indeterminate(int deg) const
{
    for (const auto& [g, c] : cells_)
        if (g.deg == deg && c.indeterminate)
            return true;
    return false;
}

std::size_t GradedSpace::total_dim(int deg) const
{
    std::size_t s = 0;
    for (const auto& [g, c] : cells_)
        if (g.deg == deg)
            s += c.dim;
    return s;
}

std::map<int, std::size_t> GradedSpace::dims_by_degree() const
{
    std::map<int, std::size_t> out;
    for (const auto& [g, c] : cells_)
        out[g.deg] += c.dim;
    return out;
}

bool operator==(const GradedCell& a, const GradedCell& b)
{
    return a.dim == b.dim && a.labels == b.labels && a.indeterminate == b.indeterminate;
}

bool operator==(const GradedSpace& a, const GradedSpace& b)
{
    return a.cells_ == b.cells_ && a.window_ == b.window_;
}

namespace {

std::string tensor_label(const std::string& a, const std::string& b)
{
    if (a == "1")
        return b;
    if (b == "1")
        return a;
    return a + "⊗" + b;
}

bool in_window(const GradeIndex& g, const std::optional<Window>& w)
{
    if (!w)
        return true;
    return g.deg >= w->deg_min && g.deg <= w->deg_max && w->contains_weight(g.weight);
}

}  // namespace

GradedSpace kunneth(const GradedSpace& a, const GradedSpace& b, std::optional<Window> window)
{
    GradedSpace out;
    if (window)
        out.set_window(*window);
    for (const auto& [ga, ca] : a.cells())
        for (const auto& [gb, cb] : b.cells()) {
            GradeIndex g{ga.deg + gb.deg, ga.wedge + gb.wedge, ga.weight + gb.weight};
            if (!in_window(g, window))
                continue;
            std::vector<std::string> labels;
            if (ca.labels.size() == ca.dim && cb.labels.size() == cb.dim)
                for (const auto& la : ca.labels)
                    for (const auto& lb : cb.labels)
                        labels.push_back(tensor_label(la, lb));
            out.add(g, ca.dim * cb.dim, std::move(labels));
            if (ca.indeterminate || cb.indeterminate)
                out.mark_indeterminate(g);
        }
    return out;
}

CochainComplex::CochainComplex(std::uint32_t p, int lo, int hi, bool bounded)
    : p_(p), lo_(lo), hi_(hi), bounded_(bounded)
{
    require(lo <= hi + 1, "cochain complex with lo > hi + 1");
}

void CochainComplex::set_term(int n, Term t)
{
    if (n < lo_ || n > hi_)
        fail(ErrorKind::Internal, "term outside complex range in degree " + std::to_string(n));
    if (!t.weights.empty() && t.weights.size() != t.dim)
        fail(ErrorKind::Internal, "weight list length mismatch in degree " + std::to_string(n));
    if (!t.labels.empty() && t.labels.size() != t.dim)
        fail(ErrorKind::Internal, "label list length mismatch in degree " + std::to_string(n));
    terms_[n] = std::move(t);
}

const Term& CochainComplex::term(int n) const
{
    static const Term empty;
    auto it = terms_.find(n);
    return it == terms_.end() ? empty : it->second;
}

void CochainComplex::set_differential(int n, FpMatrix d)
{
    if (d.rows() != dim(n + 1) || d.cols() != dim(n) || d.prime() != p_)
        fail(ErrorKind::Internal, "differential shape mismatch in degree " + std::to_string(n));
    diff_[n] = std::move(d);
}

FpMatrix CochainComplex::differential(int n) const
{
    auto it = diff_.find(n);
    if (it != diff_.end())
        return it->second;
    return FpMatrix(p_, dim(n + 1), dim(n));
}

void CochainComplex::check() const
{
    for (const auto& [n, d] : diff_) {
        const Term& s = term(n);
        const Term& t = term(n + 1);
        if (!s.weights.empty() && !t.weights.empty())
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t j = 0; j < d.cols(); ++j)
                    if (d.at(i, j) && s.weights[j] != t.weights[i])
                        fail(ErrorKind::Internal, "differential in degree " + std::to_string(n) + " does not preserve weight");
        auto next = diff_.find(n + 1);
        if (next != diff_.end() && !(next->second * d).is_zero())
            fail(ErrorKind::Internal, "d^2 != 0 at degree " + std::to_string(n));
    }
}

std::string format_vector(const Vec& v, const std::vector<std::string>& labels)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i])
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (v[i] != 1)
            os << unsigned(v[i]) << "*";
        if (i < labels.size())
            os << labels[i];
        else
            os << "e" << i;
    }
    if (first)
        os << "0";
    return os.str();
}

namespace {

std::vector<std::size_t> indices_of_weight(const Term& t, int w)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < t.dim; ++i)
        if ((t.weights.empty() ? 0 : t.weights[i]) == w)
            idx.push_back(i);
    return idx;
}

std::vector<std::string> pick(const std::vector<std::string>& v, const std::vector<std::size_t>& idx)
{
    std::vector<std::string> out;
    if (v.empty())
        return out;
    for (auto i : idx)
        out.push_back(v[i]);
    return out;
}

}  // namespace

GradedSpace cohomology(const CochainComplex& c, const Window& w, bool representatives)
{
    GradedSpace out(w);
    for (int n = w.deg_min; n <= w.deg_max; ++n) {
        if (n < c.lo() || n > c.hi()) {
            if (!c.bounded())
                out.mark_indeterminate({n, 0, 0});
            continue;
        }
        if (!c.bounded() && (n == c.lo() || n == c.hi())) {
            out.mark_indeterminate({n, 0, 0});
            continue;
        }
        const Term& here = c.term(n);
        std::set<int> weights;
        for (std::size_t i = 0; i < here.dim; ++i)
            weights.insert(here.weights.empty() ? 0 : here.weights[i]);
        FpMatrix din = c.differential(n);
        FpMatrix dprev = c.differential(n - 1);
        for (int wt : weights) {
            if (!w.contains_weight(wt))
                continue;
            auto i_here = indices_of_weight(here, wt);
            auto i_next = indices_of_weight(c.term(n + 1), wt);
            auto i_prev = indices_of_weight(c.term(n - 1), wt);
            FpMatrix dn = din.select_rows(i_next).select_columns(i_here);
            FpMatrix dp = dprev.select_rows(i_here).select_columns(i_prev);
            if (!representatives) {
                std::size_t d = i_here.size() - rank(dn) - rank(dp);
                out.add({n, 0, wt}, d);
                continue;
            }
            FpMatrix ker = kernel_basis(dn);
            SubspaceBasis sb(c.prime(), i_here.size());
            for (std::size_t j = 0; j < dp.cols(); ++j)
                sb.insert(dp.column(j));
            auto labels = pick(here.labels, i_here);
            std::vector<std::string> reps;
            for (std::size_t j = 0; j < ker.cols(); ++j) {
                Vec v = ker.column(j);
                if (sb.insert(v))
                    reps.push_back(format_vector(v, labels));
            }
            std::size_t d = reps.size();
            out.add({n, 0, wt}, d, std::move(reps));
        }
    }
    return out;
}

CochainComplex mapping_fiber(const ChainMap& f)
{
    const CochainComplex& C = *f.source;
    const CochainComplex& D = *f.target;
    require(C.prime() == D.prime(), "mapping fiber of complexes over different primes");
    const std::uint32_t p = C.prime();
    auto fmap = [&](int n) {
        auto it = f.maps.find(n);
        if (it != f.maps.end()) {
            if (it->second.rows() != D.dim(n) || it->second.cols() != C.dim(n))
                fail(ErrorKind::Precondition, "chain map has the wrong shape in degree " + std::to_string(n));
            return it->second;
        }
        return FpMatrix(p, D.dim(n), C.dim(n));
    };
    int lo = std::min(C.lo(), D.lo() + 1), hi = std::max(C.hi(), D.hi() + 1);
    for (int n = lo - 1; n <= hi; ++n)
        if (!(D.differential(n) * fmap(n) == fmap(n + 1) * C.differential(n)))
            fail(ErrorKind::Precondition, "chain map does not commute with differentials in degree " + std::to_string(n));

    CochainComplex fib(p, lo, hi, C.bounded() && D.bounded());
    for (int n = lo; n <= hi; ++n) {
        const Term& a = C.term(n);
        const Term& b = D.term(n - 1);
        Term t;
        t.dim = a.dim + b.dim;
        if (!a.weights.empty() || !b.weights.empty()) {
            t.weights = a.weights.empty() ? std::vector<int>(a.dim, 0) : a.weights;
            auto bw = b.weights.empty() ? std::vector<int>(b.dim, 0) : b.weights;
            t.weights.insert(t.weights.end(), bw.begin(), bw.end());
        }
        if (!a.labels.empty() || !b.labels.empty()) {
            for (std::size_t i = 0; i < a.dim; ++i)
                t.labels.push_back(a.labels.empty() ? "c" + std::to_string(i) : a.labels[i]);
            for (std::size_t i = 0; i < b.dim; ++i)
                t.labels.push_back("s(" + (b.labels.empty() ? "x" + std::to_string(i) : b.labels[i]) + ")");
        }
        fib.set_term(n, std::move(t));
    }
    for (int n = lo; n < hi; ++n) {
        std::size_t cn = C.dim(n), dn1 = D.dim(n - 1), cn1 = C.dim(n + 1), dn = D.dim(n);
        FpMatrix m(p, cn1 + dn, cn + dn1);
        FpMatrix dc = C.differential(n), dd = D.differential(n - 1), fn = fmap(n);
        for (std::size_t i = 0; i < cn1; ++i)
            for (std::size_t j = 0; j < cn; ++j)
                m.set(i, j, dc.at(i, j));
        for (std::size_t i = 0; i < dn; ++i) {
            for (std::size_t j = 0; j < cn; ++j)
                m.set(cn1 + i, j, fn.at(i, j));
            for (std::size_t j = 0; j < dn1; ++j)
                m.set(cn1 + i, cn + j, -static_cast<std::int64_t>(dd.at(i, j)));
        }
        fib.set_differential(n, std::move(m));
    }
    fib.check();
    return fib;
}

CochainComplex total_complex(const Bicomplex& b, int col_min, int col_max, int lo, int hi)
{
    struct Slot {
        int p, q;
        std::size_t offset;
        Term term;
    };
    std::map<int, std::vector<Slot>> slots;
    CochainComplex tot(b.prime, lo, hi, false);
    for (int n = lo; n <= hi; ++n) {
        Term t;
        std::vector<Slot> row;
        bool weighted = false;
        for (int p = col_min; p <= col_max; ++p) {
            int q = n - p;
            if (q < b.q_min || q > b.q_max)
                continue;
            Term c = b.cell(p, q);
            if (c.dim == 0)
                continue;
            weighted = weighted || !c.weights.empty();
            row.push_back({p, q, t.dim, c});
            t.dim += c.dim;
        }
        for (const auto& s : row) {
            if (weighted) {
                auto w = s.term.weights.empty() ? std::vector<int>(s.term.dim, 0) : s.term.weights;
                t.weights.insert(t.weights.end(), w.begin(), w.end());
            }
            for (std::size_t i = 0; i < s.term.dim; ++i) {
                std::string l = s.term.labels.empty() ? "e" + std::to_string(i) : s.term.labels[i];
                t.labels.push_back("(" + std::to_string(s.p) + "," + std::to_string(s.q) + "):" + l);
            }
        }
        tot.set_term(n, std::move(t));
        slots[n] = std::move(row);
    }
    for (int n = lo; n < hi; ++n) {
        FpMatrix d(b.prime, tot.dim(n + 1), tot.dim(n));
        auto place = [&](const FpMatrix& m, std::size_t r0, std::size_t c0) {
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (m.at(i, j))
                        d.add_to(r0 + i, c0 + j, m.at(i, j));
        };
        for (const auto& src : slots[n])
            for (const auto& dst : slots[n + 1]) {
                if (dst.p == src.p + 1 && dst.q == src.q) {
                    FpMatrix h = b.horizontal(src.p, src.q);
                    if (h.rows() != dst.term.dim || h.cols() != src.term.dim)
                        fail(ErrorKind::Internal, "horizontal map has the wrong shape at (" + std::to_string(src.p) + "," + std::to_string(src.q) + ")");
                    place(h, dst.offset, src.offset);
                } else if (dst.p == src.p && dst.q == src.q + 1) {
                    FpMatrix v = b.vertical(src.p, src.q);
                    if (v.rows() != dst.term.dim || v.cols() != src.term.dim)
                        fail(ErrorKind::Internal, "vertical map has the wrong shape at (" + std::to_string(src.p) + "," + std::to_string(src.q) + ")");
                    place(v, dst.offset, src.offset);
                }
            }
        tot.set_differential(n, std::move(d));
    }
    return tot;
}

void check_anticommute(const Bicomplex& b, int col_min, int col_max, int q_min, int q_max)
{
    for (int p = col_min; p < col_max; ++p)
        for (int q = q_min; q < q_max; ++q) {
            if (b.cell(p, q).dim == 0 || b.cell(p + 1, q + 1).dim == 0)
                continue;
            FpMatrix s = b.vertical(p + 1, q) * b.horizontal(p, q) + b.horizontal(p, q + 1) * b.vertical(p, q);
            if (!s.is_zero())
                fail(ErrorKind::Internal, "bicomplex maps do not anticommute at (" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
}

Totalization totalize_bicomplex(const Bicomplex& b, const Window& w)
{
    int lo = w.deg_min - 1, hi = w.deg_max + 1;
    CochainComplex small = total_complex(b, b.col_min, b.col_max, lo, hi);
    small.check();
    CochainComplex big = total_complex(b, b.col_min - (b.grow_left ? 1 : 0), b.col_max + 1, lo, hi);
    big.check();
    GradedSpace hs = cohomology(small, w);
    GradedSpace hb = cohomology(big, w);
    std::set<int> unstable;
    for (int n = w.deg_min; n <= w.deg_max; ++n) {
        std::map<int, std::size_t> a, c;
        for (const auto& [g, cell] : hs.cells())
            if (g.deg == n)
                a[g.weight] += cell.dim;
        for (const auto& [g, cell] : hb.cells())
            if (g.deg == n)
                c[g.weight] += cell.dim;
        std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
        if (a != c)
            unstable.insert(n);
    }
    for (int n : unstable) {
        std::vector<GradeIndex> gs;
        for (const auto& [g, cell] : hs.cells())
            if (g.deg == n)
                gs.push_back(g);
        for (const auto& g : gs)
            hs.mark_indeterminate(g);
        hs.mark_indeterminate({n, 0, 0});
    }
    return {std::move(small), std::move(hs), std::move(unstable)};
}

}  // namespace stackcoh
