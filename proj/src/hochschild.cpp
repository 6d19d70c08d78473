#include "stackcoh/hochschild.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace stackcoh {

HochschildComplex::HochschildComplex(const PresentedAlgebra& a, int top, std::optional<int> weight_max,
                                     std::size_t budget)
    : alg_(augmentation_adapted(a)), top_(top), weight_max_(weight_max)
{
    require(top >= 0, "Hochschild complex needs a nonnegative top degree");
    if (!alg_.commutative())
        fail(ErrorKind::Precondition, "Hochschild homology is only implemented for commutative algebras");
    const std::size_t dimA = alg_.dim();
    const auto& wts = alg_.weights();
    int min_bar = std::numeric_limits<int>::max(), min_a = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < dimA; ++i) {
        min_a = std::min(min_a, wts[i]);
        if (i > 0)
            min_bar = std::min(min_bar, wts[i]);
    }
    // pruning is only sound when every tensor factor has nonnegative weight
    const bool prune = weight_max && min_a >= 0;
    tuples_.resize(top + 1);
    weights_.resize(top + 1);
    pos_.resize(top + 1);
    blocks_.resize(top + 1);
    index_.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        std::vector<std::pair<int, std::vector<std::size_t>>> found;
        std::vector<std::size_t> t(n + 1);
        std::function<void(int, int)> rec = [&](int slot, int w) {
            if (slot == n + 1) {
                if (weight_max && w > *weight_max)
                    return;
                found.emplace_back(w, t);
                if (found.size() > budget)
                    fail(ErrorKind::Resource, "Hochschild chains in degree " + std::to_string(n) +
                                                  " exceed the budget of " + std::to_string(budget));
                return;
            }
            for (std::size_t x = slot == 0 ? 0 : 1; x < dimA; ++x) {
                int w2 = w + wts[x];
                if (prune && w2 + (n - slot) * min_bar > *weight_max)
                    continue;
                t[slot] = x;
                rec(slot + 1, w2);
            }
        };
        if (n == 0 || dimA > 1)
            rec(0, 0);
        std::stable_sort(found.begin(), found.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [w, tup] : found) {
            std::size_t i = tuples_[n].size();
            index_[n].emplace(encode(tup), static_cast<std::uint32_t>(i));
            auto& blk = blocks_[n][w];
            pos_[n].push_back(blk.size());
            blk.push_back(i);
            weights_[n].push_back(w);
            tuples_[n].push_back(std::move(tup));
        }
    }
}

std::uint64_t HochschildComplex::encode(const std::vector<std::size_t>& tuple) const
{
    std::uint64_t code = 0;
    for (auto x : tuple)
        code = code * alg_.dim() + x;
    return code;
}

std::optional<std::size_t> HochschildComplex::find(int n, const std::vector<std::size_t>& tuple) const
{
    if (n < 0 || n > top_)
        return std::nullopt;
    auto it = index_[n].find(encode(tuple));
    if (it == index_[n].end())
        return std::nullopt;
    return it->second;
}

std::string HochschildComplex::label(int n, std::size_t i) const
{
    const auto& t = tuples_[n][i];
    std::string s = alg_.labels()[t[0]];
    if (n == 0)
        return s;
    s += "[";
    for (int k = 1; k <= n; ++k) {
        if (k > 1)
            s += "|";
        s += alg_.labels()[t[k]];
    }
    return s + "]";
}

std::vector<int> HochschildComplex::weights_in(int n) const
{
    std::vector<int> out;
    for (const auto& [w, b] : blocks_[n])
        out.push_back(w);
    return out;
}

const std::vector<std::size_t>& HochschildComplex::block(int n, int w) const
{
    static const std::vector<std::size_t> empty;
    if (n < 0 || n > top_)
        return empty;
    auto it = blocks_[n].find(w);
    return it == blocks_[n].end() ? empty : it->second;
}

void HochschildComplex::accumulate(std::unordered_map<std::uint32_t, std::int64_t>& acc, int n,
                                   std::vector<std::size_t>& tuple, std::int64_t coeff) const
{
    auto j = find(n, tuple);
    if (!j) {
        // every weight-preserving image of a kept tuple is kept
        fail(ErrorKind::Internal, "Hochschild differential leaves the enumerated chains");
    }
    acc[static_cast<std::uint32_t>(*j)] += coeff;
}

SparseVec HochschildComplex::finish(std::unordered_map<std::uint32_t, std::int64_t>& acc) const
{
    PrimeField F(prime());
    SparseVec out;
    for (const auto& [i, c] : acc) {
        Entry v = F.reduce(c);
        if (v)
            out.emplace_back(i, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SparseVec HochschildComplex::b_column(int n, std::size_t i) const
{
    require(n >= 1 && n <= top_, "b is defined on degrees 1..top");
    const auto& t = tuples_[n][i];
    const std::size_t dimA = alg_.dim();
    std::unordered_map<std::uint32_t, std::int64_t> acc;
    std::vector<std::size_t> u;
    // a0 a1 [a2|...|an]
    {
        const Vec& prod = alg_.product(t[0], t[1]);
        for (std::size_t k = 0; k < dimA; ++k) {
            if (!prod[k])
                continue;
            u.assign(t.begin() + 1, t.end());
            u[0] = k;
            accumulate(acc, n - 1, u, prod[k]);
        }
    }
    for (int s = 1; s < n; ++s) {
        const Vec& prod = alg_.product(t[s], t[s + 1]);
        std::int64_t sign = s % 2 ? -1 : 1;
        for (std::size_t k = 1; k < dimA; ++k) {
            if (!prod[k])
                continue;
            u.clear();
            u.insert(u.end(), t.begin(), t.begin() + s);
            u.push_back(k);
            u.insert(u.end(), t.begin() + s + 2, t.end());
            accumulate(acc, n - 1, u, sign * prod[k]);
        }
    }
    {
        const Vec& prod = alg_.product(t[n], t[0]);
        std::int64_t sign = n % 2 ? -1 : 1;
        for (std::size_t k = 0; k < dimA; ++k) {
            if (!prod[k])
                continue;
            u.assign(t.begin(), t.end() - 1);
            u[0] = k;
            accumulate(acc, n - 1, u, sign * prod[k]);
        }
    }
    return finish(acc);
}

SparseVec HochschildComplex::B_column(int n, std::size_t i) const
{
    require(n >= 0 && n < top_, "B is defined on degrees 0..top-1");
    const auto& t = tuples_[n][i];
    std::unordered_map<std::uint32_t, std::int64_t> acc;
    if (t[0] == 0)
        return {};
    // Σ_i (-1)^{ni} 1[a_i|...|a_n|a_0|...|a_{i-1}]
    std::vector<std::size_t> u(n + 2);
    for (int s = 0; s <= n; ++s) {
        u[0] = 0;
        std::size_t k = 1;
        for (int r = s; r <= n; ++r)
            u[k++] = t[r];
        for (int r = 0; r < s; ++r)
            u[k++] = t[r];
        std::int64_t sign = (n * s) % 2 ? -1 : 1;
        accumulate(acc, n + 1, u, sign);
    }
    return finish(acc);
}

FpMatrix HochschildComplex::b_block(int n, int w) const
{
    const auto& cols = block(n, w);
    const auto& rows = block(n - 1, w);
    FpMatrix m(prime(), rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, v] : b_column(n, cols[j]))
            m.set(pos_[n - 1][r], j, v);
    return m;
}

FpMatrix HochschildComplex::B_block(int n, int w) const
{
    const auto& cols = block(n, w);
    const auto& rows = block(n + 1, w);
    FpMatrix m(prime(), rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, v] : B_column(n, cols[j]))
            m.set(pos_[n + 1][r], j, v);
    return m;
}

FpMatrix HochschildComplex::b_matrix(int n) const
{
    FpMatrix m(prime(), n >= 1 ? dim(n - 1) : 0, dim(n));
    if (n < 1)
        return m;
    for (std::size_t j = 0; j < dim(n); ++j)
        for (const auto& [r, v] : b_column(n, j))
            m.set(r, j, v);
    return m;
}

FpMatrix HochschildComplex::B_matrix(int n) const
{
    FpMatrix m(prime(), dim(n + 1), dim(n));
    for (std::size_t j = 0; j < dim(n); ++j)
        for (const auto& [r, v] : B_column(n, j))
            m.set(r, j, v);
    return m;
}

Vec HomologyBasis::classify(const Vec& cycle) const
{
    auto c = quotient.coordinates(cycle);
    if (!c)
        fail(ErrorKind::Internal, "vector is not a cycle in degree " + std::to_string(deg));
    return Vec(c->begin() + static_cast<std::ptrdiff_t>(boundary_rank), c->end());
}

HomologyBasis homology_basis(const HochschildComplex& c, int n, int w)
{
    require(n >= 0 && n < c.top(), "homology basis needs degree n + 1 in the complex");
    HomologyBasis h;
    h.deg = n;
    h.weight = w;
    h.chain_index = c.block(n, w);
    h.quotient = SubspaceBasis(c.prime(), h.chain_index.size());
    FpMatrix up = c.b_block(n + 1, w);
    for (std::size_t j = 0; j < up.cols(); ++j)
        h.quotient.insert(up.column(j));
    h.boundary_rank = h.quotient.dim();
    FpMatrix ker = n == 0 ? FpMatrix::identity(c.prime(), h.chain_index.size()) : kernel_basis(c.b_block(n, w));
    std::vector<std::string> labels;
    for (auto i : h.chain_index)
        labels.push_back(c.label(n, i));
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        Vec v = ker.column(j);
        if (h.quotient.insert(v)) {
            h.labels.push_back(format_vector(v, labels));
            h.cycles.push_back(std::move(v));
        }
    }
    return h;
}

FpMatrix connes_on_homology(const HochschildComplex& c, int n, int w)
{
    HomologyBasis src = homology_basis(c, n, w);
    HomologyBasis dst = homology_basis(c, n + 1, w);
    FpMatrix Bm = c.B_block(n, w);
    FpMatrix out(c.prime(), dst.cycles.size(), src.cycles.size());
    for (std::size_t j = 0; j < src.cycles.size(); ++j) {
        Vec img = Bm.apply(src.cycles[j]);
        Vec k = dst.classify(img);
        for (std::size_t i = 0; i < k.size(); ++i)
            out.set(i, j, k[i]);
    }
    return out;
}

HHResult hochschild_bar(const PresentedAlgebra& a, const Window& w, bool representatives, std::size_t budget)
{
    require(w.deg_min >= 0 && w.deg_max >= w.deg_min, "Hochschild window must satisfy 0 <= deg_min <= deg_max");
    HochschildComplex c(a, w.deg_max + 1, w.weight_max, budget);
    HHResult out;
    out.prime = c.prime();
    out.table = GradedSpace(w);
    std::set<int> weights;
    for (int n = w.deg_min; n <= w.deg_max + 1; ++n)
        for (int x : c.weights_in(n))
            weights.insert(x);
    for (int wt : weights) {
        // ranks of b_n on this weight, from the top down so pivots can clear
        std::map<int, std::size_t> rk;
        std::vector<std::uint32_t> prev_pivots;
        for (int n = w.deg_max + 1; n >= std::max(1, w.deg_min); --n) {
            const auto& cols = c.block(n, wt);
            std::vector<bool> skip(cols.size(), false);
            for (auto r : prev_pivots)
                skip[r] = true;
            std::vector<SparseVec> sv(cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (skip[j])
                    continue;
                sv[j] = c.b_column(n, cols[j]);
                for (auto& e : sv[j])
                    e.first = static_cast<std::uint32_t>(c.position(n - 1, e.first));
                std::sort(sv[j].begin(), sv[j].end());
            }
            auto red = sparse_reduce(c.prime(), c.block(n - 1, wt).size(), sv, &skip);
            rk[n] = red.rank;
            prev_pivots = std::move(red.pivot_rows);
        }
        for (int n = w.deg_min; n <= w.deg_max; ++n) {
            std::size_t here = c.block(n, wt).size();
            if (!here)
                continue;
            std::size_t d = here - rk[n + 1] - (n >= 1 ? rk[n] : 0);
            if (!d)
                continue;
            if (representatives) {
                if (here > 4000)
                    fail(ErrorKind::Resource, "representatives requested on a weight block of size " +
                                                  std::to_string(here));
                HomologyBasis h = homology_basis(c, n, wt);
                if (h.cycles.size() != d)
                    fail(ErrorKind::Internal, "dense and sparse Hochschild ranks disagree");
                out.table.add({n, 0, wt}, d, h.labels);
            } else {
                out.table.add({n, 0, wt}, d);
            }
        }
    }
    return out;
}

HHResult hochschild_small(std::uint32_t p, std::size_t n, int weight, const Window& w)
{
    require(n >= 1, "k[t]/(t^n) needs n >= 1");
    require(w.deg_min >= 0 && w.deg_max >= w.deg_min, "Hochschild window must satisfy 0 <= deg_min <= deg_max");
    PrimeField F(p);
    const Entry deriv = F.reduce(static_cast<std::int64_t>(n));
    HHResult out;
    out.prime = p;
    out.table = GradedSpace(w);
    const int nw = static_cast<int>(n) * weight;
    for (int j = w.deg_min; j <= w.deg_max; ++j) {
        const int shift = (j / 2) * nw + (j % 2) * weight;
        // t^a survives: degree 0 always; odd j modulo image of x n t^{n-1};
        // even j > 0 in the kernel of x n t^{n-1}
        for (std::size_t a = 0; a < n; ++a) {
            bool keep = true;
            if (j > 0 && deriv != 0) {
                if (j % 2 == 1)
                    keep = a < n - 1;      // t^{n-1} A is the image
                else
                    keep = a >= 1;         // t^{n-1} kills t^a for a >= 1
            }
            int wt = shift + static_cast<int>(a) * weight;
            if (keep && w.contains_weight(wt))
                out.table.add({j, 0, wt}, 1);
        }
    }
    return out;
}

GradedSpace cyclic_window(const PresentedAlgebra& a, CyclicVariant v, const Window& w, int columns,
                          std::size_t budget)
{
    require(columns >= 0, "cyclic window needs a nonnegative column count");
    require(w.deg_max >= w.deg_min, "empty degree window");
    const int kmax = columns + 1;
    const int top = std::max(1, 2 * kmax + w.deg_max + 3);
    HochschildComplex c(a, top, w.weight_max, budget);
    auto term = [&c](int n) {
        Term t;
        if (n < 0 || n > c.top())
            return t;
        t.dim = c.dim(n);
        for (std::size_t i = 0; i < t.dim; ++i) {
            t.weights.push_back(c.weight(n, i));
            t.labels.push_back(c.label(n, i));
        }
        return t;
    };
    std::map<int, Term> terms;
    std::map<int, FpMatrix> bs, Bs;
    auto cached_term = [&](int n) -> const Term& {
        auto it = terms.find(n);
        if (it == terms.end())
            it = terms.emplace(n, term(n)).first;
        return it->second;
    };
    Bicomplex bc;
    bc.prime = c.prime();
    // u-power k and Hochschild degree n sit at (k, k - n)
    bc.cell = [&](int k, int q) { return cached_term(k - q); };
    bc.horizontal = [&](int k, int q) {
        int n = k - q;
        std::size_t src = cached_term(n).dim, dst = cached_term(n + 1).dim;
        if (n < 0 || n + 1 > c.top())
            return FpMatrix(c.prime(), dst, src);
        auto it = Bs.find(n);
        if (it == Bs.end())
            it = Bs.emplace(n, c.B_matrix(n)).first;
        return it->second;
    };
    bc.vertical = [&](int k, int q) {
        int n = k - q;
        std::size_t src = cached_term(n).dim, dst = cached_term(n - 1).dim;
        if (n < 1 || n > c.top())
            return FpMatrix(c.prime(), dst, src);
        auto it = bs.find(n);
        if (it == bs.end())
            it = bs.emplace(n, c.b_matrix(n)).first;
        return it->second;
    };
    bc.col_min = v == CyclicVariant::Negative ? 0 : -columns;
    bc.col_max = columns;
    bc.grow_left = v == CyclicVariant::Periodic;
    bc.q_min = bc.col_min - 1 - top;
    bc.q_max = kmax + 1;
    // homological degree m is cohomological total degree -m
    Window cw{-w.deg_max, -w.deg_min, w.weight_max};
    Totalization t = totalize_bicomplex(bc, cw);
    GradedSpace out(w);
    for (const auto& [g, cell] : t.cohomology.cells()) {
        GradeIndex h{-g.deg, g.wedge, g.weight};
        if (cell.dim)
            out.add(h, cell.dim, cell.labels);
        if (cell.indeterminate)
            out.mark_indeterminate(h);
    }
    return out;
}

FpMatrix frobenius_on_HH0(const PresentedAlgebra& a)
{
    if (!a.commutative())
        fail(ErrorKind::Precondition, "HH_0 = A needs a commutative algebra");
    return frobenius_on_algebra(a);
}

}  // namespace stackcoh
