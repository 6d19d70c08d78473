#include "stackcoh/ext.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stackcoh {

namespace {

// a · v for v in the free module A^r (blocks of length dim A).
Vec module_action(const PresentedAlgebra& A, const Vec& a, const Vec& v)
{
    const std::size_t n = A.dim();
    Vec out(v.size(), 0);
    for (std::size_t c = 0; c * n < v.size(); ++c) {
        Vec block(v.begin() + c * n, v.begin() + (c + 1) * n);
        Vec prod = A.multiply(a, block);
        std::copy(prod.begin(), prod.end(), out.begin() + c * n);
    }
    return out;
}

Vec block_of(const PresentedAlgebra& A, const Vec& v, std::size_t c)
{
    return Vec(v.begin() + c * A.dim(), v.begin() + (c + 1) * A.dim());
}

std::optional<int> vector_weight(const Vec& v, const std::vector<int>& weights)
{
    std::optional<int> w;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i])
            continue;
        if (w && *w != weights[i])
            fail(ErrorKind::Internal, "inhomogeneous vector where a homogeneous one was expected");
        w = weights[i];
    }
    return w;
}

std::vector<std::size_t> indices_with_weight(const std::vector<int>& weights, int w)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] == w)
            idx.push_back(i);
    return idx;
}

// Ā as the span of basis vectors 1.. of an adapted basis.
void require_adapted(const PresentedAlgebra& A)
{
    if (!A.augmentation())
        fail(ErrorKind::Precondition, "Ext needs an augmented algebra");
    if (A.unit() != A.basis(0))
        fail(ErrorKind::Internal, "algebra basis is not augmentation adapted");
    for (std::size_t i = 1; i < A.dim(); ++i)
        if ((*A.augmentation())[i] != 0)
            fail(ErrorKind::Internal, "algebra basis is not augmentation adapted");
}

}  // namespace

FpMatrix FreeResolution::expanded(std::size_t n) const
{
    const std::size_t m = algebra.dim();
    const std::uint32_t p = algebra.prime();
    if (n == 0 || n > length())
        fail(ErrorKind::Internal, "expanded differential outside the resolution");
    const std::size_t rs = rank(n), rt = rank(n - 1);
    FpMatrix out(p, rt * m, rs * m);
    for (std::size_t i = 0; i < rt; ++i)
        for (std::size_t j = 0; j < rs; ++j) {
            const Vec& a = d[n][i][j];
            if (std::all_of(a.begin(), a.end(), [](Entry e) { return e == 0; }))
                continue;
            FpMatrix L = algebra.left_multiplication(a);
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y)
                    if (L.at(x, y))
                        out.set(i * m + x, j * m + y, L.at(x, y));
        }
    return out;
}

std::vector<int> FreeResolution::coordinate_weights(std::size_t n) const
{
    std::vector<int> w;
    for (int g : gen_weights[n])
        for (int a : algebra.weights())
            w.push_back(g + a);
    return w;
}

void FreeResolution::check_exact() const
{
    const std::size_t m = algebra.dim();
    require_adapted(algebra);
    if (rank(0) != 1)
        fail(ErrorKind::Internal, "resolution does not start with P_0 = A");
    std::vector<FpMatrix> D(length() + 1);
    for (std::size_t n = 1; n <= length(); ++n)
        D[n] = expanded(n);
    // H_0 = k: image of d_1 is the augmentation ideal.
    if (length() >= 1) {
        for (std::size_t j = 0; j < D[1].cols(); ++j)
            if (D[1].at(0, j))
                fail(ErrorKind::Internal, "d_1 does not land in the augmentation ideal");
        if (stackcoh::rank(D[1]) != m - 1)
            fail(ErrorKind::Internal, "resolution is not exact in degree 0");
    } else if (m != 1) {
        fail(ErrorKind::Internal, "resolution is not exact in degree 0");
    }
    for (std::size_t n = 1; n < length(); ++n) {
        if (!(D[n] * D[n + 1]).is_zero())
            fail(ErrorKind::Internal, "d^2 != 0 in resolution degree " + std::to_string(n));
        if (D[n].cols() - stackcoh::rank(D[n]) != stackcoh::rank(D[n + 1]))
            fail(ErrorKind::Internal, "resolution is not exact in degree " + std::to_string(n));
    }
}

FreeResolution periodic_resolution(const PresentedAlgebra& a, std::size_t length)
{
    PresentedAlgebra A = augmentation_adapted(a);
    const std::size_t m = A.dim();
    FreeResolution r;
    r.algebra = A;
    r.gen_weights.assign(length + 1, {});
    r.d.assign(length + 1, {});
    r.gen_weights[0] = {0};
    if (m == 1) {
        for (std::size_t n = 1; n <= length; ++n)
            r.d[n] = std::vector<std::vector<Vec>>(r.rank(n - 1), std::vector<Vec>(0));
        return r;
    }
    // generator s: first basis element of Ā outside Ā².
    SubspaceBasis sq(A.prime(), m);
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 1; j < m; ++j)
            sq.insert(A.product(i, j));
    std::size_t gen = 0;
    for (std::size_t i = 1; i < m && !gen; ++i)
        if (!sq.contains(A.basis(i)))
            gen = i;
    if (!gen || sq.dim() != m - 2)
        fail(ErrorKind::Precondition, "periodic resolution needs a monogenic truncated polynomial algebra");
    Vec s = A.basis(gen);
    std::size_t n = 1;
    while (A.power(s, n) != Vec(m, 0)) {
        ++n;
        if (n > m)
            fail(ErrorKind::Precondition, "generator of the algebra is not nilpotent");
    }
    if (n != m)
        fail(ErrorKind::Precondition, "periodic resolution needs A = k[s]/(s^n)");
    const int ws = A.weights()[gen];
    Vec top = A.power(s, n - 1);
    for (std::size_t k = 1; k <= length; ++k) {
        bool odd = k % 2 == 1;
        r.gen_weights[k] = {r.gen_weights[k - 1][0] + (odd ? ws : static_cast<int>(n - 1) * ws)};
        r.d[k] = {{odd ? s : top}};
    }
    return r;
}

FreeResolution minimal_resolution(const PresentedAlgebra& a, std::size_t length)
{
    PresentedAlgebra A = augmentation_adapted(a);
    const std::size_t m = A.dim();
    const std::uint32_t p = A.prime();
    if (nilradical_dim(A) != m - 1)
        fail(ErrorKind::Precondition, "minimal resolution needs a local algebra");
    FreeResolution r;
    r.algebra = A;
    r.gen_weights.assign(length + 1, {});
    r.d.assign(length + 1, {});
    r.gen_weights[0] = {0};
    for (std::size_t n = 0; n < length; ++n) {
        FpMatrix map;
        if (n == 0) {
            map = FpMatrix(p, 1, m);
            map.set(0, 0, 1);
        } else {
            map = r.expanded(n);
        }
        auto cw = r.coordinate_weights(n);
        std::set<int> ws(cw.begin(), cw.end());
        std::vector<std::pair<int, Vec>> kernel;
        for (int w : ws) {
            auto idx = indices_with_weight(cw, w);
            FpMatrix k = kernel_basis(map.select_columns(idx));
            for (std::size_t j = 0; j < k.cols(); ++j) {
                Vec v(cw.size(), 0);
                Vec c = k.column(j);
                for (std::size_t t = 0; t < idx.size(); ++t)
                    v[idx[t]] = c[t];
                kernel.emplace_back(w, std::move(v));
            }
        }
        SubspaceBasis span(p, cw.size());
        for (const auto& [w, v] : kernel)
            for (std::size_t b = 1; b < m; ++b)
                span.insert(module_action(A, A.basis(b), v));
        std::vector<std::vector<Vec>> dn(r.rank(n));
        for (const auto& [w, v] : kernel) {
            if (!span.insert(v))
                continue;
            r.gen_weights[n + 1].push_back(w);
            for (std::size_t i = 0; i < r.rank(n); ++i)
                dn[i].push_back(block_of(A, v, i));
        }
        r.d[n + 1] = std::move(dn);
    }
    return r;
}

FreeResolution bar_resolution_oracle(const PresentedAlgebra& a, std::size_t length, std::size_t budget)
{
    PresentedAlgebra A = augmentation_adapted(a);
    const std::size_t dimA = A.dim(), m = dimA - 1;
    FreeResolution r;
    r.algebra = A;
    r.gen_weights.assign(length + 1, {});
    r.d.assign(length + 1, {});
    // generators of degree n are tuples coded base m, digits = Ā indices - 1
    std::size_t count = 1;
    std::vector<std::size_t> counts{1};
    for (std::size_t n = 1; n <= length; ++n) {
        count *= m;
        if (count > budget)
            fail(ErrorKind::Resource, "bar resolution degree " + std::to_string(n) + " needs " + std::to_string(count) +
                                          " generators, over the budget of " + std::to_string(budget));
        counts.push_back(count);
    }
    auto digits = [&](std::size_t code, std::size_t n) {
        std::vector<std::size_t> t(n);
        for (std::size_t i = n; i-- > 0;) {
            t[i] = code % m + 1;
            code /= m;
        }
        return t;
    };
    auto encode = [&](const std::vector<std::size_t>& t) {
        std::size_t c = 0;
        for (auto x : t)
            c = c * m + (x - 1);
        return c;
    };
    PrimeField F(A.prime());
    for (std::size_t n = 0; n <= length; ++n) {
        r.gen_weights[n].resize(counts[n]);
        for (std::size_t c = 0; c < counts[n]; ++c) {
            int w = 0;
            for (auto x : digits(c, n))
                w += A.weights()[x];
            r.gen_weights[n][c] = w;
        }
        if (n == 0)
            continue;
        r.d[n].assign(counts[n - 1], std::vector<Vec>(counts[n], Vec(dimA, 0)));
        for (std::size_t c = 0; c < counts[n]; ++c) {
            auto t = digits(c, n);
            // a1 [a2|...|an]
            std::vector<std::size_t> rest(t.begin() + 1, t.end());
            Vec& first = r.d[n][encode(rest)][c];
            first[t[0]] = F.add(first[t[0]], 1);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const Vec& prod = A.product(t[i], t[i + 1]);
                if (prod[0])
                    fail(ErrorKind::Internal, "augmentation ideal is not closed under products");
                Entry sign = (i + 1) % 2 ? static_cast<Entry>(A.prime() - 1) : 1;
                for (std::size_t k = 1; k < dimA; ++k) {
                    if (!prod[k])
                        continue;
                    std::vector<std::size_t> u;
                    u.insert(u.end(), t.begin(), t.begin() + i);
                    u.push_back(k);
                    u.insert(u.end(), t.begin() + i + 2, t.end());
                    Vec& e = r.d[n][encode(u)][c];
                    e[0] = F.add(e[0], F.mul(sign, prod[k]));
                }
            }
        }
    }
    return r;
}

ExtRing::ExtRing(FreeResolution res, int max_deg) : res_(std::move(res)), max_deg_(max_deg)
{
    require(max_deg >= 0, "Ext window must be nonnegative");
    if (res_.length() < static_cast<std::size_t>(max_deg) + 1)
        fail(ErrorKind::Internal, "resolution too short for the Ext window");
    const PresentedAlgebra& A = res_.algebra;
    require_adapted(A);
    const std::uint32_t p = A.prime();
    expanded_.resize(max_deg + 2);
    for (int n = 1; n <= max_deg + 1; ++n)
        expanded_[n] = res_.expanded(n);
    for (int n = 0; n <= max_deg + 1; ++n)
        coord_weights_.push_back(res_.coordinate_weights(n));
    // δ^n(φ)(g_j) = Σ_i ε(d[n+1][i][j]) φ(g_i)
    for (int n = 0; n <= max_deg; ++n) {
        FpMatrix delta(p, res_.rank(n + 1), res_.rank(n));
        for (std::size_t i = 0; i < res_.rank(n); ++i)
            for (std::size_t j = 0; j < res_.rank(n + 1); ++j)
                delta.set(j, i, A.augment(res_.d[n + 1][i][j]));
        coboundary_.push_back(std::move(delta));
    }
    for (int n = 0; n <= max_deg; ++n) {
        std::vector<int> cw;
        for (int w : res_.gen_weights[n])
            cw.push_back(-w);
        SubspaceBasis q(p, cw.size());
        if (n > 0)
            for (std::size_t j = 0; j < coboundary_[n - 1].cols(); ++j)
                q.insert(coboundary_[n - 1].column(j));
        boundary_rank_.push_back(q.dim());
        std::set<int> ws(cw.begin(), cw.end());
        std::vector<Vec> reps;
        std::vector<int> rw;
        for (int w : ws) {
            auto idx = indices_with_weight(cw, w);
            FpMatrix k = kernel_basis(coboundary_[n].select_columns(idx));
            for (std::size_t j = 0; j < k.cols(); ++j) {
                Vec v(cw.size(), 0);
                Vec c = k.column(j);
                for (std::size_t t = 0; t < idx.size(); ++t)
                    v[idx[t]] = c[t];
                if (q.insert(v)) {
                    reps.push_back(std::move(v));
                    rw.push_back(w);
                }
            }
        }
        basis_.push_back(std::move(reps));
        weights_.push_back(std::move(rw));
        quotient_.push_back(std::move(q));
    }
}

Vec ExtRing::unit_class(int n, std::size_t i) const
{
    Vec v(dim(n), 0);
    v[i] = 1;
    return v;
}

Vec ExtRing::cocycle(int n, const Vec& coords) const
{
    PrimeField F(prime());
    Vec out(res_.rank(n), 0);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i])
            for (std::size_t t = 0; t < out.size(); ++t)
                out[t] = F.add(out[t], F.mul(coords[i], basis_[n][i][t]));
    return out;
}

Vec ExtRing::classify(int n, const Vec& z) const
{
    auto c = quotient_[n].coordinates(z);
    if (!c)
        fail(ErrorKind::Internal, "product is not a cocycle in degree " + std::to_string(n));
    return Vec(c->begin() + static_cast<std::ptrdiff_t>(boundary_rank_[n]), c->end());
}

Vec ExtRing::lift_step(std::size_t j, const Vec& rhs) const
{
    if (std::all_of(rhs.begin(), rhs.end(), [](Entry e) { return e == 0; }))
        return Vec(expanded_[j].cols(), 0);
    auto w = vector_weight(rhs, coord_weights_[j - 1]);
    auto idx = indices_with_weight(coord_weights_[j], *w);
    auto x = solve(expanded_[j].select_columns(idx), rhs);
    if (!x)
        fail(ErrorKind::Precondition, "chain map lifting fails in degree " + std::to_string(j));
    Vec out(expanded_[j].cols(), 0);
    for (std::size_t t = 0; t < idx.size(); ++t)
        out[idx[t]] = (*x)[t];
    return out;
}

Vec ExtRing::product(int a, const Vec& x, int b, const Vec& y) const
{
    if (a + b > max_deg_)
        fail(ErrorKind::Precondition, "product degree " + std::to_string(a + b) + " is outside the Ext window");
    const PresentedAlgebra& A = res_.algebra;
    PrimeField F(prime());
    Vec total(dim(a + b), 0);
    // split both factors by weight so every lift is homogeneous
    std::map<int, Vec> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) {
            auto& v = xs.try_emplace(weights_[a][i], Vec(x.size(), 0)).first->second;
            v[i] = x[i];
        }
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i]) {
            auto& v = ys.try_emplace(weights_[b][i], Vec(y.size(), 0)).first->second;
            v[i] = y[i];
        }
    for (const auto& [wy, yc] : ys) {
        Vec Y = cocycle(b, yc);
        // f_j : generators of P_{b+j} -> P_j
        std::vector<Vec> f(res_.rank(b));
        for (std::size_t g = 0; g < res_.rank(b); ++g) {
            f[g] = Vec(A.dim(), 0);
            for (std::size_t t = 0; t < A.dim(); ++t)
                f[g][t] = F.mul(Y[g], A.unit()[t]);
        }
        for (int j = 1; j <= a; ++j) {
            std::vector<Vec> next(res_.rank(b + j));
            for (std::size_t g = 0; g < res_.rank(b + j); ++g) {
                Vec rhs(res_.rank(j - 1) * A.dim(), 0);
                for (std::size_t i = 0; i < res_.rank(b + j - 1); ++i) {
                    const Vec& coef = res_.d[b + j][i][g];
                    if (std::all_of(coef.begin(), coef.end(), [](Entry e) { return e == 0; }))
                        continue;
                    Vec part = module_action(A, coef, f[i]);
                    for (std::size_t t = 0; t < rhs.size(); ++t)
                        rhs[t] = F.add(rhs[t], part[t]);
                }
                next[g] = lift_step(j, rhs);
            }
            f = std::move(next);
        }
        for (const auto& [wx, xc] : xs) {
            Vec X = cocycle(a, xc);
            Vec Z(res_.rank(a + b), 0);
            for (std::size_t g = 0; g < Z.size(); ++g) {
                unsigned long s = 0;
                for (std::size_t i = 0; i < res_.rank(a); ++i)
                    s += unsigned(A.augment(block_of(A, f[g], i))) * X[i];
                Z[g] = static_cast<Entry>(s % prime());
            }
            Vec c = classify(a + b, Z);
            for (std::size_t t = 0; t < total.size(); ++t)
                total[t] = F.add(total[t], c[t]);
        }
    }
    return total;
}

void ExtRing::find_generators(const std::vector<std::string>& names)
{
    gens_.clear();
    std::size_t next_name = 0;
    for (int n = 1; n <= max_deg_; ++n) {
        SubspaceBasis dec(prime(), dim(n));
        for (int a = 1; a < n; ++a)
            for (std::size_t i = 0; i < dim(a); ++i)
                for (std::size_t j = 0; j < dim(n - a); ++j)
                    dec.insert(product(a, unit_class(a, i), n - a, unit_class(n - a, j)));
        for (std::size_t i = 0; i < dim(n); ++i) {
            if (!dec.insert(unit_class(n, i)))
                continue;
            ExtGenerator g;
            g.name = next_name < names.size() ? names[next_name] : "x" + std::to_string(n) + "_" + std::to_string(i);
            ++next_name;
            g.deg = n;
            g.weight = weights_[n][i];
            g.cls = unit_class(n, i);
            if (2 * n <= max_deg_) {
                Vec sq = product(n, g.cls, n, g.cls);
                g.kind = std::all_of(sq.begin(), sq.end(), [](Entry e) { return e == 0; }) ? GenKind::Exterior
                                                                                            : GenKind::Polynomial;
            } else {
                g.kind = n % 2 ? GenKind::Exterior : GenKind::Polynomial;
            }
            gens_.push_back(std::move(g));
        }
    }
}

std::vector<Generator> ExtRing::generator_list() const
{
    std::vector<Generator> out;
    for (const auto& g : gens_)
        out.push_back({g.name, g.deg, 0, g.weight, g.kind, 0});
    return out;
}

bool ExtRing::free_on_generators() const
{
    auto counts = monomial_counts(generator_list(), 0, max_deg_, max_deg_);
    std::map<std::pair<int, int>, std::size_t> table;
    for (int n = 0; n <= max_deg_; ++n)
        for (std::size_t i = 0; i < dim(n); ++i)
            ++table[{n, weights_[n][i]}];
    return counts == table;
}

GradedSpace ExtRing::table() const
{
    GradedSpace out(Window{0, max_deg_, std::nullopt});
    bool labelled = !gens_.empty() && free_on_generators();
    if (labelled) {
        auto gl = generator_list();
        for (const auto& e : enumerate_monomials(gl, 0, max_deg_, 0, max_deg_)) {
            auto m = monomial_info(gl, e);
            out.add({m.s, 0, m.weight}, 1, {monomial_label(gl, e)});
        }
        return out;
    }
    for (int n = 0; n <= max_deg_; ++n)
        for (std::size_t i = 0; i < dim(n); ++i)
            out.add({n, 0, weights_[n][i]}, 1, {n == 0 ? "1" : "e" + std::to_string(n) + "_" + std::to_string(i)});
    return out;
}

ExtRing ext_ring(const PresentedAlgebra& a, int max_deg, ResolutionMethod method)
{
    PresentedAlgebra A = augmentation_adapted(local_block(a));
    std::size_t len = static_cast<std::size_t>(max_deg) + 1;
    if (method == ResolutionMethod::Auto) {
        SubspaceBasis sq(A.prime(), A.dim());
        for (std::size_t i = 1; i < A.dim(); ++i)
            for (std::size_t j = 1; j < A.dim(); ++j)
                sq.insert(A.product(i, j));
        method = (A.dim() == 1 || sq.dim() == A.dim() - 2) ? ResolutionMethod::Periodic : ResolutionMethod::Minimal;
    }
    FreeResolution r = method == ResolutionMethod::Periodic ? periodic_resolution(A, len) : minimal_resolution(A, len);
    r.check_exact();
    return ExtRing(std::move(r), max_deg);
}

GradedSpace bar_ext_dims(const PresentedAlgebra& a, int max_deg, std::size_t budget)
{
    PresentedAlgebra A = augmentation_adapted(a);
    const std::size_t m = A.dim() - 1;
    const std::uint32_t p = A.prime();
    GradedSpace out(Window{0, max_deg, std::nullopt});
    if (m == 0) {
        out.add({0, 0, 0}, 1, {"1"});
        return out;
    }
    const int top = max_deg + 1;
    // tuples of degree n grouped by weight: index[n][code] = position within its weight block
    std::vector<std::map<int, std::vector<std::size_t>>> blocks(top + 1);
    std::vector<std::vector<std::uint32_t>> index(top + 1);
    std::vector<std::size_t> counts{1};
    for (int n = 1; n <= top; ++n) {
        if (counts.back() > budget / m)
            fail(ErrorKind::Resource, "bar complex degree " + std::to_string(n) + " exceeds the budget of " +
                                          std::to_string(budget) + " tensors");
        counts.push_back(counts.back() * m);
    }
    for (int n = 0; n <= top; ++n) {
        index[n].resize(counts[n]);
        for (std::size_t c = 0; c < counts[n]; ++c) {
            int w = 0;
            std::size_t x = c;
            for (int i = 0; i < n; ++i) {
                w += A.weights()[x % m + 1];
                x /= m;
            }
            auto& b = blocks[n][w];
            index[n][c] = static_cast<std::uint32_t>(b.size());
            b.push_back(c);
        }
    }
    // rank of d_n : C_n -> C_{n-1} per weight
    std::vector<std::map<int, std::size_t>> ranks(top + 2);
    std::vector<std::size_t> pw(top + 1, 1);
    for (int i = 1; i <= top; ++i)
        pw[i] = pw[i - 1] * m;
    for (int n = 2; n <= top; ++n) {
        for (const auto& [w, cols] : blocks[n]) {
            auto it = blocks[n - 1].find(w);
            if (it == blocks[n - 1].end())
                continue;
            FpMatrix d(p, it->second.size(), cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) {
                std::size_t c = cols[j];
                // digit i (0-based from the least significant end) is slot n-1-i
                std::vector<std::size_t> t(n);
                std::size_t x = c;
                for (int i = n - 1; i >= 0; --i) {
                    t[i] = x % m + 1;
                    x /= m;
                }
                for (int i = 0; i + 1 < n; ++i) {
                    const Vec& prod = A.product(t[i], t[i + 1]);
                    std::int64_t sign = (i + 1) % 2 ? -1 : 1;
                    for (std::size_t k = 1; k <= m; ++k) {
                        if (!prod[k])
                            continue;
                        std::size_t code = 0;
                        for (int s = 0; s < n; ++s) {
                            if (s == i + 1)
                                continue;
                            code = code * m + ((s == i ? k : t[s]) - 1);
                        }
                        d.add_to(index[n - 1][code], j, sign * prod[k]);
                    }
                }
            }
            ranks[n][w] = rank(d);
        }
    }
    for (int n = 0; n <= max_deg; ++n)
        for (const auto& [w, cols] : blocks[n]) {
            std::size_t r_in = ranks[n + 1].count(w) ? ranks[n + 1][w] : 0;
            std::size_t r_out = ranks[n].count(w) ? ranks[n][w] : 0;
            out.add({n, 0, -w}, cols.size() - r_in - r_out);
        }
    return out;
}

}  // namespace stackcoh
