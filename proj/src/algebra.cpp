#include "stackcoh/algebra.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <set>

namespace stackcoh {

namespace {

std::string power_label(const std::string& var, std::size_t i)
{
    if (i == 0)
        return "1";
    if (i == 1)
        return var;
    return var + "^" + std::to_string(i);
}

std::string tensor_label(const std::string& a, const std::string& b)
{
    if (a == "1")
        return b;
    if (b == "1")
        return a;
    return a + "⊗" + b;
}

Vec unit_vector(std::size_t n, std::size_t i)
{
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

FpMatrix inverse(const FpMatrix& m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n)
        fail(ErrorKind::Internal, "inverse of a non-square matrix");
    RowEchelon e = rref(m.hconcat(FpMatrix::identity(m.prime(), n)));
    if (e.rank() < n || e.pivots[n - 1] != n - 1)
        fail(ErrorKind::Precondition, "basis change matrix is singular");
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j)
        cols[j] = n + j;
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        rows[i] = i;
    return e.reduced.select_rows(rows).select_columns(cols);
}

}  // namespace

PresentedAlgebra::PresentedAlgebra(std::uint32_t p, std::vector<std::string> labels, std::vector<int> weights,
                                   Vec unit, std::vector<Vec> mult, std::optional<Vec> augmentation)
    : p_(p), labels_(std::move(labels)), weights_(std::move(weights)), unit_(std::move(unit)),
      mult_(std::move(mult)), aug_(std::move(augmentation))
{
    const std::size_t n = labels_.size();
    require(is_prime(p), "algebra over a non-prime modulus");
    require(weights_.size() == n, "algebra weight list has the wrong length");
    require(unit_.size() == n, "algebra unit has the wrong length");
    require(mult_.size() == n * n, "algebra structure constants have the wrong shape");
    for (const auto& v : mult_)
        require(v.size() == n, "algebra structure constants have the wrong shape");
    if (aug_)
        require(aug_->size() == n, "augmentation has the wrong length");
}

Vec PresentedAlgebra::basis(std::size_t i) const
{
    return unit_vector(dim(), i);
}

Vec PresentedAlgebra::multiply(const Vec& a, const Vec& b) const
{
    const std::size_t n = dim();
    std::vector<unsigned long> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!b[j])
                continue;
            unsigned c = (unsigned(a[i]) * b[j]) % p_;
            const Vec& m = mult_[i * n + j];
            for (std::size_t k = 0; k < n; ++k)
                acc[k] += c * m[k];
        }
    }
    Vec out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = static_cast<Entry>(acc[k] % p_);
    return out;
}

Vec PresentedAlgebra::power(const Vec& a, std::uint64_t e) const
{
    Vec r = unit_, b = a;
    while (e) {
        if (e & 1)
            r = multiply(r, b);
        e >>= 1;
        if (e)
            b = multiply(b, b);
    }
    return r;
}

FpMatrix PresentedAlgebra::left_multiplication(const Vec& a) const
{
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < dim(); ++j)
        cols.push_back(multiply(a, basis(j)));
    return FpMatrix::from_columns(p_, dim(), cols);
}

Entry PresentedAlgebra::augment(const Vec& a) const
{
    if (!aug_)
        fail(ErrorKind::Precondition, "algebra has no augmentation");
    unsigned long s = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        s += unsigned(a[i]) * (*aug_)[i];
    return static_cast<Entry>(s % p_);
}

std::optional<int> PresentedAlgebra::homogeneous_weight(const Vec& a) const
{
    std::optional<int> w;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!a[i])
            continue;
        if (w && *w != weights_[i])
            return std::nullopt;
        w = weights_[i];
    }
    return w;
}

int PresentedAlgebra::max_weight() const
{
    return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

bool PresentedAlgebra::commutative() const
{
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (product(i, j) != product(j, i))
                return false;
    return true;
}

void PresentedAlgebra::verify() const
{
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (multiply(unit_, basis(i)) != basis(i) || multiply(basis(i), unit_) != basis(i))
            fail(ErrorKind::Precondition, "unit law fails on " + labels_[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& ij = product(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (ij[k] && weights_[k] != weights_[i] + weights_[j])
                    fail(ErrorKind::Precondition, "product " + labels_[i] + "*" + labels_[j] + " is not weight homogeneous");
            for (std::size_t k = 0; k < n; ++k)
                if (multiply(ij, basis(k)) != multiply(basis(i), product(j, k)))
                    fail(ErrorKind::Precondition, "associativity fails on (" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + ")");
            if (aug_ && augment(ij) != (unsigned((*aug_)[i]) * (*aug_)[j]) % p_)
                fail(ErrorKind::Precondition, "augmentation is not multiplicative on " + labels_[i] + "*" + labels_[j]);
        }
    }
    if (aug_ && augment(unit_) != 1)
        fail(ErrorKind::Precondition, "augmentation does not send 1 to 1");
}

PresentedAlgebra PresentedAlgebra::rebase(const FpMatrix& basis_change, std::vector<std::string> labels) const
{
    const std::size_t n = dim();
    require(basis_change.rows() == n && basis_change.cols() == n, "rebase: basis change has the wrong shape");
    FpMatrix inv = inverse(basis_change);
    std::vector<Vec> cols(n);
    std::vector<int> weights(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        cols[a] = basis_change.column(a);
        auto w = homogeneous_weight(cols[a]);
        if (!w)
            fail(ErrorKind::Precondition, "rebase: new basis vector " + std::to_string(a) + " is not homogeneous");
        weights[a] = *w;
    }
    std::vector<Vec> mult(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            mult[a * n + b] = inv.apply(multiply(cols[a], cols[b]));
    std::optional<Vec> aug;
    if (aug_) {
        aug = Vec(n);
        for (std::size_t a = 0; a < n; ++a)
            (*aug)[a] = augment(cols[a]);
    }
    return PresentedAlgebra(p_, std::move(labels), std::move(weights), inv.apply(unit_), std::move(mult), std::move(aug));
}

bool HopfAlgebra::cocommutative() const
{
    const std::size_t n = algebra.dim();
    for (const auto& c : hopf.comult)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (c[i * n + j] != c[j * n + i])
                    return false;
    return true;
}

void HopfAlgebra::verify() const
{
    const PresentedAlgebra& A = algebra;
    const std::size_t n = A.dim();
    const std::uint32_t p = A.prime();
    PrimeField F(p);
    A.verify();
    require(hopf.comult.size() == n && hopf.counit.size() == n, "Hopf data has the wrong shape");
    require(hopf.antipode.rows() == n && hopf.antipode.cols() == n, "antipode has the wrong shape");
    for (const auto& c : hopf.comult)
        require(c.size() == n * n, "comultiplication has the wrong shape");
    const auto& D = hopf.comult;
    const auto& eps = hopf.counit;

    for (std::size_t k = 0; k < n; ++k) {
        const std::string& name = A.labels()[k];
        // coassociativity
        std::vector<unsigned long> left(n * n * n, 0), right(n * n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                unsigned c = D[k][i * n + j];
                if (!c)
                    continue;
                for (std::size_t a = 0; a < n * n; ++a) {
                    if (D[i][a])
                        left[a * n + j] += c * D[i][a];
                    if (D[j][a])
                        right[i * n * n + a] += c * D[j][a];
                }
            }
        for (std::size_t a = 0; a < n * n * n; ++a)
            if (left[a] % p != right[a] % p)
                fail(ErrorKind::Precondition, "coassociativity fails on " + name);
        // counit
        Vec l(n, 0), r(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Entry c = D[k][i * n + j];
                l[j] = F.add(l[j], F.mul(c, eps[i]));
                r[i] = F.add(r[i], F.mul(c, eps[j]));
            }
        if (l != A.basis(k) || r != A.basis(k))
            fail(ErrorKind::Precondition, "counit law fails on " + name);
        // antipode
        Vec sl(n, 0), sr(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Entry c = D[k][i * n + j];
                if (!c)
                    continue;
                Vec a = A.multiply(hopf.antipode.column(i), A.basis(j));
                Vec b = A.multiply(A.basis(i), hopf.antipode.column(j));
                for (std::size_t t = 0; t < n; ++t) {
                    sl[t] = F.add(sl[t], F.mul(c, a[t]));
                    sr[t] = F.add(sr[t], F.mul(c, b[t]));
                }
            }
        Vec expect(n, 0);
        for (std::size_t t = 0; t < n; ++t)
            expect[t] = F.mul(eps[k], A.unit()[t]);
        if (sl != expect || sr != expect)
            fail(ErrorKind::Precondition, "antipode law fails on " + name);
    }

    // Δ and ε are algebra maps.
    auto delta = [&](const Vec& x) {
        Vec out(n * n, 0);
        for (std::size_t k = 0; k < n; ++k)
            if (x[k])
                for (std::size_t a = 0; a < n * n; ++a)
                    out[a] = F.add(out[a], F.mul(x[k], D[k][a]));
        return out;
    };
    auto counit = [&](const Vec& x) {
        unsigned long s = 0;
        for (std::size_t k = 0; k < n; ++k)
            s += unsigned(x[k]) * eps[k];
        return static_cast<Entry>(s % p);
    };
    Vec unit_unit(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            unit_unit[i * n + j] = F.mul(A.unit()[i], A.unit()[j]);
    if (delta(A.unit()) != unit_unit || counit(A.unit()) != 1)
        fail(ErrorKind::Precondition, "comultiplication or counit does not preserve the unit");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vec lhs = delta(A.product(a, b));
            std::vector<unsigned long> rhs(n * n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    unsigned c1 = D[a][i * n + j];
                    if (!c1)
                        continue;
                    for (std::size_t k = 0; k < n; ++k)
                        for (std::size_t l = 0; l < n; ++l) {
                            unsigned c2 = D[b][k * n + l];
                            if (!c2)
                                continue;
                            unsigned c = (c1 * c2) % p;
                            const Vec& ik = A.product(i, k);
                            const Vec& jl = A.product(j, l);
                            for (std::size_t x = 0; x < n; ++x) {
                                if (!ik[x])
                                    continue;
                                for (std::size_t y = 0; y < n; ++y)
                                    if (jl[y])
                                        rhs[x * n + y] += c * ((unsigned(ik[x]) * jl[y]) % p);
                            }
                        }
                }
            for (std::size_t t = 0; t < n * n; ++t)
                if (lhs[t] != rhs[t] % p)
                    fail(ErrorKind::Precondition, "comultiplication is not multiplicative on " + A.labels()[a] + "*" + A.labels()[b]);
            if (counit(A.product(a, b)) != F.mul(eps[a], eps[b]))
                fail(ErrorKind::Precondition, "counit is not multiplicative on " + A.labels()[a] + "*" + A.labels()[b]);
        }
}

std::vector<std::vector<Entry>> binomials_mod(std::uint32_t p, std::size_t n)
{
    std::vector<std::vector<Entry>> c(n + 1, std::vector<Entry>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            c[i][j] = static_cast<Entry>((c[i - 1][j - 1] + c[i - 1][j]) % p);
    }
    return c;
}

PresentedAlgebra truncated_poly(std::uint32_t p, std::size_t n, int weight_of_t, const std::string& var)
{
    require(n >= 1, "truncated polynomial algebra needs exponent >= 1");
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(power_label(var, i));
        weights.push_back(static_cast<int>(i) * weight_of_t);
    }
    std::vector<Vec> mult(n * n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n)
                mult[i * n + j][i + j] = 1;
    return PresentedAlgebra(p, labels, weights, unit_vector(n, 0), mult, unit_vector(n, 0));
}

HopfAlgebra mu_p(std::uint32_t p, const std::string& var)
{
    require(is_prime(p), "mu_p needs a prime");
    const std::size_t n = p;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(power_label(var, i));
    std::vector<Vec> mult(n * n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mult[i * n + j][(i + j) % n] = 1;
    PresentedAlgebra alg(p, labels, std::vector<int>(n, 0), unit_vector(n, 0), mult, Vec(n, 1));
    HopfData h;
    h.comult.assign(n, Vec(n * n, 0));
    h.antipode = FpMatrix(p, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h.comult[i][i * n + i] = 1;
        h.antipode.set((n - i) % n, i, 1);
    }
    h.counit = Vec(n, 1);
    return {alg, h};
}

HopfAlgebra alpha_p(std::uint32_t p, const std::string& var)
{
    require(is_prime(p), "alpha_p needs a prime");
    const std::size_t n = p;
    PresentedAlgebra alg = truncated_poly(p, n, 1, var);
    auto binom = binomials_mod(p, n);
    HopfData h;
    h.comult.assign(n, Vec(n * n, 0));
    h.antipode = FpMatrix(p, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j)
            h.comult[i][j * n + (i - j)] = binom[i][j];
        h.antipode.set(i, i, i % 2 ? -1 : 1);
    }
    h.counit = unit_vector(n, 0);
    return {alg, h};
}

PresentedAlgebra tensor(const PresentedAlgebra& a, const PresentedAlgebra& b)
{
    require(a.prime() == b.prime(), "tensor product over different primes");
    const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            labels.push_back(tensor_label(a.labels()[i], b.labels()[j]));
            weights.push_back(a.weights()[i] + b.weights()[j]);
        }
    auto kron = [&](const Vec& x, const Vec& y) {
        Vec out(n, 0);
        for (std::size_t i = 0; i < na; ++i)
            if (x[i])
                for (std::size_t j = 0; j < nb; ++j)
                    out[i * nb + j] = static_cast<Entry>((unsigned(x[i]) * y[j]) % a.prime());
        return out;
    };
    std::vector<Vec> mult(n * n);
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t j1 = 0; j1 < nb; ++j1)
            for (std::size_t i2 = 0; i2 < na; ++i2)
                for (std::size_t j2 = 0; j2 < nb; ++j2)
                    mult[(i1 * nb + j1) * n + (i2 * nb + j2)] = kron(a.product(i1, i2), b.product(j1, j2));
    std::optional<Vec> aug;
    if (a.augmentation() && b.augmentation())
        aug = kron(*a.augmentation(), *b.augmentation());
    return PresentedAlgebra(a.prime(), labels, weights, kron(a.unit(), b.unit()), mult, aug);
}

HopfAlgebra tensor(const HopfAlgebra& a, const HopfAlgebra& b)
{
    PresentedAlgebra alg = tensor(a.algebra, b.algebra);
    const std::size_t na = a.algebra.dim(), nb = b.algebra.dim(), n = na * nb;
    const std::uint32_t p = alg.prime();
    HopfData h;
    h.comult.assign(n, Vec(n * n, 0));
    h.counit.assign(n, 0);
    h.antipode = FpMatrix(p, n, n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            std::size_t k = i * nb + j;
            h.counit[k] = static_cast<Entry>((unsigned(a.hopf.counit[i]) * b.hopf.counit[j]) % p);
            // Δ(a_i ⊗ b_j) = Σ (a_x ⊗ b_u) ⊗ (a_y ⊗ b_v)
            for (std::size_t x = 0; x < na; ++x)
                for (std::size_t y = 0; y < na; ++y) {
                    unsigned c1 = a.hopf.comult[i][x * na + y];
                    if (!c1)
                        continue;
                    for (std::size_t u = 0; u < nb; ++u)
                        for (std::size_t v = 0; v < nb; ++v) {
                            unsigned c2 = b.hopf.comult[j][u * nb + v];
                            if (c2)
                                h.comult[k][(x * nb + u) * n + (y * nb + v)] = static_cast<Entry>((c1 * c2) % p);
                        }
                }
            for (std::size_t x = 0; x < na; ++x)
                for (std::size_t u = 0; u < nb; ++u)
                    h.antipode.set(x * nb + u, k, std::int64_t(a.hopf.antipode.at(x, i)) * b.hopf.antipode.at(u, j));
        }
    return {alg, h};
}

HopfAlgebra cartier_dual(const HopfAlgebra& h)
{
    h.verify();
    if (!h.algebra.commutative() || !h.cocommutative())
        fail(ErrorKind::Precondition, "Cartier duality needs a commutative and cocommutative Hopf algebra");
    const PresentedAlgebra& A = h.algebra;
    const std::size_t n = A.dim();
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(A.labels()[i] + "*");
        weights.push_back(-A.weights()[i]);
    }
    std::vector<Vec> mult(n * n, Vec(n, 0));
    HopfData d;
    d.comult.assign(n, Vec(n * n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                mult[i * n + j][k] = h.hopf.comult[k][i * n + j];
                d.comult[k][i * n + j] = A.product(i, j)[k];
            }
    d.counit = A.unit();
    d.antipode = h.hopf.antipode.transpose();
    PresentedAlgebra dual(A.prime(), labels, weights, h.hopf.counit, mult, A.unit());
    HopfAlgebra out{dual, d};
    out.verify();
    return out;
}

PresentedAlgebra augmentation_adapted(const PresentedAlgebra& a)
{
    if (!a.augmentation())
        fail(ErrorKind::Precondition, "augmentation-adapted basis needs an augmentation");
    const std::size_t n = a.dim();
    const Vec& eps = *a.augmentation();
    bool adapted = a.unit() == a.basis(0) && eps[0] == 1;
    for (std::size_t i = 1; i < n && adapted; ++i)
        adapted = eps[i] == 0;
    if (adapted)
        return a;
    FpMatrix row(a.prime(), 1, n);
    for (std::size_t i = 0; i < n; ++i)
        row.set(0, i, eps[i]);
    FpMatrix ker = kernel_basis(row);
    std::vector<Vec> cols{a.unit()};
    std::vector<std::string> labels{"1"};
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        cols.push_back(ker.column(j));
        labels.push_back(format_vector(cols.back(), a.labels()));
    }
    return a.rebase(FpMatrix::from_columns(a.prime(), n, cols), labels);
}

FpMatrix frobenius_on_algebra(const PresentedAlgebra& a)
{
    if (!a.commutative())
        fail(ErrorKind::Precondition, "Frobenius needs a commutative algebra");
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < a.dim(); ++i)
        cols.push_back(a.power(a.basis(i), a.prime()));
    return FpMatrix::from_columns(a.prime(), a.dim(), cols);
}

std::size_t nilradical_dim(const PresentedAlgebra& a)
{
    FpMatrix F = frobenius_on_algebra(a);
    FpMatrix Fm = FpMatrix::identity(a.prime(), a.dim());
    std::size_t q = 1;
    do {
        Fm = F * Fm;
        q *= a.prime();
    } while (q < a.dim());
    return a.dim() - rank(Fm);
}

bool is_semisimple(const PresentedAlgebra& a)
{
    return nilradical_dim(a) == 0;
}

PresentedAlgebra local_block(const PresentedAlgebra& a)
{
    if (!a.augmentation())
        fail(ErrorKind::Precondition, "local block needs an augmentation");
    const std::size_t n = a.dim();
    const std::uint32_t p = a.prime();
    FpMatrix F = frobenius_on_algebra(a);
    FpMatrix fix = kernel_basis(F - FpMatrix::identity(p, n));
    const std::size_t b = fix.cols();
    FpMatrix eps_row(p, 1, n);
    for (std::size_t i = 0; i < n; ++i)
        eps_row.set(0, i, (*a.augmentation())[i]);
    FpMatrix eps_fix = eps_row * fix;
    FpMatrix others = kernel_basis(eps_fix);
    FpMatrix system = eps_fix;
    for (std::size_t j = 0; j < others.cols(); ++j) {
        Vec y = fix.apply(others.column(j));
        system = system.vconcat(a.left_multiplication(y) * fix);
    }
    Vec rhs(system.rows(), 0);
    rhs[0] = 1;
    auto z = solve(system, rhs);
    if (!z || b == 0)
        fail(ErrorKind::Internal, "no idempotent at the augmentation");
    Vec e = fix.apply(*z);
    if (e == a.unit())
        return a;
    auto we = a.homogeneous_weight(e);
    if (!we || *we != 0)
        fail(ErrorKind::Unsupported, "block idempotent is not of weight 0");
    FpMatrix Le = a.left_multiplication(e);
    RowEchelon r = rref(Le);
    SubspaceBasis sb(p, n);
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (auto c : r.pivots) {
        sb.insert(Le.column(c));
        labels.push_back(c == 0 ? "e" : "e·" + a.labels()[c]);
        weights.push_back(a.weights()[c]);
    }
    const auto& vecs = sb.inserted();
    const std::size_t m = vecs.size();
    std::vector<Vec> mult(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            mult[i * m + j] = *sb.coordinates(a.multiply(vecs[i], vecs[j]));
    Vec aug(m);
    for (std::size_t i = 0; i < m; ++i)
        aug[i] = a.augment(vecs[i]);
    PresentedAlgebra block(p, labels, weights, *sb.coordinates(e), mult, aug);
    block.verify();
    return block;
}

void check_trivial_adjoint_coaction(const HopfAlgebra& h)
{
    const PresentedAlgebra& A = h.algebra;
    const std::size_t n = A.dim();
    const auto& D = h.hopf.comult;
    PrimeField F(A.prime());
    for (std::size_t k = 0; k < n; ++k) {
        Vec ad(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < n; ++c) {
                Entry c1 = D[k][i * n + c];
                if (!c1)
                    continue;
                // (Δ ⊗ id)Δ: split e_i = Σ e_a ⊗ e_b
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        Entry c2 = D[i][a * n + b];
                        if (!c2)
                            continue;
                        Vec right = A.multiply(h.hopf.antipode.column(a), A.basis(c));
                        Entry coef = F.mul(c1, c2);
                        for (std::size_t t = 0; t < n; ++t)
                            ad[b * n + t] = F.add(ad[b * n + t], F.mul(coef, right[t]));
                    }
            }
        Vec expect(n * n, 0);
        for (std::size_t t = 0; t < n; ++t)
            expect[k * n + t] = A.unit()[t];
        if (ad != expect)
            fail(ErrorKind::Unsupported, "adjoint coaction is not trivial on " + A.labels()[k]);
    }
}

namespace {

std::vector<std::int64_t> monic(const Hypersurface& h)
{
    require(h.f.size() >= 2, "hypersurface relation must have degree >= 1");
    PrimeField F(h.p);
    Entry lead = F.reduce(h.f.back());
    require(lead != 0, "hypersurface relation has leading coefficient divisible by p");
    Entry s = F.inv(lead);
    std::vector<std::int64_t> g;
    for (auto c : h.f)
        g.push_back(F.mul(F.reduce(c), s));
    return g;
}

}  // namespace

PresentedAlgebra quotient_algebra(const Hypersurface& h)
{
    auto f = monic(h);
    const std::size_t d = f.size() - 1;
    PrimeField F(h.p);
    if (h.weight != 0)
        for (std::size_t i = 0; i < d; ++i)
            if (f[i] != 0)
                fail(ErrorKind::Precondition, "a nonzero weight needs a homogeneous relation");
    // t^m as vectors for m < 2d - 1
    std::vector<Vec> pw;
    for (std::size_t m = 0; m + 1 < 2 * d || m < d; ++m) {
        if (m < d) {
            pw.push_back(unit_vector(d, m));
            continue;
        }
        // t^m = t * t^{m-1}; t * t^{d-1} = -Σ f_i t^i
        const Vec& prev = pw[m - 1];
        Vec v(d, 0);
        for (std::size_t i = 0; i + 1 < d; ++i)
            v[i + 1] = prev[i];
        Entry top = prev[d - 1];
        for (std::size_t i = 0; i < d; ++i)
            v[i] = F.sub(v[i], F.mul(top, F.reduce(f[i])));
        pw.push_back(v);
    }
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (std::size_t i = 0; i < d; ++i) {
        labels.push_back(power_label(h.var, i));
        weights.push_back(static_cast<int>(i) * h.weight);
    }
    std::vector<Vec> mult(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            mult[i * d + j] = pw[i + j];
    std::optional<Vec> aug;
    for (std::uint32_t e = 0; e < h.p && !aug; ++e) {
        unsigned long val = 0, pe = 1;
        for (std::size_t i = 0; i <= d; ++i) {
            val += F.reduce(f[i]) * pe;
            pe = (pe * e) % h.p;
        }
        if (val % h.p == 0) {
            aug = Vec(d);
            for (std::size_t i = 0; i < d; ++i)
                (*aug)[i] = F.pow(static_cast<Entry>(e), i);
        }
    }
    PresentedAlgebra a(h.p, labels, weights, unit_vector(d, 0), mult, aug);
    a.verify();
    return a;
}

namespace {

Vec derivative_of_relation(const Hypersurface& h, const std::vector<std::int64_t>& f)
{
    const std::size_t d = f.size() - 1;
    PrimeField F(h.p);
    Vec v(d, 0);
    for (std::size_t i = 1; i <= d; ++i)
        v[i - 1] = F.mul(F.reduce(static_cast<std::int64_t>(i)), F.reduce(f[i]));
    return v;
}

Vec derivative(const Hypersurface& h, const Vec& u)
{
    PrimeField F(h.p);
    Vec v(u.size(), 0);
    for (std::size_t i = 1; i < u.size(); ++i)
        v[i - 1] = F.mul(F.reduce(static_cast<std::int64_t>(i)), u[i]);
    return v;
}

SubspaceBasis jacobian_image(const Hypersurface& h, const PresentedAlgebra& R)
{
    auto f = monic(h);
    FpMatrix L = R.left_multiplication(derivative_of_relation(h, f));
    SubspaceBasis sb(h.p, R.dim());
    for (std::size_t j = 0; j < L.cols(); ++j)
        sb.insert(L.column(j));
    return sb;
}

std::vector<std::string> form_labels(const PresentedAlgebra& R, const std::string& var)
{
    std::vector<std::string> out;
    for (const auto& l : R.labels())
        out.push_back(l == "1" ? "d" + var : l + " d" + var);
    return out;
}

}  // namespace

TwoTermCotangent lci_cotangent(const Hypersurface& h)
{
    auto f = monic(h);
    PresentedAlgebra R = quotient_algebra(h);
    const std::size_t d = R.dim();
    TwoTermCotangent out;
    out.ring = R;
    out.source_weight = static_cast<int>(d) * h.weight;
    out.target_weight = h.weight;
    out.source.dim = out.target.dim = d;
    for (std::size_t i = 0; i < d; ++i) {
        out.source.weights.push_back(R.weights()[i] + out.source_weight);
        out.target.weights.push_back(R.weights()[i] + out.target_weight);
        out.source.labels.push_back(R.labels()[i] == "1" ? "(f)" : R.labels()[i] + "·(f)");
    }
    out.target.labels = form_labels(R, h.var);
    Vec fprime = derivative_of_relation(h, f);
    out.connecting = R.left_multiplication(fprime);
    if (!R.augmentation())
        fail(ErrorKind::Precondition, "relation has no root in F_" + std::to_string(h.p) + ", so there is no rational point");
    out.fiber_map = R.augment(fprime);
    return out;
}

GradedSpace TwoTermCotangent::cohomology() const
{
    CochainComplex c(ring.prime(), -1, 0);
    c.set_term(-1, source);
    c.set_term(0, target);
    c.set_differential(-1, connecting);
    c.check();
    return stackcoh::cohomology(c, Window{-1, 0, std::nullopt}, true);
}

CochainComplex TwoTermCotangent::colie() const
{
    CochainComplex c(ring.prime(), -1, 0);
    c.set_term(-1, Term{1, {source_weight}, {"(f)"}});
    c.set_term(0, Term{1, {target_weight}, {target.labels.front()}});
    FpMatrix m(ring.prime(), 1, 1);
    m.set(0, 0, fiber_map);
    c.set_differential(-1, m);
    return c;
}

KaehlerForm kaehler_d(const Hypersurface& h, const Vec& u)
{
    PresentedAlgebra R = quotient_algebra(h);
    require(u.size() == R.dim(), "element has the wrong length");
    Vec nf = jacobian_image(h, R).normal_form(derivative(h, u));
    return {nf, format_vector(nf, form_labels(R, h.var))};
}

KaehlerForm dlog(const Hypersurface& h, const Vec& u)
{
    PresentedAlgebra R = quotient_algebra(h);
    require(u.size() == R.dim(), "element has the wrong length");
    auto inv = solve(R.left_multiplication(u), R.unit());
    if (!inv)
        fail(ErrorKind::Precondition, "element " + format_vector(u, R.labels()) + " is not a unit");
    Vec form = R.multiply(*inv, derivative(h, u));
    Vec nf = jacobian_image(h, R).normal_form(form);
    return {nf, format_vector(nf, form_labels(R, h.var))};
}

KaehlerForm add_forms(const Hypersurface& h, const KaehlerForm& a, const KaehlerForm& b)
{
    PresentedAlgebra R = quotient_algebra(h);
    PrimeField F(h.p);
    Vec s(a.coeffs.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = F.add(a.coeffs[i], b.coeffs[i]);
    Vec nf = jacobian_image(h, R).normal_form(s);
    return {nf, format_vector(nf, form_labels(R, h.var))};
}

}  // namespace stackcoh
