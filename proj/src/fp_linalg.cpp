#include "stackcoh/fp_linalg.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <string>

namespace stackcoh {

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Unsupported: return 3;
    case ErrorKind::Resource: return 4;
    case ErrorKind::AbutmentUnreachable: return 5;
    case ErrorKind::Internal: return 1;
    }
    return 1;
}

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Precondition: return "precondition failure";
    case ErrorKind::Unsupported: return "unsupported input";
    case ErrorKind::Resource: return "resource budget exceeded";
    case ErrorKind::AbutmentUnreachable: return "abutment unreachable";
    case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (!is_prime(p) || p > 251)
        fail(ErrorKind::Precondition, "modulus " + std::to_string(p) + " is not a prime below 256");
    inv_.assign(p, 0);
    for (std::uint32_t a = 1; a < p; ++a)
        for (std::uint32_t b = 1; b < p; ++b)
            if ((a * b) % p == 1) {
                inv_[a] = static_cast<Entry>(b);
                break;
            }
}

Entry PrimeField::inv(Entry a) const
{
    if (a == 0)
        fail(ErrorKind::Internal, "inverse of zero in F_" + std::to_string(p_));
    return inv_[a];
}

Entry PrimeField::pow(Entry a, std::uint64_t e) const
{
    unsigned r = 1, b = a;
    while (e) {
        if (e & 1)
            r = (r * b) % p_;
        b = (b * b) % p_;
        e >>= 1;
    }
    return static_cast<Entry>(r);
}

FpScalar::FpScalar(std::int64_t v, std::uint32_t p) : modulus(p)
{
    if (!is_prime(p))
        fail(ErrorKind::Precondition, "modulus " + std::to_string(p) + " is not prime");
    std::int64_t r = v % static_cast<std::int64_t>(p);
    value = static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

namespace {

// dst[j] += f * src[j] over [from, n).  The small primes get constant moduli so
// the compiler can vectorize the reduction.
template <unsigned P>
void axpy_fixed(Entry* dst, const Entry* src, unsigned f, std::size_t from, std::size_t n)
{
    for (std::size_t j = from; j < n; ++j)
        dst[j] = static_cast<Entry>((dst[j] + f * src[j]) % P);
}

void axpy_generic(Entry* dst, const Entry* src, unsigned f, std::size_t from, std::size_t n, unsigned p)
{
    for (std::size_t j = from; j < n; ++j)
        dst[j] = static_cast<Entry>((dst[j] + f * src[j]) % p);
}

void axpy(Entry* dst, const Entry* src, unsigned f, std::size_t from, std::size_t n, unsigned p)
{
    switch (p) {
    case 2:
        for (std::size_t j = from; j < n; ++j)
            dst[j] ^= src[j];
        return;
    case 3: axpy_fixed<3>(dst, src, f, from, n); return;
    case 5: axpy_fixed<5>(dst, src, f, from, n); return;
    case 7: axpy_fixed<7>(dst, src, f, from, n); return;
    default: axpy_generic(dst, src, f, from, n, p); return;
    }
}

void scale(Entry* row, unsigned f, std::size_t from, std::size_t n, unsigned p)
{
    for (std::size_t j = from; j < n; ++j)
        row[j] = static_cast<Entry>((row[j] * f) % p);
}

// Gaussian elimination in place.  With `full` the result is reduced (entries
// above pivots cleared); otherwise only a row-echelon form is produced.
std::vector<std::size_t> eliminate(FpMatrix& m, bool full)
{
    PrimeField f(m.prime());
    const unsigned p = m.prime();
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i)
            if (m.at(i, c)) {
                piv = i;
                break;
            }
        if (piv == R)
            continue;
        if (piv != r) {
            auto a = m.row(piv), b = m.row(r);
            std::swap_ranges(a.begin() + c, a.end(), b.begin() + c);
        }
        Entry* prow = m.row(r).data();
        if (prow[c] != 1)
            scale(prow, f.inv(prow[c]), c, C, p);
        for (std::size_t i = full ? 0 : r + 1; i < R; ++i) {
            if (i == r)
                continue;
            Entry* row = m.row(i).data();
            if (row[c])
                axpy(row, prow, p - row[c], c, C, p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
{
    if (!is_prime(p) || p > 251)
        fail(ErrorKind::Precondition, "matrix modulus " + std::to_string(p) + " is not a prime below 256");
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n)
{
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i * n + i] = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows)
{
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(p, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            fail(ErrorKind::Precondition, "ragged rows in matrix literal");
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

FpMatrix FpMatrix::from_columns(std::uint32_t p, std::size_t rows, const std::vector<Vec>& cols)
{
    FpMatrix m(p, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            fail(ErrorKind::Internal, "column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m.data_[i * m.cols_ + j] = cols[j][i];
    }
    return m;
}

void FpMatrix::set(std::size_t i, std::size_t j, std::int64_t v)
{
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    data_[i * cols_ + j] = static_cast<Entry>(r < 0 ? r + p_ : r);
}

void FpMatrix::add_to(std::size_t i, std::size_t j, std::int64_t v)
{
    set(i, j, static_cast<std::int64_t>(at(i, j)) + v);
}

Vec FpMatrix::column(std::size_t j) const
{
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = at(i, j);
    return v;
}

bool FpMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Entry e) { return e == 0; });
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
}

FpMatrix FpMatrix::select_rows(std::span<const std::size_t> idx) const
{
    FpMatrix m(p_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy_n(data_.begin() + idx[i] * cols_, cols_, m.data_.begin() + i * cols_);
    return m;
}

FpMatrix FpMatrix::select_columns(std::span<const std::size_t> idx) const
{
    FpMatrix m(p_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            m.data_[i * idx.size() + j] = data_[i * cols_ + idx[j]];
    return m;
}

FpMatrix FpMatrix::hconcat(const FpMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || p_ != rhs.p_)
        fail(ErrorKind::Internal, "hconcat shape mismatch");
    FpMatrix m(p_, rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::copy_n(data_.begin() + i * cols_, cols_, m.data_.begin() + i * m.cols_);
        std::copy_n(rhs.data_.begin() + i * rhs.cols_, rhs.cols_, m.data_.begin() + i * m.cols_ + cols_);
    }
    return m;
}

FpMatrix FpMatrix::vconcat(const FpMatrix& rhs) const
{
    if (cols_ != rhs.cols_ || p_ != rhs.p_)
        fail(ErrorKind::Internal, "vconcat shape mismatch");
    FpMatrix m(p_, rows_ + rhs.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(rhs.data_.begin(), rhs.data_.end(), m.data_.begin() + data_.size());
    return m;
}

Vec FpMatrix::apply(std::span<const Entry> v) const
{
    if (v.size() != cols_)
        fail(ErrorKind::Internal, "apply: vector length mismatch");
    Vec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        unsigned long acc = 0;
        const Entry* r = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j)
            acc += unsigned(r[j]) * v[j];
        out[i] = static_cast<Entry>(acc % p_);
    }
    return out;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b)
{
    if (a.cols_ != b.rows_ || a.p_ != b.p_)
        fail(ErrorKind::Internal, "matrix product shape mismatch");
    FpMatrix c(a.p_, a.rows_, b.cols_);
    std::vector<unsigned long> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            unsigned f = a.data_[i * a.cols_ + k];
            if (!f)
                continue;
            const Entry* br = b.data_.data() + k * b.cols_;
            for (std::size_t j = 0; j < b.cols_; ++j)
                acc[j] += f * br[j];
        }
        for (std::size_t j = 0; j < b.cols_; ++j)
            c.data_[i * c.cols_ + j] = static_cast<Entry>(acc[j] % a.p_);
    }
    return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
        fail(ErrorKind::Internal, "matrix sum shape mismatch");
    FpMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] = static_cast<Entry>((c.data_[i] + b.data_[i]) % a.p_);
    return c;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
        fail(ErrorKind::Internal, "matrix difference shape mismatch");
    FpMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i)
        c.data_[i] = static_cast<Entry>((c.data_[i] + a.p_ - b.data_[i]) % a.p_);
    return c;
}

bool operator==(const FpMatrix& a, const FpMatrix& b)
{
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RowEchelon rref(const FpMatrix& m)
{
    RowEchelon out{m, {}};
    out.pivots = eliminate(out.reduced, true);
    return out;
}

std::size_t rank(const FpMatrix& m)
{
    if (m.empty())
        return 0;
    // Eliminate along the short side.
    FpMatrix work = m.rows() <= m.cols() ? m : m.transpose();
    return eliminate(work, false).size();
}

FpMatrix kernel_basis(const FpMatrix& m)
{
    const std::size_t C = m.cols();
    if (m.rows() == 0)
        return FpMatrix::identity(m.prime(), C);
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(C, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    PrimeField f(m.prime());
    std::vector<Vec> cols;
    for (std::size_t free = 0; free < C; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(C, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = f.neg(e.reduced.at(r, free));
        cols.push_back(std::move(v));
    }
    return FpMatrix::from_columns(m.prime(), C, cols);
}

FpMatrix column_space_basis(const FpMatrix& m)
{
    if (m.empty())
        return FpMatrix(m.prime(), m.rows(), 0);
    RowEchelon e = rref(m);
    return m.select_columns(e.pivots);
}

std::size_t subquotient_dim(const FpMatrix& span_a, const FpMatrix& span_b)
{
    if (span_a.rows() != span_b.rows())
        fail(ErrorKind::Precondition, "subquotient_dim: spans live in different ambient spaces");
    return rank(span_a.hconcat(span_b)) - rank(span_b);
}

std::optional<Vec> solve(const FpMatrix& m, std::span<const Entry> b)
{
    if (b.size() != m.rows())
        fail(ErrorKind::Internal, "solve: right-hand side length mismatch");
    FpMatrix aug(m.prime(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto src = m.row(i);
        auto dst = aug.row(i);
        std::copy(src.begin(), src.end(), dst.begin());
        dst[m.cols()] = b[i];
    }
    RowEchelon e = rref(aug);
    Vec x(m.cols(), 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols())
            return std::nullopt;
        x[e.pivots[r]] = e.reduced.at(r, m.cols());
    }
    return x;
}

SubspaceBasis::SubspaceBasis(std::uint32_t p, std::size_t ambient) : f_(p), n_(ambient) {}

void SubspaceBasis::reduce(Vec& v, Vec* coeff) const
{
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Entry c = v[lead_[i]];
        if (!c)
            continue;
        Entry m = f_.neg(c);
        axpy(v.data(), rows_[i].data(), m, lead_[i], n_, f_.p());
        if (coeff)
            axpy(coeff->data(), combos_[i].data(), m, 0, combos_[i].size(), f_.p());
    }
}

bool SubspaceBasis::insert(Vec v)
{
    if (v.size() != n_)
        fail(ErrorKind::Internal, "SubspaceBasis: vector length mismatch");
    Vec original = v;
    Vec coeff(originals_.size() + 1, 0);
    for (auto& c : combos_)
        c.resize(originals_.size() + 1, 0);
    coeff[originals_.size()] = 1;
    reduce(v, &coeff);
    auto it = std::find_if(v.begin(), v.end(), [](Entry e) { return e != 0; });
    if (it == v.end()) {
        for (auto& c : combos_)
            c.resize(originals_.size());
        return false;
    }
    std::size_t lead = static_cast<std::size_t>(it - v.begin());
    Entry s = f_.inv(*it);
    scale(v.data(), s, lead, n_, f_.p());
    scale(coeff.data(), s, 0, coeff.size(), f_.p());
    // Keep rows sorted by leading column so reduction is a single pass.
    auto pos = std::upper_bound(lead_.begin(), lead_.end(), lead);
    std::size_t k = static_cast<std::size_t>(pos - lead_.begin());
    // Clear the new leading column from existing rows to keep the basis reduced.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Entry c = rows_[i][lead];
        if (!c)
            continue;
        Entry m = f_.neg(c);
        axpy(rows_[i].data(), v.data(), m, 0, n_, f_.p());
        axpy(combos_[i].data(), coeff.data(), m, 0, coeff.size(), f_.p());
    }
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
    lead_.insert(pos, lead);
    combos_.insert(combos_.begin() + static_cast<std::ptrdiff_t>(k), std::move(coeff));
    originals_.push_back(std::move(original));
    return true;
}

bool SubspaceBasis::contains(Vec v) const
{
    reduce(v, nullptr);
    return std::all_of(v.begin(), v.end(), [](Entry e) { return e == 0; });
}

Vec SubspaceBasis::normal_form(Vec v) const
{
    reduce(v, nullptr);
    return v;
}

std::optional<Vec> SubspaceBasis::coordinates(const Vec& v) const
{
    Vec w = v;
    Vec coeff(originals_.size(), 0);
    reduce(w, &coeff);
    if (!std::all_of(w.begin(), w.end(), [](Entry e) { return e == 0; }))
        return std::nullopt;
    // reduce() subtracted sum c_i rows_i; v = sum c_i rows_i = sum c_i combos_i . originals
    PrimeField f(f_.p());
    for (auto& c : coeff)
        c = f.neg(c);
    return coeff;
}

SparseReduction sparse_reduce(std::uint32_t p, std::size_t rows, const std::vector<SparseVec>& columns,
                              const std::vector<bool>* skip)
{
    PrimeField F(p);
    std::vector<std::int64_t> owner(rows, -1);
    std::vector<SparseVec> reduced;
    SparseReduction out;
    SparseVec tmp;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (skip && (*skip)[j])
            continue;
        SparseVec col = columns[j];
        while (!col.empty()) {
            auto [low, val] = col.back();
            if (low >= rows)
                fail(ErrorKind::Internal, "sparse column entry outside the matrix");
            std::int64_t o = owner[low];
            if (o < 0)
                break;
            const SparseVec& piv = reduced[static_cast<std::size_t>(o)];
            // piv has leading value 1 at `low`
            Entry c = F.neg(val);
            tmp.clear();
            std::size_t a = 0, b = 0;
            while (a < col.size() || b < piv.size()) {
                if (b == piv.size() || (a < col.size() && col[a].first < piv[b].first)) {
                    tmp.push_back(col[a++]);
                } else if (a == col.size() || piv[b].first < col[a].first) {
                    tmp.emplace_back(piv[b].first, F.mul(c, piv[b].second));
                    ++b;
                } else {
                    Entry v = F.add(col[a].second, F.mul(c, piv[b].second));
                    if (v)
                        tmp.emplace_back(col[a].first, v);
                    ++a;
                    ++b;
                }
            }
            col.swap(tmp);
        }
        if (col.empty())
            continue;
        Entry inv = F.inv(col.back().second);
        for (auto& e : col)
            e.second = F.mul(e.second, inv);
        owner[col.back().first] = static_cast<std::int64_t>(reduced.size());
        out.pivot_rows.push_back(col.back().first);
        reduced.push_back(std::move(col));
    }
    out.rank = reduced.size();
    return out;
}

}  // namespace stackcoh
