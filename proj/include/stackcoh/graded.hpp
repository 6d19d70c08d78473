#pragma once

// Trigraded vector spaces, cochain complexes, bicomplexes.

#include "stackcoh/fp_linalg.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stackcoh {

struct GradeIndex {
    int deg = 0;
    int wedge = 0;
    int weight = 0;
    friend auto operator<=>(const GradeIndex&, const GradeIndex&) = default;
};

struct Window {
    int deg_min = 0;
    int deg_max = 0;
    std::optional<int> weight_max;

    bool contains_weight(int w) const { return !weight_max || w <= *weight_max; }
    friend bool operator==(const Window&, const Window&) = default;
};

struct GradedCell {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    bool indeterminate = false;
};

class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(Window w) : window_(w) {}

    /// Adds dim (and labels) to the cell at g; zero-dimensional cells are kept
    /// only if they carry an indeterminate mark.
    void add(const GradeIndex& g, std::size_t dim, std::vector<std::string> labels = {});
    void mark_indeterminate(const GradeIndex& g);

    std::size_t dim(const GradeIndex& g) const;
    bool indeterminate(const GradeIndex& g) const;
    /// True if any cell in the given degree is indeterminate.
    bool degree_indeterminate(int deg) const;
    std::size_t total_dim(int deg) const;
    std::map<int, std::size_t> dims_by_degree() const;

    const std::map<GradeIndex, GradedCell>& cells() const { return cells_; }
    const std::optional<Window>& window() const { return window_; }
    void set_window(Window w) { window_ = w; }

    friend bool operator==(const GradedSpace&, const GradedSpace&);

private:
    std::map<GradeIndex, GradedCell> cells_;
    std::optional<Window> window_;
};

bool operator==(const GradedCell& a, const GradedCell& b);

/// Tensor product of graded spaces: dims convolve over (deg, wedge, weight).
/// Cells outside `window` (if given) are dropped.
GradedSpace kunneth(const GradedSpace& a, const GradedSpace& b, std::optional<Window> window = std::nullopt);

/// One term of a cochain complex: a basis with per-element weights and labels.
struct Term {
    std::size_t dim = 0;
    std::vector<int> weights;
    std::vector<std::string> labels;
};

/// Finite cochain complex.  d(n) : C^n -> C^{n+1} is stored as a
/// dim C^{n+1} x dim C^n matrix.  When `bounded` is false the complex is only
/// known on [lo, hi] and cohomology at the two edges is indeterminate.
class CochainComplex {
public:
    CochainComplex(std::uint32_t p, int lo, int hi, bool bounded = true);

    std::uint32_t prime() const { return p_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool bounded() const { return bounded_; }

    void set_term(int n, Term t);
    void set_term(int n, std::size_t dim) { set_term(n, Term{dim, {}, {}}); }
    void set_differential(int n, FpMatrix d);

    const Term& term(int n) const;
    std::size_t dim(int n) const { return term(n).dim; }
    /// Zero matrix of the right shape if none was set.
    FpMatrix differential(int n) const;

    /// Throws Internal naming the degree if some d^{n+1} d^n != 0 or a
    /// differential does not preserve weights.
    void check() const;

private:
    std::uint32_t p_;
    int lo_, hi_;
    bool bounded_;
    std::map<int, Term> terms_;
    std::map<int, FpMatrix> diff_;
};

/// Degreewise ker/im.  Cohomology is split by weight when the terms carry
/// weights.  Representatives are computed (as labels) only when asked.
GradedSpace cohomology(const CochainComplex& c, const Window& w, bool representatives = false);

/// Chain map f : C -> D, f(n) : C^n -> D^n.
struct ChainMap {
    const CochainComplex* source;
    const CochainComplex* target;
    std::map<int, FpMatrix> maps;
};

/// fib^n = C^n (+) D^{n-1}, d(c, x) = (d c, f c - d x).
CochainComplex mapping_fiber(const ChainMap& f);

/// Bicomplex given by providers.  horizontal(p,q): (p,q) -> (p+1,q),
/// vertical(p,q): (p,q) -> (p,q+1); the two must anticommute.
struct Bicomplex {
    std::uint32_t prime = 2;
    std::function<Term(int, int)> cell;
    std::function<FpMatrix(int, int)> horizontal;
    std::function<FpMatrix(int, int)> vertical;
    int col_min = 0;
    int col_max = 0;
    bool grow_left = false;  // enlarge the column window on both sides
    /// Rows q that can be nonzero in column p for total degree n are bounded by
    /// the cell provider returning dim 0; q is scanned over [q_min, q_max].
    int q_min = -64;
    int q_max = 64;
};

/// Total complex over columns [col_min, col_max] in total degrees [lo, hi];
/// maps leaving the column range are dropped (quotient/sub truncation).
CochainComplex total_complex(const Bicomplex& b, int col_min, int col_max, int lo, int hi);

struct Totalization {
    CochainComplex complex;
    GradedSpace cohomology;
    std::set<int> unstable;
};

/// Totalizes at the declared column window and at the window grown by one
/// column, and marks degrees whose cohomology differs as indeterminate.
Totalization totalize_bicomplex(const Bicomplex& b, const Window& w);

/// Checks that horizontal and vertical maps anticommute on every cell of the
/// given ranges; throws Internal naming the cell.
void check_anticommute(const Bicomplex& b, int col_min, int col_max, int q_min, int q_max);

/// Formats a vector in a labelled basis, e.g. "2*t + t^2".
std::string format_vector(const Vec& v, const std::vector<std::string>& labels);

}  // namespace stackcoh
