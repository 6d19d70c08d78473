#pragma once

// Weight-graded multiplicative spectral sequences presented by generators.
// A page is modelled as the filtered free graded-commutative algebra on its
// generators with a total derivation D; d_r(g) assignments are the
// filtration-r components of D on generators, and every page is computed
// exactly from Z_r / B_r on a finite window.

#include "stackcoh/graded.hpp"
#include "stackcoh/hochschild.hpp"
#include "stackcoh/monomial.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stackcoh {

/// d_r(source) = scalar * target.
struct Assignment {
    int r = 2;
    std::string source;
    Exponents target;
    Entry scalar = 1;
};

/// Computation window: total degree n = s + t in [n_min, n_max] and filtration
/// s in [s_min, s_max].  A Laurent generator appears with exponents in
/// [-laurent_bound, laurent_bound].
struct PageWindow {
    int n_min = 0;
    int n_max = 0;
    int s_min = 0;
    int s_max = 0;
    std::optional<int> weight_max;
    int laurent_bound = 0;
};

struct PagePresentation {
    std::uint32_t prime = 2;
    int r = 2;
    std::vector<Generator> gens;
    PageWindow window;
    std::vector<Assignment> differentials;
    std::set<std::string> permanent;

    std::size_t index_of(const std::string& name) const;
    std::string monomial(const Exponents& e) const { return monomial_label(gens, e); }
};

/// Sparse polynomial in the free algebra.
using Poly = std::map<Exponents, Entry>;

/// Free graded-commutative algebra on the page generators with Koszul signs on
/// total parity.  Exterior generators square to zero; truncations apply.
class FreeAlgebra {
public:
    FreeAlgebra(std::uint32_t p, std::vector<Generator> gens);

    std::uint32_t prime() const { return p_; }
    const std::vector<Generator>& gens() const { return gens_; }
    /// Product of monomials: sign in F_p (0 if the product vanishes).
    Entry multiply(const Exponents& a, const Exponents& b, Exponents& out) const;
    Poly multiply(const Poly& a, const Poly& b) const;
    bool odd(const Exponents& e) const;

private:
    std::uint32_t p_;
    std::vector<Generator> gens_;
};

/// The derivation D determined by its values on generators.
class Derivation {
public:
    Derivation(const FreeAlgebra& alg, std::vector<Poly> on_generators);

    Poly apply(const Exponents& m) const;
    Poly apply(const Poly& x) const;
    /// Zero on generators iff D^2 = 0; returns the first generator with
    /// D^2(g) != 0, if any.
    std::optional<std::size_t> square_witness() const;
    /// First generator whose truncation relation g^N = 0 is not preserved.
    std::optional<std::size_t> truncation_witness() const;

private:
    const FreeAlgebra* alg_;
    std::vector<Poly> d_;
};

/// Basis of the window and D as block matrices per (total degree, weight).
struct ExpandedPage {
    FreeAlgebra algebra;
    int r_start = 2;
    int r_max = 2;
    PageWindow window;
    /// Rows s of the window whose page entries are exact.
    int verify_s_min = 0;
    int verify_s_max = 0;
    std::map<std::pair<int, int>, std::vector<Exponents>> basis;  // (n, weight), sorted by s
    std::map<std::pair<int, int>, FpMatrix> D;                     // (n, w) -> (n + 1, w)
    std::vector<Poly> generator_differentials;

    int s_of(const Exponents& e) const;
    /// E_r dimension table over the whole computation window; GradeIndex is
    /// (s, t, weight).  r = r_max + 1 gives E_infinity.
    GradedSpace page(int r) const;
    /// E_r restricted to the verification rows.
    GradedSpace verified_page(int r) const;
    /// Matrix of the filtration-r component of D on the monomial basis of
    /// block (n, w), rows in block (n + 1, w).
    FpMatrix component(int n, int w, int r) const;
};

/// Builds the window basis and D; checks bidegree (r, 1 - r), weight 0, D^2 = 0
/// and truncation compatibility, naming the offending generator.  r_max bounds
/// the page range (defaults to the longest assigned differential).
ExpandedPage expand_page(const PagePresentation& p, std::optional<int> r_max = std::nullopt);

/// Leibniz identity D(xy) = D(x)y + (-1)^{|x|} x D(y) on all pairs of window
/// monomials with total degree in [n_min, n_max]; returns the number of pairs
/// checked, throws Internal with the witness pair on failure.
std::size_t check_leibniz(const ExpandedPage& page, int n_min, int n_max);

struct Candidate {
    int r = 2;
    std::string source;
    Exponents target;
    std::string target_label;
};

/// Generator -> monomial pairs with bidegree (r, 1 - r) and weight 0, targets
/// inside the verification rows; permanent generators are neither sources nor
/// (as a bare generator) targets.
std::vector<Candidate> admissible_differentials(const PagePresentation& p, int r);

struct AbutmentSpec {
    /// dims per total degree in [n_min, n_max] (missing degrees mean 0).
    std::map<int, std::size_t> dims;
    int n_min = 0;
    int n_max = 0;
    /// If nonzero, every surviving class must have weight divisible by it.
    int weight_divisor = 0;
};

struct Pattern {
    std::vector<Assignment> assignments;
    std::map<int, std::size_t> e_infinity;  // per total degree
    std::string describe(const PagePresentation& p) const;
};

struct SearchStats {
    std::size_t branches = 0;
    std::size_t pruned_dimension = 0;
    std::size_t pruned_square = 0;
    std::size_t pruned_redundant = 0;
};

struct SearchReport {
    std::vector<Pattern> patterns;
    bool unique = false;
    SearchStats stats;
    /// Closest misses (by L1 distance of E_infinity to the abutment) when
    /// nothing matched.
    std::vector<Pattern> near_misses;
};

/// Exhaustive search over assignments of the admissible candidates on pages
/// p.r .. r_max (scalars in {0, 1}), on top of the declared differentials.
/// Throws AbutmentUnreachable (message lists the closest misses) when no
/// pattern matches, Resource when a page has more than 20 candidates or the
/// branch budget is exhausted.
SearchReport forced_search(const PagePresentation& p, const AbutmentSpec& abutment, int r_max,
                           std::size_t branch_budget = 100000);

/// E_2 page of the Tate spectral sequence: HH_n placed in every even column,
/// d_2 induced by B on homology.
struct TatePage {
    GradedSpace e2;   // (deg = n, wedge 0, weight): HH_n, one column
    GradedSpace e3;
    std::map<std::pair<int, int>, FpMatrix> d2;  // (n, w): HH_{n,w} -> HH_{n+1,w}
    bool degenerate = true;                      // all d_2 vanish
};

/// From a Hochschild complex: d_2 = [B] on homology, degrees [w.deg_min, w.deg_max].
TatePage tate_page(const HochschildComplex& c, const Window& w);
/// From a dimension table alone: d_2 is forced to vanish wherever its source
/// or target is zero; throws Precondition if that does not decide every d_2.
TatePage tate_page(const GradedSpace& hh);

}  // namespace stackcoh
