#pragma once

// Finite-dimensional weighted commutative algebras given by structure
// constants, Hopf structures on them, and the hypersurface toolkit
// (cotangent complex, Kähler differentials, Frobenius).

#include "stackcoh/fp_linalg.hpp"
#include "stackcoh/graded.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stackcoh {

class PresentedAlgebra {
public:
    PresentedAlgebra() = default;
    /// mult[i * n + j] is the coordinate vector of e_i e_j.
    PresentedAlgebra(std::uint32_t p, std::vector<std::string> labels, std::vector<int> weights, Vec unit,
                     std::vector<Vec> mult, std::optional<Vec> augmentation);

    std::uint32_t prime() const { return p_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<int>& weights() const { return weights_; }
    const Vec& unit() const { return unit_; }
    const Vec& product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
    const std::vector<Vec>& structure_constants() const { return mult_; }
    const std::optional<Vec>& augmentation() const { return aug_; }

    Vec basis(std::size_t i) const;
    Vec multiply(const Vec& a, const Vec& b) const;
    Vec power(const Vec& a, std::uint64_t e) const;
    /// Matrix of x -> a x.
    FpMatrix left_multiplication(const Vec& a) const;
    Entry augment(const Vec& a) const;
    /// Weight of a vector if it is homogeneous (the zero vector has none).
    std::optional<int> homogeneous_weight(const Vec& a) const;
    int max_weight() const;

    bool commutative() const;
    /// Associativity, unitality, weight additivity and multiplicativity of the
    /// augmentation; throws Precondition naming the failing basis triple.
    void verify() const;

    /// Same algebra in the basis given by the columns of the invertible matrix
    /// `basis`; the new basis vectors must be homogeneous.
    PresentedAlgebra rebase(const FpMatrix& basis, std::vector<std::string> labels) const;

private:
    std::uint32_t p_ = 2;
    std::vector<std::string> labels_;
    std::vector<int> weights_;
    Vec unit_;
    std::vector<Vec> mult_;
    std::optional<Vec> aug_;
};

struct HopfData {
    /// comult[k][i * n + j] is the coefficient of e_i (x) e_j in Δ(e_k).
    std::vector<Vec> comult;
    Vec counit;
    /// Column j is S(e_j).
    FpMatrix antipode;
};

struct HopfAlgebra {
    PresentedAlgebra algebra;
    HopfData hopf;

    bool cocommutative() const;
    /// All bialgebra and antipode identities; throws Precondition on failure.
    void verify() const;
};

std::vector<std::vector<Entry>> binomials_mod(std::uint32_t p, std::size_t n);

/// k[t]/(t^n), weights i * weight_of_t, augmentation t -> 0.
PresentedAlgebra truncated_poly(std::uint32_t p, std::size_t n, int weight_of_t, const std::string& var = "t");
/// O(μ_p) = k[x]/(x^p - 1), x grouplike.
HopfAlgebra mu_p(std::uint32_t p, const std::string& var = "x");
/// O(α_p) = k[t]/(t^p), t primitive of weight 1.
HopfAlgebra alpha_p(std::uint32_t p, const std::string& var = "t");

PresentedAlgebra tensor(const PresentedAlgebra& a, const PresentedAlgebra& b);
HopfAlgebra tensor(const HopfAlgebra& a, const HopfAlgebra& b);

/// Linear dual with transposed structure constants and negated weights.
HopfAlgebra cartier_dual(const HopfAlgebra& h);

/// Basis {1} ∪ (basis of ker ε).  Returns the input if already adapted.
PresentedAlgebra augmentation_adapted(const PresentedAlgebra& a);

/// Matrix of x -> x^p.
FpMatrix frobenius_on_algebra(const PresentedAlgebra& a);

/// Dimension of the nilradical, computed as ker F^m with p^m >= dim.
std::size_t nilradical_dim(const PresentedAlgebra& a);
bool is_semisimple(const PresentedAlgebra& a);

/// The block A e of an augmented commutative algebra, where e is the
/// idempotent with ε(e) = 1 annihilating the other idempotents.  The block is
/// local, has unit e and carries the restricted augmentation.
PresentedAlgebra local_block(const PresentedAlgebra& a);

/// Checks that the adjoint coaction x -> Σ x(2) (x) S(x(1)) x(3) is x (x) 1;
/// throws Unsupported otherwise.
void check_trivial_adjoint_coaction(const HopfAlgebra& h);

/// k[t]/(f) with f monic, coefficients listed from the constant term up.
struct Hypersurface {
    std::uint32_t p = 2;
    std::vector<std::int64_t> f;
    int weight = 0;
    std::string var = "t";
};

/// Basis 1, t, ..., t^{deg f - 1}; augmentation at the smallest root of f in
/// F_p if there is one.  Nonzero weight requires f homogeneous.
PresentedAlgebra quotient_algebra(const Hypersurface& h);

struct TwoTermCotangent {
    PresentedAlgebra ring;
    /// Source (f)/(f^2) in degree -1 and target R dt in degree 0, as F_p spaces.
    Term source;
    Term target;
    FpMatrix connecting;
    /// The map on fibers at the augmentation, k -> k.
    Entry fiber_map = 0;
    int source_weight = 0;
    int target_weight = 0;

    /// Cohomology of the whole two-term complex (degrees -1, 0) with weights.
    GradedSpace cohomology() const;
    /// The fiber k -> k at the augmentation as a complex in degrees -1, 0.
    CochainComplex colie() const;
};

TwoTermCotangent lci_cotangent(const Hypersurface& h);

/// A class in Ω¹ = R dt / f'(t) R dt, stored as the normal form of its
/// coefficient of dt in the monomial basis.
struct KaehlerForm {
    Vec coeffs;
    std::string label;
    friend bool operator==(const KaehlerForm& a, const KaehlerForm& b) { return a.coeffs == b.coeffs; }
};

KaehlerForm kaehler_d(const Hypersurface& h, const Vec& u);
/// u^{-1} du; throws Precondition if u is not a unit.
KaehlerForm dlog(const Hypersurface& h, const Vec& u);
KaehlerForm add_forms(const Hypersurface& h, const KaehlerForm& a, const KaehlerForm& b);

}  // namespace stackcoh
