#pragma once

// Ext_A(k, k) over finite-dimensional augmented commutative algebras via
// explicit free resolutions, with Yoneda products.

#include "stackcoh/algebra.hpp"
#include "stackcoh/graded.hpp"
#include "stackcoh/monomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stackcoh {

/// Free resolution P_n = A^{r_n} of the trivial module k, P_0 = A.
/// d[n][i][j] is the coefficient (an element of A) of generator i of P_{n-1}
/// in d(generator j of P_n); d[0] is empty.
struct FreeResolution {
    PresentedAlgebra algebra;
    std::vector<std::vector<int>> gen_weights;
    std::vector<std::vector<std::vector<Vec>>> d;

    std::size_t length() const { return gen_weights.size() - 1; }
    std::size_t rank(std::size_t n) const { return gen_weights[n].size(); }
    /// d_n as an F_p matrix; coordinate (j, b) of P_n has index j * dim A + b.
    FpMatrix expanded(std::size_t n) const;
    /// Weight of every F_p coordinate of P_n.
    std::vector<int> coordinate_weights(std::size_t n) const;
    /// d^2 = 0, H_0 = k and exactness in degrees 1 .. length()-1; throws
    /// Internal naming the first failing degree.
    void check_exact() const;
};

/// Truncated polynomial algebra k[s]/(s^n) presented by its generator: the
/// maps alternate between x s and x s^{n-1}.
FreeResolution periodic_resolution(const PresentedAlgebra& a, std::size_t length);

/// Minimal resolution of k over a local augmented algebra, generators chosen
/// weight by weight as complements of (radical) x (kernel).
FreeResolution minimal_resolution(const PresentedAlgebra& a, std::size_t length);

/// Normalized bar resolution B_n = A (x) Ā^{(x)n}, generators [a1|...|an].
/// Throws Resource when some degree would have more than `budget` generators.
FreeResolution bar_resolution_oracle(const PresentedAlgebra& a, std::size_t length, std::size_t budget = 4096);

struct ExtGenerator {
    std::string name;
    int deg = 0;
    int weight = 0;
    GenKind kind = GenKind::Polynomial;
    Vec cls;
};

class ExtRing {
public:
    ExtRing(FreeResolution res, int max_deg);

    std::uint32_t prime() const { return res_.algebra.prime(); }
    int max_deg() const { return max_deg_; }
    std::size_t dim(int n) const { return basis_[n].size(); }
    int weight(int n, std::size_t i) const { return weights_[n][i]; }
    const FreeResolution& resolution() const { return res_; }

    /// Yoneda product of classes given in basis coordinates; needs a + b <= max_deg.
    Vec product(int a, const Vec& x, int b, const Vec& y) const;
    Vec unit_class(int n, std::size_t i) const;

    /// Extracts indecomposable generators through degree max_deg, named in
    /// order from `names` (falling back to x<deg>_<i>), and classifies each as
    /// exterior (g^2 = 0) or polynomial.
    void find_generators(const std::vector<std::string>& names = {});
    const std::vector<ExtGenerator>& generators() const { return gens_; }
    /// True when the dimension table agrees with the free graded-commutative
    /// algebra on the generators, through max_deg.
    bool free_on_generators() const;
    std::vector<Generator> generator_list() const;

    /// Dimension table at (deg, wedge 0, weight), labelled by monomials when
    /// the ring is free on its generators.
    GradedSpace table() const;

private:
    Vec cocycle(int n, const Vec& coords) const;
    Vec classify(int n, const Vec& cocycle) const;

    Vec lift_step(std::size_t j, const Vec& rhs) const;

    FreeResolution res_;
    int max_deg_;
    std::vector<FpMatrix> expanded_;                  // d_n over F_p
    std::vector<std::vector<int>> coord_weights_;
    std::vector<FpMatrix> coboundary_;                // δ^n : C^n -> C^{n+1}
    std::vector<std::vector<Vec>> basis_;             // cocycle representatives
    std::vector<std::vector<int>> weights_;
    std::vector<std::size_t> boundary_rank_;          // independent coboundaries inserted first
    std::vector<SubspaceBasis> quotient_;
    std::vector<ExtGenerator> gens_;
};

enum class ResolutionMethod { Auto, Periodic, Minimal };

/// Ext_A(k, k) through degree max_deg.  Non-local algebras are reduced to the
/// block at the augmentation first.
ExtRing ext_ring(const PresentedAlgebra& a, int max_deg, ResolutionMethod method = ResolutionMethod::Auto);

/// Ext dimensions per (degree, weight) from the normalized bar construction,
/// computed independently of any resolution.  Throws Resource when some
/// degree has more than `budget` bar tensors.
GradedSpace bar_ext_dims(const PresentedAlgebra& a, int max_deg, std::size_t budget = 1000000);

}  // namespace stackcoh
