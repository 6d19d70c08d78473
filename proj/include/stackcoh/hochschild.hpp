#pragma once

// Hochschild homology of augmented commutative algebras through the
// normalized Hochschild complex, the Connes operator, and windowed HC^-/HP
// from the (b, B)-bicomplex.

#include "stackcoh/algebra.hpp"
#include "stackcoh/graded.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace stackcoh {

/// Normalized Hochschild chains C_n = A (x) Ā^{(x)n} in degrees 0..top,
/// basis tuples a0[a1|...|an] of algebra basis indices, sorted by weight.
/// With `weight_max` only tuples of weight <= weight_max are kept; since b and
/// B preserve weight this is a direct summand.
class HochschildComplex {
public:
    HochschildComplex(const PresentedAlgebra& a, int top, std::optional<int> weight_max = std::nullopt,
                      std::size_t budget = 1000000);

    std::uint32_t prime() const { return alg_.prime(); }
    const PresentedAlgebra& algebra() const { return alg_; }
    int top() const { return top_; }
    const std::optional<int>& weight_max() const { return weight_max_; }

    std::size_t dim(int n) const { return tuples_[n].size(); }
    int weight(int n, std::size_t i) const { return weights_[n][i]; }
    std::string label(int n, std::size_t i) const;
    std::vector<int> weights_in(int n) const;
    /// Indices of degree-n basis tuples of weight w, in basis order.
    const std::vector<std::size_t>& block(int n, int w) const;
    /// Position of basis element i inside its weight block.
    std::size_t position(int n, std::size_t i) const { return pos_[n][i]; }

    /// b of basis element i of C_n, in C_{n-1} indices (n >= 1).
    SparseVec b_column(int n, std::size_t i) const;
    /// B of basis element i of C_n, in C_{n+1} indices (n < top).
    SparseVec B_column(int n, std::size_t i) const;
    /// Dense blocks of b : C_n -> C_{n-1} and B : C_n -> C_{n+1} on weight w,
    /// rows and columns in block order.
    FpMatrix b_block(int n, int w) const;
    FpMatrix B_block(int n, int w) const;
    /// Whole maps as dense matrices (small models only).
    FpMatrix b_matrix(int n) const;
    FpMatrix B_matrix(int n) const;

private:
    std::optional<std::size_t> find(int n, const std::vector<std::size_t>& tuple) const;
    std::uint64_t encode(const std::vector<std::size_t>& tuple) const;
    void accumulate(std::unordered_map<std::uint32_t, std::int64_t>& acc, int n, std::vector<std::size_t>& tuple,
                    std::int64_t coeff) const;
    SparseVec finish(std::unordered_map<std::uint32_t, std::int64_t>& acc) const;

    PresentedAlgebra alg_;
    int top_;
    std::optional<int> weight_max_;
    std::vector<std::vector<std::vector<std::size_t>>> tuples_;
    std::vector<std::vector<int>> weights_;
    std::vector<std::vector<std::size_t>> pos_;
    std::vector<std::map<int, std::vector<std::size_t>>> blocks_;
    std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> index_;
};

struct HHResult {
    std::uint32_t prime = 2;
    /// Cells at (n, 0, weight); labels carry representative cycles when asked.
    GradedSpace table;

    std::map<int, std::size_t> dims() const { return table.dims_by_degree(); }
};

/// HH_n over the degree window of `w` (deg_min >= 0), split by weight.  Ranks
/// come from sparse elimination; representatives are dense and limited to
/// small weight blocks.
HHResult hochschild_bar(const PresentedAlgebra& a, const Window& w, bool representatives = false,
                        std::size_t budget = 1000000);

/// HH of k[t]/(t^n), t of weight `weight`, from the 2-periodic bimodule
/// resolution: HH is A in degree 0, ker(x n t^{n-1}) in even degrees > 0 and
/// coker in odd degrees.
HHResult hochschild_small(std::uint32_t p, std::size_t n, int weight, const Window& w);

/// Homology classes of C_* in degree n and weight w.
struct HomologyBasis {
    int deg = 0;
    int weight = 0;
    std::vector<std::size_t> chain_index;  // block(n, w)
    std::vector<Vec> cycles;               // over the block
    std::vector<std::string> labels;

    /// Coordinates of a cycle (over the block) in the class basis.
    Vec classify(const Vec& cycle) const;

    SubspaceBasis quotient{2, 0};
    std::size_t boundary_rank = 0;
};

HomologyBasis homology_basis(const HochschildComplex& c, int n, int w);

/// B on homology, HH_{n,w} -> HH_{n+1,w}, in the bases of homology_basis.
FpMatrix connes_on_homology(const HochschildComplex& c, int n, int w);

enum class CyclicVariant { Negative, Periodic };

/// HC^- or HP in homological degrees of `w`, from the (b, B)-bicomplex with
/// u-power columns [0, columns] (HC^-) or [-columns, columns] (HP).  Degrees
/// whose dims change when one more column is added are marked indeterminate.
GradedSpace cyclic_window(const PresentedAlgebra& a, CyclicVariant v, const Window& w, int columns,
                          std::size_t budget = 200000);

/// The p-power map on HH_0(A) = A.
FpMatrix frobenius_on_HH0(const PresentedAlgebra& a);

}  // namespace stackcoh
