#pragma once

// Cohomology of BG for G a product of copies of μ_p and α_p: Hodge rings,
// de Rham and crystalline cohomology, TP bookkeeping, and the spectral
// sequence presentations used to force differentials.

#include "stackcoh/algebra.hpp"
#include "stackcoh/graded.hpp"
#include "stackcoh/monomial.hpp"
#include "stackcoh/spectral.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stackcoh {

enum class GroupFactor { Mu, Alpha };

struct GroupScheme {
    std::uint32_t p = 2;
    std::vector<GroupFactor> factors;

    /// "mu_3", "alpha_2 x mu_2", ...
    std::string name() const;
    HopfAlgebra hopf() const;
    /// k[x]/(x^p - 1) for μ_p, k[t]/(t^p) (t of weight 1) for α_p.
    static Hypersurface presentation(std::uint32_t p, GroupFactor f);
    bool all_mu() const;
    GroupScheme factor(std::size_t i) const { return GroupScheme{p, {factors.at(i)}}; }

    /// Parses "mu_p", "alpha_p" and products joined by 'x' or '*'.
    static GroupScheme parse(std::uint32_t p, const std::string& text);
};

GroupScheme group_mu(std::uint32_t p);
GroupScheme group_alpha(std::uint32_t p);
GroupScheme group_product(const GroupScheme& a, const GroupScheme& b);

/// H^s(BG, ∧^t L) with generators placed at (s, t).
struct HodgeRing {
    std::uint32_t prime = 2;
    std::vector<Generator> gens;
    std::vector<std::string> relations;
    /// Cells at (deg = s, wedge = t, weight), s, t in [0, max_deg].
    GradedSpace table;
    /// Some polynomial generator on an H^1(L) line reaches exponent p in the
    /// window: Sym and Γ agree there as dimension tables but not as rings.
    bool divided_power_window = false;

    std::string presentation() const;
};

HodgeRing hodge_BG(const GroupScheme& g, int max_deg);

struct DeRhamResult {
    /// Cells at (deg, 0, weight), degrees [0, max_deg].
    GradedSpace table;
    /// "splitting", "hodge-de-rham search" or "kunneth".
    std::string route;
    /// Differentials found by the search route.
    std::vector<std::string> differentials;
    std::vector<Generator> ring;
};

/// Throws AbutmentUnreachable listing every consistent pattern when the search
/// does not single one out.
DeRhamResult derham_BG(const GroupScheme& g, int max_deg);
/// The same answer for B α_p through the conjugate spectral sequence.
DeRhamResult derham_conjugate(std::uint32_t p, int max_deg);

/// Z/p^m-module ⊕ Z/p^{e_i}; e == m is a free summand.
struct TorsionModule {
    int m = 2;
    std::vector<int> exponents;  // descending

    bool zero() const { return exponents.empty(); }
    std::size_t free_rank() const;
    /// dim over F_p of M/p.
    std::size_t mod_p_dim() const { return exponents.size(); }
    /// dim of the p-torsion of the corresponding W-module (free summands
    /// contribute nothing).
    std::size_t p_torsion_dim() const { return exponents.size() - free_rank(); }
    /// "0", "Z/p^3", "Z/p^3 + Z/p"
    std::string to_string() const;
    friend bool operator==(const TorsionModule&, const TorsionModule&) = default;
};

struct CrysResult {
    std::uint32_t prime = 2;
    int m = 2;
    std::map<int, TorsionModule> groups;  // degrees 0 .. max_deg
    bool m_stable = true;
};

/// Crystalline cohomology truncated to Z/p^m, m >= 2.
CrysResult crys_BG(const GroupScheme& g, int m, int max_deg);

/// dim(H^n ⊗ Z/p) + dim(H^{n+1}[p]) == dim H^n_dR for n < max_deg; returns
/// the first degree where it fails.
std::optional<int> crys_mod_p_mismatch(const CrysResult& c, const std::map<int, std::size_t>& derham);

struct TPAbutment {
    bool odd_classes = false;
    bool torsion_free = true;
};

struct TPReport {
    bool degenerate = true;
    /// Unset when the bookkeeping does not decide it.
    std::optional<bool> split;
    std::vector<int> odd_degrees;
    GradedSpace e2;  // (crystalline degree, 0, 0), labels are the modules
    std::string reason;
};

/// Throws Precondition when the declared abutment contradicts the page.
TPReport tp_accounting(const GroupScheme& g, int max_deg, int m = 3, TPAbutment abutment = {});

/// H^*(BPGL_n, Ω^1) as the fiber of x n on k[-1].
GradedSpace pgl_omega1(std::uint32_t n, std::uint32_t p);

/// A page together with the abutment used to force its differentials.
struct ForcedScenario {
    PagePresentation page;
    AbutmentSpec abutment;
    int r_max = 2;
};

/// HKR page H^s(∧^{-t} L) => HH, abutment through total degree max_deg.
ForcedScenario hkr_scenario(const GroupScheme& g, int max_deg);
/// Hodge-de Rham page of B α_p with wedge as filtration.
ForcedScenario hodge_de_rham_scenario(std::uint32_t p, int max_deg);
/// Conjugate page of B α_p, weights multiplied by p.
ForcedScenario conjugate_scenario(std::uint32_t p, int max_deg);
/// de Rham-HP page E(d) P(c) P(t^±) for μ_p, E(α') P(β') P(t^±) for α_p.
ForcedScenario derham_hp_scenario(const GroupScheme& g, int max_deg);

}  // namespace stackcoh
