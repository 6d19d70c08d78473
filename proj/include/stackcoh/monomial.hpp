#pragma once

// Free graded-commutative algebras on named generators: monomial bookkeeping
// shared by the Ext, Hodge and spectral-sequence layers.

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace stackcoh {

enum class GenKind { Exterior, Polynomial, Laurent };

const char* to_string(GenKind k);

/// A generator in bidegree (s, t) with a weight.  `truncation` > 0 imposes
/// x^truncation = 0 on polynomial generators.
struct Generator {
    std::string name;
    int s = 0;
    int t = 0;
    int weight = 0;
    GenKind kind = GenKind::Polynomial;
    int truncation = 0;

    int total() const { return s + t; }
    bool odd() const { return (s + t) % 2 != 0; }
};

using Exponents = std::vector<int>;

struct MonomialInfo {
    int s = 0;
    int t = 0;
    int weight = 0;
};

MonomialInfo monomial_info(const std::vector<Generator>& gens, const Exponents& e);
std::string monomial_label(const std::vector<Generator>& gens, const Exponents& e);

/// Checks the Koszul convention: odd generators are exterior (except that a
/// p = 2 odd polynomial generator is allowed when `allow_odd_polynomial`).
void check_parity(const std::vector<Generator>& gens, bool allow_odd_polynomial);

/// Enumerates all monomials with s in [s_min, s_max] and total degree in
/// [n_min, n_max] (and weight <= weight_max if given).  Laurent generators are
/// not allowed here.  Each generator must have s > 0 or total > 0 so the
/// enumeration is finite; otherwise throws Precondition naming it.
std::vector<Exponents> enumerate_monomials(const std::vector<Generator>& gens, int n_min, int n_max,
                                           int s_min, int s_max, const int* weight_max = nullptr);

/// Dimension count per (total degree, weight) for monomials with s <= s_max.
std::map<std::pair<int, int>, std::size_t> monomial_counts(const std::vector<Generator>& gens, int n_min, int n_max,
                                                           int s_max);

}  // namespace stackcoh
