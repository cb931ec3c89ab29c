#pragma once

/**
 * @file haagerup.hpp
 * @brief The interpolation family φ_α(g) = ⟨π_α(g)δ_e, δ_e⟩ on V.
 *
 * The isometry R_α sends δ_e to αδ_{e,e} + βδ_{a,b} (β = √(1−α²)) and δ_w to
 * δ_{aw,bw} for w ≠ e. For a tree t, Φ_α(t)δ_e has one term per prefix z of
 * t: α^{|z|−1} β^{m(t,z)} δ_{P(t,z)}. For g = range/domain with leaf
 * bijection ρ, φ_α(g) sums α^{|z|+|r|−2} β^{m(t,z)+m(s,r)} over prefix pairs
 * (z of the range, r of the domain) whose permuted word tuples agree.
 *
 * All values are exact. Nonzero terms pair prefixes with equal m, so φ_α(g)
 * lands in ℤ[α]; `phi_alpha` checks this and throws std::logic_error otherwise.
 */

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "thompson/forest.hpp"
#include "thompson/group.hpp"
#include "thompson/partition.hpp"
#include "thompson/ring.hpp"

namespace thompson {

/// Serial kernels are the reference; parallel ones use OpenMP when built with it.
enum class Execution { serial, parallel };

struct ExpansionTerm {
    RingElem coefficient;
    WordTuple words;
    std::size_t prefix_leaves = 1;
    std::size_t internal_leaves = 0;
};

/// Φ_α(t)δ_e, one term per prefix of t, in `subrooted_trees` order.
std::vector<ExpansionTerm> phi_expansion(const Tree& t);

/// A nonzero (z, r) term of the double sum.
struct PhiTerm {
    std::size_t range_prefix = 0;   // index into subrooted_trees(range)
    std::size_t domain_prefix = 0;  // index into subrooted_trees(domain)
    std::size_t range_internal = 0;   // m(t, z)
    std::size_t domain_internal = 0;  // m(s, r)
    std::size_t alpha_degree = 0;     // |z| + |r| - 2
};

/// Nonzero terms in (z, r) lexicographic order. Works on any representative.
std::vector<PhiTerm> phi_terms(const TreePair& g, Execution exec = Execution::parallel);

RingElem phi_alpha(const TreePair& g, Execution exec = Execution::parallel);
RingElem phi_alpha(const VElement& g, Execution exec = Execution::parallel);

/// ⟨θ(ρ)Φ(s)δ_e, Φ(t)δ_e⟩ from the two expansions, joined on word tuples.
RingElem vacuum_coefficient(const TreePair& g);

/// Exact φ_α(g) at rational α; requires 0 <= α <= 1.
mpq_class phi_alpha_eval(const VElement& g, const mpq_class& alpha);

/// R_α restricted to the words of length <= max_length (index 0 is e).
/// Columns for words of maximal length are truncated, so it is not an isometry.
struct WordTensor {
    RTensor<RingElem> tensor;
    std::vector<Word> words;
    std::size_t index_of(const Word& w) const;
};
WordTensor word_tensor(std::size_t max_length);

// Farley's cocycle comparison -----------------------------------------------------

/// ‖c(g)‖² = 2n − 2 for the reduced pair with n leaves.
std::size_t farley_norm(const VElement& g);

/// exp(−β)^{exponent}, kept symbolic in the base.
struct FarleyValue {
    mpq_class beta;
    std::size_t exponent = 0;
    double approx() const;
};
FarleyValue farley_phi(const VElement& g, const mpq_class& beta);
/// φ_α(g) == α^{farley_norm(g)} as polynomials.
bool phi_matches_farley(const VElement& g);

// Positive definiteness -----------------------------------------------------------

using RationalMatrix = std::vector<std::vector<mpq_class>>;

struct PsdWitness {
    enum class Kind { negative_pivot, zero_pivot_coupling, asymmetric };
    Kind kind;
    std::size_t row = 0;
    std::size_t column = 0;
    mpq_class value;
};

struct LdltResult {
    bool is_psd = true;
    std::vector<std::size_t> pivot_order;
    std::vector<mpq_class> pivots;  // the diagonal of D in pivot order
    std::optional<PsdWitness> witness;
};

/// Exact LDLᵀ with symmetric (largest-diagonal) pivoting, ties to the lowest index.
LdltResult ldlt_psd(RationalMatrix m);

struct GramResult {
    RationalMatrix matrix;
    LdltResult factorization;
    bool is_psd() const { return factorization.is_psd; }
};

/// M_ij = φ_α(g_i⁻¹ g_j) and its PSD verdict.
GramResult gram_psd_check(std::span<const VElement> elements, const mpq_class& alpha,
                          Execution exec = Execution::parallel);

// Tables --------------------------------------------------------------------------

struct PhiRow {
    std::string element_id;
    std::size_t n_leaves = 0;
    mpq_class alpha;
    mpq_class phi;
};

struct ScanSummary {
    std::size_t n_leaves = 0;
    std::size_t count = 0;
    mpq_class expected;       // α^{2n−2}
    mpq_class max_deviation;  // max |φ_α(g) − α^{2n−2}|
    std::size_t polynomial_mismatches = 0;
};

struct ScanResult {
    std::vector<ScanSummary> summary;
    std::vector<PhiRow> rows;
};

inline constexpr std::size_t kScanBound = 7;

/// Every reduced affine pair (s, t, rotation) with at most max_leaves leaves.
ScanResult vanishing_scan(const mpq_class& alpha, std::size_t max_leaves,
                          Execution exec = Execution::parallel, std::size_t bound = kScanBound);

std::vector<PhiRow> phi_sweep(const VElement& g, std::span<const mpq_class> alphas);

/// element_id,n_leaves,alpha_num,alpha_den,phi_num,phi_den
void write_phi_csv(std::ostream& out, std::span<const PhiRow> rows);

}  // namespace thompson
