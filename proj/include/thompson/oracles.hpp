#pragma once

/**
 * @file oracles.hpp
 * @brief Exhaustive and randomized checks of the combinatorial facts the
 * representation engines rely on.
 *
 * Every check returns a report; a nonzero violation count is a defect.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thompson/group.hpp"
#include "thompson/haagerup.hpp"

namespace thompson {

struct OracleReport {
    std::string check;
    std::size_t bound = 0;
    std::size_t instances = 0;
    std::size_t violations = 0;
    std::vector<std::string> samples;  // descriptions of the first few violations
};

inline constexpr std::size_t kOracleBound = 8;

/// No permutation carries P(s) onto P(t) unless s = t and the permutation is trivial.
/// Decided by pairwise distinctness of the entries of P(t) plus distinctness of
/// the sorted word multisets across trees. instances = ordered tree pairs.
OracleReport check_word_injectivity(std::size_t max_leaves, Execution exec = Execution::parallel,
                                    std::size_t bound = kOracleBound);

/// For forests p, q with m leaves and a rotation σ with σ(P(p)) = P(q): p and
/// q have the same root count and their trees agree up to a cyclic shift.
/// instances = (p, q, σ) triples examined.
OracleReport check_cyclic_forest_lemma(std::size_t max_leaves, Execution exec = Execution::parallel,
                                       std::size_t bound = kOracleBound);

/// Every nonzero (z, r) term of φ_α pairs prefixes with m(t,z) = m(s,r).
/// instances = nonzero terms seen.
OracleReport check_term_parity(std::span<const VElement> sample, Execution exec = Execution::parallel);

/// Random products are expanded into unreduced pairs and reduced again in a
/// random order; the result must be the canonical form and act identically.
/// The canonical form must also admit no cancellation of one caret pair that
/// still represents the same map.
OracleReport check_reduction_soundness(std::size_t samples, std::uint64_t seed);

/// All reduced elements with exactly n leaves (every tree pair, every permutation).
std::vector<VElement> all_elements(std::size_t n);

/// PL maps agree on the cells of a common refinement (two points per cell)
/// and on the grid k/2^grid_exponent.
bool pl_equal(const TreePair& a, const TreePair& b, unsigned grid_exponent = 10);

/// A forest with one random tree per root; each tree gets up to `max_carets` carets.
Forest random_forest(std::mt19937_64& rng, std::size_t roots, std::size_t max_carets);

}  // namespace thompson
