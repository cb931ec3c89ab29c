#pragma once

/**
 * @file kazhdan.hpp
 * @brief Coefficients of the shift representation built from R(ξ) = uξ ⊗ ζ.
 *
 * Here 𝔥 = ℓ²(ℤ) and u is the shift. Applying Φ(f) to an elementary tensor
 * keeps it elementary: every leaf carries u^k applied either to the input of
 * its root (all-left paths) or to ζ. Inner products of elementary tensors
 * factor leaf by leaf, so every coefficient below is a finite product of
 * overlaps ⟨u^a x, u^b y⟩ and is computed exactly.
 */

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "thompson/forest.hpp"
#include "thompson/group.hpp"

namespace thompson {

/// Finitely supported ℤ → ℚ, sorted by index, no stored zeros.
class SparseVec {
public:
    SparseVec() = default;
    explicit SparseVec(std::vector<std::pair<long, mpq_class>> entries);
    /// Characteristic function of {first, ..., first+count-1}.
    static SparseVec indicator(long first, std::size_t count);

    const std::vector<std::pair<long, mpq_class>>& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    mpq_class at(long index) const;
    /// u^k x: (u^k x)(i + k) = x(i).
    SparseVec shifted(long k) const;

    friend bool operator==(const SparseVec&, const SparseVec&) = default;

private:
    std::vector<std::pair<long, mpq_class>> entries_;
};

/// ⟨x, y⟩ for real vectors.
mpq_class inner(const SparseVec& x, const SparseVec& y);

/// raw / √divisor. Keeps 1/√h normalizations exact.
struct ScaledVec {
    SparseVec raw;
    mpq_class divisor = 1;

    /// x / ‖x‖.
    static ScaledVec normalized(SparseVec x);
};

/// ⟨u^a x, u^b y⟩; throws ContractError when the result is irrational.
mpq_class shifted_inner(const ScaledVec& x, long a, const ScaledVec& y, long b);

/// h(m) = 2 m 8^m
std::size_t zeta_support(std::size_t m);

inline constexpr std::size_t kZetaBound = 3;

/// ζ_m: the indicator of {1..h(m)} divided by √h(m).
ScaledVec zeta(std::size_t m, std::size_t bound = kZetaBound);

/// u^power applied to the input of root `root` or to ζ.
struct LeafSymbol {
    enum class Base { input, zeta };
    std::size_t power = 0;
    Base base = Base::zeta;
    std::size_t root = 0;  // 1-based, meaningful for inputs

    static LeafSymbol input(std::size_t root, std::size_t power = 0) { return {power, Base::input, root}; }
    static LeafSymbol zeta_power(std::size_t power) { return {power, Base::zeta, 0}; }
    friend bool operator==(const LeafSymbol&, const LeafSymbol&) = default;
};

/// Leaf components of Φ(f) applied to one abstract input per root.
std::vector<LeafSymbol> forest_apply_shift(const Forest& f);
/// Same, with the given symbol fed into each root.
std::vector<LeafSymbol> apply_shift(const Forest& f, std::span<const LeafSymbol> inputs);

/// C = ⟨uζ,ζ⟩²⟨ζ,u²ζ⟩, cross-checked against the leafwise pairing of Φ(q) and
/// Φ(a); throws std::logic_error if the two disagree.
mpq_class c_constant(const ScaledVec& zeta);

/// ⟨π(g)(level/ξ), level/η⟩ for elementary tensors ξ, η on the leaves of
/// `level`. The pairing happens on `pairing` when given (it must refine the
/// refined range and `level`), otherwise on their least common refinement.
mpq_class shift_coefficient(const VElement& g, const Tree& level, std::span<const ScaledVec> xi,
                            std::span<const ScaledVec> eta, const ScaledVec& zeta,
                            const std::optional<Tree>& pairing = std::nullopt);

/// ⟨π(k_n)ξ, ξ⟩ on the canonical k_n with ξ an elementary tensor over t_n.
mpq_class kn_coefficient(std::size_t n, const ScaledVec& zeta, std::span<const ScaledVec> xi);
/// The same quantity as ⟨Φ((q)_n)ξ, Φ((a)_n)ξ⟩, pairing the two forests directly.
mpq_class kn_coefficient_direct(std::size_t n, const ScaledVec& zeta, std::span<const ScaledVec> xi);
/// Π_i C·⟨ξ_i, ξ_i⟩.
mpq_class kn_expected(const ScaledVec& zeta, std::span<const ScaledVec> xi);

/// (1 − 8^{−m})^{4^m}
mpq_class almost_invariance_bound(std::size_t m);

struct AlmostInvariance {
    std::size_t m = 0;
    mpq_class coefficient;  // ⟨π(g)ξ_m, ξ_m⟩
    mpq_class bound;
    bool domain_fits = false;  // canonical domain depth <= m
    bool range_fits = false;   // refined range depth <= 2m
    bool satisfied = false;    // coefficient >= bound
    std::size_t pairing_leaves = 0;
    bool bound_applies() const { return domain_fits && range_fits; }
};

/// ⟨π(g)ξ_m, ξ_m⟩ with ξ_m = t_m / (ζ_m ⊗ ... ⊗ ζ_m). With `strict`, a domain
/// deeper than m or a refined range deeper than 2m is a ContractError.
AlmostInvariance almost_invariance(const VElement& g, std::size_t m, bool strict = false,
                                   std::size_t bound = kZetaBound);
/// The same coefficient paired through a chosen common refinement.
mpq_class almost_invariance_through(const VElement& g, std::size_t m, const Tree& pairing,
                                    std::size_t bound = kZetaBound);

}  // namespace thompson
