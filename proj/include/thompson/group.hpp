#pragma once

/**
 * @file group.hpp
 * @brief Thompson's groups F ⊂ T ⊂ V as fractions of (symmetric) trees.
 *
 * An element is stored as a reduced tree pair: a domain tree, a range tree
 * and a bijection sending leaf k of the domain to leaf perm(k) of the range.
 * The element acts on [0,1) by mapping the dyadic cell of domain leaf k
 * affinely onto the cell of range leaf perm(k). In fraction notation the
 * stored triple is (range, id) / (domain, perm).
 *
 * Products follow the fraction rule t/s · s/r = t/r, so (g·h)(x) = g(h(x)).
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/forest.hpp"

namespace thompson {

/// Bijection of {1..n}; images()[k-1] is the image of k.
class Perm {
public:
    Perm() = default;
    /// Throws ContractError unless `images` is a permutation of 1..n.
    explicit Perm(std::vector<std::size_t> images);
    static Perm identity(std::size_t n);
    /// k ↦ ((k-1+shift) mod n)+1
    static Perm rotation(std::size_t n, std::size_t shift);
    static Perm transposition(std::size_t n, std::size_t i, std::size_t j);

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t k) const { return images_[k - 1]; }
    const std::vector<std::size_t>& images() const { return images_; }

    Perm inverse() const;
    bool is_identity() const;
    /// The shift c when the permutation is a cyclic rotation.
    std::optional<std::size_t> rotation_shift() const;

    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;

private:
    std::vector<std::size_t> images_;
};

/// (a ∘ b)(k) = a(b(k)).
Perm operator*(const Perm& a, const Perm& b);

/// S(p, τ) for block sizes l_j of the trees of p: strand i of τ becomes
/// l_{τ(i)} parallel strands, mapping block i of τ(p) onto block τ(i) of p.
Perm inflate(const Perm& tau, std::span<const std::size_t> block_sizes);

/// A morphism of the symmetric forest category: forest then leaf permutation.
struct SymmetricForest {
    Forest forest;
    Perm perm;

    SymmetricForest(Forest f, Perm p);
    friend bool operator==(const SymmetricForest&, const SymmetricForest&) = default;
};

/// (p,σ) ∘ (q,τ) = (τ(p) ∘ q, σ S(p,τ)).
SymmetricForest compose_symmetric(const SymmetricForest& p, const SymmetricForest& q);

/// A tree pair that need not be reduced.
struct TreePair {
    Tree domain;
    Tree range;
    Perm perm;

    friend bool operator==(const TreePair&, const TreePair&) = default;
};

/// Throws ContractError when the leaf counts of the three parts disagree.
void check_arity(const TreePair& pair);

/// Positions i where the matched-caret pattern at domain leaves i,i+1 can be cancelled.
std::vector<std::size_t> reducible_positions(const TreePair& pair);
/// Cancel the matched caret at domain leaves i, i+1.
TreePair cancel_caret(const TreePair& pair, std::size_t i);
/// Cancel matched carets until none remains (leftmost first).
TreePair reduce(TreePair pair);
/// Same, picking a random reducible position at every step.
TreePair reduce(TreePair pair, std::mt19937_64& rng);

/// Refine the domain by the forest f (f has one root per domain leaf); the
/// range is refined so that the pair still denotes the same element.
TreePair expand_domain(const TreePair& pair, const Forest& f);
/// Refine the range by f (one root per range leaf).
TreePair expand_range(const TreePair& pair, const Forest& f);

enum class Subgroup { F, T_only, V_only };
std::string to_string(Subgroup s);

/// Canonical (reduced) element of V.
class VElement {
public:
    /// The identity.
    VElement() : pair_{Tree(), Tree(), Perm::identity(1)} {}

    const Tree& domain() const { return pair_.domain; }
    const Tree& range() const { return pair_.range; }
    const Perm& perm() const { return pair_.perm; }
    const TreePair& pair() const { return pair_; }
    std::size_t leaf_count() const { return pair_.domain.leaf_count(); }
    bool is_identity() const { return pair_.domain.is_leaf(); }

    friend VElement make_element(const TreePair& pair);
    friend bool operator==(const VElement&, const VElement&) = default;
    friend auto operator<=>(const VElement& a, const VElement& b) {
        if (auto c = a.pair_.domain <=> b.pair_.domain; c != 0) return c;
        if (auto c = a.pair_.range <=> b.pair_.range; c != 0) return c;
        return a.pair_.perm.images() <=> b.pair_.perm.images();
    }

private:
    explicit VElement(TreePair reduced) : pair_(std::move(reduced)) {}
    TreePair pair_;
};

VElement make_element(const TreePair& pair);
VElement make_element(const Tree& domain, const Tree& range, const Perm& perm);
bool is_reduced(const TreePair& pair);

VElement multiply(const VElement& g, const VElement& h);
VElement inverse(const VElement& g);
VElement commutator(const VElement& g, const VElement& h);  // g h g⁻¹ h⁻¹
Subgroup classify(const VElement& g);

/// Rewrite g with the given domain tree, which must refine g's domain.
TreePair with_domain(const VElement& g, const Tree& domain);

// Dyadic rationals ------------------------------------------------------------

/// numerator / 2^exponent in lowest terms.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t numerator, unsigned exponent);

    std::int64_t numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    /// Multiply by 2^shift (shift may be negative).
    Dyadic scaled(int shift) const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

private:
    std::int64_t num_ = 0;
    unsigned exp_ = 0;
};

/// Accepts "k/2^e", "k/m" with m a power of two, or an integer.
Dyadic parse_dyadic(std::string_view text);
std::string to_string(const Dyadic& d);

/// Left endpoints of the standard dyadic cells of a tree.
std::vector<Dyadic> cell_starts(const Tree& t);

/// Image of x under the PL action; requires 0 <= x < 1.
Dyadic eval_pl(const TreePair& g, const Dyadic& x);
Dyadic eval_pl(const VElement& g, const Dyadic& x);

// Named elements ----------------------------------------------------------------

/// Trees of the commutator construction: a, b, c, d, q.
Tree builtin_tree(std::string_view name);
/// Elements by name: g=a/b, h=c/d, k=a/q, x0, x1, rot (order-2 rotation),
/// rot3 (order-3 rotation of T), pi0 (a transposition in V).
VElement builtin_element(std::string_view name);
std::vector<std::string> builtin_element_names();

inline constexpr std::size_t kFamilyBound = 6;

/// (top)_n ∘ t_n / (bottom)_n ∘ t_n: 2^n copies of each tree over the complete tree.
VElement inflated_fraction(const Tree& top, const Tree& bottom, std::size_t n,
                           std::size_t bound = kFamilyBound);
VElement family_kn(std::size_t n, std::size_t bound = kFamilyBound);

/// s_n = (x_n • x_n) ∘ f_1 with x_n the left comb on n leaves.
Tree comb_pair_tree(std::size_t n);
/// The involution σ_n on 2n leaves: odd leaves of the first copy swap with
/// the same leaves of the second copy.
Perm comb_pair_involution(std::size_t n);
/// g_n = (s_n, σ_n) / (s_n, id).
VElement family_gn(std::size_t n);

// Random words ------------------------------------------------------------------

/// Product of `length` generators or their inverses drawn from x0, x1, rot, rot3, pi0.
VElement random_word(std::mt19937_64& rng, std::size_t length);
/// A non-identity product with word length uniform in 1..max_length.
VElement random_nonidentity(std::mt19937_64& rng, std::size_t max_length);

// Text --------------------------------------------------------------------------

/// "RANGE/DOMAIN~[i1,...,in]"; the "~[...]" part defaults to the identity.
/// A bare builtin element name is also accepted. Throws ParseError.
VElement parse_element(std::string_view text);
TreePair parse_pair(std::string_view text);
std::string to_literal(const TreePair& pair, TreeFormat format = TreeFormat::product);
std::string to_literal(const VElement& g, TreeFormat format = TreeFormat::product);
std::string to_string(const Perm& p);

}  // namespace thompson
