#pragma once

/**
 * @file forest.hpp
 * @brief Binary planar trees and forests.
 *
 * A tree is stored by its preorder code: 'c' for a caret (internal vertex),
 * 'l' for a leaf. The code determines the tree uniquely, so equality,
 * ordering and hashing are plain string operations.
 *
 * Leaves and roots are numbered from 1, left to right. A forest with n roots
 * and m leaves is a morphism n -> m; `compose(p, q)` stacks p on top of q,
 * attaching root i of p to leaf i of q.
 */

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace thompson {

class Tree {
public:
    /// The trivial tree (a single leaf).
    Tree();

    static Tree leaf() { return Tree(); }
    static Tree caret(const Tree& left, const Tree& right);
    /// Validates a preorder code over {'c','l'}; throws ParseError.
    static Tree from_preorder(std::string code);

    bool is_leaf() const { return code_.size() == 1; }
    Tree left() const;
    Tree right() const;

    std::size_t leaf_count() const { return leaves_; }
    std::size_t caret_count() const { return leaves_ - 1; }
    std::size_t depth() const { return depth_; }
    const std::string& preorder() const { return code_; }

    /// Depth of every leaf, left to right.
    std::vector<std::size_t> leaf_depths() const;

    /// Replace leaf i (1-based) by a caret.
    Tree split_leaf(std::size_t i) const;
    /// True when leaves i and i+1 hang from the same caret.
    bool leaves_form_caret(std::size_t i) const;
    /// Inverse of split_leaf: collapse the caret carrying leaves i, i+1.
    Tree remove_caret(std::size_t i) const;
    /// Graft `scions[k]` onto leaf k+1. Requires scions.size() == leaf_count().
    Tree graft(const std::vector<Tree>& scions) const;

    friend bool operator==(const Tree& a, const Tree& b) { return a.code_ == b.code_; }
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
        return a.code_ <=> b.code_;
    }

private:
    explicit Tree(std::string code);
    std::string code_;
    std::size_t leaves_ = 1;
    std::size_t depth_ = 0;
};

/// Words over {a,b}. The leftmost character is the last letter appended.
using Word = std::string;
using WordTuple = std::vector<Word>;

class Forest {
public:
    Forest() : trees_{Tree()} {}
    explicit Forest(std::vector<Tree> trees);
    static Forest trivial(std::size_t roots);
    static Forest of(const Tree& t) { return Forest({t}); }

    std::size_t root_count() const { return trees_.size(); }
    std::size_t leaf_count() const;
    const std::vector<Tree>& trees() const { return trees_; }
    const Tree& tree(std::size_t i) const { return trees_.at(i - 1); }  // 1-based
    std::size_t nontrivial_count() const;
    bool is_trivial() const { return nontrivial_count() == 0; }

    friend bool operator==(const Forest&, const Forest&) = default;

private:
    std::vector<Tree> trees_;
};

/// f_{i,n}: n roots, all trivial except root i which carries one caret.
Forest elementary_forest(std::size_t i, std::size_t n);

/// p ∘ q. Requires p.root_count() == q.leaf_count().
Forest compose(const Forest& p, const Forest& q);
Tree compose(const Forest& p, const Tree& q);

/// Complete binary tree with 2^n leaves.
Tree complete_tree(std::size_t n);

/// Decompose a tree into elementary forests, innermost first: the tree equals
/// f_{i_k} ∘ ... ∘ f_{i_1} applied to a leaf for the returned (i_1, ..., i_k).
std::vector<std::size_t> elementary_decomposition(const Tree& t);

/// Least common refinement: the smallest tree having both a and b as prefixes.
Tree tree_union(const Tree& a, const Tree& b);

/// True when `prefix` is a rooted subtree of `whole` sharing its root.
bool is_prefix(const Tree& prefix, const Tree& whole);

/// The forest f with compose(f, prefix) == whole. Throws ContractError when
/// `prefix` is not a prefix of `whole`.
Forest residual_forest(const Tree& whole, const Tree& prefix);

WordTuple path_words(const Forest& f);
WordTuple path_words(const Tree& t);

/// A subrooted tree z of t together with m(t,z) and the words P(t,z).
struct Prefix {
    Tree tree;
    std::size_t internal_leaves = 0;  // leaves of z that are not leaves of t
    WordTuple words;                  // one entry per leaf of t
    Forest residual;                  // residual ∘ tree == t
};

/// All prefixes of t: trivial subtree first, then by increasing leaf count;
/// within a leaf count, the order of the recursive expansion that varies the
/// right subtree fastest.
std::vector<Prefix> subrooted_trees(const Tree& t);

/// Default cap on `enumerate_trees`; Catalan(13) trees at the cap.
inline constexpr std::size_t kEnumerationBound = 14;

/// All trees with n leaves in a fixed order (left subtree size ascending,
/// then left tree order, then right tree order). Count = Catalan(n-1).
std::vector<Tree> enumerate_trees(std::size_t n, std::size_t bound = kEnumerationBound);

/// All forests with m leaves (any number of roots), fixed order.
std::vector<Forest> enumerate_forests(std::size_t m, std::size_t bound = kEnumerationBound);

// Text formats ---------------------------------------------------------------

enum class TreeFormat { parenthesized, product };

/// Parses "." / "(L R)" / "fI fJ ..." (product read right to left) or a
/// parenthesized product "(fI fJ ...)". Throws ParseError.
Tree parse_tree(std::string_view text);
/// Forests are ';'-separated tree lists.
Forest parse_forest(std::string_view text);

std::string to_string(const Tree& t, TreeFormat format = TreeFormat::parenthesized);
std::string to_string(const Forest& f, TreeFormat format = TreeFormat::parenthesized);
/// Words print as plain strings, the empty word as "e".
std::string to_string(const WordTuple& words);

}  // namespace thompson

template <>
struct std::hash<thompson::Tree> {
    std::size_t operator()(const thompson::Tree& t) const noexcept {
        return std::hash<std::string>{}(t.preorder());
    }
};
