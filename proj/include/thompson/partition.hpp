#pragma once

/**
 * @file partition.hpp
 * @brief Matrix coefficients of Φ_R(f) as partition functions over forest states.
 *
 * A state assigns an index of I to every edge. The weight of a state is the
 * product over trivalent vertices of R_{in}^{left,right}; the coefficient
 * ⟨Φ(f) ξ_in, ξ_out⟩ sums the weights of the states matching the boundary.
 * Summation is done vertex by vertex from the leaves up, so internal edges
 * are contracted without listing states one by one.
 */

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "thompson/errors.hpp"
#include "thompson/forest.hpp"

namespace thompson {

/// Sparse 3-index tensor R_i^{j,k} over the index set {0, ..., size-1}.
template <class Scalar>
class RTensor {
public:
    struct Entry {
        std::size_t left;
        std::size_t right;
        Scalar value;
    };

    explicit RTensor(std::size_t index_count) : columns_(index_count) {}

    std::size_t index_count() const { return columns_.size(); }

    void set(std::size_t i, std::size_t j, std::size_t k, Scalar value) {
        check(i);
        check(j);
        check(k);
        for (auto& e : columns_[i]) {
            if (e.left == j && e.right == k) {
                e.value = std::move(value);
                return;
            }
        }
        columns_[i].push_back({j, k, std::move(value)});
    }

    const std::vector<Entry>& column(std::size_t i) const {
        check(i);
        return columns_[i];
    }

    /// Σ_{j,k} |R_i^{j,k}|² for one column (the scalars here are real).
    Scalar column_norm_squared(std::size_t i) const {
        Scalar total(0);
        for (const auto& e : column(i)) total += e.value * e.value;
        return total;
    }

    /// Every column has unit norm.
    bool is_isometry() const {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            if (!(column_norm_squared(i) == Scalar(1))) return false;
        return true;
    }

    /// Throws ContractError unless `is_isometry()`.
    void require_isometry() const {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            if (!(column_norm_squared(i) == Scalar(1)))
                throw ContractError("R tensor column " + std::to_string(i) + " does not have unit norm");
    }

private:
    void check(std::size_t i) const {
        if (i >= columns_.size())
            throw ContractError("index " + std::to_string(i) + " outside the index set of size " +
                                std::to_string(columns_.size()));
    }

    std::vector<std::vector<Entry>> columns_;
};

namespace detail {

// Amplitudes of the subtree at `pos` for every input index, given the
// required leaf labels. Advances `pos` past the subtree and `leaf` past its leaves.
template <class Scalar>
std::vector<Scalar> subtree_amplitudes(const std::string& code, std::size_t& pos, const RTensor<Scalar>& R,
                                       std::span<const std::size_t> out_idx, std::size_t& leaf) {
    const std::size_t n = R.index_count();
    std::vector<Scalar> amp(n, Scalar(0));
    if (code[pos++] == 'l') {
        amp[out_idx[leaf++]] = Scalar(1);
        return amp;
    }
    const auto left = subtree_amplitudes(code, pos, R, out_idx, leaf);
    const auto right = subtree_amplitudes(code, pos, R, out_idx, leaf);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : R.column(i)) {
            if (left[e.left] == Scalar(0) || right[e.right] == Scalar(0)) continue;
            amp[i] += e.value * left[e.left] * right[e.right];
        }
    }
    return amp;
}

}  // namespace detail

/// ⟨Φ(f) ξ_{in_1} ⊗ ... ⊗ ξ_{in_n}, ξ_{out_1} ⊗ ... ⊗ ξ_{out_m}⟩.
template <class Scalar>
Scalar partition_function(const Forest& f, const RTensor<Scalar>& R, std::span<const std::size_t> in_idx,
                          std::span<const std::size_t> out_idx) {
    if (in_idx.size() != f.root_count())
        throw ContractError("partition_function: need one input index per root");
    if (out_idx.size() != f.leaf_count())
        throw ContractError("partition_function: need one output index per leaf");
    for (std::size_t i : in_idx)
        if (i >= R.index_count()) throw ContractError("partition_function: input index outside I");
    for (std::size_t i : out_idx)
        if (i >= R.index_count()) throw ContractError("partition_function: output index outside I");

    Scalar total(1);
    std::size_t leaf = 0;
    for (std::size_t r = 0; r < f.root_count(); ++r) {
        std::size_t pos = 0;
        const auto amp = detail::subtree_amplitudes(f.trees()[r].preorder(), pos, R, out_idx, leaf);
        total *= amp[in_idx[r]];
    }
    return total;
}

}  // namespace thompson
