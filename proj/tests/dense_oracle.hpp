#pragma once

/**
 * @file dense_oracle.hpp
 * @brief Test-only reference for partition functions: build Φ(f) one
 * elementary forest at a time as id ⊗ ... ⊗ R ⊗ ... ⊗ id on dense vectors.
 */

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "thompson/forest.hpp"
#include "thompson/partition.hpp"

namespace dense_oracle {

using thompson::Forest;
using thompson::RTensor;

// Vectors are indexed by multi-indices in I^k (slot 0 most significant).
using Dense = std::vector<mpq_class>;

inline Dense apply_at(const Dense& v, std::size_t slots, std::size_t slot, const RTensor<mpq_class>& R) {
    const std::size_t n = R.index_count();
    std::size_t after = 1;
    for (std::size_t s = slot + 1; s < slots; ++s) after *= n;
    const std::size_t before = v.size() / (after * n);
    Dense out(v.size() * n, mpq_class(0));
    for (std::size_t hi = 0; hi < before; ++hi)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t lo = 0; lo < after; ++lo) {
                const mpq_class& x = v[(hi * n + i) * after + lo];
                if (x == 0) continue;
                for (const auto& e : R.column(i))
                    out[((hi * n + e.left) * n + e.right) * after + lo] += e.value * x;
            }
    return out;
}

// Splits that build f from the trivial forest: tree by tree, offsets count the
// leaves of the trees already expanded to their left.
inline std::vector<std::size_t> split_sequence(const Forest& f) {
    std::vector<std::size_t> seq;
    std::size_t offset = 0;
    for (const auto& t : f.trees()) {
        for (std::size_t i : elementary_decomposition(t)) seq.push_back(offset + i);
        offset += t.leaf_count();
    }
    return seq;
}

inline Dense dense_apply(const Forest& f, const RTensor<mpq_class>& R, const std::vector<std::size_t>& in) {
    const std::size_t n = R.index_count();
    std::size_t index = 0;
    for (std::size_t i : in) index = index * n + i;
    std::size_t size = 1;
    for (std::size_t k = 0; k < in.size(); ++k) size *= n;
    Dense v(size, mpq_class(0));
    v[index] = 1;
    std::size_t slots = in.size();
    for (std::size_t i : split_sequence(f)) v = apply_at(v, slots++, i - 1, R);
    return v;
}

inline std::vector<std::size_t> digits(std::size_t value, std::size_t base, std::size_t count) {
    std::vector<std::size_t> out(count);
    for (std::size_t k = count; k-- > 0;) {
        out[k] = value % base;
        value /= base;
    }
    return out;
}

}  // namespace dense_oracle
