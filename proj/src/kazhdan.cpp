#include "thompson/kazhdan.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "thompson/errors.hpp"

namespace thompson {

// Vectors -----------------------------------------------------------------------

SparseVec::SparseVec(std::vector<std::pair<long, mpq_class>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& e : entries) {
        if (!entries_.empty() && entries_.back().first == e.first) {
            entries_.back().second += e.second;
            if (entries_.back().second == 0) entries_.pop_back();
        } else if (e.second != 0) {
            entries_.push_back(std::move(e));
        }
    }
}

SparseVec SparseVec::indicator(long first, std::size_t count) {
    SparseVec v;
    v.entries_.reserve(count);
    for (std::size_t k = 0; k < count; ++k) v.entries_.emplace_back(first + static_cast<long>(k), 1);
    return v;
}

mpq_class SparseVec::at(long index) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                     [](const auto& e, long i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second : mpq_class(0);
}

SparseVec SparseVec::shifted(long k) const {
    SparseVec v = *this;
    for (auto& e : v.entries_) e.first += k;
    return v;
}

namespace {

// Σ_i x(i) y(i + offset)
mpq_class overlap(const SparseVec& x, const SparseVec& y, long offset) {
    mpq_class total = 0;
    auto it = y.entries().begin();
    const auto end = y.entries().end();
    for (const auto& [i, v] : x.entries()) {
        const long target = i + offset;
        while (it != end && it->first < target) ++it;
        if (it == end) break;
        if (it->first == target) total += v * it->second;
    }
    return total;
}

mpq_class rational_sqrt(const mpq_class& x) {
    if (x < 0) throw ContractError("negative normalization divisor");
    if (mpz_perfect_square_p(x.get_num_mpz_t()) == 0 || mpz_perfect_square_p(x.get_den_mpz_t()) == 0)
        throw ContractError("inner product of these vectors is not rational");
    return mpq_class(sqrt(x.get_num()), sqrt(x.get_den()));
}

}  // namespace

mpq_class inner(const SparseVec& x, const SparseVec& y) { return overlap(x, y, 0); }

ScaledVec ScaledVec::normalized(SparseVec x) {
    const mpq_class norm = inner(x, x);
    if (norm == 0) throw ContractError("cannot normalize the zero vector");
    return ScaledVec{std::move(x), norm};
}

mpq_class shifted_inner(const ScaledVec& x, long a, const ScaledVec& y, long b) {
    const mpq_class raw = overlap(x.raw, y.raw, a - b);
    const mpq_class scale = (x.divisor == y.divisor) ? x.divisor : rational_sqrt(x.divisor * y.divisor);
    mpq_class out = raw / scale;
    out.canonicalize();
    return out;
}

std::size_t zeta_support(std::size_t m) {
    if (m == 0 || m > 18) throw ContractError("zeta_support: m must lie in 1..18");
    return 2 * m * (std::size_t{1} << (3 * m));
}

ScaledVec zeta(std::size_t m, std::size_t bound) {
    if (m == 0 || m > bound)
        throw ContractError("zeta: m must lie in 1.." + std::to_string(bound) + " (got " + std::to_string(m) + ")");
    const std::size_t h = zeta_support(m);
    return ScaledVec{SparseVec::indicator(1, h), mpq_class(static_cast<unsigned long>(h))};
}

// Symbols ------------------------------------------------------------------------

namespace {

void walk(const std::string& code, std::size_t& pos, const LeafSymbol& input, std::size_t depth,
          std::size_t left_run, bool all_left, std::vector<LeafSymbol>& out) {
    if (code[pos++] == 'l') {
        if (all_left)
            out.push_back(LeafSymbol{input.power + depth, input.base, input.root});
        else
            out.push_back(LeafSymbol::zeta_power(left_run));
        return;
    }
    walk(code, pos, input, depth + 1, left_run + 1, all_left, out);
    walk(code, pos, input, depth + 1, 0, false, out);
}

mpq_class pair_symbols(const LeafSymbol& x, std::span<const ScaledVec> x_inputs, const LeafSymbol& y,
                       std::span<const ScaledVec> y_inputs, const ScaledVec& zeta) {
    auto resolve = [&](const LeafSymbol& s, std::span<const ScaledVec> inputs) -> const ScaledVec& {
        if (s.base == LeafSymbol::Base::zeta) return zeta;
        if (s.root == 0 || s.root > inputs.size()) throw ContractError("leaf symbol refers to a missing input");
        return inputs[s.root - 1];
    };
    return shifted_inner(resolve(x, x_inputs), static_cast<long>(x.power), resolve(y, y_inputs),
                         static_cast<long>(y.power));
}

std::vector<LeafSymbol> root_inputs(std::size_t roots) {
    std::vector<LeafSymbol> inputs;
    inputs.reserve(roots);
    for (std::size_t r = 1; r <= roots; ++r) inputs.push_back(LeafSymbol::input(r));
    return inputs;
}

}  // namespace

std::vector<LeafSymbol> apply_shift(const Forest& f, std::span<const LeafSymbol> inputs) {
    if (inputs.size() != f.root_count()) throw ContractError("apply_shift: need one input per root");
    std::vector<LeafSymbol> out;
    out.reserve(f.leaf_count());
    for (std::size_t r = 0; r < f.root_count(); ++r) {
        std::size_t pos = 0;
        walk(f.trees()[r].preorder(), pos, inputs[r], 0, 0, true, out);
    }
    return out;
}

std::vector<LeafSymbol> forest_apply_shift(const Forest& f) {
    const auto inputs = root_inputs(f.root_count());
    return apply_shift(f, inputs);
}

mpq_class c_constant(const ScaledVec& z) {
    const mpq_class formula = [&] {
        const mpq_class first = shifted_inner(z, 1, z, 0);
        return mpq_class(first * first * shifted_inner(z, 0, z, 2));
    }();

    // ⟨Φ(q)ξ, Φ(a)η⟩ leaf by leaf: the inputs must meet each other at equal
    // powers exactly once, everything else pairs ζ against ζ.
    const auto q_side = forest_apply_shift(Forest::of(builtin_tree("q")));
    const auto a_side = forest_apply_shift(Forest::of(builtin_tree("a")));
    if (q_side.size() != a_side.size()) throw std::logic_error("c_constant: a and q have different leaf counts");
    mpq_class paired = 1;
    std::size_t input_meetings = 0;
    for (std::size_t k = 0; k < q_side.size(); ++k) {
        const bool qi = q_side[k].base == LeafSymbol::Base::input;
        const bool ai = a_side[k].base == LeafSymbol::Base::input;
        if (qi != ai) throw std::logic_error("c_constant: an input pairs against zeta");
        if (qi) {
            if (q_side[k].power != a_side[k].power)
                throw std::logic_error("c_constant: input powers differ, the coefficient is not C·⟨ξ,η⟩");
            ++input_meetings;
            continue;
        }
        paired *= shifted_inner(z, static_cast<long>(q_side[k].power), z, static_cast<long>(a_side[k].power));
    }
    if (input_meetings != 1) throw std::logic_error("c_constant: inputs must meet exactly once");
    if (paired != formula) throw std::logic_error("c_constant: leafwise pairing disagrees with the closed form");
    return formula;
}

mpq_class shift_coefficient(const VElement& g, const Tree& level, std::span<const ScaledVec> xi,
                            std::span<const ScaledVec> eta, const ScaledVec& z, const std::optional<Tree>& pairing) {
    const std::size_t slots = level.leaf_count();
    if (xi.size() != slots || eta.size() != slots)
        throw ContractError("shift_coefficient: need one tensor factor per leaf of the level tree (" +
                            std::to_string(slots) + ")");

    const Tree common_domain = tree_union(g.domain(), level);
    const TreePair refined = with_domain(g, common_domain);
    const auto inputs = root_inputs(slots);
    const auto lifted = apply_shift(residual_forest(common_domain, level), inputs);

    std::vector<LeafSymbol> moved(lifted.size());
    for (std::size_t j = 1; j <= lifted.size(); ++j) moved[refined.perm(j) - 1] = lifted[j - 1];

    const Tree meet = pairing ? *pairing : tree_union(refined.range, level);
    if (!is_prefix(refined.range, meet) || !is_prefix(level, meet))
        throw ContractError("shift_coefficient: pairing tree must refine both the range and the level tree");
    const auto left = apply_shift(residual_forest(meet, refined.range), moved);
    const auto right = apply_shift(residual_forest(meet, level), inputs);

    mpq_class total = 1;
    for (std::size_t k = 0; k < left.size() && total != 0; ++k) total *= pair_symbols(left[k], xi, right[k], eta, z);
    return total;
}

namespace {

void check_kn_arity(std::size_t n, std::span<const ScaledVec> xi) {
    if (n > kFamilyBound) throw ContractError("kn_coefficient: level exceeds bound " + std::to_string(kFamilyBound));
    if (xi.size() != (std::size_t{1} << n))
        throw ContractError("kn_coefficient: need 2^n = " + std::to_string(std::size_t{1} << n) +
                            " tensor factors, got " + std::to_string(xi.size()));
}

}  // namespace

mpq_class kn_coefficient(std::size_t n, const ScaledVec& z, std::span<const ScaledVec> xi) {
    check_kn_arity(n, xi);
    return shift_coefficient(family_kn(n), complete_tree(n), xi, xi, z);
}

mpq_class kn_coefficient_direct(std::size_t n, const ScaledVec& z, std::span<const ScaledVec> xi) {
    check_kn_arity(n, xi);
    const std::size_t copies = std::size_t{1} << n;
    const auto q_side = forest_apply_shift(Forest(std::vector<Tree>(copies, builtin_tree("q"))));
    const auto a_side = forest_apply_shift(Forest(std::vector<Tree>(copies, builtin_tree("a"))));
    mpq_class total = 1;
    for (std::size_t k = 0; k < q_side.size(); ++k) total *= pair_symbols(q_side[k], xi, a_side[k], xi, z);
    return total;
}

mpq_class kn_expected(const ScaledVec& z, std::span<const ScaledVec> xi) {
    const mpq_class c = c_constant(z);
    mpq_class total = 1;
    for (const auto& x : xi) total *= c * shifted_inner(x, 0, x, 0);
    return total;
}

mpq_class almost_invariance_bound(std::size_t m) {
    if (m == 0 || m > 18) throw ContractError("almost_invariance_bound: m must lie in 1..18");
    mpq_class base(1);
    base -= mpq_class(1, mpz_class(1) << static_cast<unsigned long>(3 * m));
    mpq_class out = 1;
    const std::size_t exponent = std::size_t{1} << (2 * m);
    for (std::size_t i = 0; i < exponent; ++i) out *= base;
    return out;
}

AlmostInvariance almost_invariance(const VElement& g, std::size_t m, bool strict, std::size_t bound) {
    const ScaledVec z = zeta(m, bound);
    const Tree level = complete_tree(m);
    AlmostInvariance out;
    out.m = m;
    out.domain_fits = g.domain().depth() <= m;
    const TreePair refined = with_domain(g, tree_union(g.domain(), level));
    out.range_fits = refined.range.depth() <= 2 * m;
    if (strict && !out.domain_fits)
        throw ContractError("almost_invariance: canonical domain depth " + std::to_string(g.domain().depth()) +
                            " exceeds m = " + std::to_string(m));
    if (strict && !out.range_fits)
        throw ContractError("almost_invariance: refined range depth " + std::to_string(refined.range.depth()) +
                            " exceeds 2m = " + std::to_string(2 * m));
    const std::vector<ScaledVec> eta(level.leaf_count(), z);
    out.coefficient = shift_coefficient(g, level, eta, eta, z);
    out.pairing_leaves = tree_union(refined.range, level).leaf_count();
    out.bound = almost_invariance_bound(m);
    out.satisfied = out.coefficient >= out.bound;
    return out;
}

mpq_class almost_invariance_through(const VElement& g, std::size_t m, const Tree& pairing, std::size_t bound) {
    const ScaledVec z = zeta(m, bound);
    const Tree level = complete_tree(m);
    const std::vector<ScaledVec> eta(level.leaf_count(), z);
    return shift_coefficient(g, level, eta, eta, z, pairing);
}

}  // namespace thompson
