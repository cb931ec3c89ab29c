#include "thompson/haagerup.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "thompson/errors.hpp"

namespace thompson {

namespace {

struct TupleHash {
    std::size_t operator()(const WordTuple& w) const noexcept {
        std::size_t h = w.size();
        for (const auto& word : w) h = h * 1000003U ^ std::hash<std::string>{}(word);
        return h;
    }
};

struct PrefixData {
    std::vector<Prefix> prefixes;
    std::vector<std::size_t> hashes;
};

PrefixData prefix_data(const Tree& t) {
    PrefixData d{subrooted_trees(t), {}};
    d.hashes.reserve(d.prefixes.size());
    for (const auto& p : d.prefixes) d.hashes.push_back(TupleHash{}(p.words));
    return d;
}

// Domain prefixes with their words moved to range slots: slot ρ(j) gets P(s,r)_j.
PrefixData permuted_prefix_data(const Tree& domain, const Perm& perm) {
    PrefixData d{subrooted_trees(domain), {}};
    for (auto& p : d.prefixes) {
        WordTuple moved(p.words.size());
        for (std::size_t j = 1; j <= p.words.size(); ++j) moved[perm(j) - 1] = std::move(p.words[j - 1]);
        p.words = std::move(moved);
    }
    d.hashes.reserve(d.prefixes.size());
    for (const auto& p : d.prefixes) d.hashes.push_back(TupleHash{}(p.words));
    return d;
}

PhiTerm make_term(const PrefixData& range, std::size_t z, const PrefixData& domain, std::size_t r) {
    const auto& zp = range.prefixes[z];
    const auto& rp = domain.prefixes[r];
    return PhiTerm{z, r, zp.internal_leaves, rp.internal_leaves,
                   zp.tree.leaf_count() + rp.tree.leaf_count() - 2};
}

std::vector<PhiTerm> terms_serial(const PrefixData& range, const PrefixData& domain) {
    std::vector<PhiTerm> out;
    for (std::size_t z = 0; z < range.prefixes.size(); ++z)
        for (std::size_t r = 0; r < domain.prefixes.size(); ++r)
            if (domain.prefixes[r].words == range.prefixes[z].words) out.push_back(make_term(range, z, domain, r));
    return out;
}

std::vector<PhiTerm> terms_parallel(const PrefixData& range, const PrefixData& domain) {
    const auto nz = static_cast<long>(range.prefixes.size());
    std::vector<std::vector<PhiTerm>> per_z(range.prefixes.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long zi = 0; zi < nz; ++zi) {
        const auto z = static_cast<std::size_t>(zi);
        const std::size_t hz = range.hashes[z];
        const auto& words = range.prefixes[z].words;
        for (std::size_t r = 0; r < domain.prefixes.size(); ++r)
            if (domain.hashes[r] == hz && domain.prefixes[r].words == words)
                per_z[z].push_back(make_term(range, z, domain, r));
    }
    std::vector<PhiTerm> out;
    for (auto& v : per_z) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

std::vector<ExpansionTerm> phi_expansion(const Tree& t) {
    std::vector<ExpansionTerm> out;
    for (auto& p : subrooted_trees(t)) {
        ExpansionTerm term;
        term.coefficient = RingElem::alpha_beta(p.tree.leaf_count() - 1, p.internal_leaves);
        term.words = std::move(p.words);
        term.prefix_leaves = p.tree.leaf_count();
        term.internal_leaves = p.internal_leaves;
        out.push_back(std::move(term));
    }
    return out;
}

std::vector<PhiTerm> phi_terms(const TreePair& g, Execution exec) {
    check_arity(g);
    const PrefixData range = prefix_data(g.range);
    const PrefixData domain = permuted_prefix_data(g.domain, g.perm);
    return exec == Execution::serial ? terms_serial(range, domain) : terms_parallel(range, domain);
}

RingElem phi_alpha(const TreePair& g, Execution exec) {
    std::map<std::pair<std::size_t, std::size_t>, long> counts;
    for (const auto& term : phi_terms(g, exec))
        ++counts[{term.alpha_degree, term.range_internal + term.domain_internal}];
    RingElem total;
    for (const auto& [key, count] : counts) total += RingElem(count) * RingElem::alpha_beta(key.first, key.second);
    if (!total.is_beta_free())
        throw std::logic_error("phi_alpha: result for " + to_literal(g) + " is not a polynomial in alpha");
    return total;
}

RingElem phi_alpha(const VElement& g, Execution exec) { return phi_alpha(g.pair(), exec); }

RingElem vacuum_coefficient(const TreePair& g) {
    check_arity(g);
    std::unordered_map<WordTuple, RingElem, TupleHash> range_side;
    for (auto& term : phi_expansion(g.range)) range_side.emplace(std::move(term.words), term.coefficient);
    RingElem total;
    for (const auto& term : phi_expansion(g.domain)) {
        WordTuple moved(term.words.size());
        for (std::size_t j = 1; j <= term.words.size(); ++j) moved[g.perm(j) - 1] = term.words[j - 1];
        if (auto it = range_side.find(moved); it != range_side.end()) total += term.coefficient * it->second;
    }
    return total;
}

mpq_class phi_alpha_eval(const VElement& g, const mpq_class& alpha) {
    if (alpha < 0 || alpha > 1) throw ContractError("phi_alpha_eval: alpha must lie in [0,1]");
    return phi_alpha(g).evaluate(alpha);
}

std::size_t WordTensor::index_of(const Word& w) const {
    const auto it = std::lower_bound(words.begin(), words.end(), w, [](const Word& x, const Word& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    if (it == words.end() || *it != w) throw ContractError("word '" + w + "' is outside the index set");
    return static_cast<std::size_t>(it - words.begin());
}

WordTensor word_tensor(std::size_t max_length) {
    std::vector<Word> words{Word{}};
    for (std::size_t start = 0; start < words.size(); ++start) {
        if (words[start].size() == max_length) continue;
        words.push_back("a" + words[start]);
        words.push_back("b" + words[start]);
    }
    std::sort(words.begin(), words.end(), [](const Word& x, const Word& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    WordTensor out{RTensor<RingElem>(words.size()), words};
    if (max_length >= 1) {
        out.tensor.set(0, 0, 0, RingElem::alpha());
        out.tensor.set(0, out.index_of("a"), out.index_of("b"), RingElem::beta());
    } else {
        out.tensor.set(0, 0, 0, RingElem::alpha());
    }
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].size() == max_length) continue;
        out.tensor.set(i, out.index_of("a" + words[i]), out.index_of("b" + words[i]), RingElem(1));
    }
    return out;
}

// Farley -----------------------------------------------------------------------------

std::size_t farley_norm(const VElement& g) { return 2 * g.leaf_count() - 2; }

double FarleyValue::approx() const {
    return std::exp(-beta.get_d() * static_cast<double>(exponent));
}

FarleyValue farley_phi(const VElement& g, const mpq_class& beta) {
    if (beta < 0) throw ContractError("farley_phi: beta must be nonnegative");
    return FarleyValue{beta, farley_norm(g)};
}

bool phi_matches_farley(const VElement& g) {
    return phi_alpha(g) == RingElem(Poly::monomial(farley_norm(g)));
}

// Positive definiteness ------------------------------------------------------------

LdltResult ldlt_psd(RationalMatrix m) {
    const std::size_t n = m.size();
    LdltResult result;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw ContractError("ldlt_psd: matrix must be square");
        for (std::size_t j = 0; j < i; ++j) {
            if (m[i][j] != m[j][i]) {
                result.is_psd = false;
                result.witness = PsdWitness{PsdWitness::Kind::asymmetric, i, j, m[i][j] - m[j][i]};
                return result;
            }
        }
    }
    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
    while (!remaining.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < remaining.size(); ++k)
            if (m[remaining[k]][remaining[k]] > m[remaining[best]][remaining[best]]) best = k;
        const std::size_t p = remaining[best];
        const mpq_class d = m[p][p];
        if (d < 0) {
            result.is_psd = false;
            result.witness = PsdWitness{PsdWitness::Kind::negative_pivot, p, p, d};
            return result;
        }
        if (d == 0) {
            // every remaining diagonal entry is <= 0
            for (std::size_t i : remaining) {
                if (m[i][i] < 0) {
                    result.is_psd = false;
                    result.witness = PsdWitness{PsdWitness::Kind::negative_pivot, i, i, m[i][i]};
                    return result;
                }
            }
            for (std::size_t i : remaining)
                for (std::size_t j : remaining)
                    if (i != j && m[i][j] != 0) {
                        result.is_psd = false;
                        result.witness = PsdWitness{PsdWitness::Kind::zero_pivot_coupling, i, j, m[i][j]};
                        return result;
                    }
            for (std::size_t i : remaining) {
                result.pivot_order.push_back(i);
                result.pivots.push_back(0);
            }
            return result;
        }
        result.pivot_order.push_back(p);
        result.pivots.push_back(d);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        for (std::size_t i : remaining) {
            if (m[i][p] == 0) continue;
            const mpq_class factor = m[i][p] / d;
            for (std::size_t j : remaining) m[i][j] -= factor * m[p][j];
        }
    }
    return result;
}

GramResult gram_psd_check(std::span<const VElement> elements, const mpq_class& alpha, Execution exec) {
    if (alpha < 0 || alpha > 1) throw ContractError("gram_psd_check: alpha must lie in [0,1]");
    const std::size_t n = elements.size();
    std::vector<VElement> inverses;
    inverses.reserve(n);
    for (const auto& g : elements) inverses.push_back(inverse(g));
    RationalMatrix m(n, std::vector<mpq_class>(n));
    const auto cells = static_cast<long>(n * n);
    auto entry = [&](long cell) {
        const auto i = static_cast<std::size_t>(cell) / n;
        const auto j = static_cast<std::size_t>(cell) % n;
        m[i][j] = phi_alpha(multiply(inverses[i], elements[j]), Execution::serial).evaluate(alpha);
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long cell = 0; cell < cells; ++cell) entry(cell);
    } else {
        for (long cell = 0; cell < cells; ++cell) entry(cell);
    }
    GramResult out;
    out.factorization = ldlt_psd(m);
    out.matrix = std::move(m);
    return out;
}

// Tables ----------------------------------------------------------------------------

ScanResult vanishing_scan(const mpq_class& alpha, std::size_t max_leaves, Execution exec, std::size_t bound) {
    if (alpha < 0 || alpha > 1) throw ContractError("vanishing_scan: alpha must lie in [0,1]");
    if (max_leaves == 0 || max_leaves > bound)
        throw ContractError("vanishing_scan: max_leaves must lie in 1.." + std::to_string(bound));
    ScanResult result;
    for (std::size_t n = 1; n <= max_leaves; ++n) {
        const auto trees = enumerate_trees(n);
        std::vector<TreePair> candidates;
        for (const auto& range : trees)
            for (const auto& domain : trees)
                for (std::size_t shift = 0; shift < n; ++shift) {
                    TreePair pair{domain, range, Perm::rotation(n, shift)};
                    if (is_reduced(pair)) candidates.push_back(std::move(pair));
                }

        const Poly expected_poly = Poly::monomial(2 * n - 2);
        std::vector<RingElem> phis(candidates.size());
        const auto count = static_cast<long>(candidates.size());
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
            for (long i = 0; i < count; ++i)
                phis[static_cast<std::size_t>(i)] = phi_alpha(candidates[static_cast<std::size_t>(i)], Execution::serial);
        } else {
            for (long i = 0; i < count; ++i)
                phis[static_cast<std::size_t>(i)] = phi_alpha(candidates[static_cast<std::size_t>(i)], Execution::serial);
        }

        ScanSummary summary;
        summary.n_leaves = n;
        summary.count = candidates.size();
        summary.expected = expected_poly.evaluate(alpha);
        summary.max_deviation = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const mpq_class value = phis[i].evaluate(alpha);
            const mpq_class deviation = abs(value - summary.expected);
            if (deviation > summary.max_deviation) summary.max_deviation = deviation;
            if (!(phis[i] == RingElem(expected_poly))) ++summary.polynomial_mismatches;
            result.rows.push_back(PhiRow{to_literal(candidates[i]), n, alpha, value});
        }
        result.summary.push_back(std::move(summary));
    }
    return result;
}

std::vector<PhiRow> phi_sweep(const VElement& g, std::span<const mpq_class> alphas) {
    const RingElem phi = phi_alpha(g);
    std::vector<PhiRow> rows;
    for (const auto& alpha : alphas) {
        if (alpha < 0 || alpha > 1) throw ContractError("phi_sweep: alpha must lie in [0,1]");
        rows.push_back(PhiRow{to_literal(g), g.leaf_count(), alpha, phi.evaluate(alpha)});
    }
    return rows;
}

void write_phi_csv(std::ostream& out, std::span<const PhiRow> rows) {
    out << "element_id,n_leaves,alpha_num,alpha_den,phi_num,phi_den\n";
    for (const auto& row : rows) {
        out << '"' << row.element_id << "\"," << row.n_leaves << ',' << row.alpha.get_num() << ','
            << row.alpha.get_den() << ',' << row.phi.get_num() << ',' << row.phi.get_den() << '\n';
    }
}

}  // namespace thompson
