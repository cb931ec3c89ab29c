#include "thompson/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "thompson/errors.hpp"

namespace thompson {

namespace {

constexpr std::size_t kSampleLimit = 5;

void record(OracleReport& report, std::string description) {
    ++report.violations;
    if (report.samples.size() < kSampleLimit) report.samples.push_back(std::move(description));
}

void check_bound(const char* check, std::size_t max_leaves, std::size_t bound) {
    if (max_leaves == 0 || max_leaves > bound)
        throw ContractError(std::string(check) + ": bound must lie in 1.." + std::to_string(bound));
}

// Equal root counts and trees equal up to a cyclic shift.
bool cyclic_shift_of(const Forest& p, const Forest& q) {
    const std::size_t n = p.root_count();
    if (q.root_count() != n) return false;
    for (std::size_t a = 0; a < n; ++a) {
        bool all = true;
        for (std::size_t j = 0; j < n && all; ++j) all = p.trees()[j] == q.trees()[(j + a) % n];
        if (all) return true;
    }
    return false;
}

}  // namespace

OracleReport check_word_injectivity(std::size_t max_leaves, Execution exec, std::size_t bound) {
    check_bound("check_word_injectivity", max_leaves, bound);
    OracleReport report{"word-injectivity", max_leaves, 0, 0, {}};
    for (std::size_t n = 1; n <= max_leaves; ++n) {
        const auto trees = enumerate_trees(n, bound);
        std::vector<WordTuple> sorted(trees.size());
        std::vector<char> distinct(trees.size(), 1);
        const auto count = static_cast<long>(trees.size());
        auto work = [&](long i) {
            const auto k = static_cast<std::size_t>(i);
            WordTuple words = path_words(trees[k]);
            std::sort(words.begin(), words.end());
            distinct[k] = std::adjacent_find(words.begin(), words.end()) == words.end() ? 1 : 0;
            sorted[k] = std::move(words);
        };
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
            for (long i = 0; i < count; ++i) work(i);
        } else {
            for (long i = 0; i < count; ++i) work(i);
        }
        std::map<WordTuple, std::size_t> seen;
        for (std::size_t k = 0; k < trees.size(); ++k) {
            if (!distinct[k]) record(report, "repeated word in P(" + to_string(trees[k]) + ")");
            auto [it, inserted] = seen.emplace(sorted[k], k);
            if (!inserted)
                record(report, "P(" + to_string(trees[it->second]) + ") and P(" + to_string(trees[k]) +
                                   ") are permutations of each other");
        }
        report.instances += trees.size() * trees.size();
    }
    return report;
}

OracleReport check_cyclic_forest_lemma(std::size_t max_leaves, Execution exec, std::size_t bound) {
    check_bound("check_cyclic_forest_lemma", max_leaves, bound);
    OracleReport report{"cyclic-forest", max_leaves, 0, 0, {}};
    for (std::size_t m = 1; m <= max_leaves; ++m) {
        const auto forests = enumerate_forests(m, bound);
        std::vector<WordTuple> words;
        words.reserve(forests.size());
        for (const auto& f : forests) words.push_back(path_words(f));
        const std::size_t count = forests.size();
        // per first forest: violation descriptions
        std::vector<std::vector<std::string>> found(count);
        auto work = [&](long pi) {
            const auto p = static_cast<std::size_t>(pi);
            for (std::size_t q = 0; q < count; ++q)
                for (std::size_t shift = 0; shift < m; ++shift) {
                    bool match = true;
                    for (std::size_t i = 0; i < m && match; ++i) match = words[q][(i + shift) % m] == words[p][i];
                    if (match && !cyclic_shift_of(forests[p], forests[q]))
                        found[p].push_back("rotation by " + std::to_string(shift) + " carries P(" +
                                           to_string(forests[p]) + ") onto P(" + to_string(forests[q]) + ")");
                }
        };
        const auto n = static_cast<long>(count);
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
            for (long p = 0; p < n; ++p) work(p);
        } else {
            for (long p = 0; p < n; ++p) work(p);
        }
        for (auto& v : found)
            for (auto& d : v) record(report, std::move(d));
        report.instances += count * count * m;
    }
    return report;
}

OracleReport check_term_parity(std::span<const VElement> sample, Execution exec) {
    OracleReport report{"parity", sample.size(), 0, 0, {}};
    std::vector<std::size_t> terms(sample.size(), 0);
    std::vector<std::vector<std::string>> found(sample.size());
    auto work = [&](long i) {
        const auto k = static_cast<std::size_t>(i);
        for (const auto& term : phi_terms(sample[k].pair(), Execution::serial)) {
            ++terms[k];
            if (term.range_internal != term.domain_internal)
                found[k].push_back(to_literal(sample[k]) + ": term (" + std::to_string(term.range_prefix) + "," +
                                   std::to_string(term.domain_prefix) + ") has m = " +
                                   std::to_string(term.range_internal) + " vs " +
                                   std::to_string(term.domain_internal));
        }
    };
    const auto n = static_cast<long>(sample.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 32)
        for (long i = 0; i < n; ++i) work(i);
    } else {
        for (long i = 0; i < n; ++i) work(i);
    }
    for (std::size_t k = 0; k < sample.size(); ++k) {
        report.instances += terms[k];
        for (auto& d : found[k]) record(report, std::move(d));
    }
    return report;
}

std::vector<VElement> all_elements(std::size_t n) {
    const auto trees = enumerate_trees(n);
    std::vector<std::size_t> images(n);
    std::vector<VElement> out;
    for (const auto& domain : trees)
        for (const auto& range : trees) {
            std::iota(images.begin(), images.end(), std::size_t{1});
            do {
                TreePair pair{domain, range, Perm(images)};
                if (is_reduced(pair)) out.push_back(make_element(pair));
            } while (std::next_permutation(images.begin(), images.end()));
        }
    return out;
}

bool pl_equal(const TreePair& a, const TreePair& b, unsigned grid_exponent) {
    const Tree common = tree_union(a.domain, b.domain);
    const auto starts = cell_starts(common);
    const auto depths = common.leaf_depths();
    for (std::size_t k = 0; k < starts.size(); ++k) {
        const Dyadic mid = starts[k] + Dyadic(1, static_cast<unsigned>(depths[k] + 1));
        if (eval_pl(a, starts[k]) != eval_pl(b, starts[k]) || eval_pl(a, mid) != eval_pl(b, mid)) return false;
    }
    const std::int64_t points = std::int64_t{1} << grid_exponent;
    for (std::int64_t k = 0; k < points; ++k) {
        const Dyadic x(k, grid_exponent);
        if (eval_pl(a, x) != eval_pl(b, x)) return false;
    }
    return true;
}

Forest random_forest(std::mt19937_64& rng, std::size_t roots, std::size_t max_carets) {
    std::uniform_int_distribution<std::size_t> carets(0, max_carets);
    std::vector<Tree> trees;
    trees.reserve(roots);
    for (std::size_t r = 0; r < roots; ++r) {
        Tree t;
        for (std::size_t c = carets(rng); c > 0; --c) {
            std::uniform_int_distribution<std::size_t> leaf(1, t.leaf_count());
            t = t.split_leaf(leaf(rng));
        }
        trees.push_back(std::move(t));
    }
    return Forest(std::move(trees));
}

OracleReport check_reduction_soundness(std::size_t samples, std::uint64_t seed) {
    OracleReport report{"reduction", samples, 0, 0, {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> word_length(1, 8);
    std::bernoulli_distribution coin(0.5);

    // Smaller elements for the exhaustive minimality check, by leaf count.
    constexpr std::size_t kExhaustive = 5;
    std::vector<std::vector<VElement>> smaller(kExhaustive);
    for (std::size_t n = 1; n < kExhaustive; ++n) smaller[n] = all_elements(n);

    for (std::size_t s = 0; s < samples; ++s) {
        const VElement g = random_word(rng, word_length(rng));
        const std::string id = to_literal(g);
        ++report.instances;

        // (i) an unreduced representative reduces back to g and acts the same way
        TreePair grown = expand_domain(g.pair(), random_forest(rng, g.leaf_count(), 2));
        if (coin(rng)) grown = expand_range(grown, random_forest(rng, grown.range.leaf_count(), 1));
        if (!(reduce(grown, rng) == g.pair())) record(report, id + ": random-order reduction is not canonical");
        if (!pl_equal(grown, g.pair())) record(report, id + ": unreduced pair acts differently");
        if (!is_reduced(g.pair())) record(report, id + ": canonical form still has a matched caret");

        // (ii) cancelling one more caret pair must change the map
        const std::size_t n = g.leaf_count();
        for (std::size_t i = 1; i < n; ++i) {
            if (!g.domain().leaves_form_caret(i)) continue;
            for (std::size_t j = 1; j < n; ++j) {
                if (!g.range().leaves_form_caret(j)) continue;
                const std::set<std::size_t> images{g.perm()(i), g.perm()(i + 1)};
                if (images != std::set<std::size_t>{j, j + 1}) continue;  // no bijection survives
                std::vector<std::size_t> merged;
                for (std::size_t k = 1; k <= n; ++k) {
                    if (k == i + 1) continue;
                    const std::size_t x = k == i ? j : g.perm()(k);
                    merged.push_back(x > j + 1 ? x - 1 : x);
                }
                const TreePair candidate{g.domain().remove_caret(i), g.range().remove_caret(j), Perm(merged)};
                if (pl_equal(candidate, g.pair()))
                    record(report, id + ": a smaller pair with the same action exists");
            }
        }

        // exhaustive minimality for small canonical forms
        if (n <= kExhaustive) {
            for (std::size_t k = 1; k < n; ++k)
                for (const auto& h : smaller[k])
                    if (pl_equal(h.pair(), g.pair(), 0))
                        record(report, id + ": equals " + to_literal(h) + " which has fewer leaves");
        }
    }
    return report;
}

}  // namespace thompson
