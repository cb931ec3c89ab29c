#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "thompson/errors.hpp"
#include "thompson/haagerup.hpp"
#include "thompson/oracles.hpp"

using namespace thompson;

namespace {

using Expansion = std::map<WordTuple, RingElem>;

// Φ_α applied to δ_w at the root of t, straight from the definition of R_α.
Expansion oracle_expand(const Tree& t, const Word& w) {
    if (t.is_leaf()) return {{WordTuple{w}, RingElem(1)}};
    std::vector<std::pair<RingElem, std::pair<Word, Word>>> split;
    if (w.empty()) {
        split.push_back({RingElem::alpha(), {"", ""}});
        split.push_back({RingElem::beta(), {"a", "b"}});
    } else {
        split.push_back({RingElem(1), {"a" + w, "b" + w}});
    }
    Expansion out;
    for (const auto& [c, children] : split) {
        const Expansion left = oracle_expand(t.left(), children.first);
        const Expansion right = oracle_expand(t.right(), children.second);
        for (const auto& [lw, lc] : left)
            for (const auto& [rw, rc] : right) {
                WordTuple words = lw;
                words.insert(words.end(), rw.begin(), rw.end());
                out[words] += c * lc * rc;
            }
    }
    return out;
}

RingElem oracle_phi(const TreePair& g) {
    const Expansion domain = oracle_expand(g.domain, "");
    const Expansion range = oracle_expand(g.range, "");
    RingElem total;
    for (const auto& [words, c] : domain) {
        WordTuple moved(words.size());
        for (std::size_t k = 1; k <= words.size(); ++k) moved[g.perm(k) - 1] = words[k - 1];
        if (auto it = range.find(moved); it != range.end()) total += c * it->second;
    }
    return total;
}

Poly poly(std::vector<long> c) {
    std::vector<mpz_class> z(c.begin(), c.end());
    return Poly(z);
}

VElement remark_element() {
    const Tree t = parse_tree("f3 f1 f1");
    return make_element(t, t, Perm::transposition(4, 1, 3));
}

}  // namespace

TEST_CASE("phi_expansion") {
    const auto leaf = phi_expansion(Tree());
    REQUIRE(leaf.size() == 1);
    CHECK(leaf[0].coefficient == RingElem(1));
    CHECK(leaf[0].words == WordTuple{""});

    const auto e = phi_expansion(parse_tree("f3 f1 f1"));
    Expansion got;
    for (const auto& term : e) got[term.words] += term.coefficient;
    const RingElem a = RingElem::alpha(), b = RingElem::beta();
    const Expansion expected{{{"", "", "", ""}, a.pow(3)},
                             {{"", "", "a", "b"}, a * a * b},
                             {{"a", "b", "", ""}, a * a * b},
                             {{"a", "b", "a", "b"}, a * b * b},
                             {{"aa", "ba", "ab", "bb"}, b}};
    CHECK(got == expected);
}

TEST_CASE("phi_expansion matches the recursive oracle and is isometric") {
    for (std::size_t n = 1; n <= 8; ++n)
        for (const auto& t : enumerate_trees(n)) {
            Expansion got;
            RingElem norm;
            for (const auto& term : phi_expansion(t)) {
                got[term.words] += term.coefficient;
                norm += term.coefficient.squared();
            }
            CHECK(got == oracle_expand(t, ""));
            CHECK(norm == RingElem(1));
        }
}

TEST_CASE("phi_alpha named values") {
    CHECK(phi_alpha(VElement()) == RingElem(1));
    CHECK(phi_alpha(builtin_element("x0")) == RingElem(Poly::monomial(4)));
    CHECK(phi_alpha(builtin_element("rot")) == RingElem(Poly::monomial(2)));

    const RingElem remark = phi_alpha(remark_element());
    const RingElem a = RingElem::alpha();
    CHECK(remark == a.pow(6) + a.pow(2) * RingElem(one_minus_alpha_squared()).pow(2));
    CHECK(remark.rational_part() == poly({0, 0, 1, 0, -2, 0, 2}));
    CHECK(remark != a.pow(6));
    CHECK(phi_alpha_eval(remark_element(), mpq_class(1, 2)) == mpq_class(5, 32));  // 1/64 + 9/64
}

TEST_CASE("phi_alpha agrees with the oracle on random elements") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 150; ++i) {
        const VElement g = random_word(rng, 1 + i % 7);
        const RingElem phi = phi_alpha(g);
        CHECK(phi == oracle_phi(g.pair()));
        CHECK(phi == phi_alpha(inverse(g)));
        CHECK(phi == vacuum_coefficient(g.pair()));
    }
}

TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 60; ++i) {
        const VElement g = random_word(rng, 8);
        const auto s = phi_terms(g.pair(), Execution::serial);
        const auto p = phi_terms(g.pair(), Execution::parallel);
        REQUIRE(s.size() == p.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            CHECK(s[k].range_prefix == p[k].range_prefix);
            CHECK(s[k].domain_prefix == p[k].domain_prefix);
            CHECK(s[k].alpha_degree == p[k].alpha_degree);
        }
    }
    for (std::size_t n = 2; n <= 6; ++n)
        CHECK(phi_alpha(family_gn(n), Execution::serial) == phi_alpha(family_gn(n), Execution::parallel));
}

TEST_CASE("representative independence") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 80; ++i) {
        const VElement g = random_word(rng, 5);
        TreePair grown = expand_domain(g.pair(), random_forest(rng, g.leaf_count(), 2));
        if (i % 2) grown = expand_range(grown, random_forest(rng, grown.range.leaf_count(), 1));
        CHECK(phi_alpha(grown) == phi_alpha(g));
        CHECK(vacuum_coefficient(grown) == phi_alpha(g));
        CHECK(oracle_phi(grown) == phi_alpha(g));
    }
}

TEST_CASE("beta-free and vacuum-consistent on every element with at most 5 leaves") {
    std::size_t count = 0;
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& g : all_elements(n)) {
            const RingElem phi = phi_alpha(g.pair(), Execution::serial);
            CHECK(phi.is_beta_free());
            CHECK(phi == vacuum_coefficient(g.pair()));
            ++count;
        }
    CHECK(count > 1000);
}

TEST_CASE("limits at alpha = 0 and alpha = 1") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const VElement g = random_nonidentity(rng, 6);
        CHECK(phi_alpha_eval(g, 0) == 0);
        CHECK(phi_alpha_eval(g, 1) == 1);
        const mpq_class v = phi_alpha_eval(g, mpq_class(2, 3));
        CHECK(v >= 0);
        CHECK(v <= 1);
    }
    CHECK(phi_alpha_eval(VElement(), 0) == 1);
    CHECK_THROWS_AS((void)phi_alpha_eval(VElement(), mpq_class(3, 2)), ContractError);
    CHECK_THROWS_AS((void)phi_alpha_eval(VElement(), mpq_class(-1, 2)), ContractError);
}

TEST_CASE("g_n stays away from zero") {
    for (std::size_t n = 2; n <= 6; ++n) CHECK(phi_alpha_eval(family_gn(n), mpq_class(1, 2)) >= mpq_class(9, 64));
}

TEST_CASE("Farley comparison") {
    CHECK(farley_norm(VElement()) == 0);
    CHECK(farley_norm(builtin_element("x0")) == 4);
    CHECK(farley_norm(remark_element()) == 6);
    CHECK(phi_matches_farley(builtin_element("x0")));
    CHECK(phi_matches_farley(builtin_element("rot3")));
    CHECK_FALSE(phi_matches_farley(remark_element()));
    const FarleyValue v = farley_phi(builtin_element("x0"), mpq_class(1, 2));
    CHECK(v.exponent == 4);
    CHECK(v.approx() == doctest::Approx(std::exp(-2.0)));
    CHECK(farley_phi(VElement(), 1).approx() == 1.0);
}

TEST_CASE("ldlt_psd") {
    const LdltResult id = ldlt_psd({{1, 0}, {0, 1}});
    CHECK(id.is_psd);
    CHECK(id.pivots == std::vector<mpq_class>{1, 1});

    const LdltResult pos = ldlt_psd({{2, 1}, {1, 3}});
    CHECK(pos.is_psd);
    CHECK(pos.pivot_order == std::vector<std::size_t>{1, 0});
    CHECK(pos.pivots == std::vector<mpq_class>{3, mpq_class(5, 3)});

    const LdltResult neg = ldlt_psd({{1, 2}, {2, 1}});
    CHECK_FALSE(neg.is_psd);
    REQUIRE(neg.witness.has_value());
    CHECK(neg.witness->kind == PsdWitness::Kind::negative_pivot);
    CHECK(neg.witness->value == -3);

    const LdltResult zero = ldlt_psd({{0, 1}, {1, 0}});
    CHECK_FALSE(zero.is_psd);
    CHECK(zero.witness->kind == PsdWitness::Kind::zero_pivot_coupling);

    const LdltResult asym = ldlt_psd({{1, 0}, {1, 1}});
    CHECK_FALSE(asym.is_psd);
    CHECK(asym.witness->kind == PsdWitness::Kind::asymmetric);

    CHECK(ldlt_psd({{1, 1}, {1, 1}}).is_psd);  // singular but PSD
}

TEST_CASE("gram_psd_check") {
    const std::vector<VElement> one{VElement()};
    const GramResult r1 = gram_psd_check(one, mpq_class(1, 2));
    CHECK(r1.is_psd());
    CHECK(r1.matrix == RationalMatrix{{1}});

    const std::vector<VElement> two{VElement(), builtin_element("rot")};
    const GramResult r2 = gram_psd_check(two, mpq_class(1, 2));
    CHECK(r2.is_psd());
    CHECK(r2.matrix[0][1] == mpq_class(1, 4));

    std::mt19937_64 rng(47);
    std::vector<VElement> sample;
    for (int i = 0; i < 10; ++i) sample.push_back(random_word(rng, 6));
    for (const mpq_class alpha : {mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)}) {
        const GramResult serial = gram_psd_check(sample, alpha, Execution::serial);
        const GramResult parallel = gram_psd_check(sample, alpha, Execution::parallel);
        CHECK(serial.is_psd());
        CHECK(serial.matrix == parallel.matrix);
        for (std::size_t i = 0; i < sample.size(); ++i)
            for (std::size_t j = 0; j < sample.size(); ++j)
                CHECK(serial.matrix[i][j] == phi_alpha_eval(multiply(inverse(sample[i]), sample[j]), alpha));
    }
}

TEST_CASE("vanishing_scan") {
    const ScanResult scan = vanishing_scan(mpq_class(1, 2), 6);
    REQUIRE(scan.summary.size() == 6);
    for (const auto& row : scan.summary) {
        CHECK(row.max_deviation == 0);
        CHECK(row.polynomial_mismatches == 0);
        mpq_class expected = 1;
        for (std::size_t k = 0; k + 2 < 2 * row.n_leaves; ++k) expected /= 2;
        CHECK(row.expected == expected);
        // the scan covers exactly the reduced F and T elements of this size
        std::size_t affine = 0;
        for (const auto& g : all_elements(row.n_leaves)) affine += classify(g) != Subgroup::V_only;
        if (row.n_leaves <= 5) CHECK(row.count == affine);
    }
    CHECK(scan.summary[0].count == 1);
    CHECK(scan.summary[2].expected == mpq_class(1, 16));
    for (const auto& row : scan.rows)
        if (row.n_leaves == 3) CHECK(row.phi == mpq_class(1, 16));

    const ScanResult serial = vanishing_scan(mpq_class(1, 3), 5, Execution::serial);
    const ScanResult parallel = vanishing_scan(mpq_class(1, 3), 5, Execution::parallel);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        CHECK(serial.rows[k].element_id == parallel.rows[k].element_id);
        CHECK(serial.rows[k].phi == parallel.rows[k].phi);
    }
    CHECK_THROWS_AS(vanishing_scan(mpq_class(1, 2), kScanBound + 1), ContractError);
    CHECK_THROWS_AS(vanishing_scan(mpq_class(1, 2), 0), ContractError);
}

TEST_CASE("sweep and CSV") {
    const std::vector<mpq_class> alphas{0, mpq_class(1, 2), 1};
    const auto rows = phi_sweep(remark_element(), alphas);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].phi == 0);
    CHECK(rows[1].phi == mpq_class(5, 32));
    CHECK(rows[2].phi == 1);

    std::ostringstream out;
    write_phi_csv(out, rows);
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "element_id,n_leaves,alpha_num,alpha_den,phi_num,phi_den");
    std::getline(in, line);
    CHECK(line == "\"" + to_literal(remark_element()) + "\",4,0,1,0,1");
    std::getline(in, line);
    CHECK(line.substr(line.rfind("\",")) == "\",4,1,2,5,32");
}
