/**
 * @file acceptance.cpp
 * @brief One PASS/FAIL line per acceptance criterion.
 *
 * Usage: acceptance [--known-unattainable N[,N...]]
 * Criteria listed as known unattainable still run and still print FAIL when
 * they fail; they just do not change the exit status.
 */

#include <gmpxx.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dense_oracle.hpp"
#include "thompson/haagerup.hpp"
#include "thompson/kazhdan.hpp"
#include "thompson/oracles.hpp"

using namespace thompson;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

mpq_class power(const mpq_class& base, std::size_t e) {
    mpq_class out = 1;
    for (std::size_t k = 0; k < e; ++k) out *= base;
    return out;
}

// 1. Every reduced affine pair with n <= 6 leaves has φ_α = α^{2n-2}.
Outcome affine_exactness() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t checked = 0, mismatches = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto trees = enumerate_trees(n);
        const RingElem expected(Poly::monomial(2 * n - 2));
        for (const auto& s : trees)
            for (const auto& t : trees)
                for (std::size_t c = 0; c < n; ++c) {
                    const TreePair pair{s, t, Perm::rotation(n, c)};
                    if (!is_reduced(pair)) continue;
                    ++checked;
                    if (phi_alpha(pair) != expected) ++mismatches;
                }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << checked << " elements, " << mismatches << " mismatches, " << seconds << " s";
    return {mismatches == 0 && checked > 0 && seconds < 60, d.str()};
}

// 2. The transposition (1 3) on the complete 4-leaf tree.
Outcome remark_value() {
    const Tree t = parse_tree("f3 f1 f1");
    const VElement g = make_element(t, t, Perm::transposition(4, 1, 3));
    const RingElem phi = phi_alpha(g);
    const RingElem a = RingElem::alpha();
    const bool value = phi == a.pow(6) + a.pow(2) * RingElem(one_minus_alpha_squared()).pow(2);
    const bool differs = phi != RingElem(Poly::monomial(farley_norm(g)));
    return {value && differs, to_string(phi.rational_part()) + (differs ? " != α^6" : " == α^6")};
}

// 3. Regular representation at α = 0, trivial at α = 1.
Outcome limits() {
    std::mt19937_64 rng(2024);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        const VElement g = random_nonidentity(rng, 6);
        if (phi_alpha_eval(g, 0) != 0 || phi_alpha_eval(g, 1) != 1) ++bad;
    }
    return {bad == 0, "100 random non-identity elements, " + std::to_string(bad) + " failures"};
}

// 4. φ_{1/2}(g_n) >= 9/64.
Outcome non_vanishing() {
    const mpq_class floor(9, 64);
    std::ostringstream d;
    bool ok = true;
    for (std::size_t n = 2; n <= 6; ++n) {
        const mpq_class v = phi_alpha_eval(family_gn(n), mpq_class(1, 2));
        ok = ok && v >= floor;
        d << (n > 2 ? ", " : "") << "g" << n << "=" << to_string(v);
    }
    return {ok, d.str()};
}

// 5. [g, h] = a/q and the k_n coefficients.
Outcome commutator_identity() {
    const VElement k = commutator(builtin_element("g"), builtin_element("h"));
    const bool is_aq = k == make_element(builtin_tree("q"), builtin_tree("a"), Perm::identity(5));
    const ScaledVec z = zeta(1);
    bool kn_ok = true;
    std::ostringstream d;
    d << "[g,h] = " << to_literal(k) << (is_aq ? "" : " (expected a/q)");
    for (std::size_t n = 0; n <= 2; ++n) {
        const std::vector<ScaledVec> xi(std::size_t{1} << n, z);
        const mpq_class c = kn_coefficient(n, z, xi);
        const bool ok = c == power(mpq_class(1575, 2048), std::size_t{1} << n);
        kn_ok = kn_ok && ok;
        d << "; k" << n << (ok ? " exact" : " WRONG");
    }
    return {is_aq && kn_ok, d.str()};
}

// 6. Almost invariance for x0 and the order-2 rotation at m = 1, 2.
Outcome almost_invariance_check() {
    bool ok = true;
    std::ostringstream d;
    const char* sep = "";
    for (const char* name : {"x0", "rot"}) {
        const VElement g = builtin_element(name);
        const AlmostInvariance m1 = almost_invariance(g, 1);
        const AlmostInvariance m2 = almost_invariance(g, 2);
        const bool bounds = m1.satisfied && m2.satisfied;
        const bool increases = m2.coefficient > m1.coefficient;
        ok = ok && bounds && increases;
        d << sep << name << ": " << to_string(m1.coefficient) << " -> " << to_string(m2.coefficient)
          << (bounds ? "" : " below bound") << (increases ? "" : " (not increasing)");
        sep = "; ";
    }
    return {ok, d.str()};
}

// 7. The four oracle checks at their acceptance bounds.
Outcome oracles() {
    std::vector<VElement> small;
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto e = all_elements(n);
        small.insert(small.end(), e.begin(), e.end());
    }
    const OracleReport reports[] = {check_word_injectivity(8), check_cyclic_forest_lemma(6), check_term_parity(small),
                                    check_reduction_soundness(500, 42)};
    bool ok = true;
    std::ostringstream d;
    const char* sep = "";
    for (const auto& r : reports) {
        ok = ok && r.violations == 0 && r.instances > 0;
        d << sep << r.check << " " << r.violations << "/" << r.instances;
        sep = "; ";
    }
    return {ok, d.str()};
}

// 8. Gram matrices of random elements are PSD.
Outcome gram() {
    bool ok = true;
    std::size_t matrices = 0;
    mpq_class smallest = 1;
    std::ostringstream distinct;
    for (std::uint64_t seed : {101u, 202u, 303u}) {
        std::mt19937_64 rng(seed);
        std::vector<VElement> sample;
        for (int i = 0; i < 10; ++i) sample.push_back(random_nonidentity(rng, 6));
        distinct << (seed == 101u ? "" : "/") << std::set<VElement>(sample.begin(), sample.end()).size();
        for (const mpq_class alpha : {mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)}) {
            const GramResult r = gram_psd_check(sample, alpha);
            ok = ok && r.is_psd();
            ++matrices;
            for (const auto& p : r.factorization.pivots) smallest = std::min(smallest, p);
        }
    }
    // repeated elements make a matrix singular, hence zero pivots
    return {ok, std::to_string(matrices) + " matrices, distinct elements per set " + distinct.str() +
                    ", smallest pivot " + to_string(smallest)};
}

// 9. Partition function against dense operators, and the vacuum route against φ_α.
Outcome partition_crosscheck() {
    using namespace dense_oracle;
    RTensor<mpq_class> R(2);
    R.set(0, 0, 0, mpq_class(3, 5));
    R.set(0, 1, 1, mpq_class(4, 5));
    R.set(1, 0, 1, mpq_class(5, 13));
    R.set(1, 1, 0, mpq_class(-12, 13));
    std::size_t coefficients = 0, mismatches = 0;
    for (std::size_t m = 1; m <= 6; ++m)
        for (const auto& f : enumerate_forests(m)) {
            const std::size_t roots = f.root_count();
            for (std::size_t a = 0; a < (std::size_t{1} << roots); ++a) {
                const auto in = digits(a, 2, roots);
                const Dense expected = dense_apply(f, R, in);
                for (std::size_t b = 0; b < expected.size(); ++b) {
                    ++coefficients;
                    if (partition_function(f, R, in, digits(b, 2, m)) != expected[b]) ++mismatches;
                }
            }
        }
    std::size_t elements = 0, vacuum_mismatches = 0;
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& g : all_elements(n)) {
            ++elements;
            if (vacuum_coefficient(g.pair()) != phi_alpha(g)) ++vacuum_mismatches;
        }
    std::ostringstream d;
    d << coefficients << " coefficients (" << mismatches << " off), " << elements << " elements ("
      << vacuum_mismatches << " off)";
    return {mismatches == 0 && vacuum_mismatches == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--known-unattainable") {
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ',')) known.insert(std::stoi(item));
        }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"affine pairs: phi = alpha^(2n-2) for n <= 6", affine_exactness},
        {"transposition on the complete tree: alpha^6 + alpha^2(1-alpha^2)^2", remark_value},
        {"alpha = 0 and alpha = 1 limits", limits},
        {"phi_1/2(g_n) >= 9/64 for n = 2..6", non_vanishing},
        {"commutator a/q and k_n = C^(2^n)", commutator_identity},
        {"almost invariance bound and growth in m", almost_invariance_check},
        {"oracle checks report no violations", oracles},
        {"Gram matrices are PSD", gram},
        {"partition function and vacuum cross-checks", partition_crosscheck},
    };

    int status = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " | " << criteria[i].first << " | "
                  << o.detail;
        if (!o.pass && known.count(id)) std::cout << " [known unattainable]";
        std::cout << std::endl;
        if (!o.pass && !known.count(id)) status = 1;
    }
    return status;
}
