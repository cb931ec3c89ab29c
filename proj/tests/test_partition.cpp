#include <doctest.h>

#include <gmpxx.h>

#include <map>
#include <random>

#include "thompson/errors.hpp"
#include "thompson/haagerup.hpp"
#include "thompson/partition.hpp"

#include "dense_oracle.hpp"

using namespace thompson;
using namespace dense_oracle;

namespace {

RTensor<mpq_class> random_tensor(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 5);
    std::bernoulli_distribution present(0.7);
    RTensor<mpq_class> R(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (present(rng)) {
                    mpq_class v(num(rng), den(rng));
                    v.canonicalize();
                    if (v != 0) R.set(i, j, k, v);
                }
    return R;
}

void check_against_oracle(const RTensor<mpq_class>& R, std::size_t max_leaves) {
    const std::size_t n = R.index_count();
    std::size_t forests = 0;
    for (std::size_t m = 1; m <= max_leaves; ++m)
        for (const auto& f : enumerate_forests(m)) {
            ++forests;
            const std::size_t roots = f.root_count();
            std::size_t inputs = 1;
            for (std::size_t k = 0; k < roots; ++k) inputs *= n;
            for (std::size_t a = 0; a < inputs; ++a) {
                const auto in = digits(a, n, roots);
                const Dense expected = dense_apply(f, R, in);
                for (std::size_t b = 0; b < expected.size(); ++b) {
                    const auto out = digits(b, n, m);
                    REQUIRE(partition_function(f, R, in, out) == expected[b]);
                }
            }
        }
    CHECK(forests > 0);
}

}  // namespace

TEST_CASE("trivial forest is the identity") {
    RTensor<mpq_class> R(2);
    R.set(0, 0, 0, 1);
    const Forest f = Forest::trivial(2);
    const std::vector<std::size_t> in{0, 1}, same{0, 1}, other{1, 1};
    CHECK(partition_function(f, R, in, same) == 1);
    CHECK(partition_function(f, R, in, other) == 0);
}

TEST_CASE("single caret") {
    RTensor<mpq_class> R(1);
    R.set(0, 0, 0, 1);
    const std::vector<std::size_t> in{0}, out{0, 0};
    CHECK(partition_function(elementary_forest(1, 1), R, in, out) == 1);
    CHECK(R.is_isometry());
}

TEST_CASE("argument checks") {
    RTensor<mpq_class> R(2);
    const std::vector<std::size_t> in{0}, bad{2}, out{0, 0}, short_out{0};
    CHECK_THROWS_AS(partition_function(elementary_forest(1, 1), R, bad, out), ContractError);
    CHECK_THROWS_AS(partition_function(elementary_forest(1, 1), R, in, short_out), ContractError);
    CHECK_THROWS_AS(R.set(0, 0, 3, mpq_class(1)), ContractError);
    CHECK_FALSE(R.is_isometry());
    CHECK_THROWS_AS(R.require_isometry(), ContractError);
}

TEST_CASE("agrees with dense operator composition, two symbols") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 3; ++trial) check_against_oracle(random_tensor(2, rng), 6);
}

TEST_CASE("agrees with dense operator composition, three symbols") {
    std::mt19937_64 rng(202);
    check_against_oracle(random_tensor(3, rng), 5);
    check_against_oracle(random_tensor(1, rng), 6);
}

TEST_CASE("word tensor reproduces the vacuum expansion") {
    const WordTensor wt = word_tensor(6);
    CHECK(wt.words.front().empty());
    CHECK(wt.words.size() == 127);
    const std::vector<std::size_t> vacuum{0};
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& t : enumerate_trees(n)) {
            std::map<WordTuple, RingElem> expansion;
            for (const auto& term : phi_expansion(t)) expansion[term.words] += term.coefficient;
            for (const auto& [words, coeff] : expansion) {
                std::vector<std::size_t> out;
                for (const auto& w : words) out.push_back(wt.index_of(w));
                CHECK(partition_function(Forest::of(t), wt.tensor, vacuum, out) == coeff);
            }
        }
}

TEST_CASE("word tensor: every output tuple, small trees") {
    // all tuples of words of length <= 2 on trees with <= 3 leaves
    const WordTensor wt = word_tensor(3);
    const std::size_t short_words = 7;
    const std::vector<std::size_t> vacuum{0};
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& t : enumerate_trees(n)) {
            std::map<WordTuple, RingElem> expansion;
            for (const auto& term : phi_expansion(t)) expansion[term.words] += term.coefficient;
            std::size_t total = 1;
            for (std::size_t k = 0; k < n; ++k) total *= short_words;
            for (std::size_t c = 0; c < total; ++c) {
                const auto out = digits(c, short_words, n);
                WordTuple words;
                for (std::size_t i : out) words.push_back(wt.words[i]);
                const auto it = expansion.find(words);
                const RingElem expected = it == expansion.end() ? RingElem() : it->second;
                CHECK(partition_function(Forest::of(t), wt.tensor, vacuum, out) == expected);
            }
        }
}
