#include "thompson/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <utility>

#include "thompson/errors.hpp"

namespace thompson {

// Perm -------------------------------------------------------------------------

Perm::Perm(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (std::size_t v : images_) {
        if (v == 0 || v > images_.size() || seen[v])
            throw ContractError("permutation images must be a bijection of 1.." +
                                std::to_string(images_.size()));
        seen[v] = true;
    }
}

Perm Perm::identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{1});
    return Perm(std::move(images));
}

Perm Perm::rotation(std::size_t n, std::size_t shift) {
    std::vector<std::size_t> images(n);
    for (std::size_t k = 0; k < n; ++k) images[k] = (k + shift) % n + 1;
    return Perm(std::move(images));
}

Perm Perm::transposition(std::size_t n, std::size_t i, std::size_t j) {
    if (i == 0 || j == 0 || i > n || j > n) throw ContractError("transposition: index out of range");
    auto images = identity(n).images_;
    std::swap(images[i - 1], images[j - 1]);
    return Perm(std::move(images));
}

Perm Perm::inverse() const {
    std::vector<std::size_t> out(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k) out[images_[k] - 1] = k + 1;
    Perm p;
    p.images_ = std::move(out);
    return p;
}

bool Perm::is_identity() const {
    for (std::size_t k = 0; k < images_.size(); ++k)
        if (images_[k] != k + 1) return false;
    return true;
}

std::optional<std::size_t> Perm::rotation_shift() const {
    const std::size_t n = images_.size();
    if (n == 0) return 0;
    const std::size_t shift = images_[0] - 1;
    for (std::size_t k = 0; k < n; ++k)
        if (images_[k] != (k + shift) % n + 1) return std::nullopt;
    return shift;
}

Perm operator*(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw ContractError("permutation product: sizes differ");
    std::vector<std::size_t> out(a.size());
    for (std::size_t k = 1; k <= a.size(); ++k) out[k - 1] = a(b(k));
    return Perm(std::move(out));
}

Perm inflate(const Perm& tau, std::span<const std::size_t> block_sizes) {
    const std::size_t n = tau.size();
    if (block_sizes.size() != n) throw ContractError("inflate: one block size per strand required");
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) offset[j + 1] = offset[j] + block_sizes[j];
    std::vector<std::size_t> images;
    images.reserve(offset[n]);
    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t target = tau(i);
        for (std::size_t t = 0; t < block_sizes[target - 1]; ++t)
            images.push_back(offset[target - 1] + t + 1);
    }
    return Perm(std::move(images));
}

// Symmetric forests -------------------------------------------------------------

SymmetricForest::SymmetricForest(Forest f, Perm p) : forest(std::move(f)), perm(std::move(p)) {
    if (perm.size() != forest.leaf_count())
        throw ContractError("symmetric forest: permutation size must equal the leaf count");
}

SymmetricForest compose_symmetric(const SymmetricForest& p, const SymmetricForest& q) {
    const Perm& tau = q.perm;
    if (p.forest.root_count() != tau.size())
        throw ContractError("compose_symmetric: root count of the upper forest differs from the leaf "
                            "count of the lower forest");
    std::vector<Tree> permuted;
    std::vector<std::size_t> sizes;
    permuted.reserve(tau.size());
    for (std::size_t i = 1; i <= tau.size(); ++i) permuted.push_back(p.forest.tree(tau(i)));
    for (const auto& t : p.forest.trees()) sizes.push_back(t.leaf_count());
    return SymmetricForest(compose(Forest(std::move(permuted)), q.forest), p.perm * inflate(tau, sizes));
}

// Tree pairs --------------------------------------------------------------------

void check_arity(const TreePair& pair) {
    const std::size_t n = pair.domain.leaf_count();
    if (pair.range.leaf_count() != n || pair.perm.size() != n)
        throw ContractError("tree pair arity mismatch: domain has " + std::to_string(n) +
                            " leaves, range " + std::to_string(pair.range.leaf_count()) +
                            ", permutation " + std::to_string(pair.perm.size()));
}

std::vector<std::size_t> reducible_positions(const TreePair& pair) {
    std::vector<std::size_t> out;
    const std::size_t n = pair.domain.leaf_count();
    for (std::size_t i = 1; i < n; ++i) {
        if (pair.domain.leaves_form_caret(i) && pair.perm(i + 1) == pair.perm(i) + 1 &&
            pair.range.leaves_form_caret(pair.perm(i)))
            out.push_back(i);
    }
    return out;
}

TreePair cancel_caret(const TreePair& pair, std::size_t i) {
    const std::size_t j = pair.perm(i);
    std::vector<std::size_t> images;
    images.reserve(pair.perm.size() - 1);
    for (std::size_t k = 1; k <= pair.perm.size(); ++k) {
        if (k == i + 1) continue;
        const std::size_t x = pair.perm(k);
        images.push_back(x > j + 1 ? x - 1 : x);
    }
    return {pair.domain.remove_caret(i), pair.range.remove_caret(j), Perm(std::move(images))};
}

TreePair reduce(TreePair pair) {
    check_arity(pair);
    for (;;) {
        const auto positions = reducible_positions(pair);
        if (positions.empty()) return pair;
        pair = cancel_caret(pair, positions.front());
    }
}

TreePair reduce(TreePair pair, std::mt19937_64& rng) {
    check_arity(pair);
    for (;;) {
        const auto positions = reducible_positions(pair);
        if (positions.empty()) return pair;
        std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
        pair = cancel_caret(pair, positions[pick(rng)]);
    }
}

TreePair expand_domain(const TreePair& pair, const Forest& f) {
    check_arity(pair);
    const std::size_t n = pair.domain.leaf_count();
    if (f.root_count() != n)
        throw ContractError("expand_domain: forest must have one root per domain leaf");
    std::vector<Tree> on_range(n);
    std::vector<std::size_t> sizes(n);
    for (std::size_t k = 1; k <= n; ++k) on_range[pair.perm(k) - 1] = f.tree(k);
    for (std::size_t j = 0; j < n; ++j) sizes[j] = on_range[j].leaf_count();
    Forest range_forest(std::move(on_range));
    return {compose(f, pair.domain), compose(range_forest, pair.range), inflate(pair.perm, sizes)};
}

TreePair expand_range(const TreePair& pair, const Forest& f) {
    const TreePair flipped{pair.range, pair.domain, pair.perm.inverse()};
    const TreePair grown = expand_domain(flipped, f);
    return {grown.range, grown.domain, grown.perm.inverse()};
}

std::string to_string(Subgroup s) {
    switch (s) {
        case Subgroup::F:
            return "F";
        case Subgroup::T_only:
            return "T_only";
        case Subgroup::V_only:
            return "V_only";
    }
    return "?";
}

VElement make_element(const TreePair& pair) { return VElement(reduce(pair)); }

VElement make_element(const Tree& domain, const Tree& range, const Perm& perm) {
    return make_element(TreePair{domain, range, perm});
}

bool is_reduced(const TreePair& pair) {
    check_arity(pair);
    return reducible_positions(pair).empty();
}

TreePair with_domain(const VElement& g, const Tree& domain) {
    return expand_domain(g.pair(), residual_forest(domain, g.domain()));
}

VElement multiply(const VElement& g, const VElement& h) {
    const Tree middle = tree_union(g.domain(), h.range());
    const TreePair right = expand_range(h.pair(), residual_forest(middle, h.range()));
    const TreePair left = expand_domain(g.pair(), residual_forest(middle, g.domain()));
    return make_element(TreePair{right.domain, left.range, left.perm * right.perm});
}

VElement inverse(const VElement& g) {
    return make_element(TreePair{g.range(), g.domain(), g.perm().inverse()});
}

VElement commutator(const VElement& g, const VElement& h) {
    return multiply(multiply(multiply(g, h), inverse(g)), inverse(h));
}

Subgroup classify(const VElement& g) {
    if (g.perm().is_identity()) return Subgroup::F;
    if (g.perm().rotation_shift()) return Subgroup::T_only;
    return Subgroup::V_only;
}

// Dyadic ------------------------------------------------------------------------

namespace {

constexpr unsigned kMaxExponent = 62;

std::int64_t shifted(std::int64_t value, unsigned bits) {
    std::int64_t out = 0;
    if (bits >= 63 || __builtin_mul_overflow(value, std::int64_t{1} << bits, &out))
        throw ContractError("dyadic arithmetic overflow");
    return out;
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, unsigned exponent) : num_(numerator), exp_(exponent) {
    while (exp_ > 0 && num_ % 2 == 0) {
        num_ /= 2;
        --exp_;
    }
    if (exp_ > kMaxExponent) throw ContractError("dyadic exponent exceeds 2^62");
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    std::int64_t sum = 0;
    if (__builtin_add_overflow(shifted(a.num_, e - a.exp_), shifted(b.num_, e - b.exp_), &sum))
        throw ContractError("dyadic arithmetic overflow");
    return Dyadic(sum, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + Dyadic(-b.num_, b.exp_); }

Dyadic Dyadic::scaled(int shift) const {
    if (shift >= 0) {
        const auto s = static_cast<unsigned>(shift);
        if (s <= exp_) return Dyadic(num_, exp_ - s);
        return Dyadic(shifted(num_, s - exp_), 0);
    }
    return Dyadic(num_, exp_ + static_cast<unsigned>(-shift));
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const unsigned e = std::max(a.exp_, b.exp_);
    const __int128 x = static_cast<__int128>(a.num_) << (e - a.exp_);
    const __int128 y = static_cast<__int128>(b.num_) << (e - b.exp_);
    return x <=> y;
}

Dyadic parse_dyadic(std::string_view text) {
    std::size_t pos = 0;
    auto integer = [&](const char* what) {
        const std::size_t start = pos;
        bool negative = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
        std::int64_t value = 0;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (__builtin_mul_overflow(value, 10, &value) ||
                __builtin_add_overflow(value, text[pos] - '0', &value))
                throw ParseError(std::string(what) + " too large", start);
            ++pos;
            ++digits;
        }
        if (digits == 0) throw ParseError(std::string("expected ") + what, pos);
        return negative ? -value : value;
    };
    const std::int64_t num = integer("numerator");
    if (pos == text.size()) return Dyadic(num, 0);
    if (text[pos] != '/') throw ParseError("expected '/'", pos);
    ++pos;
    if (text.substr(pos, 2) == "2^") {
        pos += 2;
        const std::size_t at = pos;
        const std::int64_t e = integer("exponent");
        if (e < 0 || e > kMaxExponent) throw ParseError("exponent out of range", at);
        if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
        return Dyadic(num, static_cast<unsigned>(e));
    }
    const std::size_t at = pos;
    const std::int64_t den = integer("denominator");
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    if (den <= 0 || (den & (den - 1)) != 0) throw ParseError("denominator must be a power of two", at);
    return Dyadic(num, static_cast<unsigned>(__builtin_ctzll(static_cast<unsigned long long>(den))));
}

std::string to_string(const Dyadic& d) {
    if (d.exponent() == 0) return std::to_string(d.numerator());
    return std::to_string(d.numerator()) + "/" + std::to_string(std::int64_t{1} << d.exponent());
}

std::vector<Dyadic> cell_starts(const Tree& t) {
    std::vector<Dyadic> out;
    Dyadic at;
    for (std::size_t depth : t.leaf_depths()) {
        out.push_back(at);
        at = at + Dyadic(1, static_cast<unsigned>(depth));
    }
    return out;
}

Dyadic eval_pl(const TreePair& g, const Dyadic& x) {
    check_arity(g);
    if (x < Dyadic(0, 0) || x >= Dyadic(1, 0)) throw ContractError("eval_pl: x must lie in [0,1)");
    const auto dom_start = cell_starts(g.domain);
    const auto dom_depth = g.domain.leaf_depths();
    const auto rng_start = cell_starts(g.range);
    const auto rng_depth = g.range.leaf_depths();
    const auto cell = static_cast<std::size_t>(
        std::upper_bound(dom_start.begin(), dom_start.end(), x) - dom_start.begin());  // 1-based
    const std::size_t target = g.perm(cell);
    const int shift = static_cast<int>(dom_depth[cell - 1]) - static_cast<int>(rng_depth[target - 1]);
    return rng_start[target - 1] + (x - dom_start[cell - 1]).scaled(shift);
}

Dyadic eval_pl(const VElement& g, const Dyadic& x) { return eval_pl(g.pair(), x); }

// Named elements ----------------------------------------------------------------

Tree builtin_tree(std::string_view name) {
    if (name == "a") return parse_tree("f3 f3 f1 f1");
    if (name == "b") return parse_tree("f4 f3 f2 f1");
    if (name == "c") return parse_tree("f1 f1");
    if (name == "d") return parse_tree("f2 f1");
    if (name == "q") return parse_tree("f2 f3 f1 f1");
    throw ContractError("unknown builtin tree '" + std::string(name) + "'");
}

VElement builtin_element(std::string_view name) {
    auto fraction = [](std::string_view top, std::string_view bottom) {
        const Tree range = builtin_tree(top);
        return make_element(builtin_tree(bottom), range, Perm::identity(range.leaf_count()));
    };
    if (name == "g") return fraction("a", "b");
    if (name == "h") return fraction("c", "d");
    if (name == "k") return fraction("a", "q");
    if (name == "x0") return make_element(parse_tree("f2 f1"), parse_tree("f1 f1"), Perm::identity(3));
    if (name == "x1")
        return make_element(parse_tree("f3 f2 f1"), parse_tree("f2 f2 f1"), Perm::identity(4));
    if (name == "rot") return make_element(parse_tree("f1"), parse_tree("f1"), Perm({2, 1}));
    if (name == "rot3") return make_element(parse_tree("f2 f1"), parse_tree("f2 f1"), Perm({3, 1, 2}));
    if (name == "pi0") return make_element(parse_tree("f1 f1"), parse_tree("f1 f1"), Perm({2, 1, 3}));
    throw ContractError("unknown builtin element '" + std::string(name) + "'");
}

std::vector<std::string> builtin_element_names() {
    return {"g", "h", "k", "x0", "x1", "rot", "rot3", "pi0"};
}

VElement inflated_fraction(const Tree& top, const Tree& bottom, std::size_t n, std::size_t bound) {
    if (n > bound)
        throw ContractError("inflation level " + std::to_string(n) + " exceeds bound " +
                            std::to_string(bound));
    if (top.leaf_count() != bottom.leaf_count())
        throw ContractError("inflated_fraction: trees must have equal leaf counts");
    const Tree level = complete_tree(n);
    const std::size_t copies = level.leaf_count();
    const Tree range = compose(Forest(std::vector<Tree>(copies, top)), level);
    const Tree domain = compose(Forest(std::vector<Tree>(copies, bottom)), level);
    return make_element(domain, range, Perm::identity(range.leaf_count()));
}

VElement family_kn(std::size_t n, std::size_t bound) {
    return inflated_fraction(builtin_tree("a"), builtin_tree("q"), n, bound);
}

Tree comb_pair_tree(std::size_t n) {
    if (n < 2) throw ContractError("comb_pair_tree: n must be at least 2");
    Tree comb = Tree::caret(Tree(), Tree());
    for (std::size_t k = 3; k <= n; ++k) comb = comb.split_leaf(1);
    return Tree::caret(comb, comb);
}

Perm comb_pair_involution(std::size_t n) {
    if (n < 2) throw ContractError("comb_pair_involution: n must be at least 2");
    auto images = Perm::identity(2 * n).images();
    for (std::size_t leaf = 1; leaf <= n; leaf += 2) std::swap(images[leaf - 1], images[leaf + n - 1]);
    return Perm(std::move(images));
}

VElement family_gn(std::size_t n) {
    if (n < 2) throw ContractError("family_gn: n must be at least 2");
    const Tree s = comb_pair_tree(n);
    // stored bijection τ⁻¹∘σ with τ = σ_n, σ = id
    return make_element(s, s, comb_pair_involution(n).inverse());
}

// Random words --------------------------------------------------------------------

VElement random_word(std::mt19937_64& rng, std::size_t length) {
    static const std::vector<VElement> generators = [] {
        std::vector<VElement> out;
        for (const char* name : {"x0", "x1", "rot", "rot3", "pi0"}) {
            out.push_back(builtin_element(name));
            out.push_back(inverse(out.back()));
        }
        return out;
    }();
    std::uniform_int_distribution<std::size_t> pick(0, generators.size() - 1);
    VElement g;
    for (std::size_t i = 0; i < length; ++i) g = multiply(g, generators[pick(rng)]);
    return g;
}

VElement random_nonidentity(std::mt19937_64& rng, std::size_t max_length) {
    if (max_length == 0) throw ContractError("random_nonidentity: word length must be positive");
    std::uniform_int_distribution<std::size_t> length(1, max_length);
    for (;;) {
        VElement g = random_word(rng, length(rng));
        if (!g.is_identity()) return g;
    }
}

// Text ------------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Tree parse_tree_at(std::string_view text, std::size_t offset) {
    try {
        return parse_tree(text);
    } catch (const ParseError& e) {
        std::string what = e.what();
        what = what.substr(0, what.rfind(" (at position"));
        throw ParseError(what, offset + e.position());
    }
}

Perm parse_perm_at(std::string_view text, std::size_t offset) {
    std::size_t pos = 0;
    auto fail = [&](const char* what) { throw ParseError(what, offset + pos); };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '[') fail("expected '['");
    ++pos;
    std::vector<std::size_t> images;
    skip();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        for (;;) {
            skip();
            std::size_t value = 0;
            std::size_t digits = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
                if (value > 1'000'000) fail("permutation image too large");
                ++pos;
                ++digits;
            }
            if (digits == 0) fail("expected a permutation image");
            images.push_back(value);
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ']') {
                ++pos;
                break;
            }
            fail("expected ',' or ']'");
        }
    }
    skip();
    if (pos != text.size()) fail("unexpected trailing input");
    try {
        return Perm(std::move(images));
    } catch (const ContractError& e) {
        throw ParseError(e.what(), offset);
    }
}

}  // namespace

TreePair parse_pair(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) throw ParseError("expected 'RANGE/DOMAIN'", text.size());
    const std::size_t tilde = text.find('~', slash);
    std::size_t range_off = 0;
    const std::string_view range_text = trim(text.substr(0, slash), range_off);
    std::size_t domain_off = slash + 1;
    const std::string_view domain_text =
        trim(text.substr(slash + 1, tilde == std::string_view::npos ? std::string_view::npos
                                                                    : tilde - slash - 1),
             domain_off);
    const Tree range = parse_tree_at(range_text, range_off);
    const Tree domain = parse_tree_at(domain_text, domain_off);
    Perm perm = Perm::identity(domain.leaf_count());
    if (tilde != std::string_view::npos) perm = parse_perm_at(text.substr(tilde + 1), tilde + 1);
    if (range.leaf_count() != domain.leaf_count() || perm.size() != domain.leaf_count())
        throw ParseError("range, domain and permutation sizes disagree", tilde == std::string_view::npos
                                                                             ? slash
                                                                             : tilde);
    return {domain, range, perm};
}

VElement parse_element(std::string_view text) {
    std::size_t offset = 0;
    const std::string_view body = trim(text, offset);
    if (body.find('/') == std::string_view::npos) {
        const std::string name(body);
        for (const auto& builtin : builtin_element_names())
            if (name == builtin) return builtin_element(name);
        auto family = [&](std::string_view prefix) -> std::optional<std::size_t> {
            if (body.substr(0, prefix.size()) != prefix || body.size() == prefix.size()) return std::nullopt;
            std::size_t value = 0;
            for (char ch : body.substr(prefix.size())) {
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    throw ParseError("expected a family index", offset + prefix.size());
                value = value * 10 + static_cast<std::size_t>(ch - '0');
                if (value > 1000) throw ParseError("family index too large", offset + prefix.size());
            }
            return value;
        };
        if (auto n = family("kn:")) return family_kn(*n);
        if (auto n = family("gn:")) return family_gn(*n);
        throw ParseError("unknown element name '" + name + "'", offset);
    }
    return make_element(parse_pair(text));
}

std::string to_string(const Perm& p) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(p.images()[k]);
    }
    return out + "]";
}

std::string to_literal(const TreePair& pair, TreeFormat format) {
    auto tree = [&](const Tree& t) {
        const std::string s = to_string(t, format);
        return (format == TreeFormat::product && !t.is_leaf()) ? "(" + s + ")" : s;
    };
    return tree(pair.range) + "/" + tree(pair.domain) + "~" + to_string(pair.perm);
}

std::string to_literal(const VElement& g, TreeFormat format) { return to_literal(g.pair(), format); }

}  // namespace thompson
