#include "thompson/forest.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "thompson/errors.hpp"

namespace thompson {

namespace {

// Index one past the subtree whose root code sits at `pos`.
std::size_t subtree_end(const std::string& code, std::size_t pos) {
    std::size_t pending = 1;
    while (pending > 0) {
        pending += (code[pos] == 'c') ? 1 : -1;
        ++pos;
    }
    return pos;
}

std::size_t leaf_position(const std::string& code, std::size_t i) {
    std::size_t seen = 0;
    for (std::size_t pos = 0; pos < code.size(); ++pos) {
        if (code[pos] == 'l' && ++seen == i) return pos;
    }
    throw ContractError("leaf index " + std::to_string(i) + " exceeds leaf count");
}

void collect_residual(const std::string& whole, std::size_t& wpos, const std::string& prefix,
                      std::size_t& ppos, std::vector<Tree>& out) {
    if (prefix[ppos] == 'l') {
        const std::size_t end = subtree_end(whole, wpos);
        out.push_back(Tree::from_preorder(whole.substr(wpos, end - wpos)));
        wpos = end;
        ++ppos;
        return;
    }
    if (whole[wpos] != 'c') throw ContractError("residual_forest: prefix is not a prefix of the tree");
    ++wpos;
    ++ppos;
    collect_residual(whole, wpos, prefix, ppos, out);
    collect_residual(whole, wpos, prefix, ppos, out);
}

std::string union_code(const std::string& a, std::size_t& ia, const std::string& b, std::size_t& ib) {
    if (a[ia] == 'l') {
        const std::size_t end = subtree_end(b, ib);
        std::string out = b.substr(ib, end - ib);
        ib = end;
        ++ia;
        return out;
    }
    if (b[ib] == 'l') {
        const std::size_t end = subtree_end(a, ia);
        std::string out = a.substr(ia, end - ia);
        ia = end;
        ++ib;
        return out;
    }
    ++ia;
    ++ib;
    std::string out = "c";
    out += union_code(a, ia, b, ib);
    out += union_code(a, ia, b, ib);
    return out;
}

void words_of(const std::string& code, std::size_t& pos, const Word& suffix, WordTuple& out) {
    if (code[pos++] == 'l') {
        out.push_back(suffix);
        return;
    }
    words_of(code, pos, "a" + suffix, out);
    words_of(code, pos, "b" + suffix, out);
}

std::vector<Tree> prefix_trees(const Tree& t) {
    std::vector<Tree> out{Tree()};
    if (t.is_leaf()) return out;
    const auto lefts = prefix_trees(t.left());
    const auto rights = prefix_trees(t.right());
    out.reserve(1 + lefts.size() * rights.size());
    for (const auto& l : lefts)
        for (const auto& r : rights) out.push_back(Tree::caret(l, r));
    return out;
}

class TextParser {
public:
    explicit TextParser(std::string_view text) : text_(text) {}

    Tree tree() {
        skip_ws();
        if (at_end()) fail("expected a tree");
        const char ch = text_[pos_];
        if (ch == '.') {
            ++pos_;
            return Tree();
        }
        if (ch == 'f') return product();
        if (ch != '(') fail("expected '.', '(' or 'f'");
        ++pos_;
        skip_ws();
        Tree out;
        if (!at_end() && text_[pos_] == 'f') {
            out = product();
        } else {
            Tree left = tree();
            Tree right = tree();
            out = Tree::caret(left, right);
        }
        skip_ws();
        if (at_end() || text_[pos_] != ')') fail("expected ')'");
        ++pos_;
        return out;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() { ++pos_; }
    std::size_t position() const { return pos_; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

private:
    Tree product() {
        struct Factor {
            std::size_t index;
            std::size_t position;
        };
        std::vector<Factor> factors;
        while (!at_end() && text_[pos_] == 'f') {
            const std::size_t start = pos_++;
            std::size_t index = 0;
            std::size_t digits = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                index = index * 10 + static_cast<std::size_t>(text_[pos_] - '0');
                if (index > 1'000'000) throw ParseError("factor index too large", start);
                ++pos_;
                ++digits;
            }
            if (digits == 0) fail("expected digits after 'f'");
            if (index == 0) throw ParseError("factor index must be at least 1", start);
            factors.push_back({index, start});
            skip_ws();
        }
        Tree out;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            if (it->index > out.leaf_count())
                throw ParseError("f" + std::to_string(it->index) + " exceeds the current leaf count " +
                                     std::to_string(out.leaf_count()),
                                 it->position);
            out = out.split_leaf(it->index);
        }
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

// Tree -----------------------------------------------------------------------

Tree::Tree() : code_("l") {}

Tree::Tree(std::string code) : code_(std::move(code)) {
    leaves_ = static_cast<std::size_t>(std::count(code_.begin(), code_.end(), 'l'));
    std::size_t level = 0;
    std::vector<std::size_t> stack;  // depth of each pending child slot
    stack.push_back(0);
    depth_ = 0;
    for (char ch : code_) {
        level = stack.back();
        stack.pop_back();
        if (ch == 'c') {
            stack.push_back(level + 1);
            stack.push_back(level + 1);
        } else {
            depth_ = std::max(depth_, level);
        }
    }
}

Tree Tree::caret(const Tree& left, const Tree& right) {
    return Tree("c" + left.code_ + right.code_);
}

Tree Tree::from_preorder(std::string code) {
    std::size_t pending = 1;
    for (std::size_t pos = 0; pos < code.size(); ++pos) {
        if (pending == 0) throw ParseError("trailing characters after a complete tree", pos);
        if (code[pos] == 'c')
            ++pending;
        else if (code[pos] == 'l')
            --pending;
        else
            throw ParseError("preorder code uses only 'c' and 'l'", pos);
    }
    if (pending != 0) throw ParseError("incomplete preorder code", code.size());
    return Tree(std::move(code));
}

Tree Tree::left() const {
    if (is_leaf()) throw ContractError("left(): a leaf has no subtrees");
    return Tree(code_.substr(1, subtree_end(code_, 1) - 1));
}

Tree Tree::right() const {
    if (is_leaf()) throw ContractError("right(): a leaf has no subtrees");
    return Tree(code_.substr(subtree_end(code_, 1)));
}

std::vector<std::size_t> Tree::leaf_depths() const {
    std::vector<std::size_t> out;
    out.reserve(leaves_);
    std::vector<std::size_t> stack{0};
    for (char ch : code_) {
        const std::size_t level = stack.back();
        stack.pop_back();
        if (ch == 'c') {
            stack.push_back(level + 1);
            stack.push_back(level + 1);
        } else {
            out.push_back(level);
        }
    }
    return out;
}

Tree Tree::split_leaf(std::size_t i) const {
    if (i == 0 || i > leaves_)
        throw ContractError("split_leaf: leaf index " + std::to_string(i) + " out of range 1.." +
                            std::to_string(leaves_));
    std::string code = code_;
    code.replace(leaf_position(code_, i), 1, "cll");
    return Tree(std::move(code));
}

bool Tree::leaves_form_caret(std::size_t i) const {
    if (i == 0 || i >= leaves_) return false;
    const std::size_t pos = leaf_position(code_, i);
    return pos > 0 && code_[pos - 1] == 'c' && pos + 1 < code_.size() && code_[pos + 1] == 'l';
}

Tree Tree::remove_caret(std::size_t i) const {
    if (!leaves_form_caret(i))
        throw ContractError("remove_caret: leaves " + std::to_string(i) + "," + std::to_string(i + 1) +
                            " do not form a caret");
    std::string code = code_;
    code.replace(leaf_position(code_, i) - 1, 3, "l");
    return Tree(std::move(code));
}

Tree Tree::graft(const std::vector<Tree>& scions) const {
    if (scions.size() != leaves_)
        throw ContractError("graft: need one tree per leaf (" + std::to_string(leaves_) + "), got " +
                            std::to_string(scions.size()));
    std::string code;
    std::size_t k = 0;
    for (char ch : code_) {
        if (ch == 'c')
            code += 'c';
        else
            code += scions[k++].code_;
    }
    return Tree(std::move(code));
}

// Forest ---------------------------------------------------------------------

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    if (trees_.empty()) throw ContractError("a forest has at least one root");
}

Forest Forest::trivial(std::size_t roots) {
    return Forest(std::vector<Tree>(roots, Tree()));
}

std::size_t Forest::leaf_count() const {
    std::size_t n = 0;
    for (const auto& t : trees_) n += t.leaf_count();
    return n;
}

std::size_t Forest::nontrivial_count() const {
    return static_cast<std::size_t>(
        std::count_if(trees_.begin(), trees_.end(), [](const Tree& t) { return !t.is_leaf(); }));
}

Forest elementary_forest(std::size_t i, std::size_t n) {
    if (i == 0 || i > n)
        throw ContractError("elementary_forest: need 1 <= i <= n, got i=" + std::to_string(i) +
                            ", n=" + std::to_string(n));
    std::vector<Tree> trees(n, Tree());
    trees[i - 1] = Tree::caret(Tree(), Tree());
    return Forest(std::move(trees));
}

Forest compose(const Forest& p, const Forest& q) {
    if (p.root_count() != q.leaf_count())
        throw ContractError("compose: root count " + std::to_string(p.root_count()) +
                            " of the upper forest differs from leaf count " +
                            std::to_string(q.leaf_count()) + " of the lower forest");
    std::vector<Tree> out;
    out.reserve(q.root_count());
    auto next = p.trees().begin();
    for (const auto& t : q.trees()) {
        std::vector<Tree> scions(next, next + static_cast<std::ptrdiff_t>(t.leaf_count()));
        next += static_cast<std::ptrdiff_t>(t.leaf_count());
        out.push_back(t.graft(scions));
    }
    return Forest(std::move(out));
}

Tree compose(const Forest& p, const Tree& q) {
    return compose(p, Forest::of(q)).trees().front();
}

Tree complete_tree(std::size_t n) {
    Tree t;
    for (std::size_t level = 0; level < n; ++level) t = Tree::caret(t, t);
    return t;
}

std::vector<std::size_t> elementary_decomposition(const Tree& t) {
    std::vector<std::size_t> out;
    std::size_t leaves_seen = 0;
    for (char ch : t.preorder()) {
        if (ch == 'c')
            out.push_back(leaves_seen + 1);
        else
            ++leaves_seen;
    }
    return out;
}

Tree tree_union(const Tree& a, const Tree& b) {
    std::size_t ia = 0;
    std::size_t ib = 0;
    return Tree::from_preorder(union_code(a.preorder(), ia, b.preorder(), ib));
}

bool is_prefix(const Tree& prefix, const Tree& whole) {
    return tree_union(prefix, whole) == whole;
}

Forest residual_forest(const Tree& whole, const Tree& prefix) {
    std::vector<Tree> out;
    std::size_t wpos = 0;
    std::size_t ppos = 0;
    collect_residual(whole.preorder(), wpos, prefix.preorder(), ppos, out);
    return Forest(std::move(out));
}

WordTuple path_words(const Forest& f) {
    WordTuple out;
    out.reserve(f.leaf_count());
    for (const auto& t : f.trees()) {
        std::size_t pos = 0;
        words_of(t.preorder(), pos, Word{}, out);
    }
    return out;
}

WordTuple path_words(const Tree& t) { return path_words(Forest::of(t)); }

std::vector<Prefix> subrooted_trees(const Tree& t) {
    auto trees = prefix_trees(t);
    std::stable_sort(trees.begin(), trees.end(),
                     [](const Tree& x, const Tree& y) { return x.leaf_count() < y.leaf_count(); });
    std::vector<Prefix> out;
    out.reserve(trees.size());
    for (auto& z : trees) {
        Forest residual = residual_forest(t, z);
        Prefix p;
        p.internal_leaves = residual.nontrivial_count();
        p.words = path_words(residual);
        p.residual = std::move(residual);
        p.tree = std::move(z);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Tree> enumerate_trees(std::size_t n, std::size_t bound) {
    if (n == 0 || n > bound)
        throw ContractError("enumerate_trees: leaf count " + std::to_string(n) + " outside 1.." +
                            std::to_string(bound));
    std::vector<std::vector<Tree>> by_size(n + 1);
    by_size[1] = {Tree()};
    for (std::size_t size = 2; size <= n; ++size) {
        for (std::size_t left = 1; left < size; ++left)
            for (const auto& l : by_size[left])
                for (const auto& r : by_size[size - left]) by_size[size].push_back(Tree::caret(l, r));
    }
    return by_size[n];
}

std::vector<Forest> enumerate_forests(std::size_t m, std::size_t bound) {
    if (m == 0 || m > bound)
        throw ContractError("enumerate_forests: leaf count " + std::to_string(m) + " outside 1.." +
                            std::to_string(bound));
    // sequences[k] = all tree sequences with k leaves in total
    std::vector<std::vector<std::vector<Tree>>> sequences(m + 1);
    sequences[0] = {{}};
    std::vector<std::vector<Tree>> trees(m + 1);
    for (std::size_t k = 1; k <= m; ++k) trees[k] = enumerate_trees(k, bound);
    for (std::size_t total = 1; total <= m; ++total) {
        for (std::size_t first = 1; first <= total; ++first)
            for (const auto& t : trees[first])
                for (const auto& rest : sequences[total - first]) {
                    std::vector<Tree> seq{t};
                    seq.insert(seq.end(), rest.begin(), rest.end());
                    sequences[total].push_back(std::move(seq));
                }
    }
    std::vector<Forest> out;
    out.reserve(sequences[m].size());
    for (auto& seq : sequences[m]) out.emplace_back(std::move(seq));
    return out;
}

// Text -----------------------------------------------------------------------

Tree parse_tree(std::string_view text) {
    TextParser parser(text);
    Tree t = parser.tree();
    parser.skip_ws();
    if (!parser.at_end()) parser.fail("unexpected trailing input");
    return t;
}

Forest parse_forest(std::string_view text) {
    TextParser parser(text);
    std::vector<Tree> trees;
    for (;;) {
        trees.push_back(parser.tree());
        parser.skip_ws();
        if (parser.at_end()) break;
        if (parser.peek() != ';') parser.fail("expected ';' between trees");
        parser.advance();
    }
    return Forest(std::move(trees));
}

namespace {

void parenthesized(const std::string& code, std::size_t& pos, std::string& out) {
    if (code[pos++] == 'l') {
        out += '.';
        return;
    }
    out += '(';
    parenthesized(code, pos, out);
    out += ' ';
    parenthesized(code, pos, out);
    out += ')';
}

}  // namespace

std::string to_string(const Tree& t, TreeFormat format) {
    if (format == TreeFormat::parenthesized) {
        std::string out;
        std::size_t pos = 0;
        parenthesized(t.preorder(), pos, out);
        return out;
    }
    const auto factors = elementary_decomposition(t);
    if (factors.empty()) return ".";
    std::string out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (!out.empty()) out += ' ';
        out += 'f' + std::to_string(*it);
    }
    return out;
}

std::string to_string(const Forest& f, TreeFormat format) {
    std::string out;
    for (const auto& t : f.trees()) {
        if (!out.empty()) out += ';';
        out += to_string(t, format);
    }
    return out;
}

std::string to_string(const WordTuple& words) {
    std::string out = "(";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ',';
        out += words[i].empty() ? std::string("e") : words[i];
    }
    return out + ")";
}

}  // namespace thompson
