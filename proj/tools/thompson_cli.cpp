/**
 * @file thompson_cli.cpp
 * @brief Command-line front end: group arithmetic, φ_α tables, shift
 * representation coefficients and the oracle checks.
 *
 * Exit status: 0 success, 1 contract violation, 2 parse error, 3 internal error.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "thompson/errors.hpp"
#include "thompson/haagerup.hpp"
#include "thompson/io.hpp"
#include "thompson/kazhdan.hpp"
#include "thompson/oracles.hpp"

using namespace thompson;

namespace {

bool g_float = false;

std::string num(const mpq_class& x) {
    if (!g_float) return to_string(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x.get_d());
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A literal, or a file holding a list of them.
std::vector<VElement> elements_from(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return parse_element_list(read_file(arg));
    return {parse_element(arg)};
}

std::vector<mpq_class> parse_rational_list(const std::string& text) {
    std::vector<mpq_class> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_rational(item));
    if (out.empty()) throw ParseError("empty list", 0);
    return out;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ContractError("cannot write " + path);
    return file;
}

void print_element(const VElement& g, bool json) {
    if (json)
        std::cout << element_to_json(g).dump() << '\n';
    else
        std::cout << to_literal(g) << '\n';
}

void add_element_commands(CLI::App& app) {
    auto* element = app.add_subcommand("element", "Group arithmetic on element literals");
    element->require_subcommand(1);

    static std::vector<std::string> operands;
    static std::string at;
    static bool json = false;

    auto* reduce_cmd = element->add_subcommand("reduce", "Canonical reduced form");
    reduce_cmd->add_option("element", operands, "RANGE/DOMAIN~[perm] or a builtin name")->required()->expected(1);
    reduce_cmd->add_flag("--json", json, "Print the JSON object form");
    reduce_cmd->callback([] { print_element(parse_element(operands[0]), json); });

    auto* multiply_cmd = element->add_subcommand("multiply", "Product g1 g2 ... (rightmost acts first)");
    multiply_cmd->add_option("elements", operands)->required()->expected(2, 64);
    multiply_cmd->add_flag("--json", json, "Print the JSON object form");
    multiply_cmd->callback([] {
        VElement acc;
        for (const auto& s : operands) acc = multiply(acc, parse_element(s));
        print_element(acc, json);
    });

    auto* inverse_cmd = element->add_subcommand("inverse", "Group inverse");
    inverse_cmd->add_option("element", operands)->required()->expected(1);
    inverse_cmd->add_flag("--json", json, "Print the JSON object form");
    inverse_cmd->callback([] { print_element(inverse(parse_element(operands[0])), json); });

    auto* classify_cmd = element->add_subcommand("classify", "F, T_only or V_only");
    classify_cmd->add_option("element", operands)->required()->expected(1);
    classify_cmd->callback([] { std::cout << to_string(classify(parse_element(operands[0]))) << '\n'; });

    auto* eval_cmd = element->add_subcommand("eval", "Image of a dyadic point of [0,1)");
    eval_cmd->add_option("element", operands)->required()->expected(1);
    eval_cmd->add_option("--at", at, "Point k/2^e")->required();
    eval_cmd->callback([] {
        const Dyadic y = eval_pl(parse_element(operands[0]), parse_dyadic(at));
        if (g_float)
            std::cout << num(mpq_class(to_string(y))) << '\n';
        else
            std::cout << to_string(y) << '\n';
    });
}

void add_phi_commands(CLI::App& app) {
    static std::string element_arg, alpha_arg, alphas_arg, csv_path;
    static bool symbolic = false;

    auto* phi = app.add_subcommand("phi", "φ_α(g) as a polynomial or at a rational α");
    phi->add_option("--element", element_arg, "Element literal or file of literals")->required();
    auto* alpha_opt = phi->add_option("--alpha", alpha_arg, "Rational α in [0,1]");
    phi->add_flag("--symbolic", symbolic, "Print the polynomial in α")->excludes(alpha_opt);
    phi->callback([] {
        for (const auto& g : elements_from(element_arg)) {
            if (!alpha_arg.empty()) {
                std::cout << num(phi_alpha_eval(g, parse_rational(alpha_arg))) << '\n';
            } else {
                const RingElem p = phi_alpha(g);
                std::cout << to_string(p.rational_part()) << '\n';
                if (!symbolic) std::cout << "coefficients " << to_coefficient_list(p.rational_part()) << '\n';
            }
        }
    });

    static std::size_t max_leaves = 4;
    auto* scan = app.add_subcommand("scan-vanishing", "φ_α on every reduced F/T element up to a leaf count");
    scan->add_option("--alpha", alpha_arg, "Rational α in [0,1]")->required();
    scan->add_option("--max-leaves", max_leaves, "Largest leaf count")->check(CLI::Range(1, 7));
    scan->add_option("--csv", csv_path, "Write one row per element to this file");
    scan->callback([] {
        const ScanResult r = vanishing_scan(parse_rational(alpha_arg), max_leaves);
        std::cout << "n_leaves,count,expected,max_deviation,polynomial_mismatches\n";
        for (const auto& s : r.summary)
            std::cout << s.n_leaves << ',' << s.count << ',' << num(s.expected) << ',' << num(s.max_deviation) << ','
                      << s.polynomial_mismatches << '\n';
        if (!csv_path.empty()) {
            std::ofstream file;
            write_phi_csv(open_output(csv_path, file), r.rows);
        }
    });

    static std::string elements_file;
    auto* gram = app.add_subcommand("gram", "Exact positive semidefiniteness of [φ_α(g_i⁻¹g_j)]");
    gram->add_option("--elements", elements_file, "File with one literal per line, or a JSON array")->required();
    gram->add_option("--alpha", alpha_arg, "Rational α in [0,1]")->required();
    gram->callback([] {
        const auto elements = parse_element_list(read_file(elements_file));
        const GramResult r = gram_psd_check(elements, parse_rational(alpha_arg));
        std::cout << (r.is_psd() ? "PSD" : "NOT PSD") << '\n';
        std::cout << "pivots";
        for (const auto& p : r.factorization.pivots) std::cout << ' ' << num(p);
        std::cout << '\n';
        if (const auto& w = r.factorization.witness) {
            static const char* kinds[] = {"negative pivot", "zero pivot with nonzero coupling", "asymmetric"};
            std::cout << "witness " << kinds[static_cast<int>(w->kind)] << " at (" << w->row << ',' << w->column
                      << ") value " << num(w->value) << '\n';
        }
    });

    static std::string beta_arg;
    auto* farley = app.add_subcommand("farley", "Compare φ_α with α^{‖c(g)‖²}");
    farley->add_option("--element", element_arg, "Element literal or file")->required();
    farley->add_option("--beta", beta_arg, "Also print exp(-β)^{‖c(g)‖²} for this rational β");
    farley->callback([] {
        for (const auto& g : elements_from(element_arg)) {
            const std::size_t norm = farley_norm(g);
            std::cout << "norm " << norm << '\n';
            std::cout << "phi " << to_string(phi_alpha(g).rational_part()) << '\n';
            std::cout << "farley " << to_string(Poly::monomial(norm)) << '\n';
            std::cout << (phi_matches_farley(g) ? "match" : "differ") << '\n';
            if (!beta_arg.empty()) {
                const FarleyValue v = farley_phi(g, parse_rational(beta_arg));
                std::cout << "exp(-" << to_string(v.beta) << ")^" << v.exponent << " = " << v.approx() << '\n';
            }
        }
    });

    auto* sweep = app.add_subcommand("sweep", "φ_α(g) over a list of α values, as CSV");
    sweep->add_option("--element", element_arg, "Element literal or file")->required();
    sweep->add_option("--alphas", alphas_arg, "Comma-separated rationals")->required();
    sweep->add_option("--csv", csv_path, "Output file (default stdout)");
    sweep->callback([] {
        const auto alphas = parse_rational_list(alphas_arg);
        std::vector<PhiRow> rows;
        for (const auto& g : elements_from(element_arg)) {
            auto r = phi_sweep(g, alphas);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        std::ofstream file;
        write_phi_csv(open_output(csv_path, file), rows);
    });
}

void add_kazhdan_commands(CLI::App& app) {
    auto* kazhdan = app.add_subcommand("kazhdan", "Coefficients of the shift representation");
    kazhdan->require_subcommand(1);

    static std::size_t n = 0, m = 1;
    static std::string format = "csv", element_arg, levels;
    auto* kn = kazhdan->add_subcommand("kn", "⟨π(k_n)ξ, ξ⟩ with every component ζ_m");
    kn->add_option("--n", n, "Level of k_n")->check(CLI::Range(0, 4));
    kn->add_option("--m", m, "Index of ζ_m")->check(CLI::Range(1, 3));
    kn->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    kn->callback([] {
        const ScaledVec z = zeta(m);
        const std::vector<ScaledVec> xi(std::size_t{1} << n, z);
        const mpq_class c = kn_coefficient(n, z, xi);
        const mpq_class expected = kn_expected(z, xi);
        const bool ok = c == expected && kn_coefficient_direct(n, z, xi) == expected;
        if (format == "json") {
            std::cout << nlohmann::json{{"n", n}, {"m", m}, {"coefficient", num(c)}, {"expected", num(expected)},
                                        {"bound", "exact-match"}, {"satisfied", ok}}
                             .dump()
                      << '\n';
        } else {
            std::cout << "n,m,coefficient,expected,bound,satisfied\n"
                      << n << ',' << m << ',' << num(c) << ',' << num(expected) << ",exact-match,"
                      << (ok ? "true" : "false") << '\n';
        }
    });

    static bool strict = false;
    auto* ai = kazhdan->add_subcommand("almost-invariant", "⟨π(g)ξ_m, ξ_m⟩ against (1-8^-m)^(4^m)");
    ai->add_option("--element", element_arg, "Element literal")->required();
    ai->add_option("--m", levels, "m, or a comma-separated list")->required();
    ai->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    ai->add_flag("--strict", strict, "Reject elements outside the depth conditions");
    ai->callback([] {
        const VElement g = parse_element(element_arg);
        nlohmann::json rows = nlohmann::json::array();
        if (format == "csv") std::cout << "m,coefficient,bound,satisfied,domain_fits,range_fits\n";
        for (const auto& level : parse_rational_list(levels)) {
            if (level.get_den() != 1 || level < 1) throw ContractError("m must be a positive integer");
            const AlmostInvariance r = almost_invariance(g, level.get_num().get_ui(), strict);
            if (format == "json") {
                rows.push_back({{"m", r.m}, {"coefficient", num(r.coefficient)}, {"bound", num(r.bound)},
                                {"satisfied", r.satisfied}, {"domain_fits", r.domain_fits},
                                {"range_fits", r.range_fits}});
            } else {
                std::cout << r.m << ',' << num(r.coefficient) << ',' << num(r.bound) << ',' << std::boolalpha
                          << r.satisfied << ',' << r.domain_fits << ',' << r.range_fits << '\n';
            }
        }
        if (format == "json") std::cout << rows.dump() << '\n';
    });
}

void add_oracle_commands(CLI::App& app) {
    auto* oracle = app.add_subcommand("oracle", "Exhaustive and randomized consistency checks (JSON report)");
    oracle->require_subcommand(1);

    static std::size_t bound = 0, samples = 500;
    static std::uint64_t seed = 42;
    auto emit = [](const OracleReport& r) {
        std::cout << report_to_json(r).dump() << '\n';
        if (r.violations != 0)
            for (const auto& s : r.samples) std::cerr << "violation: " << s << '\n';
    };

    auto* words = oracle->add_subcommand("word-injectivity", "Word tuples of distinct trees never match");
    words->add_option("--bound", bound, "Largest leaf count (default 8)");
    words->callback([emit] { emit(check_word_injectivity(bound ? bound : 8)); });

    auto* cyclic = oracle->add_subcommand("cyclic-forest", "Rotation-matched forests are rotations of each other");
    cyclic->add_option("--bound", bound, "Largest leaf count (default 6)");
    cyclic->callback([emit] { emit(check_cyclic_forest_lemma(bound ? bound : 6)); });

    auto* parity = oracle->add_subcommand("parity", "Nonzero terms pair prefixes with equal m");
    parity->add_option("--bound", bound, "Largest leaf count of the exhaustive sample (default 5)")
        ->check(CLI::Range(1, 6));
    parity->callback([emit] {
        std::vector<VElement> all;
        for (std::size_t k = 1; k <= (bound ? bound : 5); ++k) {
            auto e = all_elements(k);
            all.insert(all.end(), e.begin(), e.end());
        }
        OracleReport r = check_term_parity(all);
        r.bound = bound ? bound : 5;
        emit(r);
    });

    auto* reduction = oracle->add_subcommand("reduction", "Canonical forms are sound and minimal");
    reduction->add_option("--bound", samples, "Number of random products (default 500)");
    reduction->add_option("--seed", seed, "Random seed (default 42)");
    reduction->callback([emit] { emit(check_reduction_soundness(samples, seed)); });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thompson groups F, T, V: exact representation coefficients"};
    app.require_subcommand(1);
    app.add_flag("--float", g_float, "Print rationals as decimals");
    add_element_commands(app);
    add_phi_commands(app);
    add_kazhdan_commands(app);
    add_oracle_commands(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
