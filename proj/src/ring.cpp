#include "thompson/ring.hpp"

#include <algorithm>
#include <cctype>

#include "thompson/errors.hpp"

namespace thompson {

Poly::Poly(long constant) {
    if (constant != 0) coeffs_.emplace_back(constant);
}

Poly::Poly(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly Poly::monomial(std::size_t degree, long coefficient) {
    std::vector<mpz_class> c(degree + 1, 0);
    c[degree] = coefficient;
    return Poly(std::move(c));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class Poly::coefficient(std::size_t degree) const {
    return degree < coeffs_.size() ? coeffs_[degree] : mpz_class(0);
}

Poly& Poly::operator+=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly operator-(const Poly& a) {
    Poly out = a;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Poly Poly::pow(std::size_t exponent) const {
    Poly result(1);
    Poly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent) base *= base;
    }
    return result;
}

mpq_class Poly::evaluate(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    acc.canonicalize();
    return acc;
}

std::string to_string(const Poly& p, const std::string& variable) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        mpz_class magnitude = abs(c[k]);
        if (out.empty()) {
            if (c[k] < 0) out += "-";
        } else {
            out += c[k] < 0 ? " - " : " + ";
        }
        if (k == 0 || magnitude != 1) out += magnitude.get_str();
        if (k >= 1) out += variable;
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

std::string to_coefficient_list(const Poly& p) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
        if (k) out += ',';
        out += p.coefficients()[k].get_str();
    }
    return out + "]";
}

Poly one_minus_alpha_squared() { return Poly(std::vector<mpz_class>{1, 0, -1}); }

RingElem RingElem::alpha_beta(std::size_t i, std::size_t j) {
    Poly base = Poly::monomial(i) * one_minus_alpha_squared().pow(j / 2);
    if (j % 2 == 0) return RingElem(std::move(base));
    return RingElem(Poly{}, std::move(base));
}

RingElem& RingElem::operator+=(const RingElem& other) {
    p_ += other.p_;
    q_ += other.q_;
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& other) {
    p_ -= other.p_;
    q_ -= other.q_;
    return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    // (p1 + βq1)(p2 + βq2) = p1p2 + (1-α²)q1q2 + β(p1q2 + q1p2)
    Poly p = a.p_ * b.p_;
    if (!a.q_.is_zero() && !b.q_.is_zero()) p += one_minus_alpha_squared() * (a.q_ * b.q_);
    Poly q = a.p_ * b.q_ + a.q_ * b.p_;
    return RingElem(std::move(p), std::move(q));
}

RingElem RingElem::pow(std::size_t exponent) const {
    RingElem result(1);
    RingElem base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent) base *= base;
    }
    return result;
}

mpq_class RingElem::evaluate(const mpq_class& alpha) const {
    if (!is_beta_free())
        throw ContractError("evaluate: value involves sqrt(1-alpha^2) and is not rational");
    return p_.evaluate(alpha);
}

std::string to_string(const RingElem& x, const std::string& variable) {
    if (x.is_beta_free()) return to_string(x.rational_part(), variable);
    std::string out = x.rational_part().is_zero() ? "" : to_string(x.rational_part(), variable) + " + ";
    return out + "β·(" + to_string(x.beta_part(), variable) + ")";
}

mpq_class parse_rational(const std::string& text) {
    std::size_t pos = 0;
    auto integer = [&](bool allow_sign) {
        const std::size_t start = pos;
        if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        const std::size_t digits_at = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits_at) throw ParseError("expected digits", pos);
        return mpz_class(text.substr(start, pos - start)[0] == '+' ? text.substr(start + 1, pos - start - 1)
                                                                    : text.substr(start, pos - start));
    };
    const mpz_class num = integer(true);
    mpz_class den = 1;
    if (pos < text.size()) {
        if (text[pos] != '/') throw ParseError("expected '/'", pos);
        ++pos;
        const std::size_t at = pos;
        den = integer(false);
        if (den == 0) throw ParseError("zero denominator", at);
    }
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

std::string to_string(const mpq_class& x) { return x.get_str(); }

}  // namespace thompson
