#pragma once

/**
 * @file ring.hpp
 * @brief Exact scalars: integer polynomials in α and the ring ℤ[α,β]/(α²+β²−1).
 *
 * β stands for √(1−α²). A RingElem is p(α) + β·q(α); products reduce β²
 * to 1−α² immediately, so the (p, q) pair is a normal form and equality is
 * coefficient-wise.
 */

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace thompson {

/// Dense integer polynomial in α, lowest degree first, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(long constant);  // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<mpz_class> coefficients);
    static Poly monomial(std::size_t degree, long coefficient = 1);

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }
    mpz_class coefficient(std::size_t degree) const;

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);

    Poly pow(std::size_t exponent) const;
    mpq_class evaluate(const mpq_class& x) const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

/// "2α^6 - 2α^4 + α^2"; `variable` names α.
std::string to_string(const Poly& p, const std::string& variable = "α");
/// "[0,0,1,0,-2,0,2]"
std::string to_coefficient_list(const Poly& p);

class RingElem {
public:
    RingElem() = default;
    RingElem(long constant) : p_(constant) {}  // NOLINT(google-explicit-constructor)
    RingElem(Poly p, Poly q = {}) : p_(std::move(p)), q_(std::move(q)) {}  // NOLINT

    static RingElem alpha() { return RingElem(Poly::monomial(1)); }
    static RingElem beta() { return RingElem(Poly{}, Poly(1)); }
    /// α^i β^j with β^2 reduced.
    static RingElem alpha_beta(std::size_t i, std::size_t j);

    const Poly& rational_part() const { return p_; }
    const Poly& beta_part() const { return q_; }
    bool is_beta_free() const { return q_.is_zero(); }
    bool is_zero() const { return p_.is_zero() && q_.is_zero(); }

    RingElem& operator+=(const RingElem& other);
    RingElem& operator-=(const RingElem& other);
    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    RingElem& operator*=(const RingElem& other) { return *this = *this * other; }

    RingElem pow(std::size_t exponent) const;
    /// Squared modulus |x|^2 = x·x for the real scalars used here.
    RingElem squared() const { return *this * *this; }

    /// Exact value at a rational α; throws ContractError when β is present.
    mpq_class evaluate(const mpq_class& alpha) const;

    friend bool operator==(const RingElem&, const RingElem&) = default;

private:
    Poly p_;
    Poly q_;
};

std::string to_string(const RingElem& x, const std::string& variable = "α");

/// (1 - α^2)
Poly one_minus_alpha_squared();

/// Parses "p/q" or an integer into an exact rational (throws ParseError).
mpq_class parse_rational(const std::string& text);
std::string to_string(const mpq_class& x);

}  // namespace thompson
