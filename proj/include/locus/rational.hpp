#ifndef LOCUS_RATIONAL_HPP
#define LOCUS_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace locus {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (zero is 0/1).  Backed by GMP's mpq layer; this
/// wrapper pins the canonical-form invariant at every construction site.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(long long n) { v_ = from_ll(n); }

    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    /// Accepts "p", "p/q", optional leading '-'.
    static Rational parse(std::string_view s) {
        try {
            mpq_class q(std::string(s), 10);
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
            q.canonicalize();
            return Rational(q, already_canonical_tag{});
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational::parse: bad literal '" + std::string(s) + "'");
        }
    }

    static Rational factorial(unsigned n) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(mpq_class(f), already_canonical_tag{});
    }

    static Rational binomial(unsigned n, unsigned k) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, k);
        return Rational(mpq_class(b), already_canonical_tag{});
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_negative() const { return sgn(v_) < 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(-v_, already_canonical_tag{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
        return Rational(1 / v_, already_canonical_tag{});
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e < 0) throw std::invalid_argument("Rational: 0^negative");
            return Rational();
        }
        mpz_class nn, dd;
        unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
        mpz_pow_ui(nn.get_mpz_t(), v_.get_num().get_mpz_t(), ae);
        mpz_pow_ui(dd.get_mpz_t(), v_.get_den().get_mpz_t(), ae);
        mpq_class r(nn, dd);
        r.canonicalize();
        if (e < 0) r = 1 / r;
        return Rational(r, already_canonical_tag{});
    }

    Rational abs() const { return is_negative() ? -*this : *this; }

    double to_double() const { return v_.get_d(); }

    /// Exact conversion; throws unless the value is an integer fitting long long.
    long long to_ll() const {
        if (!is_integer()) throw std::domain_error("Rational::to_ll: not an integer");
        mpz_class n = v_.get_num();
        if (!n.fits_slong_p()) {
            // fall back through string for the (rare) long-long-but-not-long case
            return std::stoll(n.get_str());
        }
        return n.get_si();
    }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

private:
    struct already_canonical_tag {};
    Rational(mpq_class q, already_canonical_tag) : v_(std::move(q)) {}
    static mpq_class from_ll(long long n) {
        if (n >= static_cast<long long>(std::numeric_limits<long>::min()) &&
            n <= static_cast<long long>(std::numeric_limits<long>::max()))
            return mpq_class(static_cast<long>(n));
        return mpq_class(mpz_class(std::to_string(n)));
    }

    mpq_class v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational invert(const Rational& r) { return r.inverse(); }
inline Rational scale(const Rational& r, const Rational& s) { return r * s; }
inline double to_double(const Rational& r) { return r.to_double(); }

} // namespace locus

#endif
