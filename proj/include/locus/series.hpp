#ifndef LOCUS_SERIES_HPP
#define LOCUS_SERIES_HPP

#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "locus/rational.hpp"

namespace locus {

/// Truncated power series in one named variable with sparse exact
/// coefficients.  `order` is the truncation: exponents >= order are
/// discarded, and binary operations truncate to the minimum order of the
/// operands, so a result always records the order to which it is valid.
///
/// The coefficient ring C may be Rational, GradedPoly<...>, or another
/// Series (nesting gives multivariate towers such as t-polynomials with
/// q-series coefficients).  C must be default-constructible (the default
/// value acts as zero) and provide, via ADL: is_zero(C), invert(C) where
/// needed, scale(C, Rational), and ring operators + - *.
template <class C>
class Series {
public:
    /// Sentinel order for exact elements (constants, fresh variables):
    /// combines with any truncated operand without clamping it.
    static constexpr int unbounded = std::numeric_limits<int>::max();

    Series() : var_(), order_(unbounded) {}

    Series(std::string var, int order) : var_(std::move(var)), order_(order) {
        if (order < 0) throw std::invalid_argument("Series: negative order");
    }

    static Series constant(std::string var, C value, int order = unbounded) {
        Series s(std::move(var), order);
        s.set_coeff(0, std::move(value));
        return s;
    }

    static Series variable(std::string var, int order = unbounded) {
        Series s(std::move(var), order);
        s.set_coeff(1, C(Rational(1)));
        return s;
    }

    const std::string& var() const { return var_; }
    int order() const { return order_; }
    bool empty() const { return coef_.empty(); }
    const std::map<int, C>& coeffs() const { return coef_; }

    C coeff(int k) const {
        auto it = coef_.find(k);
        return it == coef_.end() ? C() : it->second;
    }

    void set_coeff(int k, C v) {
        if (k < 0) throw std::invalid_argument("Series: negative exponent");
        if (k >= order_) return;
        if (is_zero(v))
            coef_.erase(k);
        else
            coef_[k] = std::move(v);
    }

    bool is_zero_series() const { return coef_.empty(); }

    bool is_constant() const {
        return coef_.empty() || (coef_.size() == 1 && coef_.begin()->first == 0);
    }

    /// Lowest exponent with a nonzero coefficient; order() if none.
    int valuation() const { return coef_.empty() ? order_ : coef_.begin()->first; }

    Series truncated(int new_order) const {
        Series r(var_, new_order);
        for (const auto& [k, c] : coef_) {
            if (k >= new_order) break;
            r.coef_.emplace(k, c);
        }
        return r;
    }

    Series operator-() const {
        Series r(var_, order_);
        for (const auto& [k, c] : coef_) r.coef_.emplace(k, -c);
        return r;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int ord = joint_order(a, b);
        Series r(join_var(a, b), ord);
        for (const auto& [k, c] : a.coef_) if (k < ord) r.coef_[k] = c;
        for (const auto& [k, c] : b.coef_) {
            if (k >= ord) continue;
            auto it = r.coef_.find(k);
            if (it == r.coef_.end()) {
                r.coef_.emplace(k, c);
            } else {
                it->second = it->second + c;
                if (is_zero(it->second)) r.coef_.erase(it);
            }
        }
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b) {
        int ord = joint_order(a, b);
        Series r(join_var(a, b), ord);
        for (const auto& [i, ca] : a.coef_) {
            if (i >= ord) break;
            for (const auto& [j, cb] : b.coef_) {
                if (i + j >= ord) break;
                C prod = ca * cb;
                if (is_zero(prod)) continue;
                auto it = r.coef_.find(i + j);
                if (it == r.coef_.end()) {
                    r.coef_.emplace(i + j, std::move(prod));
                } else {
                    it->second = it->second + prod;
                    if (is_zero(it->second)) r.coef_.erase(it);
                }
            }
        }
        return r;
    }

    /// Exact division: b must have an invertible constant term.
    friend Series operator/(const Series& a, const Series& b) {
        int ord = joint_order(a, b);
        if (ord == unbounded && !(a.is_constant() && b.is_constant()))
            throw std::invalid_argument("Series: division of untruncated non-constant series");
        C b0 = b.coeff(0);
        if (is_zero(b0))
            throw std::invalid_argument("Series: division by series with zero constant term");
        C b0inv = invert(b0);
        Series r(join_var(a, b), ord);
        if (ord == unbounded) {  // constant/constant
            C v = a.coeff(0) * b0inv;
            r.set_coeff(0, std::move(v));
            return r;
        }
        // c_n = b0^{-1} (a_n - sum_{k<n} c_k b_{n-k})
        for (int n = 0; n < ord; ++n) {
            C acc = a.coeff(n);
            for (const auto& [k, ck] : r.coef_) {
                if (k >= n) break;
                C bk = b.coeff(n - k);
                if (!is_zero(bk)) acc = acc - ck * bk;
            }
            C cn = acc * b0inv;
            if (!is_zero(cn)) r.coef_.emplace(n, std::move(cn));
        }
        return r;
    }

    Series scaled(const Rational& s) const {
        Series r(var_, order_);
        if (s.is_zero()) return r;
        for (const auto& [k, c] : coef_) {
            C v = scale(c, s);
            if (!is_zero(v)) r.coef_.emplace(k, std::move(v));
        }
        return r;
    }

    /// Substitutes b into this series; b must have zero constant term.
    /// The variable of b may differ from this one (change of variable).
    Series compose(const Series& b) const {
        if (!is_zero(b.coeff(0)))
            throw std::invalid_argument("Series::compose: inner series has nonzero constant term");
        int ord = order_ < b.order() ? order_ : b.order();
        if (ord == unbounded && !is_constant())
            throw std::invalid_argument("Series::compose: untruncated outer series");
        Series r(b.var(), ord);
        // Horner from the top exponent down.
        if (coef_.empty()) return r;
        int top = coef_.rbegin()->first;
        for (int k = top; k >= 0; --k) {
            r = r * b;
            C ck = coeff(k);
            if (!is_zero(ck)) {
                Series term = Series::constant(b.var(), std::move(ck), ord);
                r = r + term;
            }
        }
        return r;
    }

    Series derivative() const {
        Series r(var_, order_ == unbounded ? unbounded : order_ - 1 >= 0 ? order_ - 1 : 0);
        for (const auto& [k, c] : coef_) {
            if (k == 0) continue;
            r.set_coeff(k - 1, scale(c, Rational(k)));
        }
        return r;
    }

    /// exp of a series with zero constant term.
    Series exp() const {
        if (!is_zero(coeff(0)))
            throw std::invalid_argument("Series::exp: nonzero constant term");
        if (order_ == unbounded) {
            if (!is_zero_series())
                throw std::invalid_argument("Series::exp: untruncated non-constant series");
            return Series::constant(var_, C(Rational(1)));
        }
        Series r = Series::constant(var_, C(Rational(1)), order_);
        Series pw = Series::constant(var_, C(Rational(1)), order_);
        int steps = valuation() > 0 ? (order_ - 1) / valuation() : 0;
        for (int n = 1; n <= steps; ++n) {
            pw = pw * (*this);
            if (pw.is_zero_series()) break;
            r = r + pw.scaled(Rational::factorial(static_cast<unsigned>(n)).inverse());
        }
        return r;
    }

    /// log of a series with constant term one.
    Series log() const {
        C c0 = coeff(0);
        C delta = c0 - C(Rational(1));
        if (!is_zero(delta))
            throw std::invalid_argument("Series::log: constant term is not 1");
        if (order_ == unbounded) {
            if (!is_constant())
                throw std::invalid_argument("Series::log: untruncated non-constant series");
            return Series(var_, unbounded);
        }
        Series u = *this - Series::constant(var_, C(Rational(1)), order_);
        Series r(var_, order_);
        Series pw = Series::constant(var_, C(Rational(1)), order_);
        int steps = u.valuation() > 0 ? (order_ - 1) / u.valuation() : 0;
        for (int n = 1; n <= steps; ++n) {
            pw = pw * u;
            if (pw.is_zero_series()) break;
            r = r + pw.scaled(Rational(n % 2 == 1 ? 1 : -1, n));
        }
        return r;
    }

    /// Compositional inverse: returns b with (*this)(b(y)) = y up to the
    /// truncation order.  Requires zero constant term and an invertible
    /// linear coefficient.
    Series revert() const {
        if (!is_zero(coeff(0)))
            throw std::invalid_argument("Series::revert: nonzero constant term");
        C c1 = coeff(1);
        if (is_zero(c1))
            throw std::invalid_argument("Series::revert: zero linear coefficient");
        if (order_ == unbounded) {
            if (coef_.size() == 1) {  // pure c1*x
                Series b(var_, unbounded);
                b.set_coeff(1, invert(c1));
                return b;
            }
            throw std::invalid_argument("Series::revert: untruncated non-linear series");
        }
        Series b(var_, order_);
        b.set_coeff(1, invert(c1));
        // Triangular solve: the y^k coefficient of a(b) is c1*b_k + known terms.
        C c1inv = invert(c1);
        for (int k = 2; k < order_; ++k) {
            Series comp = this->truncated(k + 1).compose(b.truncated(k + 1));
            C resid = comp.coeff(k);
            if (!is_zero(resid)) b.set_coeff(k, -(resid * c1inv));
        }
        return b;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.order_ == b.order_ && a.coef_ == b.coef_;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : coef_) {
            if (!first) os << " + ";
            os << "(" << coeff_str(c) << ")";
            if (k > 0) os << "*" << var_ << "^" << k;
            first = false;
        }
        if (first) os << "0";
        if (order_ != unbounded) os << " + O(" << var_ << "^" << order_ << ")";
        return os.str();
    }

private:
    static int joint_order(const Series& a, const Series& b) {
        if (!a.var_.empty() && !b.var_.empty() && a.var_ != b.var_)
            throw std::invalid_argument("Series: variable mismatch '" + a.var_ + "' vs '" + b.var_ + "'");
        return a.order_ < b.order_ ? a.order_ : b.order_;
    }
    static std::string join_var(const Series& a, const Series& b) {
        return a.var_.empty() ? b.var_ : a.var_;
    }
    template <class T>
    static std::string coeff_str(const T& c) {
        if constexpr (requires { c.str(); })
            return c.str();
        else
            return "?";
    }

    std::string var_;
    int order_;
    std::map<int, C> coef_;
};

template <class C>
bool is_zero(const Series<C>& s) {
    return s.is_zero_series();
}

/// Ring inverse of a series (invertible constant term required).
template <class C>
Series<C> invert(const Series<C>& s) {
    Series<C> one = Series<C>::constant(s.var(), C(Rational(1)), s.order());
    return one / s;
}

template <class C>
Series<C> scale(const Series<C>& s, const Rational& r) {
    return s.scaled(r);
}

using QSeries = Series<Rational>;

/// exp(x) as a truncated series, 1 + x + x^2/2 + ...
inline QSeries exp_series(const std::string& var, int order) {
    QSeries x = QSeries::variable(var, order);
    return x.exp();
}

/// log(1+x) as a truncated series.
inline QSeries log1p_series(const std::string& var, int order) {
    QSeries s = QSeries::constant(var, Rational(1), order);
    QSeries x = QSeries::variable(var, order);
    return (s + x).log();
}

} // namespace locus

#endif
