#ifndef LOCUS_GRADED_POLY_HPP
#define LOCUS_GRADED_POLY_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "locus/rational.hpp"

namespace locus {

/// Variable table for a graded polynomial ring: each formal variable
/// carries a positive degree (p_i has degree 4i, Chern roots and divisor
/// classes have degree 2 or 1 depending on the module's convention).
struct VarTable {
    std::vector<std::string> names;
    std::vector<int> degrees;

    int size() const { return static_cast<int>(names.size()); }

    int weighted_degree(const std::vector<int>& mono) const {
        int d = 0;
        for (std::size_t i = 0; i < mono.size(); ++i) d += mono[i] * degrees[i];
        return d;
    }
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vars(std::vector<std::string> names, std::vector<int> degrees) {
    if (names.size() != degrees.size())
        throw std::invalid_argument("VarTable: names/degrees size mismatch");
    for (int d : degrees)
        if (d <= 0) throw std::invalid_argument("VarTable: degrees must be positive");
    auto t = std::make_shared<VarTable>();
    t->names = std::move(names);
    t->degrees = std::move(degrees);
    return t;
}

/// Sparse polynomial over a fixed graded variable table, with an optional
/// cap on the weighted total degree (monomials above the cap are dropped
/// on every operation, which makes variables nilpotent and elements with
/// a nonzero scalar part invertible).
///
/// A default-constructed instance is a universal zero: it has no variable
/// table and combines with any other element.
template <class C>
class GradedPoly {
public:
    static constexpr int no_cap = -1;

    GradedPoly() : vars_(nullptr), cap_(no_cap) {}
    explicit GradedPoly(const Rational& c) : vars_(nullptr), cap_(no_cap) {
        if (!c.is_zero()) terms_[std::vector<int>{}] = C(c);
    }

    GradedPoly(VarTablePtr vars, int cap = no_cap) : vars_(std::move(vars)), cap_(cap) {}

    static GradedPoly constant(VarTablePtr vars, C value, int cap = no_cap) {
        GradedPoly p(std::move(vars), cap);
        if (!is_zero(value)) p.terms_[std::vector<int>(p.vars_->size(), 0)] = std::move(value);
        return p;
    }

    static GradedPoly variable(VarTablePtr vars, int index, int cap = no_cap) {
        GradedPoly p(vars, cap);
        if (index < 0 || index >= vars->size())
            throw std::invalid_argument("GradedPoly: variable index out of range");
        std::vector<int> mono(vars->size(), 0);
        mono[index] = 1;
        if (cap == no_cap || vars->degrees[index] <= cap) p.terms_[mono] = C(Rational(1));
        return p;
    }

    const VarTablePtr& vars() const { return vars_; }
    int cap() const { return cap_; }
    const std::map<std::vector<int>, C>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }

    bool is_scalar() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
    }

    C coeff(const std::vector<int>& mono) const {
        auto it = terms_.find(normalize_mono(mono));
        return it == terms_.end() ? C() : it->second;
    }

    C scalar_part() const {
        if (!vars_) return terms_.empty() ? C() : terms_.begin()->second;
        return coeff(std::vector<int>(vars_->size(), 0));
    }

    void set_coeff(std::vector<int> mono, C v) {
        mono = normalize_mono(std::move(mono));
        if (cap_ != no_cap && mono_degree(mono) > cap_) return;
        if (is_zero(v))
            terms_.erase(mono);
        else
            terms_[std::move(mono)] = std::move(v);
    }

    int min_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int md = mono_degree(m);
            if (d < 0 || md < d) d = md;
        }
        return d < 0 ? 0 : d;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }

    GradedPoly homogeneous_part(int degree) const {
        GradedPoly r(vars_, cap_);
        for (const auto& [m, c] : terms_)
            if (mono_degree(m) == degree) r.terms_.emplace(m, c);
        return r;
    }

    GradedPoly with_cap(int cap) const {
        GradedPoly r(vars_, cap);
        for (const auto& [m, c] : terms_)
            if (cap == no_cap || mono_degree(m) <= cap) r.terms_.emplace(m, c);
        return r;
    }

    GradedPoly operator-() const {
        GradedPoly r(vars_, cap_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
        auto [vars, cap] = joint_context(a, b);
        GradedPoly r(vars, cap);
        auto add_all = [&](const GradedPoly& src) {
            for (const auto& [m, c] : src.terms_) {
                std::vector<int> mono = r.normalize_mono(m);
                if (cap != no_cap && r.mono_degree(mono) > cap) continue;
                auto it = r.terms_.find(mono);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(std::move(mono), c);
                } else {
                    it->second = it->second + c;
                    if (is_zero(it->second)) r.terms_.erase(it);
                }
            }
        };
        add_all(a);
        add_all(b);
        return r;
    }

    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return a + (-b); }

    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
        auto [vars, cap] = joint_context(a, b);
        GradedPoly r(vars, cap);
        int n = vars ? vars->size() : 0;
        for (const auto& [ma, ca] : a.terms_) {
            std::vector<int> maN = r.normalize_mono(ma);
            for (const auto& [mb, cb] : b.terms_) {
                std::vector<int> m = maN;
                std::vector<int> mbN = r.normalize_mono(mb);
                for (int i = 0; i < n; ++i) m[i] += mbN[i];
                if (cap != no_cap && r.mono_degree(m) > cap) continue;
                C prod = ca * cb;
                if (is_zero(prod)) continue;
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(std::move(m), std::move(prod));
                } else {
                    it->second = it->second + prod;
                    if (is_zero(it->second)) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    GradedPoly scaled(const Rational& s) const {
        GradedPoly r(vars_, cap_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) {
            C v = scale(c, s);
            if (!is_zero(v)) r.terms_.emplace(m, std::move(v));
        }
        return r;
    }

    /// exp of an element with zero scalar part; requires a finite cap so
    /// that the sum terminates (variables are nilpotent under the cap).
    GradedPoly exp() const {
        if (!is_zero(scalar_part()))
            throw std::invalid_argument("GradedPoly::exp: nonzero scalar part");
        if (terms_.empty()) {
            GradedPoly r(vars_, cap_);
            if (vars_) r = constant(vars_, C(Rational(1)), cap_);
            else r = GradedPoly(Rational(1));
            return r;
        }
        if (cap_ == no_cap)
            throw std::invalid_argument("GradedPoly::exp: requires a degree cap");
        GradedPoly r = constant(vars_, C(Rational(1)), cap_);
        GradedPoly pw = r;
        int v = min_degree();
        int steps = v > 0 ? cap_ / v : 0;
        for (int n = 1; n <= steps; ++n) {
            pw = pw * (*this);
            if (pw.is_zero_poly()) break;
            r = r + pw.scaled(Rational::factorial(static_cast<unsigned>(n)).inverse());
        }
        return r;
    }

    /// Ring inverse of an element with invertible scalar part (the
    /// positive-degree remainder is nilpotent thanks to the cap).
    GradedPoly inverse() const {
        C s0 = scalar_part();
        if (is_zero(s0)) throw std::invalid_argument("GradedPoly::inverse: zero scalar part");
        if (is_scalar()) {
            if (!vars_) return GradedPoly(Rational(1)) * constant_from(invert(s0));
            return constant(vars_, invert(s0), cap_);
        }
        if (cap_ == no_cap)
            throw std::invalid_argument("GradedPoly::inverse: requires a degree cap");
        C s0inv = invert(s0);
        GradedPoly u = (*this).scaled_coeff(s0inv);   // u = 1 + nilpotent n
        GradedPoly nilp = u - constant(vars_, C(Rational(1)), cap_);
        GradedPoly r = constant(vars_, C(Rational(1)), cap_);
        GradedPoly pw = r;
        int v = nilp.is_zero_poly() ? 0 : nilp.min_degree();
        int steps = v > 0 ? cap_ / v : 0;
        for (int n = 1; n <= steps; ++n) {
            pw = pw * nilp;
            if (pw.is_zero_poly()) break;
            r = (n % 2 == 1) ? r - pw : r + pw;
        }
        return r.scaled_coeff(s0inv);
    }

    /// Multiplies every coefficient by a ring element of C.
    GradedPoly scaled_coeff(const C& f) const {
        GradedPoly r(vars_, cap_);
        for (const auto& [m, c] : terms_) {
            C v = c * f;
            if (!is_zero(v)) r.terms_.emplace(m, std::move(v));
        }
        return r;
    }

    /// Substitutes numeric values for all variables.
    C evaluate(const std::vector<Rational>& values) const {
        if (vars_ && static_cast<int>(values.size()) != vars_->size())
            throw std::invalid_argument("GradedPoly::evaluate: wrong number of values");
        C acc{};
        for (const auto& [m, c] : terms_) {
            Rational mv(1);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) mv *= values[i].pow(m[i]);
            acc = acc + scale(c, mv);
        }
        return acc;
    }

    friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
        return (a - b).is_zero_poly();
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            os << "(" << coeff_str(c) << ")";
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                os << "*" << vars_->names[i];
                if (m[i] > 1) os << "^" << m[i];
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    int mono_degree(const std::vector<int>& m) const {
        if (!vars_) return 0;
        return vars_->weighted_degree(m);
    }

private:
    static GradedPoly constant_from(C v) {
        GradedPoly p;
        if (!is_zero(v)) p.terms_[std::vector<int>{}] = std::move(v);
        return p;
    }

    std::vector<int> normalize_mono(std::vector<int> m) const {
        std::size_t n = vars_ ? static_cast<std::size_t>(vars_->size()) : m.size();
        m.resize(n, 0);
        return m;
    }

    static std::pair<VarTablePtr, int> joint_context(const GradedPoly& a, const GradedPoly& b) {
        VarTablePtr vars = a.vars_ ? a.vars_ : b.vars_;
        if (a.vars_ && b.vars_ && a.vars_ != b.vars_)
            throw std::invalid_argument("GradedPoly: variable table mismatch");
        int cap;
        if (a.cap_ == no_cap) cap = b.cap_;
        else if (b.cap_ == no_cap) cap = a.cap_;
        else cap = std::min(a.cap_, b.cap_);
        return {vars, cap};
    }

    template <class T>
    static std::string coeff_str(const T& c) {
        if constexpr (requires { c.str(); })
            return c.str();
        else
            return "?";
    }

    VarTablePtr vars_;
    int cap_;
    std::map<std::vector<int>, C> terms_;
};

template <class C>
bool is_zero(const GradedPoly<C>& p) {
    return p.is_zero_poly();
}

template <class C>
GradedPoly<C> invert(const GradedPoly<C>& p) {
    return p.inverse();
}

template <class C>
GradedPoly<C> scale(const GradedPoly<C>& p, const Rational& s) {
    return p.scaled(s);
}

using GradedPolynomial = GradedPoly<Rational>;

} // namespace locus

#endif
