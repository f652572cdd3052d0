#ifndef LOCUS_NUMERICS_HPP
#define LOCUS_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace locus {

/// Neumaier compensated accumulator; order-stable to ~1 ulp of the running
/// sum, used for all floating-point weight sums.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct ExtrapolationResult {
    double value = 0.0;       // extrapolant at abscissa 0
    double error_estimate = 0.0;  // |difference of the last two tableau columns|
    bool converged = false;
};

/// Polynomial (Neville) extrapolation of samples (x_i, y_i) to x = 0.
/// The abscissae must be distinct and positive; pass x_i = t_i or t_i^2
/// depending on the parity of the underlying expansion.
ExtrapolationResult extrapolate_to_zero(std::span<const double> x,
                                        std::span<const double> y,
                                        double tol);

/// k-th derivative of f at x by central differences with step-halving
/// Richardson extrapolation (error expansion in h^2).
ExtrapolationResult central_derivative(const std::function<double(double)>& f,
                                       double x, int k, double h0, double tol);

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(int n);

/// Least-squares polynomial fit of degree <= deg on the given samples,
/// returning monomial coefficients (index = power) of the polynomial in the
/// affinely rescaled variable u in [-1,1]; `residual` is the max abs
/// deviation over the samples.  Normal equations are assembled in a
/// Chebyshev basis to keep them well conditioned at the degrees used here.
struct PolyFit {
    std::vector<double> cheb_coeffs;  // Chebyshev-basis coefficients on [-1,1]
    double x_lo = 0.0, x_hi = 1.0;    // affine map from [x_lo,x_hi] to [-1,1]
    double residual = 0.0;
    double evaluate(double x) const;
};

PolyFit fit_polynomial(std::span<const double> x, std::span<const double> y, int deg);

} // namespace locus

#endif
