#include "locus/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace locus {

ExtrapolationResult extrapolate_to_zero(std::span<const double> x,
                                        std::span<const double> y,
                                        double tol) {
    std::size_t n = x.size();
    if (n == 0 || y.size() != n)
        throw std::invalid_argument("extrapolate_to_zero: bad sample sizes");
    ExtrapolationResult res;
    if (n == 1) {
        res.value = y[0];
        res.error_estimate = std::abs(y[0]);
        res.converged = false;
        return res;
    }
    // Neville tableau evaluated at 0, keeping only the current column.
    std::vector<double> col(y.begin(), y.end());
    double last_top = col[0];
    double err = std::abs(col[0]);
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            double xi = x[i], xim = x[i + m];
            if (xi == xim) throw std::invalid_argument("extrapolate_to_zero: repeated abscissa");
            col[i] = (xi * col[i + 1] - xim * col[i]) / (xi - xim);
        }
        err = std::abs(col[0] - last_top);
        last_top = col[0];
    }
    res.value = col[0];
    res.error_estimate = err;
    res.converged = err <= tol;
    return res;
}

ExtrapolationResult central_derivative(const std::function<double(double)>& f,
                                       double x, int k, double h0, double tol) {
    if (k < 1 || k > 4) throw std::invalid_argument("central_derivative: order 1..4 supported");
    if (h0 <= 0) throw std::invalid_argument("central_derivative: h0 must be positive");
    auto stencil = [&](double h) -> double {
        switch (k) {
            case 1: return (f(x + h) - f(x - h)) / (2 * h);
            case 2: return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
            case 3: return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
            default:
                return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) /
                       (h * h * h * h);
        }
    };
    const int levels = 7;
    std::vector<double> hs(levels), vals(levels);
    double h = h0;
    for (int i = 0; i < levels; ++i) {
        if (h * h * h * h < 1e-300)
            throw std::invalid_argument("central_derivative: step size underflow");
        hs[i] = h * h;  // error expansion in h^2
        vals[i] = stencil(h);
        h /= 2;
    }
    return extrapolate_to_zero(hs, vals, tol);
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double PolyFit::evaluate(double x) const {
    double u = (2 * x - x_lo - x_hi) / (x_hi - x_lo);
    // Clenshaw in the Chebyshev basis.
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = cheb_coeffs.size(); j-- > 1;) {
        double b0 = 2 * u * b1 - b2 + cheb_coeffs[j];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + (cheb_coeffs.empty() ? 0.0 : cheb_coeffs[0]);
}

PolyFit fit_polynomial(std::span<const double> x, std::span<const double> y, int deg) {
    std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw std::invalid_argument("fit_polynomial: bad samples");
    if (deg < 0) throw std::invalid_argument("fit_polynomial: negative degree");
    int m = deg + 1;
    if (static_cast<std::size_t>(m) > n) m = static_cast<int>(n);

    PolyFit fit;
    fit.x_lo = x[0];
    fit.x_hi = x[0];
    for (double xi : x) {
        fit.x_lo = std::min(fit.x_lo, xi);
        fit.x_hi = std::max(fit.x_hi, xi);
    }
    if (fit.x_hi == fit.x_lo) fit.x_hi = fit.x_lo + 1.0;

    auto cheb_row = [&](double xi, std::vector<double>& row) {
        double u = (2 * xi - fit.x_lo - fit.x_hi) / (fit.x_hi - fit.x_lo);
        row[0] = 1.0;
        if (m > 1) row[1] = u;
        for (int j = 2; j < m; ++j) row[j] = 2 * u * row[j - 1] - row[j - 2];
    };

    // Normal equations A^T A c = A^T y in long double.
    std::vector<long double> ata(static_cast<std::size_t>(m) * m, 0.0L), aty(m, 0.0L);
    std::vector<double> row(m);
    for (std::size_t i = 0; i < n; ++i) {
        cheb_row(x[i], row);
        for (int a = 0; a < m; ++a) {
            aty[a] += static_cast<long double>(row[a]) * y[i];
            for (int b = 0; b < m; ++b) ata[a * m + b] += static_cast<long double>(row[a]) * row[b];
        }
    }
    // Gaussian elimination with partial pivoting.
    std::vector<int> piv(m);
    for (int i = 0; i < m; ++i) piv[i] = i;
    for (int col = 0; col < m; ++col) {
        int best = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(static_cast<double>(ata[r * m + col])) >
                std::abs(static_cast<double>(ata[best * m + col])))
                best = r;
        if (best != col) {
            for (int c = 0; c < m; ++c) std::swap(ata[col * m + c], ata[best * m + c]);
            std::swap(aty[col], aty[best]);
        }
        long double pivval = ata[col * m + col];
        if (pivval == 0.0L) throw std::runtime_error("fit_polynomial: singular normal equations");
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            long double f = ata[r * m + col] / pivval;
            if (f == 0.0L) continue;
            for (int c = col; c < m; ++c) ata[r * m + c] -= f * ata[col * m + c];
            aty[r] -= f * aty[col];
        }
    }
    fit.cheb_coeffs.resize(m);
    for (int i = 0; i < m; ++i)
        fit.cheb_coeffs[i] = static_cast<double>(aty[i] / ata[i * m + i]);

    fit.residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        fit.residual = std::max(fit.residual, std::abs(fit.evaluate(x[i]) - y[i]));
    return fit;
}

} // namespace locus
