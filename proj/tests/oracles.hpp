#pragma once

// Independent reference implementations used only by the test suites.  These
// deliberately avoid the library code paths they are meant to check.

#include "barg/grid.hpp"
#include "barg/hermite.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// One-dimensional normalized Hermite function by the Rodrigues formula:
// h_k(x) = pi^(-1/4) (-1)^k (2^k k!)^(-1/2) exp(x^2/2) d^k/dx^k exp(-x^2).
// The k-th derivative of exp(-x^2) is q_k(x) exp(-x^2) with q_0 = 1 and
// q_{k+1} = q_k' - 2 x q_k, handled as explicit polynomial coefficients.
inline double rodrigues_hermite(int k, double x)
{
    std::vector<double> q{1.0};
    for (int j = 0; j < k; ++j) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t i = 1; i < q.size(); ++i) next[i - 1] += i * q[i];
        for (std::size_t i = 0; i < q.size(); ++i) next[i + 1] -= 2.0 * q[i];
        q = std::move(next);
    }
    double qx = 0.0;
    for (std::size_t i = q.size(); i-- > 0;) qx = qx * x + q[i];

    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    const double norm =
        std::pow(std::numbers::pi, -0.25) / std::sqrt(std::pow(2.0, k) * fact);
    return (k % 2 == 0 ? 1.0 : -1.0) * norm * qx * std::exp(-0.5 * x * x);
}

// Apply the discretized operator |x|^2 - Laplace + (4d + 1) to samples on a
// product grid, with a second- or fourth-order central-difference Laplacian.
// Values beyond the grid edge are treated as zero (the test functions decay).
inline barg::Signal discrete_oscillator_apply(const barg::Signal& f,
                                              int stencil_order)
{
    using barg::cplx;
    const int d = f.dim();
    barg::Signal out = f;

    const auto value_at = [&](int i, int j) -> cplx {
        if (d == 1) {
            if (i < 0 || i >= f.axes[0].n) return 0.0;
            return f.values[i];
        }
        if (i < 0 || i >= f.axes[0].n || j < 0 || j >= f.axes[1].n) return 0.0;
        return f.values[static_cast<std::size_t>(i) * f.axes[1].n + j];
    };

    const auto second_derivative = [&](int axis, int i, int j) -> cplx {
        const double h = f.axes[axis].spacing;
        const auto at = [&](int s) {
            return axis == 0 ? value_at(i + s, j) : value_at(i, j + s);
        };
        if (stencil_order == 2)
            return (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
        return (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) /
               (12.0 * h * h);
    };

    const std::size_t n1 = d == 2 ? f.axes[1].n : 1;
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        const int i = static_cast<int>(flat / n1);
        const int j = static_cast<int>(flat % n1);
        double x2 = f.axes[0].nodes[i] * f.axes[0].nodes[i];
        if (d == 2) x2 += f.axes[1].nodes[j] * f.axes[1].nodes[j];
        cplx lap = second_derivative(0, i, j);
        if (d == 2) lap += second_derivative(1, i, j);
        out.values[flat] = (x2 + 4.0 * d + 1.0) * f.values[flat] - lap;
    }
    return out;
}

// Spectral Laplacian route for the same operator: differentiate through the
// quadrature Fourier transform (multiplier -|xi|^2).
inline barg::Signal spectral_oscillator_apply(const barg::Signal& f)
{
    using barg::cplx;
    barg::Signal spec = barg::fourier_transform(f);
    std::size_t flat = 0;
    if (f.dim() == 1) {
        for (int i = 0; i < spec.axes[0].n; ++i)
            spec.values[i] *= spec.axes[0].nodes[i] * spec.axes[0].nodes[i];
    } else {
        for (int i = 0; i < spec.axes[0].n; ++i)
            for (int j = 0; j < spec.axes[1].n; ++j, ++flat)
                spec.values[flat] *= spec.axes[0].nodes[i] * spec.axes[0].nodes[i] +
                                     spec.axes[1].nodes[j] * spec.axes[1].nodes[j];
    }
    // Inverse transform of g equals the forward transform of g(-xi); the
    // multiplier is even, so conjugation symmetry gives the same result as
    // conj(F(conj(g))).
    for (cplx& v : spec.values) v = std::conj(v);
    barg::Signal lap_neg = barg::fourier_transform(spec);
    barg::Signal out = f;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        const cplx lap = -std::conj(lap_neg.values[k]);
        double x2 = 0.0;
        if (f.dim() == 1) {
            x2 = f.axes[0].nodes[k] * f.axes[0].nodes[k];
        } else {
            const std::size_t n1 = f.axes[1].n;
            x2 = f.axes[0].nodes[k / n1] * f.axes[0].nodes[k / n1] +
                 f.axes[1].nodes[k % n1] * f.axes[1].nodes[k % n1];
        }
        out.values[k] = (x2 + 4.0 * f.dim() + 1.0) * f.values[k] - lap;
    }
    return out;
}

// Deterministic pseudo-random expansion with standard-normal complex entries.
inline barg::HermiteExpansion random_expansion(int dim, int max_degree,
                                               std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    barg::HermiteExpansion e;
    e.dim = dim;
    e.max_degree = max_degree;
    for (const auto& alpha : barg::multi_indices_up_to(dim, max_degree))
        e.coeffs[alpha] = barg::cplx(N(rng), N(rng));
    return e;
}

} // namespace oracle
