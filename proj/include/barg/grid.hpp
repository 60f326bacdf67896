#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace barg {

using cplx = std::complex<double>;

/// Uniform symmetric grid on [-half_width, half_width] with an odd node count,
/// so 0 is always a node and spacing = 2 * half_width / (n - 1).
struct AxisGrid {
    double half_width = 0.0;
    int n = 0;
    double spacing = 0.0;
    std::vector<double> nodes;

    int center_index() const { return (n - 1) / 2; }

    /// Trapezoid quadrature weight of node k (endpoint nodes count half).
    double weight(int k) const
    {
        return (k == 0 || k == n - 1) ? 0.5 * spacing : spacing;
    }
};

bool operator==(const AxisGrid& a, const AxisGrid& b);

/// Build a symmetric grid. Throws std::invalid_argument if half_width <= 0,
/// n < 3, or n is even (symmetry requires an odd node count).
AxisGrid make_axis_grid(double half_width, int n);

/// Nodes and weights of the m-point Gauss-Hermite rule for the weight
/// exp(-t^2):  sum_i w_i p(t_i) = integral p(t) exp(-t^2) dt  exactly for
/// polynomials p of degree <= 2m - 1.  Nodes are in increasing order.
struct QuadRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Compute the Gauss-Hermite rule by Newton iteration on the orthonormal
/// Hermite recurrence (weights via the Christoffel function).  Supported
/// range 1 <= m <= 256; throws std::invalid_argument outside it.
QuadRule gauss_hermite_rule(int m);

/// Complex samples of a function on a product of axis grids (dim 1 or 2),
/// stored row-major with the last axis contiguous.
struct Signal {
    std::vector<AxisGrid> axes;
    std::vector<cplx> values;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t size() const;
};

/// Zero-filled signal over the given axes (dim must be 1 or 2).
Signal make_signal(std::vector<AxisGrid> axes);

/// Sample fn(x) at every grid point; fn receives the coordinate vector.
Signal sample_signal(std::vector<AxisGrid> axes,
                     const std::function<cplx(std::span<const double>)>& fn);

/// Trapezoid product-rule integral of the samples over the full domain.
cplx integrate(const Signal& f);

/// sqrt(integral |f|^2), same trapezoid rule.
double l2_norm(const Signal& f);

/// L^2 inner product (f, g) = integral f conj(g).
cplx l2_inner(const Signal& f, const Signal& g);

/// Tensor phase-space grid: d x-axes followed by d xi-axes.  Flat node
/// indices are xi-major: node = xi_flat * x_count() + x_flat, where x_flat
/// and xi_flat are row-major over their respective axes.  This keeps the
/// x-slice for a fixed xi contiguous, which the mixed-norm loops rely on.
struct PhaseGrid {
    std::vector<AxisGrid> x_axes;
    std::vector<AxisGrid> xi_axes;

    int dim() const { return static_cast<int>(x_axes.size()); }
    std::size_t x_count() const;
    std::size_t xi_count() const;
    std::size_t node_count() const { return x_count() * xi_count(); }

    void x_coords(std::size_t x_flat, std::span<double> out) const;
    void xi_coords(std::size_t xi_flat, std::span<double> out) const;
    double x_weight(std::size_t x_flat) const;
    double xi_weight(std::size_t xi_flat) const;
};

bool operator==(const PhaseGrid& a, const PhaseGrid& b);

/// Phase grid with the same axis grid reused for every x and xi direction.
PhaseGrid make_phase_grid(const AxisGrid& axis, int dim);

/// Phase grid with distinct x and xi axis grids (reused across directions).
PhaseGrid make_phase_grid(const AxisGrid& x_axis, const AxisGrid& xi_axis,
                          int dim);

/// Trapezoid integral of values laid out in PhaseGrid flat order.
cplx integrate(const PhaseGrid& grid, std::span<const cplx> values);

/// Unitary Fourier transform by direct quadrature, applied separably along
/// each axis:
///
///   (F f)(xi) = (2 pi)^(-d/2) integral f(x) exp(-i <x, xi>) dx.
///
/// The output is sampled on out_axes (defaults to the input axes).
Signal fourier_transform(const Signal& f);
Signal fourier_transform(const Signal& f, std::vector<AxisGrid> out_axes);

} // namespace barg
