#include "barg/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace barg {

namespace {

void check_dim(std::size_t d, const char* what)
{
    if (d != 1 && d != 2)
        throw std::invalid_argument(std::string(what) +
                                    ": dimension must be 1 or 2, got " +
                                    std::to_string(d));
}

std::size_t axes_size(const std::vector<AxisGrid>& axes)
{
    std::size_t total = 1;
    for (const AxisGrid& a : axes) total *= static_cast<std::size_t>(a.n);
    return total;
}

// Row-major product trapezoid weight of the flat index over `axes`.
double product_weight(const std::vector<AxisGrid>& axes, std::size_t flat)
{
    double w = 1.0;
    for (std::size_t a = axes.size(); a-- > 0;) {
        const int n = axes[a].n;
        w *= axes[a].weight(static_cast<int>(flat % n));
        flat /= n;
    }
    return w;
}

void coords_of(const std::vector<AxisGrid>& axes, std::size_t flat,
               std::span<double> out)
{
    for (std::size_t a = axes.size(); a-- > 0;) {
        const int n = axes[a].n;
        out[a] = axes[a].nodes[flat % n];
        flat /= n;
    }
}

// Values of the orthonormal Hermite polynomials p_0..p_m (weight exp(-t^2))
// at t, via the three-term recurrence.
void orthonormal_hermite(int m, double t, std::vector<double>& p)
{
    p.resize(m + 1);
    p[0] = std::pow(std::numbers::pi, -0.25);
    if (m == 0) return;
    p[1] = std::sqrt(2.0) * t * p[0];
    for (int k = 1; k < m; ++k)
        p[k + 1] = std::sqrt(2.0 / (k + 1)) * t * p[k] -
                   std::sqrt(double(k) / (k + 1)) * p[k - 1];
}

// One-axis Fourier quadrature: out[j] = (2 pi)^(-1/2) sum_k w_k f_k
// exp(-i x_k xi_j), applied along `axis` of a row-major array.
std::vector<cplx> fourier_along_axis(const std::vector<cplx>& in,
                                     const std::vector<AxisGrid>& in_axes,
                                     std::size_t axis, const AxisGrid& out_axis)
{
    const int n_in = in_axes[axis].n;
    const int n_out = out_axis.n;

    // T[j * n_in + k] = (2 pi)^(-1/2) w_k exp(-i x_k xi_j)
    std::vector<cplx> T(static_cast<std::size_t>(n_out) * n_in);
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (int j = 0; j < n_out; ++j) {
        const double xi = out_axis.nodes[j];
        for (int k = 0; k < n_in; ++k) {
            const double x = in_axes[axis].nodes[k];
            T[static_cast<std::size_t>(j) * n_in + k] =
                c * in_axes[axis].weight(k) *
                std::exp(cplx(0.0, -x * xi));
        }
    }

    std::size_t outer = 1, inner = 1;
    for (std::size_t a = 0; a < axis; ++a) outer *= in_axes[a].n;
    for (std::size_t a = axis + 1; a < in_axes.size(); ++a)
        inner *= in_axes[a].n;

    std::vector<cplx> out(outer * n_out * inner);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i)
            for (int j = 0; j < n_out; ++j) {
                cplx acc = 0.0;
                const cplx* row = &T[static_cast<std::size_t>(j) * n_in];
                for (int k = 0; k < n_in; ++k)
                    acc += row[k] * in[(o * n_in + k) * inner + i];
                out[(o * n_out + j) * inner + i] = acc;
            }
    return out;
}

} // namespace

bool operator==(const AxisGrid& a, const AxisGrid& b)
{
    return a.n == b.n && a.half_width == b.half_width;
}

AxisGrid make_axis_grid(double half_width, int n)
{
    if (half_width <= 0.0)
        throw std::invalid_argument("make_axis_grid: half_width must be > 0");
    if (n < 3)
        throw std::invalid_argument("make_axis_grid: need at least 3 nodes");
    if (n % 2 == 0)
        throw std::invalid_argument(
            "make_axis_grid: node count must be odd so 0 is a node");

    AxisGrid g;
    g.half_width = half_width;
    g.n = n;
    g.spacing = 2.0 * half_width / (n - 1);
    g.nodes.resize(n);
    const int c = (n - 1) / 2;
    for (int k = 0; k < n; ++k) g.nodes[k] = (k - c) * g.spacing;
    return g;
}

QuadRule gauss_hermite_rule(int m)
{
    if (m < 1 || m > 256)
        throw std::invalid_argument(
            "gauss_hermite_rule: order must be in [1, 256], got " +
            std::to_string(m));

    QuadRule rule;
    rule.order = m;
    rule.nodes.assign(m, 0.0);
    rule.weights.assign(m, 0.0);

    // Nodes are the eigenvalues of the Jacobi matrix (zero diagonal,
    // off-diagonal b_k = sqrt(k/2)).  Bracket each one by bisection on the
    // Sturm count -- this cannot skip or cross roots -- then polish with two
    // Newton steps on the orthonormal recurrence.
    std::vector<double> b2(m > 1 ? m - 1 : 0);
    for (int k = 1; k < m; ++k) b2[k - 1] = 0.5 * k;

    const auto count_below = [&](double x) {
        int count = 0;
        double q = -x;
        if (q < 0.0) ++count;
        for (int k = 1; k < m; ++k) {
            const double denom = (q == 0.0) ? 1e-300 : q;
            q = -x - b2[k - 1] / denom;
            if (q < 0.0) ++count;
        }
        return count;
    };

    const double bound = std::sqrt(2.0 * m) + 2.0; // Gershgorin-style bound
    std::vector<double> p;
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        const int want = m - i; // eigenvalues strictly below must number m-1-i
        double lo = 0.0, hi = bound;
        for (int it = 0; it < 80 && hi - lo > 1e-14 * bound; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(mid) >= want)
                hi = mid;
            else
                lo = mid;
        }
        double z = 0.5 * (lo + hi);
        if (m % 2 == 1 && i == half - 1) z = 0.0; // middle root is exact
        for (int it = 0; it < 3 && z != 0.0; ++it) {
            orthonormal_hermite(m, z, p);
            z -= p[m] / (std::sqrt(2.0 * m) * p[m - 1]); // p_m'(z)
        }

        orthonormal_hermite(m, z, p);
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += p[k] * p[k];
        const double w = 1.0 / s; // Christoffel function of the weight exp(-t^2)
        rule.nodes[m - 1 - i] = z;
        rule.weights[m - 1 - i] = w;
        rule.nodes[i] = -z;
        rule.weights[i] = w;
    }
    return rule;
}

std::size_t Signal::size() const { return axes_size(axes); }

Signal make_signal(std::vector<AxisGrid> axes)
{
    check_dim(axes.size(), "make_signal");
    Signal s;
    s.values.assign(axes_size(axes), cplx(0.0));
    s.axes = std::move(axes);
    return s;
}

Signal sample_signal(std::vector<AxisGrid> axes,
                     const std::function<cplx(std::span<const double>)>& fn)
{
    Signal s = make_signal(std::move(axes));
    std::vector<double> x(s.axes.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        coords_of(s.axes, i, x);
        s.values[i] = fn(x);
    }
    return s;
}

cplx integrate(const Signal& f)
{
    cplx acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        acc += product_weight(f.axes, i) * f.values[i];
    return acc;
}

double l2_norm(const Signal& f)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        acc += product_weight(f.axes, i) * std::norm(f.values[i]);
    return std::sqrt(acc);
}

cplx l2_inner(const Signal& f, const Signal& g)
{
    if (f.axes != g.axes)
        throw std::invalid_argument("l2_inner: signals live on different grids");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        acc += product_weight(f.axes, i) * f.values[i] * std::conj(g.values[i]);
    return acc;
}

std::size_t PhaseGrid::x_count() const { return axes_size(x_axes); }
std::size_t PhaseGrid::xi_count() const { return axes_size(xi_axes); }

void PhaseGrid::x_coords(std::size_t x_flat, std::span<double> out) const
{
    coords_of(x_axes, x_flat, out);
}

void PhaseGrid::xi_coords(std::size_t xi_flat, std::span<double> out) const
{
    coords_of(xi_axes, xi_flat, out);
}

double PhaseGrid::x_weight(std::size_t x_flat) const
{
    return product_weight(x_axes, x_flat);
}

double PhaseGrid::xi_weight(std::size_t xi_flat) const
{
    return product_weight(xi_axes, xi_flat);
}

bool operator==(const PhaseGrid& a, const PhaseGrid& b)
{
    return a.x_axes == b.x_axes && a.xi_axes == b.xi_axes;
}

PhaseGrid make_phase_grid(const AxisGrid& axis, int dim)
{
    return make_phase_grid(axis, axis, dim);
}

PhaseGrid make_phase_grid(const AxisGrid& x_axis, const AxisGrid& xi_axis,
                          int dim)
{
    check_dim(dim, "make_phase_grid");
    PhaseGrid g;
    g.x_axes.assign(dim, x_axis);
    g.xi_axes.assign(dim, xi_axis);
    return g;
}

cplx integrate(const PhaseGrid& grid, std::span<const cplx> values)
{
    if (values.size() != grid.node_count())
        throw std::invalid_argument("integrate: value count does not match grid");
    cplx acc = 0.0;
    const std::size_t nx = grid.x_count();
    std::size_t node = 0;
    for (std::size_t j = 0; j < grid.xi_count(); ++j) {
        const double wxi = grid.xi_weight(j);
        cplx row = 0.0;
        for (std::size_t i = 0; i < nx; ++i, ++node)
            row += grid.x_weight(i) * values[node];
        acc += wxi * row;
    }
    return acc;
}

Signal fourier_transform(const Signal& f) { return fourier_transform(f, f.axes); }

Signal fourier_transform(const Signal& f, std::vector<AxisGrid> out_axes)
{
    if (out_axes.size() != f.axes.size())
        throw std::invalid_argument(
            "fourier_transform: output axis count must match input dimension");

    // exp(-i<x,xi>) factorizes, so transform one axis at a time.
    std::vector<cplx> work = f.values;
    std::vector<AxisGrid> axes = f.axes;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        work = fourier_along_axis(work, axes, a, out_axes[a]);
        axes[a] = out_axes[a];
    }

    Signal out;
    out.axes = std::move(axes);
    out.values = std::move(work);
    return out;
}

} // namespace barg
