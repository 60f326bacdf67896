#include "barg/stft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace barg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_window_dim(const Window& w)
{
    if (w.signal.axes.empty() ||
        w.axis_profiles.size() != w.signal.axes.size())
        throw std::invalid_argument(
            "window must carry one profile per axis of its signal");
}

void check_unit_window(const Window& w)
{
    if (std::abs(w.l2_norm - 1.0) > 1e-6)
        throw std::invalid_argument(
            "operation requires a window of unit L2 norm");
}

/// W[ix][iy] = profile(y_iy - x_ix).
std::vector<std::vector<double>> translate_table(
    const std::function<double(double)>& profile, const AxisGrid& x_axis,
    const AxisGrid& y_axis)
{
    std::vector<std::vector<double>> W(x_axis.n, std::vector<double>(y_axis.n));
    for (int ix = 0; ix < x_axis.n; ++ix)
        for (int iy = 0; iy < y_axis.n; ++iy)
            W[ix][iy] = profile(y_axis.nodes[iy] - x_axis.nodes[ix]);
    return W;
}

/// E[iq][iy] = exp(sign * i * y_iy * xi_iq).
std::vector<std::vector<cplx>> modulation_table(const AxisGrid& xi_axis,
                                                const AxisGrid& y_axis,
                                                double sign)
{
    std::vector<std::vector<cplx>> E(xi_axis.n, std::vector<cplx>(y_axis.n));
    for (int iq = 0; iq < xi_axis.n; ++iq)
        for (int iy = 0; iy < y_axis.n; ++iy)
            E[iq][iy] = std::polar(1.0, sign * y_axis.nodes[iy] *
                                            xi_axis.nodes[iq]);
    return E;
}

void check_transform_args(const Signal& f, const Window& w,
                          const PhaseGrid& pg)
{
    check_window_dim(w);
    if (f.axes != w.signal.axes)
        throw std::invalid_argument("signal and window grids differ");
    if (pg.dim() != f.dim())
        throw std::invalid_argument("phase grid dimension mismatch");
    for (int a = 0; a < pg.dim(); ++a) {
        const double nyquist = std::numbers::pi / f.axes[a].spacing;
        if (pg.xi_axes[a].half_width > nyquist)
            throw std::invalid_argument(
                "xi axis exceeds the Nyquist band of the signal grid");
    }
}

} // namespace

PhaseField make_phase_field(PhaseGrid grid)
{
    PhaseField F;
    F.values.assign(grid.node_count(), cplx(0.0));
    F.grid = std::move(grid);
    return F;
}

PhaseField sample_phase_field(
    PhaseGrid grid,
    const std::function<cplx(std::span<const double>, std::span<const double>)>&
        fn)
{
    PhaseField F = make_phase_field(std::move(grid));
    const int d = F.grid.dim();
    std::vector<double> x(d), xi(d);
    std::size_t node = 0;
    for (std::size_t q = 0; q < F.grid.xi_count(); ++q) {
        F.grid.xi_coords(q, xi);
        for (std::size_t p = 0; p < F.grid.x_count(); ++p, ++node) {
            F.grid.x_coords(p, x);
            F.values[node] = fn(x, xi);
        }
    }
    return F;
}

cplx integrate(const PhaseField& F)
{
    return integrate(F.grid, F.values);
}

double l2_norm(const PhaseField& F)
{
    double acc = 0.0;
    std::size_t node = 0;
    for (std::size_t q = 0; q < F.grid.xi_count(); ++q) {
        const double wq = F.grid.xi_weight(q);
        for (std::size_t p = 0; p < F.grid.x_count(); ++p, ++node)
            acc += wq * F.grid.x_weight(p) * std::norm(F.values[node]);
    }
    return std::sqrt(acc);
}

namespace {

/// Stencil base index and the four Lagrange weights for cubic interpolation
/// at t on a uniform axis.
void cubic_stencil(const AxisGrid& axis, double t, int& base, double w[4])
{
    if (t < axis.nodes.front() - 1e-12 || t > axis.nodes.back() + 1e-12)
        throw std::domain_error("interpolation point " + std::to_string(t) +
                                " outside grid of half-width " +
                                std::to_string(axis.half_width));
    base = static_cast<int>(std::floor((t - axis.nodes.front()) /
                                       axis.spacing)) - 1;
    base = std::max(0, std::min(base, axis.n - 4));
    const double u = (t - axis.nodes[base]) / axis.spacing;
    for (int j = 0; j < 4; ++j) {
        double v = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != j) v *= (u - m) / (j - m);
        w[j] = v;
    }
}

} // namespace

cplx field_value(const PhaseField& F, std::span<const double> x,
                 std::span<const double> xi)
{
    const PhaseGrid& pg = F.grid;
    const int d = pg.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(xi.size()) != d)
        throw std::invalid_argument("point dimension mismatch");

    // Per-axis stencils: first the x axes, then the xi axes.
    int base[4];
    double w[4][4];
    for (int a = 0; a < d; ++a)
        cubic_stencil(pg.x_axes[a], x[a], base[a], w[a]);
    for (int a = 0; a < d; ++a)
        cubic_stencil(pg.xi_axes[a], xi[a], base[d + a], w[d + a]);

    const auto value_at = [&](const int* idx) {
        std::size_t x_flat = idx[0], xi_flat = idx[d];
        if (d == 2) {
            x_flat = static_cast<std::size_t>(idx[0]) * pg.x_axes[1].n + idx[1];
            xi_flat = static_cast<std::size_t>(idx[2]) * pg.xi_axes[1].n + idx[3];
        }
        return F.values[xi_flat * pg.x_count() + x_flat];
    };

    const int naxes = 2 * d;
    cplx acc = 0.0;
    int offs[4] = {0, 0, 0, 0};
    // Walk the 4^(2d) stencil corners.
    const int corners = 1 << (2 * naxes);
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        int idx[4];
        int code = c;
        for (int a = 0; a < naxes; ++a) {
            offs[a] = code & 3;
            code >>= 2;
            weight *= w[a][offs[a]];
            idx[a] = base[a] + offs[a];
        }
        acc += weight * value_at(idx);
    }
    return acc;
}

Window make_window(std::vector<AxisGrid> axes,
                   std::vector<std::function<double(double)>> profiles)
{
    if (axes.size() != profiles.size())
        throw std::invalid_argument("one profile per axis required");
    Window w;
    w.axis_profiles = std::move(profiles);
    w.signal = sample_signal(std::move(axes),
                             [&w](std::span<const double> x) -> cplx {
                                 double v = 1.0;
                                 for (std::size_t a = 0; a < x.size(); ++a)
                                     v *= w.axis_profiles[a](x[a]);
                                 return v;
                             });
    w.l2_norm = l2_norm(w.signal);
    return w;
}

Window gaussian_window(std::vector<AxisGrid> axes)
{
    const double c = std::pow(std::numbers::pi, -0.25);
    std::vector<std::function<double(double)>> profiles(
        axes.size(),
        [c](double t) { return c * std::exp(-0.5 * t * t); });
    return make_window(std::move(axes), std::move(profiles));
}

PhaseField stft(const Signal& f, const Window& w, const PhaseGrid& pg)
{
    check_transform_args(f, w, pg);
    PhaseField out = make_phase_field(pg);
    out.convention = Convention::STFT_PLAIN;
    const int d = f.dim();

    if (d == 1) {
        const AxisGrid& ya = f.axes[0];
        const auto W = translate_table(w.axis_profiles[0], pg.x_axes[0], ya);
        const auto E = modulation_table(pg.xi_axes[0], ya, -1.0);
        const int nx = pg.x_axes[0].n, nq = pg.xi_axes[0].n;
        std::vector<cplx> g(ya.n);
        for (int ix = 0; ix < nx; ++ix) {
            for (int iy = 0; iy < ya.n; ++iy)
                g[iy] = ya.weight(iy) * W[ix][iy] * f.values[iy];
            for (int iq = 0; iq < nq; ++iq) {
                cplx acc = 0.0;
                const auto& Erow = E[iq];
                for (int iy = 0; iy < ya.n; ++iy) acc += g[iy] * Erow[iy];
                out.values[static_cast<std::size_t>(iq) * nx + ix] = acc;
            }
        }
        return out;
    }

    // d == 2: contract the signal axes one at a time (the window is a tensor
    // product, so the quadrature factorizes).
    const AxisGrid &y0 = f.axes[0], &y1 = f.axes[1];
    const auto W0 = translate_table(w.axis_profiles[0], pg.x_axes[0], y0);
    const auto W1 = translate_table(w.axis_profiles[1], pg.x_axes[1], y1);
    const auto E0 = modulation_table(pg.xi_axes[0], y0, -1.0);
    const auto E1 = modulation_table(pg.xi_axes[1], y1, -1.0);
    const int nx0 = pg.x_axes[0].n, nx1 = pg.x_axes[1].n;
    const int nq0 = pg.xi_axes[0].n, nq1 = pg.xi_axes[1].n;

    // A[(ix0, iq0)][iy1] = sum_{iy0} wt0 W0 E0 f[iy0][iy1].
    std::vector<std::vector<cplx>> A(
        static_cast<std::size_t>(nx0) * nq0, std::vector<cplx>(y1.n, cplx(0.0)));
    for (int ix0 = 0; ix0 < nx0; ++ix0)
        for (int iq0 = 0; iq0 < nq0; ++iq0) {
            auto& row = A[static_cast<std::size_t>(ix0) * nq0 + iq0];
            for (int iy0 = 0; iy0 < y0.n; ++iy0) {
                const cplx coef = y0.weight(iy0) * W0[ix0][iy0] * E0[iq0][iy0];
                const cplx* frow =
                    f.values.data() + static_cast<std::size_t>(iy0) * y1.n;
                for (int iy1 = 0; iy1 < y1.n; ++iy1) row[iy1] += coef * frow[iy1];
            }
        }

    for (int ix0 = 0; ix0 < nx0; ++ix0)
        for (int iq0 = 0; iq0 < nq0; ++iq0) {
            const auto& row = A[static_cast<std::size_t>(ix0) * nq0 + iq0];
            for (int ix1 = 0; ix1 < nx1; ++ix1)
                for (int iq1 = 0; iq1 < nq1; ++iq1) {
                    cplx acc = 0.0;
                    for (int iy1 = 0; iy1 < y1.n; ++iy1)
                        acc += y1.weight(iy1) * W1[ix1][iy1] * E1[iq1][iy1] *
                               row[iy1];
                    const std::size_t x_flat =
                        static_cast<std::size_t>(ix0) * nx1 + ix1;
                    const std::size_t xi_flat =
                        static_cast<std::size_t>(iq0) * nq1 + iq1;
                    out.values[xi_flat * pg.x_count() + x_flat] = acc;
                }
        }
    return out;
}

cplx stft_point(const Signal& f, const Window& w, std::span<const double> x,
                std::span<const double> xi)
{
    check_window_dim(w);
    if (f.axes != w.signal.axes)
        throw std::invalid_argument("signal and window grids differ");
    const int d = f.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(xi.size()) != d)
        throw std::invalid_argument("phase point dimension mismatch");

    cplx acc = 0.0;
    if (d == 1) {
        const AxisGrid& ya = f.axes[0];
        for (int iy = 0; iy < ya.n; ++iy) {
            const double t = ya.nodes[iy];
            acc += ya.weight(iy) * f.values[iy] * w.axis_profiles[0](t - x[0]) *
                   std::polar(1.0, -t * xi[0]);
        }
        return acc;
    }
    const AxisGrid &y0 = f.axes[0], &y1 = f.axes[1];
    std::size_t flat = 0;
    for (int i0 = 0; i0 < y0.n; ++i0) {
        const double t0 = y0.nodes[i0];
        const double c0 = y0.weight(i0) * w.axis_profiles[0](t0 - x[0]);
        for (int i1 = 0; i1 < y1.n; ++i1, ++flat) {
            const double t1 = y1.nodes[i1];
            acc += c0 * y1.weight(i1) * w.axis_profiles[1](t1 - x[1]) *
                   f.values[flat] * std::polar(1.0, -(t0 * xi[0] + t1 * xi[1]));
        }
    }
    return acc;
}

Signal istft(const PhaseField& F, const Window& w,
             std::vector<AxisGrid> out_axes)
{
    check_window_dim(w);
    check_unit_window(w);
    const PhaseGrid& pg = F.grid;
    const int d = pg.dim();
    if (static_cast<int>(out_axes.size()) != d)
        throw std::invalid_argument("output axes dimension mismatch");
    Signal out = make_signal(std::move(out_axes));

    if (d == 1) {
        const AxisGrid& ya = out.axes[0];
        const AxisGrid &xa = pg.x_axes[0], &qa = pg.xi_axes[0];
        const auto W = translate_table(w.axis_profiles[0], xa, ya);
        const auto E = modulation_table(qa, ya, +1.0);
        std::vector<cplx> tmp(ya.n);
        for (int iq = 0; iq < qa.n; ++iq) {
            std::fill(tmp.begin(), tmp.end(), cplx(0.0));
            const cplx* Frow =
                F.values.data() + static_cast<std::size_t>(iq) * xa.n;
            for (int ix = 0; ix < xa.n; ++ix) {
                const cplx coef = xa.weight(ix) * Frow[ix];
                const auto& Wrow = W[ix];
                for (int iy = 0; iy < ya.n; ++iy) tmp[iy] += coef * Wrow[iy];
            }
            const double wq = qa.weight(iq);
            const auto& Erow = E[iq];
            for (int iy = 0; iy < ya.n; ++iy)
                out.values[iy] += wq * Erow[iy] * tmp[iy];
        }
        for (cplx& v : out.values) v /= kTwoPi;
        return out;
    }

    // d == 2: contract the second phase-axis pair, then the first.
    const AxisGrid &ya0 = out.axes[0], &ya1 = out.axes[1];
    const AxisGrid &xa0 = pg.x_axes[0], &xa1 = pg.x_axes[1];
    const AxisGrid &qa0 = pg.xi_axes[0], &qa1 = pg.xi_axes[1];
    const auto W0 = translate_table(w.axis_profiles[0], xa0, ya0);
    const auto W1 = translate_table(w.axis_profiles[1], xa1, ya1);
    const auto E0 = modulation_table(qa0, ya0, +1.0);
    const auto E1 = modulation_table(qa1, ya1, +1.0);

    // C[(ix0, iq0)][iy1] = sum_{ix1, iq1} wt F W1 E1.
    std::vector<std::vector<cplx>> C(
        static_cast<std::size_t>(xa0.n) * qa0.n,
        std::vector<cplx>(ya1.n, cplx(0.0)));
    for (int iq0 = 0; iq0 < qa0.n; ++iq0)
        for (int iq1 = 0; iq1 < qa1.n; ++iq1) {
            const std::size_t xi_flat = static_cast<std::size_t>(iq0) * qa1.n + iq1;
            const cplx* Frow = F.values.data() + xi_flat * pg.x_count();
            for (int ix0 = 0; ix0 < xa0.n; ++ix0) {
                auto& Crow = C[static_cast<std::size_t>(ix0) * qa0.n + iq0];
                for (int ix1 = 0; ix1 < xa1.n; ++ix1) {
                    const cplx coef =
                        xa1.weight(ix1) * qa1.weight(iq1) *
                        Frow[static_cast<std::size_t>(ix0) * xa1.n + ix1];
                    for (int iy1 = 0; iy1 < ya1.n; ++iy1)
                        Crow[iy1] += coef * W1[ix1][iy1] * E1[iq1][iy1];
                }
            }
        }

    for (int ix0 = 0; ix0 < xa0.n; ++ix0)
        for (int iq0 = 0; iq0 < qa0.n; ++iq0) {
            const auto& Crow = C[static_cast<std::size_t>(ix0) * qa0.n + iq0];
            const double base = xa0.weight(ix0) * qa0.weight(iq0);
            for (int iy0 = 0; iy0 < ya0.n; ++iy0) {
                const cplx coef = base * W0[ix0][iy0] * E0[iq0][iy0];
                cplx* orow =
                    out.values.data() + static_cast<std::size_t>(iy0) * ya1.n;
                for (int iy1 = 0; iy1 < ya1.n; ++iy1)
                    orow[iy1] += coef * Crow[iy1];
            }
        }
    const double c = kTwoPi * kTwoPi;
    for (cplx& v : out.values) v /= c;
    return out;
}

PhaseField twisted_convolution(const PhaseField& F, const PhaseField& G)
{
    if (!(F.grid == G.grid))
        throw std::invalid_argument("twisted convolution needs matching grids");
    if (F.grid.dim() != 1)
        throw std::invalid_argument(
            "twisted convolution is implemented for one pair of phase axes");

    const AxisGrid& xa = F.grid.x_axes[0];
    const AxisGrid& qa = F.grid.xi_axes[0];
    const int nx = xa.n, nq = qa.n;
    const int cx = xa.center_index(), cq = qa.center_index();

    // P[iq][j] = exp(-i * (j - (nx-1)) * hx * eta_iq): phase e^{-i (x-y) eta}
    // indexed by the lattice difference j = ix_out - ix_src + (nx - 1).
    std::vector<std::vector<cplx>> P(nq, std::vector<cplx>(2 * nx - 1));
    for (int iq = 0; iq < nq; ++iq)
        for (int j = 0; j < 2 * nx - 1; ++j)
            P[iq][j] = std::polar(
                1.0, -(j - (nx - 1)) * xa.spacing * qa.nodes[iq]);

    std::vector<double> wt(static_cast<std::size_t>(nq) * nx);
    for (int iq = 0; iq < nq; ++iq)
        for (int ix = 0; ix < nx; ++ix)
            wt[static_cast<std::size_t>(iq) * nx + ix] =
                qa.weight(iq) * xa.weight(ix);

    PhaseField out = make_phase_field(F.grid);
    out.convention = F.convention;
    const double scale = std::pow(kTwoPi, -0.5);

    for (int oq = 0; oq < nq; ++oq)
        for (int ox = 0; ox < nx; ++ox) {
            cplx acc = 0.0;
            // Source xi index range keeping xi - eta on the grid.
            const int sq_lo = std::max(0, oq + cq - (nq - 1));
            const int sq_hi = std::min(nq - 1, oq + cq);
            const int sx_lo = std::max(0, ox + cx - (nx - 1));
            const int sx_hi = std::min(nx - 1, ox + cx);
            for (int sq = sq_lo; sq <= sq_hi; ++sq) {
                const int lq = oq - sq + cq;
                const cplx* Frow =
                    F.values.data() + static_cast<std::size_t>(lq) * nx;
                const cplx* Grow =
                    G.values.data() + static_cast<std::size_t>(sq) * nx;
                const double* wrow = wt.data() + static_cast<std::size_t>(sq) * nx;
                const cplx* Prow = P[sq].data();
                for (int sx = sx_lo; sx <= sx_hi; ++sx)
                    acc += wrow[sx] * Grow[sx] * Frow[ox - sx + cx] *
                           Prow[ox - sx + nx - 1];
            }
            out.values[static_cast<std::size_t>(oq) * nx + ox] = scale * acc;
        }
    return out;
}

PhaseField projection_pi(const PhaseField& F, const Window& w)
{
    check_unit_window(w);
    const PhaseField kernel = stft(w.signal, w, F.grid);
    PhaseField out = twisted_convolution(F, kernel);
    const double scale = std::pow(kTwoPi, -0.5 * F.grid.dim());
    for (cplx& v : out.values) v *= scale;
    return out;
}

Signal toeplitz(const PhaseField& a, const Window& w, const Signal& f)
{
    PhaseField V = stft(f, w, a.grid);
    if (a.values.size() != V.values.size())
        throw std::invalid_argument("symbol and transform sizes differ");
    for (std::size_t i = 0; i < V.values.size(); ++i) V.values[i] *= a.values[i];
    return istft(V, w, f.axes);
}

} // namespace barg
