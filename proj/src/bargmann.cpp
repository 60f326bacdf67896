#include "barg/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace barg {

namespace {

constexpr double kPi = std::numbers::pi;

/// z^k / sqrt(k!) for k = 0..degree by the bounded running recurrence.
std::vector<cplx> scaled_powers(cplx z, int degree)
{
    std::vector<cplx> t(degree + 1);
    t[0] = 1.0;
    for (int k = 0; k < degree; ++k) t[k + 1] = t[k] * z / std::sqrt(k + 1.0);
    return t;
}

void check_point_dim(int d, std::span<const cplx> z)
{
    if (static_cast<int>(z.size()) != d)
        throw std::invalid_argument("evaluation point dimension mismatch");
}

std::string point_string(std::span<const cplx> z)
{
    std::string s = "(";
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (j) s += ", ";
        s += std::to_string(z[j].real()) + (z[j].imag() < 0 ? " - " : " + ") +
             std::to_string(std::abs(z[j].imag())) + "i";
    }
    return s + ")";
}

/// Resample prefactor(x, xi) * F(sx * x, sxi * xi) onto the target grid.
PhaseField resample_scaled(
    const PhaseField& F, const PhaseGrid& out, double sx, double sxi,
    const std::function<cplx(std::span<const double>, std::span<const double>)>&
        prefactor)
{
    const int d = F.grid.dim();
    if (out.dim() != d)
        throw std::invalid_argument("target grid dimension mismatch");
    for (int a = 0; a < d; ++a) {
        const double need_x = std::abs(sx) * out.x_axes[a].half_width;
        const double need_xi = std::abs(sxi) * out.xi_axes[a].half_width;
        if (need_x > F.grid.x_axes[a].half_width + 1e-12 ||
            need_xi > F.grid.xi_axes[a].half_width + 1e-12)
            throw std::domain_error(
                "resampling axis " + std::to_string(a) +
                " needs source points out to (" + std::to_string(need_x) +
                ", " + std::to_string(need_xi) + ") but the source grid ends"
                " at (" +
                std::to_string(F.grid.x_axes[a].half_width) + ", " +
                std::to_string(F.grid.xi_axes[a].half_width) + ")");
    }

    PhaseField G = make_phase_field(out);
    G.convention = F.convention;
    std::vector<double> x(d), xi(d), px(d), pxi(d);
    std::size_t node = 0;
    for (std::size_t q = 0; q < out.xi_count(); ++q) {
        out.xi_coords(q, xi);
        for (int a = 0; a < d; ++a) pxi[a] = sxi * xi[a];
        for (std::size_t p = 0; p < out.x_count(); ++p, ++node) {
            out.x_coords(p, x);
            for (int a = 0; a < d; ++a) px[a] = sx * x[a];
            G.values[node] = prefactor(x, xi) * field_value(F, px, pxi);
        }
    }
    return G;
}

/// Circle-mode magnitudes |c_k r^k| of m samples on |z| = r, plus the
/// scaled coefficients themselves.
struct CircleModes {
    std::vector<cplx> scaled; // c_k r^k, k = 0..m-1
};

CircleModes circle_dft(const std::vector<cplx>& samples)
{
    const int m = static_cast<int>(samples.size());
    CircleModes out;
    out.scaled.assign(m, cplx(0.0));
    for (int k = 0; k < m; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j)
            acc += samples[j] *
                   std::polar(1.0, -2.0 * kPi * j * k / m);
        out.scaled[k] = acc / static_cast<double>(m);
    }
    return out;
}

double sqrt_factorial(int k) { return std::exp(0.5 * std::lgamma(k + 1.0)); }

} // namespace

int FockFunction::dim() const
{
    if (const auto* t = std::get_if<TaylorCoeffs>(&rep)) return t->dim;
    return std::get<PhaseField>(rep).grid.dim();
}

cplx bilinear_dot(std::span<const cplx> z, std::span<const cplx> w)
{
    if (z.size() != w.size())
        throw std::invalid_argument("dot of vectors of different dimension");
    cplx acc = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) acc += z[j] * w[j];
    return acc;
}

cplx hermitian_dot(std::span<const cplx> z, std::span<const cplx> w)
{
    if (z.size() != w.size())
        throw std::invalid_argument("dot of vectors of different dimension");
    cplx acc = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) acc += z[j] * std::conj(w[j]);
    return acc;
}

cplx evaluate(const TaylorCoeffs& F, std::span<const cplx> z)
{
    check_point_dim(F.dim, z);
    const auto t0 = scaled_powers(z[0], F.max_degree);
    if (F.dim == 1) {
        cplx acc = 0.0;
        for (const auto& [alpha, a] : F.coeffs) acc += a * t0[alpha.entries[0]];
        return acc;
    }
    const auto t1 = scaled_powers(z[1], F.max_degree);
    cplx acc = 0.0;
    for (const auto& [alpha, a] : F.coeffs)
        acc += a * t0[alpha.entries[0]] * t1[alpha.entries[1]];
    return acc;
}

cplx bargmann_direct(const Signal& f, std::span<const cplx> z)
{
    const int d = f.dim();
    check_point_dim(d, z);

    double im2 = 0.0;
    cplx zz = 0.0;
    for (int a = 0; a < d; ++a) {
        im2 += z[a].imag() * z[a].imag();
        zz += z[a] * z[a];
    }
    if (0.5 * im2 > 700.0)
        throw std::overflow_error(
            "transform integrand overflows at z = " + point_string(z));

    const double sqrt2 = std::numbers::sqrt2;
    if (d == 1) {
        const AxisGrid& ya = f.axes[0];
        cplx acc = 0.0;
        for (int i = 0; i < ya.n; ++i) {
            const double y = ya.nodes[i];
            acc += ya.weight(i) * f.values[i] *
                   std::exp(-0.5 * y * y + sqrt2 * z[0] * y);
        }
        return std::pow(kPi, -0.25) * std::exp(-0.5 * zz) * acc;
    }

    const AxisGrid &y0 = f.axes[0], &y1 = f.axes[1];
    std::vector<cplx> k0(y0.n), k1(y1.n);
    for (int i = 0; i < y0.n; ++i)
        k0[i] = y0.weight(i) * std::exp(-0.5 * y0.nodes[i] * y0.nodes[i] +
                                        sqrt2 * z[0] * y0.nodes[i]);
    for (int i = 0; i < y1.n; ++i)
        k1[i] = y1.weight(i) * std::exp(-0.5 * y1.nodes[i] * y1.nodes[i] +
                                        sqrt2 * z[1] * y1.nodes[i]);
    cplx acc = 0.0;
    for (int i0 = 0; i0 < y0.n; ++i0) {
        cplx inner = 0.0;
        const cplx* row = f.values.data() + static_cast<std::size_t>(i0) * y1.n;
        for (int i1 = 0; i1 < y1.n; ++i1) inner += k1[i1] * row[i1];
        acc += k0[i0] * inner;
    }
    return std::pow(kPi, -0.5) * std::exp(-0.5 * zz) * acc;
}

cplx bargmann_from_hermite(const HermiteExpansion& e, std::span<const cplx> z)
{
    TaylorCoeffs t;
    t.dim = e.dim;
    t.max_degree = e.max_degree;
    t.coeffs = e.coeffs;
    return evaluate(t, z);
}

cplx bargmann_via_stft(const Signal& f, std::span<const cplx> z)
{
    const int d = f.dim();
    check_point_dim(d, z);
    const Window w = gaussian_window(f.axes);

    std::vector<double> X(d), XI(d);
    double r2 = 0.0, xdotxi = 0.0;
    for (int a = 0; a < d; ++a) {
        const double x = z[a].real(), xi = z[a].imag();
        X[a] = std::numbers::sqrt2 * x;
        XI[a] = -std::numbers::sqrt2 * xi;
        r2 += x * x + xi * xi;
        xdotxi += x * xi;
    }
    return std::exp(0.5 * r2) * std::polar(1.0, -xdotxi) *
           stft_point(f, w, X, XI);
}

TaylorResult taylor_coefficients(
    const std::function<cplx(std::span<const cplx>)>& F, int dim, int degree,
    const TaylorOptions& opt)
{
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("dimension must be 1 or 2");
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    if (opt.radius <= 0.0)
        throw std::invalid_argument("circle radius must be positive");
    const int m = degree + 1 + opt.extra_nodes;
    const double r = opt.radius;

    TaylorResult out;
    out.coeffs.dim = dim;
    out.coeffs.max_degree = degree;

    double kept2 = 0.0, tail2 = 0.0;
    std::vector<std::vector<cplx>> modes2;

    if (dim == 1) {
        std::vector<cplx> samples(m);
        for (int j = 0; j < m; ++j) {
            const cplx zj = std::polar(r, 2.0 * kPi * j / m);
            samples[j] = F(std::span<const cplx>(&zj, 1));
        }
        const CircleModes cm = circle_dft(samples);
        for (int k = 0; k < m; ++k) {
            const double mass = std::norm(cm.scaled[k]);
            (k <= degree ? kept2 : tail2) += mass;
        }
        const double floor_mag =
            1e-13 * std::sqrt(kept2 + tail2);
        for (int k = 0; k <= degree; ++k) {
            const cplx a = cm.scaled[k] / std::pow(r, k) * sqrt_factorial(k);
            if (std::abs(cm.scaled[k]) > floor_mag)
                out.coeffs.coeffs[MultiIndex{{k}}] = a;
        }
    } else {
        // Two nested circles; modes via row DFTs then column DFTs.
        std::vector<std::vector<cplx>> samples(m, std::vector<cplx>(m));
        std::vector<cplx> zj(2);
        for (int j0 = 0; j0 < m; ++j0) {
            zj[0] = std::polar(r, 2.0 * kPi * j0 / m);
            for (int j1 = 0; j1 < m; ++j1) {
                zj[1] = std::polar(r, 2.0 * kPi * j1 / m);
                samples[j0][j1] = F(zj);
            }
        }
        std::vector<std::vector<cplx>> rowdft(m);
        for (int j0 = 0; j0 < m; ++j0)
            rowdft[j0] = circle_dft(samples[j0]).scaled;
        modes2.assign(m, std::vector<cplx>(m));
        for (int k1 = 0; k1 < m; ++k1) {
            std::vector<cplx> col(m);
            for (int j0 = 0; j0 < m; ++j0) col[j0] = rowdft[j0][k1];
            const auto coldft = circle_dft(col).scaled;
            for (int k0 = 0; k0 < m; ++k0) modes2[k0][k1] = coldft[k0];
        }
        for (int k0 = 0; k0 < m; ++k0)
            for (int k1 = 0; k1 < m; ++k1) {
                const double mass = std::norm(modes2[k0][k1]);
                (k0 + k1 <= degree ? kept2 : tail2) += mass;
            }
        const double floor_mag = 1e-13 * std::sqrt(kept2 + tail2);
        for (int k0 = 0; k0 <= degree; ++k0)
            for (int k1 = 0; k0 + k1 <= degree; ++k1) {
                if (std::abs(modes2[k0][k1]) <= floor_mag) continue;
                const cplx a = modes2[k0][k1] / std::pow(r, k0 + k1) *
                               sqrt_factorial(k0) * sqrt_factorial(k1);
                out.coeffs.coeffs[MultiIndex{{k0, k1}}] = a;
            }
    }

    const double total2 = kept2 + tail2;
    out.tail_fraction = total2 > 0.0 ? std::sqrt(tail2 / total2) : 0.0;
    out.ill_conditioned = out.tail_fraction > 0.01;
    return out;
}

TaylorResult taylor_coefficients(const PhaseField& F, int degree,
                                 const TaylorOptions& opt)
{
    const int d = F.grid.dim();
    return taylor_coefficients(
        [&F, d](std::span<const cplx> z) {
            std::vector<double> x(d), xi(d);
            for (int a = 0; a < d; ++a) {
                x[a] = z[a].real();
                xi[a] = z[a].imag();
            }
            return field_value(F, x, xi);
        },
        d, degree, opt);
}

InverseResult inverse_bargmann(const FockFunction& F, int max_degree)
{
    InverseResult out;
    if (const auto* t = std::get_if<TaylorCoeffs>(&F.rep)) {
        out.expansion.dim = t->dim;
        out.expansion.max_degree = max_degree;
        double tail2 = 0.0;
        for (const auto& [alpha, a] : t->coeffs) {
            if (alpha.order() <= max_degree)
                out.expansion.coeffs[alpha] = a;
            else
                tail2 += std::norm(a);
        }
        out.truncated_l2 = std::sqrt(tail2);
        return out;
    }
    const TaylorResult tr =
        taylor_coefficients(std::get<PhaseField>(F.rep), max_degree);
    out.expansion.dim = tr.coeffs.dim;
    out.expansion.max_degree = max_degree;
    out.expansion.coeffs = tr.coeffs.coeffs;
    out.truncated_l2 = tr.tail_fraction;
    return out;
}

PhaseField dilation_S(const PhaseField& F, const PhaseGrid& out)
{
    const double s = 1.0 / std::numbers::sqrt2;
    return resample_scaled(F, out, s, -s,
                           [](std::span<const double>, std::span<const double>)
                               -> cplx { return 1.0; });
}

PhaseField dilation_S_inverse(const PhaseField& F, const PhaseGrid& out)
{
    const double s = std::numbers::sqrt2;
    return resample_scaled(F, out, s, -s,
                           [](std::span<const double>, std::span<const double>)
                               -> cplx { return 1.0; });
}

PhaseField operator_U_V(const PhaseField& F, const PhaseGrid& out)
{
    const double s = std::numbers::sqrt2;
    return resample_scaled(
        F, out, s, -s,
        [](std::span<const double> x, std::span<const double> xi) -> cplx {
            double r2 = 0.0, dot = 0.0;
            for (std::size_t a = 0; a < x.size(); ++a) {
                r2 += x[a] * x[a] + xi[a] * xi[a];
                dot += x[a] * xi[a];
            }
            return std::exp(0.5 * r2) * std::polar(1.0, -dot);
        });
}

PhaseField operator_U_V_inverse(const PhaseField& G, const PhaseGrid& out)
{
    const double s = 1.0 / std::numbers::sqrt2;
    return resample_scaled(
        G, out, s, -s,
        [](std::span<const double> x, std::span<const double> xi) -> cplx {
            double r2 = 0.0, dot = 0.0;
            for (std::size_t a = 0; a < x.size(); ++a) {
                r2 += x[a] * x[a] + xi[a] * xi[a];
                dot += x[a] * xi[a];
            }
            return std::exp(-0.25 * r2) * std::polar(1.0, -0.5 * dot);
        });
}

double cauchy_riemann_residual(const PhaseField& F)
{
    if (F.grid.dim() != 1)
        throw std::invalid_argument(
            "Cauchy-Riemann residual is defined for one complex variable");
    const AxisGrid& xa = F.grid.x_axes[0];
    const AxisGrid& qa = F.grid.xi_axes[0];
    const int nx = xa.n, nq = qa.n;

    const auto at = [&](int p, int q) {
        return F.values[static_cast<std::size_t>(q) * nx + p];
    };
    double worst = 0.0;
    for (int q = 2; q < nq - 2; ++q)
        for (int p = 2; p < nx - 2; ++p) {
            const cplx dx = (at(p - 2, q) - 8.0 * at(p - 1, q) +
                             8.0 * at(p + 1, q) - at(p + 2, q)) /
                            (12.0 * xa.spacing);
            const cplx dq = (at(p, q - 2) - 8.0 * at(p, q - 1) +
                             8.0 * at(p, q + 1) - at(p, q + 2)) /
                            (12.0 * qa.spacing);
            worst = std::max(worst, 0.5 * std::abs(dx + cplx(0.0, 1.0) * dq));
        }
    return worst;
}

} // namespace barg
