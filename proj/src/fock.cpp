#include "barg/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace barg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool valid_exponent(double p) { return p >= 1.0; }  // +infinity passes

void check_spec(const MixedNormSpec& spec) {
    if (!valid_exponent(spec.p) || !valid_exponent(spec.q)) {
        throw std::invalid_argument(
            "mixed norm exponents must lie in [1, infinity]");
    }
}

double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

/// Evaluate either representation of an entire function at a complex point.
cplx eval_fock(const FockFunction& F, std::span<const cplx> z) {
    if (const auto* taylor = std::get_if<TaylorCoeffs>(&F.rep)) {
        cplx value = evaluate(*taylor, z);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw std::overflow_error(
                "entire-function evaluation overflowed at |z| = " +
                std::to_string(std::abs(z[0])));
        }
        return value;
    }
    const auto& field = std::get<PhaseField>(F.rep);
    std::vector<double> x(z.size()), xi(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        x[j] = z[j].real();
        xi[j] = z[j].imag();
    }
    return field_value(field, x, xi);
}

/// p-norm of a strided slice of non-negative values against quadrature
/// weights; p = infinity takes the maximum instead.
template <class WeightAt>
double slice_norm(std::span<const double> mag, std::size_t first,
                  std::size_t stride, std::size_t count, double p,
                  WeightAt&& weight_at) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            m = std::max(m, mag[first + i * stride]);
        }
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        s += weight_at(i) * std::pow(mag[first + i * stride], p);
    }
    return std::pow(s, 1.0 / p);
}

}  // namespace

WeightSpec sigma_weight(double s) {
    return WeightSpec{PolynomialSigma{s}, std::fabs(s)};
}

WeightSpec tabulated_weight(PhaseField values, double moderate_order) {
    return WeightSpec{TabulatedWeight{std::move(values)}, moderate_order};
}

WeightSpec reciprocal_weight(const WeightSpec& w) {
    if (const auto* sigma = std::get_if<PolynomialSigma>(&w.kind)) {
        return sigma_weight(-sigma->s);
    }
    TabulatedWeight inv = std::get<TabulatedWeight>(w.kind);
    for (cplx& v : inv.values.values) {
        v = 1.0 / v;
    }
    return WeightSpec{std::move(inv), w.moderate_order};
}

double weight_value(const WeightSpec& w, std::span<const double> x,
                    std::span<const double> xi) {
    if (const auto* sigma = std::get_if<PolynomialSigma>(&w.kind)) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        for (double v : xi) r2 += v * v;
        return std::pow(1.0 + r2, 0.5 * sigma->s);
    }
    const auto& tab = std::get<TabulatedWeight>(w.kind);
    return field_value(tab.values, x, xi).real();
}

double mixed_norm(const PhaseField& field, const MixedNormSpec& spec,
                  const WeightSpec& w) {
    check_spec(spec);
    const PhaseGrid& g = field.grid;
    const int d = g.dim();
    const std::size_t nx = g.x_count();
    const std::size_t nq = g.xi_count();

    std::vector<double> mag(g.node_count());
    std::vector<double> x(d), xi(d);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        g.xi_coords(iq, xi);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            g.x_coords(ix, x);
            mag[iq * nx + ix] =
                std::abs(field.values[iq * nx + ix]) * weight_value(w, x, xi);
        }
    }

    if (spec.order == MixedOrder::XFirst) {
        std::vector<double> profile(nq);
        for (std::size_t iq = 0; iq < nq; ++iq) {
            profile[iq] = slice_norm(mag, iq * nx, 1, nx, spec.p,
                                     [&](std::size_t i) { return g.x_weight(i); });
        }
        return slice_norm(profile, 0, 1, nq, spec.q,
                          [&](std::size_t i) { return g.xi_weight(i); });
    }
    std::vector<double> profile(nx);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        profile[ix] = slice_norm(mag, ix, nx, nq, spec.p,
                                 [&](std::size_t i) { return g.xi_weight(i); });
    }
    return slice_norm(profile, 0, 1, nx, spec.q,
                      [&](std::size_t i) { return g.x_weight(i); });
}

double modulation_norm(const Signal& f, const WeightSpec& w,
                       const MixedNormSpec& spec, const PhaseGrid& grid) {
    Window window = gaussian_window(f.axes);
    PhaseField transform = stft(f, window, grid);
    return mixed_norm(transform, spec, w);
}

PhaseField damped_dilated_field(const FockFunction& F, const PhaseGrid& grid) {
    const int d = grid.dim();
    if (F.dim() != d) {
        throw std::invalid_argument("dimension mismatch between function and grid");
    }
    PhaseField out = make_phase_field(grid);
    const std::size_t nx = grid.x_count();
    const std::size_t nq = grid.xi_count();
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    std::vector<double> x(d), xi(d);
    std::vector<cplx> z(d);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        grid.xi_coords(iq, xi);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            grid.x_coords(ix, x);
            double r2 = 0.0;
            for (int j = 0; j < d; ++j) {
                z[j] = cplx(x[j], -xi[j]) * inv_rt2;
                r2 += x[j] * x[j] + xi[j] * xi[j];
            }
            out.values[iq * nx + ix] = eval_fock(F, z) * std::exp(-0.25 * r2);
        }
    }
    return out;
}

double fock_norm(const FockFunction& F, const WeightSpec& w,
                 const MixedNormSpec& spec, const PhaseGrid& grid) {
    return mixed_norm(damped_dilated_field(F, grid), spec, w);
}

cplx a2_inner(const FockFunction& F, const FockFunction& G) {
    if (F.dim() != G.dim()) {
        throw std::invalid_argument("dimension mismatch in inner product");
    }
    const auto* ft = std::get_if<TaylorCoeffs>(&F.rep);
    const auto* gt = std::get_if<TaylorCoeffs>(&G.rep);
    if (ft && gt) {
        cplx sum = 0.0;
        for (const auto& [alpha, a] : ft->coeffs) {
            auto it = gt->coeffs.find(alpha);
            if (it != gt->coeffs.end()) {
                sum += a * std::conj(it->second);
            }
        }
        return sum;
    }

    const auto* fs = std::get_if<PhaseField>(&F.rep);
    const auto* gs = std::get_if<PhaseField>(&G.rep);
    if (fs && gs && !(fs->grid == gs->grid)) {
        throw std::invalid_argument("sampled operands must share one grid");
    }
    const PhaseGrid& grid = fs ? fs->grid : gs->grid;
    const int d = grid.dim();
    const std::size_t nx = grid.x_count();
    const std::size_t nq = grid.xi_count();
    std::vector<double> x(d), xi(d);
    std::vector<cplx> z(d);
    cplx sum = 0.0;
    for (std::size_t iq = 0; iq < nq; ++iq) {
        grid.xi_coords(iq, xi);
        const double wq = grid.xi_weight(iq);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            grid.x_coords(ix, x);
            double r2 = 0.0;
            for (int j = 0; j < d; ++j) {
                z[j] = cplx(x[j], xi[j]);
                r2 += x[j] * x[j] + xi[j] * xi[j];
            }
            const std::size_t node = iq * nx + ix;
            cplx fv = fs ? fs->values[node] : eval_fock(F, z);
            cplx gv = gs ? gs->values[node] : eval_fock(G, z);
            sum += wq * grid.x_weight(ix) * fv * std::conj(gv) * std::exp(-r2);
        }
    }
    return sum * std::pow(kPi, -d);
}

namespace {

/// Precomputed quadrature data for the reproducing integral of a sampled
/// function: per node, conj(w) and the weighted damped sample
/// pi^{-d} wt F(w) exp(-|w|^2).
struct ReproducingTable {
    std::vector<std::vector<cplx>> conj_nodes;
    std::vector<cplx> base;
};

ReproducingTable make_reproducing_table(const PhaseField& F) {
    const PhaseGrid& g = F.grid;
    const int d = g.dim();
    const std::size_t nx = g.x_count();
    const std::size_t nq = g.xi_count();
    ReproducingTable t;
    t.conj_nodes.reserve(g.node_count());
    t.base.reserve(g.node_count());
    const double scale = std::pow(kPi, -d);
    std::vector<double> x(d), xi(d);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        g.xi_coords(iq, xi);
        const double wq = g.xi_weight(iq);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            g.x_coords(ix, x);
            double r2 = 0.0;
            std::vector<cplx> cw(d);
            for (int j = 0; j < d; ++j) {
                cw[j] = cplx(x[j], -xi[j]);
                r2 += x[j] * x[j] + xi[j] * xi[j];
            }
            t.conj_nodes.push_back(std::move(cw));
            t.base.push_back(scale * wq * g.x_weight(ix) *
                             F.values[iq * nx + ix] * std::exp(-r2));
        }
    }
    return t;
}

cplx apply_table(const ReproducingTable& t, std::span<const cplx> z) {
    cplx sum = 0.0;
    const std::size_t n = t.base.size();
    const int d = static_cast<int>(z.size());
    for (std::size_t i = 0; i < n; ++i) {
        cplx dot = 0.0;
        for (int j = 0; j < d; ++j) {
            dot += z[j] * t.conj_nodes[i][j];
        }
        sum += t.base[i] * std::exp(dot);
    }
    return sum;
}

}  // namespace

cplx reproducing_apply(const PhaseField& F, std::span<const cplx> z) {
    if (static_cast<int>(z.size()) != F.grid.dim()) {
        throw std::invalid_argument("evaluation point has wrong dimension");
    }
    return apply_table(make_reproducing_table(F), z);
}

PhaseField reproducing_field(const PhaseField& F, const PhaseGrid& out_grid) {
    if (out_grid.dim() != F.grid.dim()) {
        throw std::invalid_argument("dimension mismatch between field and grid");
    }
    const ReproducingTable table = make_reproducing_table(F);
    PhaseField out = make_phase_field(out_grid);
    const int d = out_grid.dim();
    const std::size_t nx = out_grid.x_count();
    const std::size_t nq = out_grid.xi_count();
    std::vector<double> x(d), xi(d);
    std::vector<cplx> z(d);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        out_grid.xi_coords(iq, xi);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            out_grid.x_coords(ix, x);
            for (int j = 0; j < d; ++j) {
                z[j] = cplx(x[j], xi[j]);
            }
            out.values[iq * nx + ix] = apply_table(table, z);
        }
    }
    return out;
}

FockFunction bargmann_toeplitz(const PhaseField& symbol, const FockFunction& F,
                               const PhaseGrid& work_grid) {
    const int d = work_grid.dim();
    if (F.dim() != d || symbol.grid.dim() != d) {
        throw std::invalid_argument("dimension mismatch in localization operator");
    }
    const double rt2 = std::sqrt(2.0);
    const std::size_t nx = work_grid.x_count();
    const std::size_t nq = work_grid.xi_count();
    PhaseField product = make_phase_field(work_grid);
    std::vector<double> x(d), xi(d), sx(d), sxi(d);
    std::vector<cplx> z(d);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        work_grid.xi_coords(iq, xi);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            work_grid.x_coords(ix, x);
            for (int j = 0; j < d; ++j) {
                sx[j] = rt2 * x[j];
                sxi[j] = -rt2 * xi[j];
                z[j] = cplx(x[j], xi[j]);
            }
            product.values[iq * nx + ix] =
                field_value(symbol, sx, sxi) * eval_fock(F, z);
        }
    }
    return FockFunction{reproducing_field(product, work_grid)};
}

NormEquivalenceReport norm_equivalence_report(const TaylorCoeffs& coeffs,
                                              int N, const PhaseGrid& grid) {
    NormEquivalenceReport report;
    const int d = coeffs.dim;
    const MixedNormSpec spec{2.0, 2.0, MixedOrder::XFirst};
    const double raw =
        fock_norm(FockFunction{coeffs}, sigma_weight(2.0 * N), spec, grid);
    report.lhs = raw * std::pow(2.0 * kPi, -0.5 * d);

    double sum = 0.0;
    for (const auto& [alpha, a] : coeffs.coeffs) {
        const double k = static_cast<double>(alpha.order());
        sum += std::norm(a) * std::pow(1.0 + k * k, static_cast<double>(N));
    }
    report.rhs = std::sqrt(sum);
    report.ratio = report.rhs > 0.0 ? report.lhs / report.rhs : 0.0;
    return report;
}

namespace {

/// Measured maximum multiplicity of the inflate-dilated cover discs over a
/// cartesian sampling of the covered annulus.
int measure_overlap(const BallCover& cover, double inflate, int samples) {
    const double extent = cover.r_max + 1.5;
    int worst = 0;
    for (int i = 0; i < samples; ++i) {
        const double re = -extent + 2.0 * extent * i / (samples - 1);
        for (int j = 0; j < samples; ++j) {
            const double im = -extent + 2.0 * extent * j / (samples - 1);
            const double r = std::hypot(re, im);
            if (r < 3.5 || r > cover.r_max + 1.0) continue;
            worst = std::max(worst, count_containing(cover, re, im, inflate));
        }
    }
    return worst;
}

}  // namespace

BallCover build_ball_cover(double r_max, int n_refine) {
    if (!(r_max >= 5.0)) {
        throw std::invalid_argument("cover radius must be at least 5");
    }
    if (n_refine < 1) {
        throw std::invalid_argument("cover refinement must be at least 1");
    }
    BallCover cover;
    cover.r_max = r_max;
    for (int k = 4;; ++k) {
        const double step = 1.0 / (k * n_refine);
        if (k > r_max + 0.5 * step) break;
        const double radius = 1.0 / (k + 1);
        for (int l = 0; l < k * n_refine; ++l) {
            const double rho = k + l * step;
            if (rho > r_max + 0.5 * step) break;
            const int count =
                static_cast<int>(std::ceil(2.0 * kPi * rho * (k + 1)));
            const double chord = 2.0 * rho * std::sin(kPi / count);
            if (chord > radius + 1e-12 || chord < 0.5 / k - 1e-12) {
                throw std::runtime_error(
                    "cover construction failed on circle k=" +
                    std::to_string(k) + " l=" + std::to_string(l) +
                    ": center spacing " + std::to_string(chord) +
                    " outside [1/(2k), 1/(k+1)]");
            }
            CoverCircle circle{k, rho, radius, count, cover.balls.size()};
            for (int j = 0; j < count; ++j) {
                const double angle = 2.0 * kPi * j / count;
                cover.balls.push_back(
                    Ball{{rho * std::cos(angle), rho * std::sin(angle)}, radius});
            }
            cover.circles.push_back(circle);
        }
    }
    cover.max_overlap = measure_overlap(cover, 4.0, 301);
    return cover;
}

int count_containing(const BallCover& cover, double re, double im,
                     double inflate) {
    const double rp = std::hypot(re, im);
    const double theta = std::atan2(im, re);
    int total = 0;
    for (const CoverCircle& c : cover.circles) {
        const double reach = inflate * c.radius;
        if (std::fabs(rp - c.rho) > reach) continue;
        // |p - center|^2 = rp^2 + rho^2 - 2 rp rho cos(dtheta) <= reach^2
        const double cmin =
            (rp * rp + c.rho * c.rho - reach * reach) / (2.0 * rp * c.rho);
        if (cmin > 1.0) continue;
        const double span = std::acos(std::max(cmin, -1.0));
        const double step = 2.0 * kPi / c.count;
        if (span >= kPi) {
            total += c.count;
            continue;
        }
        const long lo = static_cast<long>(std::ceil((theta - span) / step));
        const long hi = static_cast<long>(std::floor((theta + span) / step));
        if (hi >= lo) {
            total += static_cast<int>(std::min<long>(hi - lo + 1, c.count));
        }
    }
    return total;
}

bool cover_contains(const BallCover& cover, double re, double im,
                    double inflate) {
    return count_containing(cover, re, im, inflate) > 0;
}

namespace {

/// || <.>^{-d-1} ||_{L^r} over R^{2d} in closed form (r > 1 at d = 1,
/// r > 4/3 at d = 2); the divergent r = 1 endpoint is truncated to the disc
/// of radius L where the comparison integrals themselves live.
double holder_constant(int d, double r, double L) {
    if (std::isinf(r)) return 1.0;
    if (d == 1) {
        if (r > 1.0) return std::pow(kPi / (r - 1.0), 1.0 / r);
        return kPi * std::log1p(L * L);
    }
    if (r > 4.0 / 3.0) {
        const double a = 1.5 * r;
        return std::pow(kPi * kPi / ((a - 1.0) * (a - 2.0)), 1.0 / r);
    }
    const double s = std::sqrt(1.0 + L * L);
    return kPi * kPi * (2.0 * s + 2.0 / s - 4.0);
}

}  // namespace

HolderReport holder_embedding_check(const FockFunction& F, double N, double p1,
                                    double p2, const PhaseGrid& grid) {
    if (!valid_exponent(p1) || !valid_exponent(p2)) {
        throw std::invalid_argument("exponents must lie in [1, infinity]");
    }
    if (p1 > p2) {
        throw std::invalid_argument(
            "embedding runs toward larger exponents: need p1 <= p2");
    }
    const int d = grid.dim();
    double L = kInf;
    for (const AxisGrid& a : grid.x_axes) L = std::min(L, a.half_width);
    for (const AxisGrid& a : grid.xi_axes) L = std::min(L, a.half_width);

    const std::size_t nx = grid.x_count();
    const std::size_t nq = grid.xi_count();
    std::vector<double> x(d), xi(d);
    std::vector<cplx> z(d);
    double sum1 = 0.0, max1 = 0.0, sum2 = 0.0, max2 = 0.0;
    for (std::size_t iq = 0; iq < nq; ++iq) {
        grid.xi_coords(iq, xi);
        const double wq = grid.xi_weight(iq);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            grid.x_coords(ix, x);
            double r2 = 0.0;
            for (int j = 0; j < d; ++j) {
                z[j] = cplx(x[j], xi[j]);
                r2 += x[j] * x[j] + xi[j] * xi[j];
            }
            if (r2 > L * L) continue;  // disc-restricted comparison
            const double damped = std::abs(eval_fock(F, z)) * std::exp(-0.5 * r2);
            const double bracket = 1.0 + r2;
            const double g1 = damped * std::pow(bracket, -0.5 * (N + d + 1));
            const double g2 = damped * std::pow(bracket, -0.5 * N);
            const double wt = wq * grid.x_weight(ix);
            if (std::isinf(p1)) {
                max1 = std::max(max1, g1);
            } else {
                sum1 += wt * std::pow(g1, p1);
            }
            if (std::isinf(p2)) {
                max2 = std::max(max2, g2);
            } else {
                sum2 += wt * std::pow(g2, p2);
            }
        }
    }
    HolderReport report;
    report.lhs = std::isinf(p1) ? max1 : std::pow(sum1, 1.0 / p1);
    report.rhs = std::isinf(p2) ? max2 : std::pow(sum2, 1.0 / p2);
    const double r =
        (p1 == p2) ? kInf : 1.0 / (1.0 / p1 - (std::isinf(p2) ? 0.0 : 1.0 / p2));
    report.constant = holder_constant(d, r, L);
    report.holds = report.lhs <= report.constant * report.rhs * (1.0 + 1e-9);
    return report;
}

double duality_constant(int dim) { return std::pow(2.0 * kPi, -dim); }

DualityReport duality_bound_check(const FockFunction& F, const FockFunction& G,
                                  const WeightSpec& w, const MixedNormSpec& spec,
                                  const PhaseGrid& grid) {
    check_spec(spec);
    DualityReport report;
    report.pairing = std::abs(a2_inner(F, G));
    const MixedNormSpec dual{conjugate_exponent(spec.p),
                             conjugate_exponent(spec.q), spec.order};
    report.bound = duality_constant(grid.dim()) * fock_norm(F, w, spec, grid) *
                   fock_norm(G, reciprocal_weight(w), dual, grid);
    report.holds = report.pairing <= report.bound * (1.0 + 1e-9) + 1e-12;
    return report;
}

std::vector<double> narrow_profile(const FockFunction& F, const WeightSpec& w,
                                   double p, const PhaseGrid& grid) {
    if (!valid_exponent(p)) {
        throw std::invalid_argument("profile exponent must lie in [1, infinity]");
    }
    const int d = grid.dim();
    if (F.dim() != d) {
        throw std::invalid_argument("dimension mismatch between function and grid");
    }
    const double rt2 = std::sqrt(2.0);
    const std::size_t nx = grid.x_count();
    const std::size_t nq = grid.xi_count();
    std::vector<double> mag(nx);
    std::vector<double> x(d), xi(d), sx(d), sxi(d);
    std::vector<cplx> z(d);
    std::vector<double> profile(nq);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        grid.xi_coords(iq, xi);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            grid.x_coords(ix, x);
            double r2 = 0.0;
            for (int j = 0; j < d; ++j) {
                z[j] = cplx(x[j], xi[j]);
                sx[j] = rt2 * x[j];
                sxi[j] = -rt2 * xi[j];
                r2 += x[j] * x[j] + xi[j] * xi[j];
            }
            mag[ix] = std::abs(eval_fock(F, z)) * std::exp(-0.5 * r2) *
                      weight_value(w, sx, sxi);
        }
        profile[iq] = slice_norm(mag, 0, 1, nx, p,
                                 [&](std::size_t i) { return grid.x_weight(i); });
    }
    return profile;
}

double profile_distance(std::span<const double> a, std::span<const double> b,
                        double q, const PhaseGrid& grid) {
    if (a.size() != b.size() || a.size() != grid.xi_count()) {
        throw std::invalid_argument("profiles must match the grid xi count");
    }
    if (!valid_exponent(q)) {
        throw std::invalid_argument("profile exponent must lie in [1, infinity]");
    }
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff[i] = std::fabs(a[i] - b[i]);
    }
    return slice_norm(diff, 0, 1, diff.size(), q,
                      [&](std::size_t i) { return grid.xi_weight(i); });
}

}  // namespace barg
