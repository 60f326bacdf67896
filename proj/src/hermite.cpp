#include "barg/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace barg {

namespace {

// h_0..h_max at a single coordinate, recurrence on the functions themselves:
// h_{k+1}(t) = sqrt(2/(k+1)) t h_k(t) - sqrt(k/(k+1)) h_{k-1}(t).
void hermite_values_1d(int max_degree, double t, std::vector<double>& h)
{
    h.resize(max_degree + 1);
    h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
    if (max_degree == 0) return;
    h[1] = std::sqrt(2.0) * t * h[0];
    for (int k = 1; k < max_degree; ++k)
        h[k + 1] = std::sqrt(2.0 / (k + 1)) * t * h[k] -
                   std::sqrt(double(k) / (k + 1)) * h[k - 1];
}

void check_degree(int degree)
{
    if (degree < 0 || degree > 512)
        throw std::invalid_argument(
            "hermite: per-coordinate degree must be in [0, 512], got " +
            std::to_string(degree));
}

void check_expansion_dim(int dim)
{
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("hermite: dimension must be 1 or 2");
}

} // namespace

int MultiIndex::order() const
{
    int s = 0;
    for (int e : entries) s += e;
    return s;
}

bool operator==(const MultiIndex& a, const MultiIndex& b)
{
    return a.entries == b.entries;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const
{
    const int oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.entries < b.entries;
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int degree)
{
    check_expansion_dim(dim);
    std::vector<MultiIndex> out;
    if (dim == 1) {
        for (int k = 0; k <= degree; ++k) out.push_back({{k}});
        return out;
    }
    for (int total = 0; total <= degree; ++total)
        for (int k = 0; k <= total; ++k) out.push_back({{k, total - k}});
    return out;
}

double coeff_l2_norm(const HermiteExpansion& e)
{
    double s = 0.0;
    for (const auto& [alpha, a] : e.coeffs) s += std::norm(a);
    return std::sqrt(s);
}

double hermite_eval(const MultiIndex& alpha, std::span<const double> x)
{
    if (static_cast<std::size_t>(alpha.dim()) != x.size())
        throw std::invalid_argument("hermite_eval: point/index dimension mismatch");
    double v = 1.0;
    std::vector<double> h;
    for (int j = 0; j < alpha.dim(); ++j) {
        check_degree(alpha.entries[j]);
        hermite_values_1d(alpha.entries[j], x[j], h);
        v *= h[alpha.entries[j]];
    }
    return v;
}

std::vector<std::vector<double>> hermite_axis_table(int max_degree,
                                                    const AxisGrid& axis)
{
    check_degree(max_degree);
    std::vector<std::vector<double>> table(
        max_degree + 1, std::vector<double>(axis.n, 0.0));
    std::vector<double> h;
    for (int i = 0; i < axis.n; ++i) {
        hermite_values_1d(max_degree, axis.nodes[i], h);
        for (int k = 0; k <= max_degree; ++k) table[k][i] = h[k];
    }
    return table;
}

HermiteExpansion hermite_expand(const Signal& f, int max_degree)
{
    check_degree(max_degree);
    const double needed = std::sqrt(2.0 * max_degree) + 4.0;
    for (const AxisGrid& a : f.axes)
        if (a.half_width < needed)
            throw std::invalid_argument(
                "hermite_expand: grid half_width " + std::to_string(a.half_width) +
                " too narrow for degree " + std::to_string(max_degree) +
                "; need at least sqrt(2*degree) + 4 = " + std::to_string(needed));

    HermiteExpansion e;
    e.dim = f.dim();
    e.max_degree = max_degree;

    if (f.dim() == 1) {
        const auto table = hermite_axis_table(max_degree, f.axes[0]);
        for (int k = 0; k <= max_degree; ++k) {
            cplx a = 0.0;
            for (int i = 0; i < f.axes[0].n; ++i)
                a += f.axes[0].weight(i) * f.values[i] * table[k][i];
            e.coeffs[{{k}}] = a;
        }
        return e;
    }

    const auto t0 = hermite_axis_table(max_degree, f.axes[0]);
    const auto t1 = hermite_axis_table(max_degree, f.axes[1]);
    const int n0 = f.axes[0].n, n1 = f.axes[1].n;

    // Contract one axis at a time: B[k0][j] = sum_i w0_i h_k0(x_i) f[i][j].
    std::vector<std::vector<cplx>> B(max_degree + 1,
                                     std::vector<cplx>(n1, cplx(0.0)));
    for (int k0 = 0; k0 <= max_degree; ++k0)
        for (int i = 0; i < n0; ++i) {
            const double c = f.axes[0].weight(i) * t0[k0][i];
            const cplx* row = &f.values[static_cast<std::size_t>(i) * n1];
            for (int j = 0; j < n1; ++j) B[k0][j] += c * row[j];
        }
    for (const MultiIndex& alpha : multi_indices_up_to(2, max_degree)) {
        cplx a = 0.0;
        for (int j = 0; j < n1; ++j)
            a += f.axes[1].weight(j) * t1[alpha.entries[1]][j] * B[alpha.entries[0]][j];
        e.coeffs[alpha] = a;
    }
    return e;
}

Signal hermite_synthesize(const HermiteExpansion& e, std::vector<AxisGrid> axes)
{
    check_expansion_dim(e.dim);
    if (static_cast<int>(axes.size()) != e.dim)
        throw std::invalid_argument("hermite_synthesize: axis count mismatch");

    Signal out = make_signal(std::move(axes));
    if (e.dim == 1) {
        const auto table = hermite_axis_table(e.max_degree, out.axes[0]);
        for (const auto& [alpha, a] : e.coeffs)
            for (int i = 0; i < out.axes[0].n; ++i)
                out.values[i] += a * table[alpha.entries[0]][i];
        return out;
    }

    const auto t0 = hermite_axis_table(e.max_degree, out.axes[0]);
    const auto t1 = hermite_axis_table(e.max_degree, out.axes[1]);
    const int n1 = out.axes[1].n;
    for (const auto& [alpha, a] : e.coeffs) {
        const auto& h0 = t0[alpha.entries[0]];
        const auto& h1 = t1[alpha.entries[1]];
        for (int i = 0; i < out.axes[0].n; ++i) {
            const cplx c = a * h0[i];
            cplx* row = &out.values[static_cast<std::size_t>(i) * n1];
            for (int j = 0; j < n1; ++j) row[j] += c * h1[j];
        }
    }
    return out;
}

double oscillator_eigenvalue(int order, int dim)
{
    check_expansion_dim(dim);
    if (order < 0)
        throw std::invalid_argument("oscillator_eigenvalue: negative order");
    return 2.0 * order + 5.0 * dim + 1.0;
}

double oscillator_eigenvalue(const MultiIndex& alpha, int dim)
{
    if (alpha.dim() != dim)
        throw std::invalid_argument("oscillator_eigenvalue: dimension mismatch");
    return oscillator_eigenvalue(alpha.order(), dim);
}

HermiteExpansion apply_h_power(const HermiteExpansion& e, int N)
{
    if (N < 0)
        throw std::invalid_argument("apply_h_power: power must be >= 0");
    HermiteExpansion out = e;
    for (auto& [alpha, a] : out.coeffs)
        a *= std::pow(oscillator_eigenvalue(alpha, e.dim), N);
    return out;
}

double m2_2n_norm(const HermiteExpansion& e, int N)
{
    double s = 0.0;
    for (const auto& [alpha, a] : e.coeffs)
        s += std::pow(oscillator_eigenvalue(alpha, e.dim), 2 * N) * std::norm(a);
    return std::sqrt(s);
}

} // namespace barg
