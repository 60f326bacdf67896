#pragma once

#include "barg/grid.hpp"

#include <functional>

namespace barg {

/// Normalization recorded on a phase-space field.  STFT_PLAIN means the
/// prefactor-free transform V_w f(x, xi) = integral f(y) conj(w(y-x))
/// exp(-i<y, xi>) dy; every constant elsewhere in the library (inversion,
/// weak Toeplitz form, projection) is stated relative to this choice.
enum class Convention { STFT_PLAIN };

/// Complex samples over a phase-space grid (layout documented on PhaseGrid:
/// node = xi_flat * x_count() + x_flat).
struct PhaseField {
    PhaseGrid grid;
    std::vector<cplx> values;
    Convention convention = Convention::STFT_PLAIN;
};

/// Zero-initialized field over the grid.
PhaseField make_phase_field(PhaseGrid grid);

/// Sample fn(x, xi) at every node of the grid.
PhaseField sample_phase_field(
    PhaseGrid grid,
    const std::function<cplx(std::span<const double>, std::span<const double>)>& fn);

/// Weighted phase-space integral of the field values.
cplx integrate(const PhaseField& F);

/// sqrt(integral |F|^2) over the phase grid.
double l2_norm(const PhaseField& F);

/// Field value at an arbitrary phase-space point by separable cubic
/// (4-node Lagrange) interpolation, O(h^4) accurate on smooth fields.
/// Points outside the grid throw std::domain_error naming the coordinate.
cplx field_value(const PhaseField& F, std::span<const double> x,
                 std::span<const double> xi);

/// Analysis window.  Translates w(y - x) are evaluated analytically through
/// the per-axis profiles (the window must be a tensor product, which covers
/// the canonical Gaussian and its dilates); the sampled signal fixes the
/// grid contract with transforms and is used where the window itself is
/// transformed.
struct Window {
    Signal signal;
    std::vector<std::function<double(double)>> axis_profiles;
    double l2_norm = 0.0;
};

/// Window with the given per-axis profiles sampled on the axes; the L2 norm
/// is computed by grid quadrature and cached.
Window make_window(std::vector<AxisGrid> axes,
                   std::vector<std::function<double(double)>> profiles);

/// Canonical window pi^(-d/4) exp(-|x|^2/2); its cached L2 norm is 1 up to
/// quadrature error (< 1e-10 on the default grids).
Window gaussian_window(std::vector<AxisGrid> axes);

/// Short-time Fourier transform, prefactor-free (see Convention):
/// V_w f(x, xi) = integral f(y) conj(w(y-x)) exp(-i<y, xi>) dy
/// evaluated by trapezoid quadrature at every node of pg.  Linear in f,
/// conjugate-linear in the window.  Requires f and w on the same axes and
/// the xi axes inside the Nyquist band pi / spacing of the signal axes;
/// violations throw std::invalid_argument.
PhaseField stft(const Signal& f, const Window& w, const PhaseGrid& pg);

/// The same quadrature at a single phase-space point.
cplx stft_point(const Signal& f, const Window& w, std::span<const double> x,
                std::span<const double> xi);

/// Inversion: f(y) = (2 pi)^{-d} double-integral F(x, xi) w(y-x)
/// exp(+i<y, xi>) dx dxi, sampled on out_axes.  With a unit-norm window this
/// inverts stft up to quadrature and domain-truncation error.  Throws
/// std::invalid_argument if the window norm is not 1.
Signal istft(const PhaseField& F, const Window& w,
             std::vector<AxisGrid> out_axes);

/// Twisted convolution
/// (F *~ G)(x, xi) = (2 pi)^{-d/2} double-integral F(x-y, xi-eta) G(y, eta)
/// exp(-i<x-y, eta>) dy deta
/// by direct double-sum quadrature on the common grid, with F extended by
/// zero off the grid (the symmetric axes keep x-y on the lattice).  O(M^2)
/// in the node count M; supported for one pair of phase axes (d = 1), which
/// is the only case exercised at desk scale.  Mismatched grids or d = 2
/// throw std::invalid_argument.
PhaseField twisted_convolution(const PhaseField& F, const PhaseField& G);

/// Projection onto the range of the transform:
/// Pi F = (2 pi)^{-d/2} (F *~ V_w w).
/// The constant is fixed so that Pi(V_w f) = V_w f and Pi^2 = Pi hold with
/// constant exactly 1 in the continuum (Pi then coincides with
/// stft . istft).  Unit-norm window required.
PhaseField projection_pi(const PhaseField& F, const Window& w);

/// Localization (Toeplitz-type) operator with symbol a, realized strongly:
/// toeplitz(a, w, f) = istft(a . stft(f, w), w) on the axes of f.  The weak
/// form (Tp f, g) = (2 pi)^{-d} (a . V_w f, V_w g) holds under the plain
/// convention.  Real symbols give a self-adjoint, nonnegative-symbol-
/// positive operator.
Signal toeplitz(const PhaseField& a, const Window& w, const Signal& f);

} // namespace barg
