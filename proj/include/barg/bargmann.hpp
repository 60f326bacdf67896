#pragma once

#include "barg/hermite.hpp"
#include "barg/stft.hpp"

#include <functional>
#include <variant>

namespace barg {

/// Entire function on C^d in scaled Taylor form
///   F(z) = sum_alpha a_alpha z^alpha / sqrt(alpha!).
/// The sqrt(alpha!) split makes the coefficient map carry exactly the
/// Hermite coefficients of the preimage under the transform, and turns the
/// Gaussian-measure inner product into a plain weighted l2 sum.
struct TaylorCoeffs {
    int dim = 1;
    int max_degree = 0;
    CoeffMap coeffs;
};

/// Entire function carried either in Taylor form or as samples on a phase
/// grid identified with z = x + i xi.
struct FockFunction {
    std::variant<TaylorCoeffs, PhaseField> rep;

    int dim() const;
};

/// Sum_j z_j w_j (no conjugation).
cplx bilinear_dot(std::span<const cplx> z, std::span<const cplx> w);
/// Sum_j z_j conj(w_j).
cplx hermitian_dot(std::span<const cplx> z, std::span<const cplx> w);

/// Evaluate a Taylor-form function; term scaling through the running
/// recurrence t_{k+1} = t_k z / sqrt(k+1), which stays bounded.
cplx evaluate(const TaylorCoeffs& F, std::span<const cplx> z);

/// Integral transform to entire functions,
///   (Bf)(z) = pi^{-d/4} integral exp(-(<z,z> + |y|^2)/2 + sqrt(2) <z,y>)
///             f(y) dy   (bilinear <.,.>),
/// by trapezoid quadrature on the signal grid.  Throws std::overflow_error
/// naming the point when |Im z|^2 / 2 would overflow the exponential.
cplx bargmann_direct(const Signal& f, std::span<const cplx> z);

/// The same transform evaluated from Hermite coefficients: the basis maps
/// to normalized monomials, so this is evaluate() on the copied map.
cplx bargmann_from_hermite(const HermiteExpansion& e, std::span<const cplx> z);

/// The same transform through the short-time route with the canonical
/// window:  (Bf)(x + i xi) = e^{(|x|^2+|xi|^2)/2} e^{-i<x,xi>}
///                           V f(sqrt(2) x, -sqrt(2) xi).
cplx bargmann_via_stft(const Signal& f, std::span<const cplx> z);

/// Result of Taylor extraction: coefficients plus a conditioning report.
/// tail_fraction is the relative circle-mode mass beyond the requested
/// degree; ill_conditioned is set when it exceeds 1% (the Cauchy sums are
/// then dominated by aliasing rather than the wanted modes).
struct TaylorResult {
    TaylorCoeffs coeffs;
    double tail_fraction = 0.0;
    bool ill_conditioned = false;
};

struct TaylorOptions {
    double radius = 1.5; // per-coordinate Cauchy circle radius
    int extra_nodes = 8; // circle nodes = degree + 1 + extra_nodes
};

/// Scaled Taylor coefficients a_alpha (F = sum a_alpha z^alpha/sqrt(alpha!))
/// of an entire function, via per-coordinate Cauchy circles with m-point
/// trapezoid sums (exact on polynomials of degree < m).
TaylorResult taylor_coefficients(
    const std::function<cplx(std::span<const cplx>)>& F, int dim, int degree,
    const TaylorOptions& opt = {});

/// Taylor extraction of a sampled field (z = x + i xi identification); the
/// circle values are interpolated from the grid, which must contain the
/// closed disk of the circle radius.
TaylorResult taylor_coefficients(const PhaseField& F, int degree,
                                 const TaylorOptions& opt = {});

/// Preimage of an entire function under the transform, truncated at
/// max_degree; the scaled Taylor coefficients are the Hermite coefficients.
/// truncated_l2 reports the l2 mass of the discarded coefficients (Taylor
/// variant; for the sampled variant it reports the extraction tail).
struct InverseResult {
    HermiteExpansion expansion;
    double truncated_l2 = 0.0;
};
InverseResult inverse_bargmann(const FockFunction& F, int max_degree);

/// Dilation (S F)(x, xi) = F(x / sqrt(2), -xi / sqrt(2)), resampled onto the
/// target grid by cubic interpolation.
PhaseField dilation_S(const PhaseField& F, const PhaseGrid& out);

/// Inverse dilation (S^{-1} F)(x, xi) = F(sqrt(2) x, -sqrt(2) xi).
PhaseField dilation_S_inverse(const PhaseField& F, const PhaseGrid& out);

/// Weight-and-dilate conjugator between the short-time transform and the
/// entire-function picture:
///   (U F)(x, xi) = e^{(|x|^2+|xi|^2)/2} e^{-i<x,xi>} F(sqrt(2) x, -sqrt(2) xi),
/// so that U composed with the canonical-window transform equals the
/// integral transform above.  (The sign of the second argument is forced by
/// that composition identity; see the dilation relation between the two
/// transforms.)
PhaseField operator_U_V(const PhaseField& F, const PhaseGrid& out);

/// Inverse: (U^{-1} G)(x, xi) = e^{-(|x|^2+|xi|^2)/4} e^{-i<x,xi>/2}
///                              G(x / sqrt(2), -xi / sqrt(2)).
PhaseField operator_U_V_inverse(const PhaseField& G, const PhaseGrid& out);

/// Max over interior nodes of |(d/dx + i d/dxi) F| / 2 by fourth-order
/// central differences: the discrete Cauchy-Riemann residual of a field
/// sampled at z = x + i xi (d = 1).  Near zero iff the samples come from an
/// entire function.
double cauchy_riemann_residual(const PhaseField& F);

} // namespace barg
