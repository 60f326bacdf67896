#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "barg/bargmann.hpp"
#include "barg/grid.hpp"
#include "barg/stft.hpp"

namespace barg {

/// Polynomial weight sigma_s(X) = (1 + |X|^2)^(s/2) on phase space.
struct PolynomialSigma {
    double s = 0.0;
};

/// Weight sampled on a fixed phase-space grid (values must be positive).
struct TabulatedWeight {
    PhaseField values;
};

/// A moderate weight on phase space, either polynomial or tabulated.
/// moderate_order is the order v such that w(X+Y) <= 2^(v/2) w(X) sigma_v(Y);
/// for sigma_s it equals |s| and is filled in by sigma_weight().
struct WeightSpec {
    std::variant<PolynomialSigma, TabulatedWeight> kind;
    double moderate_order = 0.0;
};

WeightSpec sigma_weight(double s);
WeightSpec tabulated_weight(PhaseField values, double moderate_order);

/// Pointwise reciprocal 1/w (sigma_s maps to sigma_{-s}).
WeightSpec reciprocal_weight(const WeightSpec& w);

/// Evaluate the weight at phase point (x, xi), each of length d.
double weight_value(const WeightSpec& w,
                    std::span<const double> x,
                    std::span<const double> xi);

/// Which variable the inner norm runs over in a mixed norm.
enum class MixedOrder { XFirst, XiFirst };

/// Exponent pair for a weighted mixed norm; infinity is encoded as
/// std::numeric_limits<double>::infinity().
struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    MixedOrder order = MixedOrder::XFirst;
};

/// Weighted mixed norm of a phase-space field: the weight multiplies the
/// field pointwise, then the inner exponent runs over the first variable
/// (or the second for XiFirst) and the outer exponent over the remaining
/// one.  Infinite exponents take grid maxima in place of integrals.
double mixed_norm(const PhaseField& field,
                  const MixedNormSpec& spec,
                  const WeightSpec& w);

/// Weighted mixed norm of the Gaussian-window transform of a signal,
/// evaluated on the given phase grid.
double modulation_norm(const Signal& f,
                       const WeightSpec& w,
                       const MixedNormSpec& spec,
                       const PhaseGrid& grid);

/// Samples z |-> F(z) exp(-|z|^2 / 2) composed with the coordinate map
/// (x, xi) |-> (x - i xi) / sqrt(2), as a field on the given grid.  This is
/// exactly the shape of the Gaussian-window transform of the function with
/// Taylor side F, so weighted mixed norms of it match modulation norms.
PhaseField damped_dilated_field(const FockFunction& F, const PhaseGrid& grid);

/// Weighted mixed norm of damped_dilated_field(F, grid).
double fock_norm(const FockFunction& F,
                 const WeightSpec& w,
                 const MixedNormSpec& spec,
                 const PhaseGrid& grid);

/// Inner product of the Gaussian-weighted Hilbert space of entire functions.
/// Two Taylor representations pair exactly as sum a_alpha conj(b_alpha);
/// otherwise the integral pi^{-d} Int F conj(G) exp(-|w|^2) is quadratured
/// on the sampled grid (both sampled operands must share one grid).
cplx a2_inner(const FockFunction& F, const FockFunction& G);

/// Entire-side reproducing integral Int exp((z, w)) F(w) dmu(w) with the
/// Hermitian pairing (z, w) = sum z_j conj(w_j) and the Gaussian measure
/// dmu = pi^{-d} exp(-|w|^2) dA.  Acts as the orthogonal projection onto
/// entire functions; anti-analytic input is annihilated.
cplx reproducing_apply(const PhaseField& F, std::span<const cplx> z);

/// reproducing_apply evaluated at every node of out_grid (z = x + i xi).
PhaseField reproducing_field(const PhaseField& F, const PhaseGrid& out_grid);

/// Entire-side localization operator: multiply by the sqrt(2)-dilated symbol
/// a(sqrt(2) x, -sqrt(2) xi) and project back with the reproducing integral.
/// The symbol field must cover the sqrt(2)-inflated extent of work_grid;
/// the result is sampled on work_grid.
FockFunction bargmann_toeplitz(const PhaseField& symbol,
                               const FockFunction& F,
                               const PhaseGrid& work_grid);

/// Two-sided comparison of a weighted space norm with a discrete Sobolev
/// tower norm on Taylor coefficients.
struct NormEquivalenceReport {
    double lhs = 0.0;   ///< (2 pi)^{-d/2} * fock_norm with weight sigma_{2N}, p = q = 2
    double rhs = 0.0;   ///< l2 norm of a_alpha * (1 + |alpha|^2)^{N/2}
    double ratio = 0.0; ///< lhs / rhs (0 when rhs vanishes)
};

/// Compares the p = q = 2, weight sigma_{2N} space norm of the entire
/// function with Taylor coefficients a against the weighted coefficient
/// norm || a_alpha <alpha>^N ||_{l2}.  The (2 pi)^{d/2} quadrature constant
/// of the plain transform convention is divided out so that N = 0 is the
/// exact Parseval case with ratio 1.
NormEquivalenceReport norm_equivalence_report(const TaylorCoeffs& coeffs,
                                              int N,
                                              const PhaseGrid& grid);

/// One disc of a covering family.
struct Ball {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.0;
};

/// One concentric circle of centers inside the cover, kept for fast
/// membership queries: count points, angular offset zero, first index into
/// the flat ball list.
struct CoverCircle {
    int shell = 0;        ///< integer radius band k (|z| in [k, k+1))
    double rho = 0.0;     ///< circle radius
    double radius = 0.0;  ///< common ball radius 1 / (k + 1)
    int count = 0;        ///< points on the circle
    std::size_t first = 0;
};

/// Covering of the annulus 4 <= |z| <= r_max by discs of radius ~ 1/|center|.
struct BallCover {
    std::vector<Ball> balls;
    std::vector<CoverCircle> circles;
    double r_max = 0.0;
    int max_overlap = 0;  ///< measured max multiplicity of 4x-inflated discs
};

/// Builds the cover: concentric circles rho = k + l / (k n_refine) inside
/// each band k = 4, 5, ..., with ceil(2 pi rho (k+1)) equally spaced centers
/// per circle and ball radius 1 / (k+1).  Consecutive centers then sit
/// between 1/(2k) and 1/(k+1) apart, which is verified per circle; a
/// violation raises std::runtime_error naming the circle.  Requires
/// r_max >= 5 and n_refine >= 1.
BallCover build_ball_cover(double r_max, int n_refine);

/// Number of cover balls, inflated by the given factor, containing (re, im).
int count_containing(const BallCover& cover, double re, double im,
                     double inflate);

/// True if (re, im) lies inside at least one (inflated) cover ball.
bool cover_contains(const BallCover& cover, double re, double im,
                    double inflate = 1.0);

/// Result of a two-exponent comparison of damped weighted norms.
struct HolderReport {
    double lhs = 0.0;      ///< stronger-weight, smaller-exponent norm
    double rhs = 0.0;      ///< weaker-weight, larger-exponent norm
    double constant = 0.0; ///< closed-form comparison constant
    bool holds = false;    ///< lhs <= constant * rhs (with tiny slack)
};

/// Checks || F exp(-|.|^2/2) <.>^{-N-d-1} ||_{p1} <= C || F exp(-|.|^2/2)
/// <.>^{-N} ||_{p2} with C = || <.>^{-d-1} ||_{L^r}, 1/p2 + 1/r = 1/p1.
/// Integrals run over the disc inscribed in the grid; for r > 1 the global
/// closed form (pi / (r-1))^{1/r} is used (an upper bound for the disc),
/// for r = infinity C = 1, and for the divergent endpoint r = 1 the
/// disc-truncated closed form pi log(1 + L^2) is used.  Requires p1 <= p2.
HolderReport holder_embedding_check(const FockFunction& F, double N,
                                    double p1, double p2,
                                    const PhaseGrid& grid);

/// Sharp constant of the duality pairing bound, (2 pi)^{-d}; equality holds
/// at the constant-function pair with p = q = 2 and unit weight.
double duality_constant(int dim);

/// Result of a pairing-versus-norm-product check.
struct DualityReport {
    double pairing = 0.0; ///< |(F, G)| in the Gaussian-weighted inner product
    double bound = 0.0;   ///< (2 pi)^{-d} * ||F||_{p,q,w} * ||G||_{p',q',1/w}
    bool holds = false;
};

/// Checks |(F, G)| <= (2 pi)^{-d} ||F|| * ||G|| where F carries exponents
/// (p, q) and weight w, and G the conjugate exponents and reciprocal weight.
DualityReport duality_bound_check(const FockFunction& F,
                                  const FockFunction& G,
                                  const WeightSpec& w,
                                  const MixedNormSpec& spec,
                                  const PhaseGrid& grid);

/// Second-variable profile H(xi) = inner p-norm over x of
/// |F(x + i xi)| exp(-(x^2 + xi^2)/2) w(sqrt(2) x, -sqrt(2) xi),
/// one value per xi node of the grid (p = infinity takes the x maximum).
std::vector<double> narrow_profile(const FockFunction& F,
                                   const WeightSpec& w,
                                   double p,
                                   const PhaseGrid& grid);

/// L^q distance of two profiles over the xi axis of the grid (both profiles
/// must have one entry per xi node; q = infinity takes the maximum).
double profile_distance(std::span<const double> a,
                        std::span<const double> b,
                        double q,
                        const PhaseGrid& grid);

}  // namespace barg
