#pragma once

#include "barg/grid.hpp"

#include <map>

namespace barg {

/// Multi-index in N^d (d = 1 or 2).
struct MultiIndex {
    std::vector<int> entries;

    int dim() const { return static_cast<int>(entries.size()); }
    int order() const; // |alpha| = sum of entries
};

bool operator==(const MultiIndex& a, const MultiIndex& b);

/// Graded lexicographic order: by |alpha| first, ties lexicographically.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

using CoeffMap = std::map<MultiIndex, cplx, GradedLexLess>;

/// All multi-indices of dimension dim with |alpha| <= degree, graded-lex sorted.
std::vector<MultiIndex> multi_indices_up_to(int dim, int degree);

/// Coefficients of a finite Hermite-function expansion f = sum a_alpha h_alpha
/// truncated at total degree max_degree.  Map iteration order is graded-lex.
struct HermiteExpansion {
    int dim = 1;
    int max_degree = 0;
    CoeffMap coeffs;
};

/// sqrt(sum |a_alpha|^2); equals the L^2 norm of the expanded function.
double coeff_l2_norm(const HermiteExpansion& e);

/// Value of the L^2-normalized Hermite function h_alpha (tensor product of
/// one-dimensional h_k, Gaussian factor included) at the point x.  Evaluated
/// by the three-term recurrence on the functions themselves, which keeps the
/// values bounded; once the Gaussian factor underflows the result is 0.
/// Degrees are limited to 512 per coordinate.
double hermite_eval(const MultiIndex& alpha, std::span<const double> x);

/// Table of h_k(node) for k = 0..max_degree over one axis; values[k][i].
std::vector<std::vector<double>> hermite_axis_table(int max_degree,
                                                    const AxisGrid& axis);

/// Hermite coefficients a_alpha = (f, h_alpha) for |alpha| <= max_degree by
/// trapezoid quadrature on the signal grid.  Requires every axis to satisfy
/// half_width >= sqrt(2 * max_degree) + 4 so the Hermite mass is interior;
/// throws std::invalid_argument otherwise.
HermiteExpansion hermite_expand(const Signal& f, int max_degree);

/// Sample sum a_alpha h_alpha on the given axes.
Signal hermite_synthesize(const HermiteExpansion& e, std::vector<AxisGrid> axes);

/// Eigenvalue of the harmonic-oscillator-type operator |x|^2 - Laplace + 4d + 1
/// on h_alpha: lambda_alpha = 2|alpha| + 5d + 1.
double oscillator_eigenvalue(int order, int dim);
double oscillator_eigenvalue(const MultiIndex& alpha, int dim);

/// Multiply each coefficient by lambda_alpha^N (diagonal action of H^N).
HermiteExpansion apply_h_power(const HermiteExpansion& e, int N);

/// Sobolev-type norm sqrt(sum lambda_alpha^(2N) |a_alpha|^2).
double m2_2n_norm(const HermiteExpansion& e, int N);

} // namespace barg
