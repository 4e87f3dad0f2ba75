#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rmf/errors.hpp"

namespace rmf {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Scalar polynomial, coefficients ascending in degree. The zero polynomial
// is represented as {0}.
using Poly = std::vector<Cplx>;

namespace poly {

Poly trimmed(Poly p);
int degree(const Poly& p);           // degree after trimming, 0 for the zero polynomial
bool is_zero(const Poly& p, double tol = 0.0);
Cplx eval(const Poly& p, Cplx z);    // Horner
Poly derivative(const Poly& p);
Poly mul(const Poly& a, const Poly& b);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& p, Cplx factor);
Poly conj_coeffs(const Poly& p);     // coefficient-wise conjugate
Poly reflect(const Poly& p);         // p(-z)
Poly reversed(const Poly& p);        // z^deg * p(1/z)
Poly substitute_iz(const Poly& p);   // p(iz)
Poly monic(const Poly& p);
// Exact division a / b; throws std::invalid_argument if the remainder is not
// negligible relative to the operands.
Poly divide_exact(const Poly& a, const Poly& b);
std::vector<Cplx> roots(const Poly& p);   // finite roots via companion matrix
double coeff_scale(const Poly& p);        // max |coefficient|
bool approx_equal(const Poly& a, const Poly& b, double rel_tol);

// |q(z)| <= 1e-12 * (1+max|q_k|) * (1+|z|)^deg(q)  flags z as a pole of 1/q.
double pole_tolerance(const Poly& q, Cplx z);
bool near_pole(const Poly& q, Cplx z);

} // namespace poly

// Scalar rational weight w(z) = s(z)/q(z).
struct Weight {
    Poly s;
    Poly q;

    Weight() : s{Cplx(0.0)}, q{Cplx(1.0)} {}
    Weight(Poly s_in, Poly q_in);

    Cplx eval(Cplx z) const;             // throws PoleError near roots of q
    Cplx eval_derivative(Cplx z) const;  // (s'q - sq')/q^2
};

enum class StructureTag {
    Unstructured,
    Symmetric,
    SkewSymmetric,
    TEven,
    TOdd,
    Hermitian,
    SkewHermitian,
    StarEven,
    StarOdd,
    StarPalindromic,
    TPalindromic,
};

// G(z) = sum_k z^k A_k + sum_j w_j(z) E_j with n x n coefficients.
struct RationalMatrixFunction {
    std::vector<Matrix> poly;                        // A_0 .. A_d
    std::vector<std::pair<Weight, Matrix>> terms;    // (w_j, E_j)
    std::optional<StructureTag> declared_structure;
    bool allow_degree_deficient = false;

    RationalMatrixFunction() = default;
    RationalMatrixFunction(std::vector<Matrix> poly_in,
                           std::vector<std::pair<Weight, Matrix>> terms_in,
                           std::optional<StructureTag> tag = std::nullopt);

    Eigen::Index n() const { return poly.empty() ? 0 : poly.front().rows(); }
    int degree() const { return static_cast<int>(poly.size()) - 1; }
    int n_terms() const { return static_cast<int>(terms.size()); }
    bool degree_deficient() const;

    Matrix eval(Cplx z) const;
    Matrix eval_derivative(Cplx z) const;

    // sum_k |z|^k ||A_k|| + sum_j |w_j(z)| ||E_j||, a residual scale at z.
    double scale_at(Cplx z) const;
    // max coefficient spectral norm, used to route the lambda = 0 branches.
    double coefficient_scale() const;
    // true if z is within pole tolerance of some q_j.
    bool is_pole(Cplx z) const;
    std::vector<Cplx> pole_candidates() const;  // roots of all q_j, deduplicated
};

// (Delta_{A_0},...,Delta_{A_d},Delta_{E_1},...,Delta_{E_m}) with a scale.
struct PerturbationTuple {
    std::vector<Matrix> deltas_poly;
    std::vector<Matrix> deltas_terms;
    double epsilon = 1.0;

    static PerturbationTuple zeros(const RationalMatrixFunction& G);
    // sum_k lambda^k Delta_{A_k} + sum_j w_j(lambda) Delta_{E_j}
    Matrix eval(const RationalMatrixFunction& G, Cplx z) const;
    double norm_2inf() const;
    PerturbationTuple scaled(double t) const;
};

double spectral_norm(const Matrix& A);

RationalMatrixFunction perturbed(const RationalMatrixFunction& G,
                                 const PerturbationTuple& dG, double t);

} // namespace rmf
