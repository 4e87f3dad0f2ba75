#pragma once

#include <vector>

#include "rmf/core.hpp"

namespace rmf {

struct Eigentriplet {
    Cplx lambda;
    Vector x;  // unit right eigenvector
    Vector y;  // unit left eigenvector
    double right_residual = 0.0;  // ||G(lambda) x||
    double left_residual = 0.0;   // ||y* G(lambda)||
    Cplx derivative_scalar;       // y* G'(lambda) x
};

struct AssumptionReport {
    bool is_simple = false;
    std::vector<bool> nonzero_weights;
    bool not_a_pole = false;
    std::vector<std::string> warnings;

    bool all_ok() const;
};

// Bookkeeping from solve_all, used to account for spurious eigenvalues.
struct SolveStats {
    int candidates = 0;        // finite pencil eigenvalues
    int pole_filtered = 0;     // discarded within pole tolerance of a root of L
    int residual_filtered = 0; // discarded by the residual check
    int deduplicated = 0;
};

// Matrix polynomial P with ascending coefficients.
using MatrixPoly = std::vector<Matrix>;

// P(z) = L(z) sum z^k A_k + sum (L/q_j)(z) s_j(z) E_j with L the product of
// the deduplicated denominators; also returns the roots of L.
std::pair<MatrixPoly, std::vector<Cplx>> clear_denominators(const RationalMatrixFunction& G);

// First companion form: finite eigenvalues of (C0, C1) are the roots of det P.
std::pair<Matrix, Matrix> linearize_companion(const MatrixPoly& P);

std::vector<Eigentriplet> solve_all(const RationalMatrixFunction& G,
                                    SolveStats* stats = nullptr,
                                    double residual_tol = 1e-8);

Eigentriplet refine_triplet(const RationalMatrixFunction& G, Cplx lambda0,
                            const Vector& x0, const Vector& y0);

AssumptionReport check_assumptions(const RationalMatrixFunction& G, const Eigentriplet& t);

} // namespace rmf
