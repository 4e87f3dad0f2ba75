#include "rmf/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rmf {

namespace {

bool same_poly(const Poly& a, const Poly& b) {
    return poly::approx_equal(a, b, 1e-12);
}

// Largest-norm block of a companion eigenvector, normalized.
Vector extract_block(const Vector& v, Eigen::Index n) {
    Eigen::Index blocks = v.size() / n;
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index b = 0; b < blocks; ++b) {
        double nb = v.segment(b * n, n).norm();
        if (nb > best_norm) {
            best_norm = nb;
            best = b;
        }
    }
    Vector x = v.segment(best * n, n);
    return x / x.norm();
}

Vector left_null_vector(const Matrix& A) {
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU);
    return svd.matrixU().col(A.rows() - 1);
}

double condition_2norm(const Matrix& A) {
    Eigen::JacobiSVD<Matrix> svd(A);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    double smax = svd.singularValues()(0);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

} // namespace

bool AssumptionReport::all_ok() const {
    if (!is_simple || !not_a_pole) return false;
    return std::all_of(nonzero_weights.begin(), nonzero_weights.end(), [](bool b) { return b; });
}

std::pair<MatrixPoly, std::vector<Cplx>> clear_denominators(const RationalMatrixFunction& G) {
    const Eigen::Index n = G.n();

    std::vector<Poly> dedup;
    for (const auto& [w, E] : G.terms) {
        Poly qm = poly::monic(w.q);
        if (poly::degree(qm) == 0) continue;  // constant denominator clears to nothing
        bool seen = false;
        for (const Poly& p : dedup) seen = seen || same_poly(p, qm);
        if (!seen) dedup.push_back(qm);
    }
    Poly L{Cplx(1.0)};
    for (const Poly& p : dedup) L = poly::mul(L, p);

    int max_deg = poly::degree(L) + G.degree();
    for (const auto& [w, E] : G.terms) {
        int deg = poly::degree(L) - poly::degree(w.q) + poly::degree(w.s);
        max_deg = std::max(max_deg, deg);
    }

    MatrixPoly P(static_cast<size_t>(max_deg) + 1, Matrix::Zero(n, n));
    for (int k = 0; k <= G.degree(); ++k)
        for (int i = 0; i <= poly::degree(L); ++i)
            P[static_cast<size_t>(k + i)] += L[static_cast<size_t>(i)] * G.poly[static_cast<size_t>(k)];

    for (const auto& [w, E] : G.terms) {
        Poly qm = poly::monic(w.q);
        Cplx lead = poly::trimmed(w.q).back();
        Poly cofactor = poly::degree(qm) == 0 ? L : poly::divide_exact(L, qm);
        Poly f = poly::scale(poly::mul(cofactor, w.s), Cplx(1.0) / lead);
        for (int i = 0; i <= poly::degree(f); ++i)
            P[static_cast<size_t>(i)] += f[static_cast<size_t>(i)] * E;
    }

    return {std::move(P), poly::roots(L)};
}

std::pair<Matrix, Matrix> linearize_companion(const MatrixPoly& P_in) {
    MatrixPoly P = P_in;
    double scale = 0.0;
    for (const Matrix& A : P) scale = std::max(scale, A.cwiseAbs().maxCoeff());
    while (P.size() > 1 && P.back().cwiseAbs().maxCoeff() <= 1e-14 * scale) P.pop_back();
    const int ell = static_cast<int>(P.size()) - 1;
    if (ell < 1) throw DegreeZeroError("companion linearization needs degree >= 1");
    const Eigen::Index n = P.front().rows();
    const Eigen::Index N = ell * n;

    Matrix C1 = Matrix::Identity(N, N);
    C1.topLeftCorner(n, n) = P[static_cast<size_t>(ell)];
    Matrix C0 = Matrix::Zero(N, N);
    for (int j = 0; j < ell; ++j)
        C0.block(0, j * n, n, n) = -P[static_cast<size_t>(ell - 1 - j)];
    for (int i = 1; i < ell; ++i)
        C0.block(i * n, (i - 1) * n, n, n) = Matrix::Identity(n, n);
    return {std::move(C0), std::move(C1)};
}

Eigentriplet refine_triplet(const RationalMatrixFunction& G, Cplx lambda0,
                            const Vector& x0, const Vector& y0) {
    const Eigen::Index n = G.n();
    Cplx lambda = lambda0;
    Vector x = x0 / x0.norm();

    auto finish = [&](Cplx lam, const Vector& xr, const Vector& yguess) {
        Eigentriplet t;
        t.lambda = lam;
        t.x = xr / xr.norm();
        Matrix Gl = G.eval(lam);
        double rres = (Gl * t.x).norm();
        Vector y = yguess.size() == n && yguess.norm() > 0 ? Vector(yguess / yguess.norm())
                                                           : left_null_vector(Gl);
        double lres = (y.adjoint() * Gl).norm();
        Vector ysvd = left_null_vector(Gl);
        double lres_svd = (ysvd.adjoint() * Gl).norm();
        if (lres_svd < lres) {
            y = ysvd;
            lres = lres_svd;
        }
        t.y = y;
        t.right_residual = rres;
        t.left_residual = lres;
        t.derivative_scalar = (t.y.adjoint() * G.eval_derivative(lam) * t.x)(0);
        return t;
    };

    double tol = 1e-12 * G.scale_at(lambda);
    {
        Matrix Gl = G.eval(lambda);
        Vector y_in = y0.size() == n && y0.norm() > 0 ? Vector(y0 / y0.norm()) : Vector();
        if ((Gl * x).norm() <= tol &&
            (y_in.size() == n && (y_in.adjoint() * Gl).norm() <= tol))
            return finish(lambda, x, y_in);
    }

    Eigen::Index pivot;
    x.cwiseAbs().maxCoeff(&pivot);
    x /= x(pivot);  // e* x = 1 with e the pivot basis vector

    for (int it = 0; it < 25; ++it) {
        Matrix Gl = G.eval(lambda);
        Vector r = Gl * x;
        if (r.norm() <= tol * x.norm()) return finish(lambda, x, y0);

        Matrix J = Matrix::Zero(n + 1, n + 1);
        J.topLeftCorner(n, n) = Gl;
        J.block(0, n, n, 1) = G.eval_derivative(lambda) * x;
        J(n, pivot) = Cplx(1.0);
        Vector rhs = Vector::Zero(n + 1);
        rhs.head(n) = -r;
        rhs(n) = Cplx(1.0) - x(pivot);
        Vector step = J.partialPivLu().solve(rhs);
        x += step.head(n);
        lambda += step(n);
        if (G.is_pole(lambda))
            throw NoConvergence("Newton refinement stepped into a pole");
        tol = 1e-12 * G.scale_at(lambda);
    }
    Matrix Gl = G.eval(lambda);
    if ((Gl * x).norm() <= tol * x.norm()) return finish(lambda, x, y0);
    throw NoConvergence("triplet refinement did not converge in 25 iterations");
}

std::vector<Eigentriplet> solve_all(const RationalMatrixFunction& G, SolveStats* stats,
                                    double residual_tol) {
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    st = SolveStats{};

    auto [P, pole_roots] = clear_denominators(G);
    auto [C0, C1] = linearize_companion(P);
    const Eigen::Index n = G.n();

    std::vector<std::pair<Cplx, Vector>> candidates;
    Matrix lead = C1.topLeftCorner(n, n);
    if (condition_2norm(lead) < 1e8) {
        Matrix A = C1.partialPivLu().solve(C0);
        Eigen::ComplexEigenSolver<Matrix> es(A);
        if (es.info() != Eigen::Success) throw SolverFailure("dense eigensolver failed");
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            candidates.emplace_back(es.eigenvalues()(i), es.eigenvectors().col(i));
    } else {
        // Singular leading block: shift-and-invert the pencil at a random tau.
        std::mt19937 rng(20240811u);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        bool done = false;
        for (int attempt = 0; attempt < 5 && !done; ++attempt) {
            Cplx tau(1.0 + unif(rng), unif(rng));
            Matrix M = C0 - tau * C1;
            if (condition_2norm(M) >= 1e12) continue;
            Matrix A = M.partialPivLu().solve(C1);
            Eigen::ComplexEigenSolver<Matrix> es(A);
            if (es.info() != Eigen::Success) continue;
            double mu_floor = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
                Cplx mu = es.eigenvalues()(i);
                if (std::abs(mu) <= mu_floor) continue;  // eigenvalue at infinity
                candidates.emplace_back(tau + 1.0 / mu, es.eigenvectors().col(i));
            }
            done = true;
        }
        if (!done) throw SolverFailure("shift-and-invert eigensolve failed");
    }

    std::vector<Eigentriplet> out;
    for (auto& [lam, vec] : candidates) {
        ++st.candidates;
        bool near = false;
        for (Cplx p : pole_roots) near = near || std::abs(lam - p) <= 1e-8 * (1.0 + std::abs(lam));
        if (near) {
            ++st.pole_filtered;
            continue;
        }
        Eigentriplet t;
        try {
            Vector x0 = extract_block(vec, n);
            Vector y0 = left_null_vector(G.eval(lam));
            t = refine_triplet(G, lam, x0, y0);
        } catch (const NoConvergence&) {
            ++st.residual_filtered;
            continue;
        } catch (const PoleError&) {
            ++st.pole_filtered;
            continue;
        }
        double scale = G.scale_at(t.lambda);
        if (t.right_residual > residual_tol * scale || t.left_residual > residual_tol * scale) {
            ++st.residual_filtered;
            continue;
        }
        bool dup = false;
        for (const Eigentriplet& kept : out)
            dup = dup || std::abs(kept.lambda - t.lambda) <= 1e-8 * (1.0 + std::abs(t.lambda));
        if (dup) {
            ++st.deduplicated;
            continue;
        }
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const Eigentriplet& a, const Eigentriplet& b) {
        return std::abs(a.lambda) < std::abs(b.lambda);
    });
    return out;
}

AssumptionReport check_assumptions(const RationalMatrixFunction& G, const Eigentriplet& t) {
    AssumptionReport rep;
    rep.not_a_pole = !G.is_pole(t.lambda);
    if (!rep.not_a_pole) {
        rep.warnings.push_back("lambda lies within pole tolerance of a denominator root");
        rep.nonzero_weights.assign(static_cast<size_t>(G.n_terms()), false);
        return rep;
    }
    double alpha = 0.0;
    double abs_lam = std::abs(t.lambda);
    for (int k = 0; k <= G.degree(); ++k) alpha += std::pow(abs_lam, k);
    for (int j = 0; j < G.n_terms(); ++j) {
        const Weight& w = G.terms[static_cast<size_t>(j)].first;
        Cplx wv = w.eval(t.lambda);
        double wscale = poly::coeff_scale(w.s) *
                        std::pow(1.0 + abs_lam, poly::degree(w.s)) /
                        std::max(std::abs(poly::eval(w.q, t.lambda)), 1e-300);
        bool nonzero = std::abs(wv) > 1e-12 * (1.0 + wscale);
        rep.nonzero_weights.push_back(nonzero);
        if (!nonzero)
            rep.warnings.push_back("weight " + std::to_string(j) +
                                   " vanishes at lambda; tolerated, contributes 0 to alpha");
        alpha += std::abs(wv);
    }
    rep.is_simple = std::abs(t.derivative_scalar) > 1e-10 * (1.0 + alpha);
    if (!rep.is_simple)
        rep.warnings.push_back("derivative scalar below simplicity threshold");
    return rep;
}

} // namespace rmf
