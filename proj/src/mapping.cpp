#include "rmf/mapping.hpp"

#include <cmath>

namespace rmf {

namespace {

constexpr double kFeasTol = 1e-10;

Matrix symmetrize(MapClass S, const Matrix& D) {
    switch (S) {
        case MapClass::General: return D;
        case MapClass::Symmetric: return (D + D.transpose()) / 2.0;
        case MapClass::SkewSymmetric: return (D - D.transpose()) / 2.0;
        case MapClass::Hermitian: return (D + D.adjoint()) / 2.0;
        case MapClass::SkewHermitian: return (D - D.adjoint()) / 2.0;
    }
    return D;
}

// Cyclic projections onto {||.|| <= target}, the structure class, and the
// affine set {Delta v = u}. The closed forms below already hit the minimal
// norm, so this is a guard that also cleans up rounding.
Matrix norm_polish(MapClass S, Matrix D, const Vector& v, const Vector& u, double target) {
    double vv = v.squaredNorm();
    for (int it = 0; it < 200; ++it) {
        double nrm = spectral_norm(D);
        double map_res = (D * v - u).norm();
        if (nrm <= target * (1.0 + 1e-9) && map_res <= 1e-12 * (1.0 + u.norm())) break;
        if (nrm > target) {
            Eigen::JacobiSVD<Matrix> svd(D, Eigen::ComputeThinU | Eigen::ComputeThinV);
            Eigen::VectorXd sv = svd.singularValues();
            for (Eigen::Index i = 0; i < sv.size(); ++i) sv(i) = std::min(sv(i), target);
            D = svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
        }
        D = symmetrize(S, D);
        D += (u - D * v) * v.adjoint() / vv;
        D = symmetrize(S, D);
        D += (u - D * v) * v.adjoint() / vv;
    }
    return D;
}

} // namespace

MSParams ms_params(MapClass S, const Vector& x, const Vector& y) {
    MSParams p;
    switch (S) {
        case MapClass::General:
        case MapClass::Symmetric:
            break;
        case MapClass::SkewSymmetric: {
            Cplx h = x.transpose() * y;
            double c = std::sqrt(std::max(0.0, 1.0 - std::norm(h)));
            p.a = p.b = c;
            break;
        }
        case MapClass::Hermitian: {
            Cplx g = y.dot(x);  // y* x
            p.b = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
            p.phi = std::arg(g);
            break;
        }
        case MapClass::SkewHermitian: {
            Cplx g = y.dot(x);
            p.a = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
            p.b = 1.0;
            p.phi = std::arg(g);
            break;
        }
    }
    return p;
}

Matrix construct_structured_map(MapClass S, const Vector& v_in, const Vector& u_in) {
    double vn = v_in.norm();
    if (vn == 0.0) throw InfeasibleError("mapping: v must be nonzero");
    Vector v = v_in / vn;
    Vector u = u_in / vn;
    const double target = u.norm();
    const Eigen::Index n = v.size();
    Matrix D(n, n);

    switch (S) {
        case MapClass::General:
            D = u * v.adjoint();
            break;
        case MapClass::Symmetric: {
            Cplx h = v.transpose() * u;  // v^T u
            Vector w = u - h * v.conjugate();
            D = u * v.adjoint() + v.conjugate() * u.transpose() -
                h * v.conjugate() * v.adjoint();
            double wn2 = w.squaredNorm();
            if (wn2 > 1e-28) D -= (std::conj(h) / wn2) * (w * w.transpose());
            break;
        }
        case MapClass::SkewSymmetric: {
            Cplx h = v.transpose() * u;
            if (std::abs(h) > kFeasTol * (1.0 + u.norm()))
                throw InfeasibleError("skew-symmetric mapping needs v^T u = 0");
            Vector w = u - h * v.conjugate();  // exact orthogonalization of roundoff
            D = w * v.adjoint() - v.conjugate() * w.transpose();
            break;
        }
        case MapClass::Hermitian: {
            Cplx h = v.dot(u);  // v* u, must be real
            if (std::abs(h.imag()) > kFeasTol * (1.0 + u.norm()))
                throw InfeasibleError("Hermitian mapping needs v* u real");
            double r = h.real();
            Vector w = u - r * v;
            D = u * v.adjoint() + v * u.adjoint() - Cplx(r) * v * v.adjoint();
            double wn2 = w.squaredNorm();
            if (wn2 > 1e-28) D -= Cplx(r / wn2) * (w * w.adjoint());
            D = symmetrize(MapClass::Hermitian, D);
            break;
        }
        case MapClass::SkewHermitian: {
            Cplx h = v.dot(u);  // must be imaginary
            if (std::abs(h.real()) > kFeasTol * (1.0 + u.norm()))
                throw InfeasibleError("skew-Hermitian mapping needs v* u imaginary");
            const Cplx I(0.0, 1.0);
            Vector u2 = -I * u;
            double r = (v.dot(u2)).real();
            Vector w = u2 - r * v;
            Matrix H = u2 * v.adjoint() + v * u2.adjoint() - Cplx(r) * v * v.adjoint();
            double wn2 = w.squaredNorm();
            if (wn2 > 1e-28) H -= Cplx(r / wn2) * (w * w.adjoint());
            D = I * symmetrize(MapClass::Hermitian, H);
            break;
        }
    }
    return norm_polish(S, D, v, u, target);
}

Matrix construct_two_sided_map(TwoSidedMode mode, const Vector& v_in, const Vector& u_in,
                               const Vector& w_in) {
    double vn = v_in.norm();
    if (vn == 0.0) throw InfeasibleError("mapping: v must be nonzero");
    Vector v = v_in / vn;
    Vector u = u_in / vn;
    Vector w = w_in / vn;
    double scale = 1.0 + u.norm() + w.norm();
    if (mode == TwoSidedMode::Star) {
        Cplx a = v.dot(u), b = w.dot(v);
        if (std::abs(a - b) > kFeasTol * scale)
            throw InfeasibleError("two-sided star mapping needs v* u = w* v");
        return u * v.adjoint() + v * w.adjoint() - b * v * v.adjoint();
    }
    Cplx a = v.transpose() * u, b = w.transpose() * v;
    if (std::abs(a - b) > kFeasTol * scale)
        throw InfeasibleError("two-sided transpose mapping needs v^T u = w^T v");
    return u * v.adjoint() + v.conjugate() * w.transpose() -
           b * v.conjugate() * v.adjoint();
}

Matrix extremal_structured(MapClass S, const Vector& x, const Vector& y) {
    const Eigen::Index n = x.size();
    switch (S) {
        case MapClass::General:
            return y * x.adjoint();
        case MapClass::Symmetric:
            return construct_structured_map(MapClass::Symmetric, x, y);
        case MapClass::SkewSymmetric: {
            Cplx h = x.transpose() * y;
            double c2 = std::max(0.0, 1.0 - std::norm(h));
            if (c2 < 1e-28) return Matrix::Zero(n, n);
            Vector u = y - h * x.conjugate();  // x^T u = 0, ||u|| = c, y* u = c^2
            Matrix K = u * x.adjoint() - x.conjugate() * u.transpose();
            return K / std::sqrt(c2);
        }
        case MapClass::Hermitian: {
            Cplx g = y.dot(x);
            Cplx omega = (std::abs(g) < 1e-300) ? Cplx(1.0) : std::polar(1.0, std::arg(g));
            return construct_structured_map(MapClass::Hermitian, x, omega * y);
        }
        case MapClass::SkewHermitian: {
            Cplx g = y.dot(x);
            Cplx omega = Cplx(0.0, 1.0) *
                         ((std::abs(g) < 1e-300) ? Cplx(1.0) : std::polar(1.0, std::arg(g)));
            return construct_structured_map(MapClass::SkewHermitian, x, omega * y);
        }
    }
    return Matrix::Zero(n, n);
}

double structure_residual(MapClass S, const Matrix& D) {
    double denom = 1.0 + D.norm();
    switch (S) {
        case MapClass::General: return 0.0;
        case MapClass::Symmetric: return (D - D.transpose()).norm() / denom;
        case MapClass::SkewSymmetric: return (D + D.transpose()).norm() / denom;
        case MapClass::Hermitian: return (D - D.adjoint()).norm() / denom;
        case MapClass::SkewHermitian: return (D + D.adjoint()).norm() / denom;
    }
    return 0.0;
}

} // namespace rmf
