#include "rmf/core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rmf {

namespace poly {

Poly trimmed(Poly p) {
    while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
    if (p.empty()) p.push_back(Cplx(0.0));
    return p;
}

int degree(const Poly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d > 0 && std::abs(p[static_cast<size_t>(d)]) == 0.0) --d;
    return d;
}

bool is_zero(const Poly& p, double tol) {
    for (const Cplx& c : p)
        if (std::abs(c) > tol) return false;
    return true;
}

Cplx eval(const Poly& p, Cplx z) {
    Cplx acc(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return Poly{Cplx(0.0)};
    Poly out(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) out[k - 1] = static_cast<double>(k) * p[k];
    return trimmed(std::move(out));
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Cplx(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return trimmed(std::move(out));
}

Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Cplx(0.0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return trimmed(std::move(out));
}

Poly scale(const Poly& p, Cplx factor) {
    Poly out = p;
    for (Cplx& c : out) c *= factor;
    return trimmed(std::move(out));
}

Poly conj_coeffs(const Poly& p) {
    Poly out = p;
    for (Cplx& c : out) c = std::conj(c);
    return out;
}

Poly reflect(const Poly& p) {
    Poly out = p;
    for (size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    return out;
}

Poly reversed(const Poly& p) {
    Poly t = trimmed(p);
    std::reverse(t.begin(), t.end());
    return trimmed(std::move(t));
}

Poly substitute_iz(const Poly& p) {
    static const Cplx powers[4] = {Cplx(1, 0), Cplx(0, 1), Cplx(-1, 0), Cplx(0, -1)};
    Poly out = p;
    for (size_t k = 0; k < out.size(); ++k) out[k] *= powers[k % 4];
    return out;
}

Poly monic(const Poly& p) {
    Poly t = trimmed(p);
    Cplx lead = t.back();
    if (std::abs(lead) == 0.0) return t;
    return scale(t, Cplx(1.0) / lead);
}

Poly divide_exact(const Poly& a, const Poly& b) {
    Poly num = trimmed(a);
    Poly den = trimmed(b);
    int dn = degree(num), dd = degree(den);
    if (is_zero(den)) throw std::invalid_argument("division by zero polynomial");
    if (dn < dd) {
        if (is_zero(num)) return Poly{Cplx(0.0)};
        throw std::invalid_argument("inexact polynomial division");
    }
    Poly quot(static_cast<size_t>(dn - dd) + 1, Cplx(0.0));
    Poly rem = num;
    for (int k = dn - dd; k >= 0; --k) {
        Cplx c = rem[static_cast<size_t>(k + dd)] / den[static_cast<size_t>(dd)];
        quot[static_cast<size_t>(k)] = c;
        for (int i = 0; i <= dd; ++i) rem[static_cast<size_t>(k + i)] -= c * den[static_cast<size_t>(i)];
    }
    double rscale = coeff_scale(num) + coeff_scale(den);
    for (const Cplx& c : rem)
        if (std::abs(c) > 1e-10 * (1.0 + rscale))
            throw std::invalid_argument("inexact polynomial division");
    return trimmed(std::move(quot));
}

std::vector<Cplx> roots(const Poly& p) {
    Poly t = trimmed(p);
    int d = degree(t);
    if (d == 0) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    Cplx lead = t[static_cast<size_t>(d)];
    for (int k = 0; k < d; ++k) C(0, k) = -t[static_cast<size_t>(d - 1 - k)] / lead;
    for (int k = 1; k < d; ++k) C(k, k - 1) = Cplx(1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<Cplx> out(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) out[static_cast<size_t>(k)] = es.eigenvalues()(k);
    return out;
}

double coeff_scale(const Poly& p) {
    double m = 0.0;
    for (const Cplx& c : p) m = std::max(m, std::abs(c));
    return m;
}

bool approx_equal(const Poly& a, const Poly& b, double rel_tol) {
    Poly ta = trimmed(a), tb = trimmed(b);
    size_t n = std::max(ta.size(), tb.size());
    double s = std::max(coeff_scale(ta), coeff_scale(tb));
    for (size_t k = 0; k < n; ++k) {
        Cplx ca = k < ta.size() ? ta[k] : Cplx(0.0);
        Cplx cb = k < tb.size() ? tb[k] : Cplx(0.0);
        if (std::abs(ca - cb) > rel_tol * (1.0 + s)) return false;
    }
    return true;
}

double pole_tolerance(const Poly& q, Cplx z) {
    return 1e-12 * (1.0 + coeff_scale(q)) * std::pow(1.0 + std::abs(z), degree(q));
}

bool near_pole(const Poly& q, Cplx z) {
    return std::abs(eval(q, z)) <= pole_tolerance(q, z);
}

} // namespace poly

Weight::Weight(Poly s_in, Poly q_in)
    : s(poly::trimmed(std::move(s_in))), q(poly::trimmed(std::move(q_in))) {
    if (poly::is_zero(q)) throw std::invalid_argument("weight denominator is the zero polynomial");
}

Cplx Weight::eval(Cplx z) const {
    if (poly::near_pole(q, z)) throw PoleError("weight evaluated at a pole");
    return poly::eval(s, z) / poly::eval(q, z);
}

Cplx Weight::eval_derivative(Cplx z) const {
    if (poly::near_pole(q, z)) throw PoleError("weight derivative evaluated at a pole");
    Cplx qv = poly::eval(q, z);
    return (poly::eval(poly::derivative(s), z) * qv -
            poly::eval(s, z) * poly::eval(poly::derivative(q), z)) /
           (qv * qv);
}

RationalMatrixFunction::RationalMatrixFunction(std::vector<Matrix> poly_in,
                                               std::vector<std::pair<Weight, Matrix>> terms_in,
                                               std::optional<StructureTag> tag)
    : poly(std::move(poly_in)), terms(std::move(terms_in)), declared_structure(tag) {
    if (poly.empty()) throw DimensionMismatch("RMF needs at least one polynomial coefficient");
    Eigen::Index dim = poly.front().rows();
    for (const Matrix& A : poly)
        if (A.rows() != dim || A.cols() != dim)
            throw DimensionMismatch("polynomial coefficients must be square of equal size");
    for (const auto& [w, E] : terms)
        if (E.rows() != dim || E.cols() != dim)
            throw DimensionMismatch("rational coefficients must match the polynomial size");
}

bool RationalMatrixFunction::degree_deficient() const {
    return degree() > 0 && poly.back().norm() == 0.0;
}

Matrix RationalMatrixFunction::eval(Cplx z) const {
    Matrix acc = Matrix::Zero(n(), n());
    Cplx zk(1.0);
    for (const Matrix& A : poly) {
        acc += zk * A;
        zk *= z;
    }
    for (int j = 0; j < n_terms(); ++j) {
        const auto& [w, E] = terms[static_cast<size_t>(j)];
        try {
            acc += w.eval(z) * E;
        } catch (const PoleError&) {
            throw PoleError("G evaluated at a pole", j);
        }
    }
    return acc;
}

Matrix RationalMatrixFunction::eval_derivative(Cplx z) const {
    Matrix acc = Matrix::Zero(n(), n());
    Cplx zk(1.0);
    for (size_t k = 1; k < poly.size(); ++k) {
        acc += static_cast<double>(k) * zk * poly[k];
        zk *= z;
    }
    for (int j = 0; j < n_terms(); ++j) {
        const auto& [w, E] = terms[static_cast<size_t>(j)];
        try {
            acc += w.eval_derivative(z) * E;
        } catch (const PoleError&) {
            throw PoleError("G' evaluated at a pole", j);
        }
    }
    return acc;
}

double RationalMatrixFunction::scale_at(Cplx z) const {
    double acc = 0.0;
    double azk = 1.0, az = std::abs(z);
    for (const Matrix& A : poly) {
        acc += azk * spectral_norm(A);
        azk *= az;
    }
    for (const auto& [w, E] : terms) acc += std::abs(w.eval(z)) * spectral_norm(E);
    return acc;
}

double RationalMatrixFunction::coefficient_scale() const {
    double m = 0.0;
    for (const Matrix& A : poly) m = std::max(m, spectral_norm(A));
    for (const auto& [w, E] : terms) m = std::max(m, spectral_norm(E));
    return m;
}

bool RationalMatrixFunction::is_pole(Cplx z) const {
    for (const auto& [w, E] : terms)
        if (poly::near_pole(w.q, z)) return true;
    return false;
}

std::vector<Cplx> RationalMatrixFunction::pole_candidates() const {
    std::vector<Cplx> out;
    for (const auto& [w, E] : terms) {
        for (Cplx r : poly::roots(w.q)) {
            bool dup = false;
            for (Cplx p : out)
                if (std::abs(p - r) <= 1e-10 * (1.0 + std::abs(r))) { dup = true; break; }
            if (!dup) out.push_back(r);
        }
    }
    return out;
}

PerturbationTuple PerturbationTuple::zeros(const RationalMatrixFunction& G) {
    PerturbationTuple dG;
    dG.deltas_poly.assign(G.poly.size(), Matrix::Zero(G.n(), G.n()));
    dG.deltas_terms.assign(G.terms.size(), Matrix::Zero(G.n(), G.n()));
    return dG;
}

Matrix PerturbationTuple::eval(const RationalMatrixFunction& G, Cplx z) const {
    Matrix acc = Matrix::Zero(deltas_poly.front().rows(), deltas_poly.front().cols());
    Cplx zk(1.0);
    for (const Matrix& D : deltas_poly) {
        acc += zk * D;
        zk *= z;
    }
    for (size_t j = 0; j < deltas_terms.size(); ++j)
        acc += G.terms[j].first.eval(z) * deltas_terms[j];
    return acc;
}

double PerturbationTuple::norm_2inf() const {
    double m = 0.0;
    for (const Matrix& D : deltas_poly) m = std::max(m, spectral_norm(D));
    for (const Matrix& D : deltas_terms) m = std::max(m, spectral_norm(D));
    return m;
}

PerturbationTuple PerturbationTuple::scaled(double t) const {
    PerturbationTuple out = *this;
    for (Matrix& D : out.deltas_poly) D *= t;
    for (Matrix& D : out.deltas_terms) D *= t;
    return out;
}

double spectral_norm(const Matrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    if (A.rows() <= 512 && A.cols() <= 512) {
        Eigen::JacobiSVD<Matrix> svd(A);
        return svd.singularValues()(0);
    }
    // Power iteration on A*A for large matrices.
    Vector v = Vector::Random(A.cols());
    v.normalize();
    double prev = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vector u = A * v;
        v = A.adjoint() * u;
        double s2 = v.norm();
        if (s2 == 0.0) return 0.0;
        v /= s2;
        double s = std::sqrt(s2);
        if (std::abs(s - prev) <= 1e-10 * s) return s;
        prev = s;
    }
    return prev;
}

RationalMatrixFunction perturbed(const RationalMatrixFunction& G,
                                 const PerturbationTuple& dG, double t) {
    RationalMatrixFunction out = G;
    for (size_t k = 0; k < out.poly.size(); ++k) out.poly[k] += t * dG.deltas_poly[k];
    for (size_t j = 0; j < out.terms.size(); ++j) out.terms[j].second += t * dG.deltas_terms[j];
    return out;
}

} // namespace rmf
