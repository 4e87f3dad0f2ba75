#include "rmf/conditioning.hpp"

#include <cmath>

#include "rmf/structure.hpp"

namespace rmf {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kAngleTol = 1e-10;

bool angle_in_pi_z(double angle) { return std::abs(std::sin(angle)) <= kAngleTol; }

bool is_real(Cplx z) { return std::abs(z.imag()) <= kOrthoTol * (1.0 + std::abs(z)); }

// Sums of |lambda|^k over even / odd k <= d and of |w_j(lambda)| by weight
// parity. Throws StructureMismatch when a weight has no parity.
struct ParitySums {
    double pow_even = 0.0, pow_odd = 0.0;
    double w_even = 0.0, w_odd = 0.0;
};

ParitySums parity_sums(const RationalMatrixFunction& G, Cplx lambda) {
    ParitySums s;
    double al = std::abs(lambda);
    for (int k = 0; k <= G.degree(); ++k)
        (k % 2 == 0 ? s.pow_even : s.pow_odd) += std::pow(al, k);
    for (const auto& [w, E] : G.terms) {
        WeightClass wc = classify_weight(w, G.degree());
        if (wc.parity == Parity::Neither)
            throw StructureMismatch("weight has no parity; t-even/t-odd factors undefined");
        (wc.parity == Parity::Even ? s.w_even : s.w_odd) += std::abs(w.eval(lambda));
    }
    return s;
}

double c_factor(const Eigentriplet& t) {
    Cplx h = t.x.transpose() * t.y;
    return std::sqrt(std::max(0.0, 1.0 - std::norm(h)));
}

// Palindromic numerators. B1 weights the antisymmetric part of each mirrored
// pair by c, B2 keeps it at full weight.
std::pair<double, double> palindromic_sums(const RationalMatrixFunction& G, Cplx lambda,
                                           double c) {
    const int d = G.degree();
    double B1 = 0.0, B2 = 0.0;
    int top = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
    for (int k = 0; k <= top; ++k) {
        Cplx lk = std::pow(lambda, k), ldk = std::pow(lambda, d - k);
        double plus = std::abs(lk + ldk), minus = std::abs(lk - ldk);
        B1 += plus + c * minus;
        B2 += plus + minus;
    }
    if (d % 2 == 0) {
        double mid = std::pow(std::abs(lambda), d / 2);
        B1 += mid;
        B2 += mid;
    }
    double sw = 0.0;
    for (const auto& [w, E] : G.terms) sw += std::abs(w.eval(lambda));
    B1 += sw;
    B2 += sw;
    return {B1, B2};
}

// For the transpose pairing the attainable values of
// a y*Dx + b y*D^T x over ||D|| <= 1 fill a disk whose radius is the nuclear
// norm of a x y* + conj(b y) x^T, so the t-palindromic supremum is an exact
// sum of radii (one per mirrored pair, plus the middle and weight disks).
double tpal_exact_numerator(const RationalMatrixFunction& G, const Eigentriplet& t) {
    const int d = G.degree();
    const Cplx lam = t.lambda;
    double h2 = std::min(1.0, std::norm(Cplx(t.x.transpose() * t.y)));
    double sum = 0.0;
    int top = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
    for (int k = 0; k <= top; ++k) {
        Cplx a = std::pow(lam, k), b = std::pow(lam, d - k);
        double rho2 = std::norm(a) + std::norm(b) + 2.0 * h2 * (a * std::conj(b)).real() +
                      2.0 * std::abs(a) * std::abs(b) * (1.0 - h2);
        sum += std::sqrt(std::max(0.0, rho2));
    }
    if (d % 2 == 0) sum += std::pow(std::abs(lam), d / 2);
    for (const auto& [w, E] : G.terms) sum += std::abs(w.eval(lam));
    return sum;
}

// Certified lower endpoint for the star pairing: each member's squared support
// is sinusoidal in the probe phase with mean p_t, and s(psi) + s(psi + pi/2)
// >= sqrt(2 p_t), so the supremum is at least (1/sqrt(2)) * sum sqrt(p_t).
double starpal_lower_numerator(const RationalMatrixFunction& G, const Eigentriplet& t) {
    const int d = G.degree();
    const Cplx lam = t.lambda;
    double g2 = std::min(1.0, std::norm(t.x.dot(t.y)));
    double sum = 0.0;
    int top = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
    for (int k = 0; k <= top; ++k) {
        Cplx a = std::pow(lam, k), b = std::pow(lam, d - k);
        double p = std::norm(a) + std::norm(b) +
                   2.0 * std::abs(a) * std::abs(b) * (1.0 - g2);
        sum += std::sqrt(p);
    }
    double ell = std::sqrt((2.0 - g2) / 2.0);  // Hermitian slot, axes 1 and sqrt(1-g^2)
    if (d % 2 == 0) sum += std::pow(std::abs(lam), d / 2) * ell;
    for (const auto& [w, E] : G.terms) sum += std::abs(w.eval(lam)) * ell;
    return sum / std::sqrt(2.0);
}

EqualityVerdict yes(EqualityReason r) { return {EqualityState::Yes, r}; }
EqualityVerdict no(EqualityReason r) { return {EqualityState::No, r}; }

// Equality characterization for the Hermitian branch (also used by the
// delegated skew-Hermitian / star-even / star-odd branches).
EqualityVerdict herm_equality(const RationalMatrixFunction& G, const Eigentriplet& t) {
    Cplx g = t.x.dot(t.y);  // x* y
    if (std::abs(g) <= kOrthoTol) return yes(EqualityReason::OrthoStar);
    if (lambda_is_zero(G, t.lambda)) {
        bool ok = true;
        for (const auto& [w, E] : G.terms) {
            Cplx wv = w.eval(Cplx(0.0));
            if (std::abs(wv) <= 1e-12 * (1.0 + poly::coeff_scale(w.s))) continue;
            // Slot type by which symmetry E is closer to.
            bool herm_slot = (E - E.adjoint()).norm() <= (E + E.adjoint()).norm();
            Cplx rho = wv / std::abs(wv);
            ok = ok && (herm_slot ? std::abs(rho.imag()) <= kAngleTol
                                  : std::abs(rho.real()) <= kAngleTol);
        }
        return ok ? yes(EqualityReason::WeightRealAtZero) : no(EqualityReason::WeightRealAtZero);
    }
    return is_real(t.lambda) ? yes(EqualityReason::RealLambda) : no(EqualityReason::RealLambda);
}

Eigentriplet rotate_triplet(const Eigentriplet& t, bool map_lambda) {
    Eigentriplet t2 = t;
    const Cplx I(0.0, 1.0);
    if (map_lambda) t2.lambda = t.lambda / I;
    t2.derivative_scalar = I * t.derivative_scalar;
    return t2;
}

} // namespace

std::pair<RationalMatrixFunction, Eigentriplet> hermitian_delegate(
    const RationalMatrixFunction& G, const Eigentriplet& t, StructureTag tag) {
    switch (tag) {
        case StructureTag::SkewHermitian:
            return {transform_rmf(G, TransformMode::ScaleI), rotate_triplet(t, false)};
        case StructureTag::StarEven:
            return {transform_rmf(G, TransformMode::RotateZ), rotate_triplet(t, true)};
        case StructureTag::StarOdd: {
            Eigentriplet t2 = t;
            t2.lambda = t.lambda / Cplx(0.0, 1.0);
            t2.derivative_scalar = -t.derivative_scalar;  // two factors of i
            return {transform_rmf(G, TransformMode::RotateAndScale), t2};
        }
        default:
            throw UnsupportedError("no Hermitian delegate for this tag");
    }
}

namespace {

EqualityReason relabel(EqualityReason r, StructureTag tag) {
    if (tag == StructureTag::StarEven || tag == StructureTag::StarOdd) {
        if (r == EqualityReason::RealLambda) return EqualityReason::ImagLambda;
        if (r == EqualityReason::WeightRealAtZero) return EqualityReason::WeightImagAtZero;
    }
    return r;
}

ConditionReport kappa_structured_impl(const RationalMatrixFunction& G, const Eigentriplet& t,
                                      StructureTag tag);

ConditionReport via_delegate(const RationalMatrixFunction& G, const Eigentriplet& t,
                             StructureTag tag) {
    auto [G2, t2] = hermitian_delegate(G, t, tag);
    ConditionReport r = kappa_structured_impl(G2, t2, StructureTag::Hermitian);
    r.tag = tag;
    r.equality.reason = relabel(r.equality.reason, tag);
    return r;
}

ConditionReport kappa_structured_impl(const RationalMatrixFunction& G, const Eigentriplet& t,
                                      StructureTag tag) {
    ConditionReport rep;
    rep.tag = tag;
    rep.alpha = alpha_weight_sum(G, t.lambda);
    rep.kappa = kappa_unstructured(G, t);
    const double D = std::abs(t.derivative_scalar);

    switch (tag) {
        case StructureTag::Unstructured:
        case StructureTag::Symmetric:
            rep.exact = true;
            rep.lo = rep.hi = rep.kappa;
            rep.equality = yes(EqualityReason::Always);
            return rep;
        case StructureTag::SkewSymmetric: {
            double c = c_factor(t);
            rep.factors.c = c;
            rep.exact = true;
            rep.lo = rep.hi = c * rep.kappa;
            rep.equality = equality_predicate(G, t, tag);
            return rep;
        }
        case StructureTag::TEven:
        case StructureTag::TOdd: {
            Factors f = structure_factors(G, t, tag);
            rep.factors = f;
            double factor = tag == StructureTag::TEven ? *f.beta : *f.gamma;
            rep.exact = true;
            rep.lo = rep.hi = factor * rep.kappa;
            rep.equality = equality_predicate(G, t, tag);
            rep.warnings.push_back(
                "t-even/t-odd factor built per coefficient slot: symmetric slots weigh 1, "
                "skew slots weigh c");
            return rep;
        }
        case StructureTag::Hermitian: {
            rep.equality = herm_equality(G, t);
            if (rep.equality.holds()) {
                rep.exact = true;
                rep.lo = rep.hi = rep.kappa;
            } else {
                rep.lo = rep.kappa / std::sqrt(2.0);
                rep.hi = rep.kappa;
                rep.warnings.push_back("interval endpoints are proven bounds, not a point value");
            }
            return rep;
        }
        case StructureTag::SkewHermitian:
        case StructureTag::StarEven:
        case StructureTag::StarOdd:
            return via_delegate(G, t, tag);
        case StructureTag::TPalindromic: {
            double c = c_factor(t);
            rep.factors.c = c;
            rep.factors.B1 = palindromic_sums(G, t.lambda, c).first;
            rep.equality = equality_predicate(G, t, tag);
            rep.exact = true;
            // Every mirrored-pair attainable set is a disk, so the supremum is
            // an exact radius sum; it equals kappa precisely when the equality
            // characterization fires.
            rep.lo = rep.hi =
                rep.equality.holds() ? rep.kappa : tpal_exact_numerator(G, t) / D;
            return rep;
        }
        case StructureTag::StarPalindromic: {
            rep.factors.B2 = palindromic_sums(G, t.lambda, 1.0).second;
            rep.equality = equality_predicate(G, t, tag);
            if (rep.equality.holds()) {
                rep.exact = true;
                rep.lo = rep.hi = rep.kappa;
            } else {
                rep.hi = rep.kappa;
                rep.lo = starpal_lower_numerator(G, t) / D;
                rep.warnings.push_back("interval endpoints are proven bounds, not a point value");
            }
            return rep;
        }
    }
    throw UnsupportedError("unknown structure tag");
}

} // namespace

std::string reason_name(EqualityReason r) {
    switch (r) {
        case EqualityReason::OrthoT: return "x^T y = 0";
        case EqualityReason::OrthoStar: return "x* y = 0";
        case EqualityReason::RealLambda: return "lambda real";
        case EqualityReason::ImagLambda: return "lambda imaginary";
        case EqualityReason::PosRealLambda: return "lambda real positive";
        case EqualityReason::WeightRealAtZero: return "weights real at 0";
        case EqualityReason::WeightImagAtZero: return "weights imaginary at 0";
        case EqualityReason::XoEmpty: return "no odd-parity contribution";
        case EqualityReason::XeEmpty: return "no even-parity contribution";
        case EqualityReason::PalStarAngle: return "weight angles aligned mod pi";
        case EqualityReason::Always: return "always";
        case EqualityReason::None: return "none";
    }
    return "none";
}

bool lambda_is_zero(const RationalMatrixFunction& G, Cplx lambda) {
    return std::abs(lambda) <= 1e-12 * (1.0 + G.coefficient_scale());
}

double alpha_weight_sum(const RationalMatrixFunction& G, Cplx lambda) {
    if (G.is_pole(lambda)) throw PoleError("alpha undefined at a pole");
    double alpha = 0.0;
    for (int k = 0; k <= G.degree(); ++k) alpha += std::pow(std::abs(lambda), k);
    for (const auto& [w, E] : G.terms) alpha += std::abs(w.eval(lambda));
    return alpha;
}

double kappa_unstructured(const RationalMatrixFunction& G, const Eigentriplet& t) {
    double alpha = alpha_weight_sum(G, t.lambda);
    double D = std::abs(t.derivative_scalar);
    if (D <= 1e-10 * (1.0 + alpha))
        throw NotSimpleError("derivative scalar below simplicity threshold");
    return alpha / D;
}

Factors structure_factors(const RationalMatrixFunction& G, const Eigentriplet& t,
                          StructureTag tag) {
    Factors f;
    double alpha = alpha_weight_sum(G, t.lambda);
    switch (tag) {
        case StructureTag::SkewSymmetric:
            f.c = c_factor(t);
            break;
        case StructureTag::TEven: {
            double c = c_factor(t);
            ParitySums s = parity_sums(G, t.lambda);
            f.c = c;
            f.beta = (s.pow_even + c * s.pow_odd + s.w_even + c * s.w_odd) / alpha;
            break;
        }
        case StructureTag::TOdd: {
            double c = c_factor(t);
            ParitySums s = parity_sums(G, t.lambda);
            f.c = c;
            f.gamma = (c * s.pow_even + s.pow_odd + s.w_odd + c * s.w_even) / alpha;
            break;
        }
        case StructureTag::TPalindromic: {
            double c = c_factor(t);
            f.c = c;
            f.B1 = palindromic_sums(G, t.lambda, c).first;
            break;
        }
        case StructureTag::StarPalindromic:
            f.B2 = palindromic_sums(G, t.lambda, 1.0).second;
            break;
        default:
            break;
    }
    return f;
}

EqualityVerdict equality_predicate(const RationalMatrixFunction& G, const Eigentriplet& t,
                                   StructureTag tag) {
    switch (tag) {
        case StructureTag::Unstructured:
        case StructureTag::Symmetric:
            return yes(EqualityReason::Always);
        case StructureTag::SkewSymmetric: {
            Cplx h = t.x.transpose() * t.y;
            return std::abs(h) <= kOrthoTol ? yes(EqualityReason::OrthoT)
                                            : no(EqualityReason::OrthoT);
        }
        case StructureTag::TEven:
        case StructureTag::TOdd: {
            Cplx h = t.x.transpose() * t.y;
            if (std::abs(h) <= kOrthoTol) return yes(EqualityReason::OrthoT);
            ParitySums s = parity_sums(G, t.lambda);
            double alpha = alpha_weight_sum(G, t.lambda);
            // Skew slots are the obstruction; with none, the factor is 1.
            double skew_part = tag == StructureTag::TEven ? s.pow_odd + s.w_odd
                                                          : s.pow_even + s.w_even;
            EqualityReason r = tag == StructureTag::TEven ? EqualityReason::XoEmpty
                                                          : EqualityReason::XeEmpty;
            return skew_part <= 1e-12 * alpha ? yes(r) : no(EqualityReason::OrthoT);
        }
        case StructureTag::Hermitian:
            return herm_equality(G, t);
        case StructureTag::SkewHermitian:
        case StructureTag::StarEven:
        case StructureTag::StarOdd: {
            auto [G2, t2] = hermitian_delegate(G, t, tag);
            EqualityVerdict v = herm_equality(G2, t2);
            v.reason = relabel(v.reason, tag);
            return v;
        }
        case StructureTag::TPalindromic: {
            if (lambda_is_zero(G, t.lambda)) return yes(EqualityReason::Always);
            Cplx h = t.x.transpose() * t.y;
            if (std::abs(h) <= kOrthoTol) return yes(EqualityReason::OrthoT);
            if (G.degree() % 2 == 0)
                return is_real(t.lambda) ? yes(EqualityReason::RealLambda)
                                         : no(EqualityReason::RealLambda);
            bool pos_real = is_real(t.lambda) && t.lambda.real() > 0.0;
            return pos_real ? yes(EqualityReason::PosRealLambda)
                            : no(EqualityReason::PosRealLambda);
        }
        case StructureTag::StarPalindromic: {
            Cplx g = t.x.dot(t.y);
            if (std::abs(g) <= kOrthoTol) return yes(EqualityReason::OrthoStar);
            bool ok = true;
            if (lambda_is_zero(G, t.lambda)) {
                // All nonzero weight values must share a direction modulo pi.
                bool have_ref = false;
                double ref = 0.0;
                for (const auto& [w, E] : G.terms) {
                    Cplx wv = w.eval(Cplx(0.0));
                    if (std::abs(wv) <= 1e-12 * (1.0 + poly::coeff_scale(w.s))) continue;
                    if (!have_ref) {
                        ref = std::arg(wv);
                        have_ref = true;
                    } else {
                        ok = ok && angle_in_pi_z(std::arg(wv) - ref);
                    }
                }
            } else {
                double base = 0.5 * G.degree() * std::arg(t.lambda);
                for (const auto& [w, E] : G.terms) {
                    Cplx wv = w.eval(t.lambda);
                    if (std::abs(wv) <= 1e-12 * (1.0 + poly::coeff_scale(w.s))) continue;
                    ok = ok && angle_in_pi_z(std::arg(wv) - base);
                }
            }
            return ok ? yes(EqualityReason::PalStarAngle) : no(EqualityReason::PalStarAngle);
        }
    }
    return {EqualityState::Unknown, EqualityReason::None};
}

ConditionReport kappa_structured(const RationalMatrixFunction& G, const Eigentriplet& t,
                                 StructureTag tag) {
    if (tag != StructureTag::Unstructured) {
        StructureReport sr = validate_structure(G, tag);
        if (!sr.ok)
            throw StructureMismatch("input does not satisfy structure '" + tag_name(tag) + "'");
    }
    return kappa_structured_impl(G, t, tag);
}

} // namespace rmf
