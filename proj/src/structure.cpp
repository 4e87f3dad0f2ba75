#include "rmf/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rmf {

namespace {

Poly shifted(const Poly& p, int k) {
    Poly out(static_cast<size_t>(k), Cplx(0.0));
    out.insert(out.end(), p.begin(), p.end());
    return poly::trimmed(std::move(out));
}

// Test points for the sampling cross-checks, kept away from poles and 1/z poles.
std::vector<Cplx> test_points(const Weight& w) {
    std::mt19937 rng(12345u);
    std::uniform_real_distribution<double> radius(0.6, 1.8), angle(0.0, 2.0 * M_PI);
    std::vector<Cplx> pts;
    while (pts.size() < 8) {
        Cplx z = std::polar(radius(rng), angle(rng));
        bool bad = poly::near_pole(w.q, z) || poly::near_pole(w.q, -z) ||
                   poly::near_pole(w.q, std::conj(z)) || poly::near_pole(w.q, 1.0 / z) ||
                   poly::near_pole(w.q, 1.0 / std::conj(z));
        if (!bad) pts.push_back(z);
    }
    return pts;
}

bool close_rel(Cplx a, Cplx b) {
    return std::abs(a - b) <= 1e-10 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

void reconcile(const char* what, bool coeff_test, bool sample_test, bool& flag) {
    if (coeff_test != sample_test)
        throw ClassificationConflict(std::string("weight classification conflict: ") + what);
    flag = coeff_test;
}

double rel_resid(const Matrix& A, const Matrix& expected) {
    return spectral_norm(A - expected) / (1.0 + spectral_norm(A));
}

enum class Sym { Symmetric, Skew, Hermitian, SkewHermitian };

double sym_resid(const Matrix& A, Sym kind) {
    switch (kind) {
        case Sym::Symmetric: return rel_resid(A, A.transpose());
        case Sym::Skew: return rel_resid(A, -A.transpose());
        case Sym::Hermitian: return rel_resid(A, A.adjoint());
        case Sym::SkewHermitian: return rel_resid(A, -A.adjoint());
    }
    return 0.0;
}

} // namespace

WeightClass classify_weight(const Weight& w, int d) {
    const Poly& s = w.s;
    const Poly& q = w.q;
    const Poly sr = poly::reflect(s), qr = poly::reflect(q);
    const Poly sc = poly::conj_coeffs(s), qc = poly::conj_coeffs(q);
    const Poly src = poly::conj_coeffs(sr), qrc = poly::conj_coeffs(qr);
    const double tol = 1e-10;
    const bool zero_s = poly::is_zero(s, tol * (1.0 + poly::coeff_scale(s)));

    auto pts = test_points(w);
    WeightClass out;

    // Parity: w(-z) = +-w(z)  <=>  s(-z) q(z) -+ s(z) q(-z) = 0.
    bool even_c = poly::approx_equal(poly::mul(sr, q), poly::mul(s, qr), tol);
    bool odd_c = poly::approx_equal(poly::mul(sr, q), poly::scale(poly::mul(s, qr), -1.0), tol);
    bool even_s = true, odd_s = true;
    for (Cplx z : pts) {
        Cplx a = w.eval(z), b = w.eval(-z);
        even_s = even_s && close_rel(b, a);
        odd_s = odd_s && close_rel(b, -a);
    }
    bool is_even, is_odd;
    reconcile("even parity", even_c, even_s, is_even);
    reconcile("odd parity", odd_c, odd_s, is_odd);
    if (zero_s)
        out.parity = Parity::Even;
    else
        out.parity = is_even ? Parity::Even : (is_odd ? Parity::Odd : Parity::Neither);

    // Conjugation: after making q monic, conj-symmetry means real coefficients.
    Cplx lead = poly::trimmed(q).back();
    Poly s_n = poly::scale(s, Cplx(1.0) / lead), q_n = poly::scale(q, Cplx(1.0) / lead);
    double cscale = 1.0 + std::max(poly::coeff_scale(s_n), poly::coeff_scale(q_n));
    bool conj_sym_c = true, conj_anti_c = true;
    for (const Cplx& c : q_n) {
        conj_sym_c = conj_sym_c && std::abs(c.imag()) <= tol * cscale;
        conj_anti_c = conj_anti_c && std::abs(c.imag()) <= tol * cscale;
    }
    for (const Cplx& c : s_n) {
        conj_sym_c = conj_sym_c && std::abs(c.imag()) <= tol * cscale;
        conj_anti_c = conj_anti_c && std::abs(c.real()) <= tol * cscale;
    }
    bool conj_sym_s = true, conj_anti_s = true;
    for (Cplx z : pts) {
        Cplx a = std::conj(w.eval(z)), b = w.eval(std::conj(z));
        conj_sym_s = conj_sym_s && close_rel(a, b);
        conj_anti_s = conj_anti_s && close_rel(a, -b);
    }
    bool conj_sym, conj_anti;
    reconcile("conjugate symmetry", conj_sym_c, conj_sym_s, conj_sym);
    reconcile("conjugate antisymmetry", conj_anti_c, conj_anti_s, conj_anti);
    if (zero_s)
        out.conj = ConjClass::Symmetric;
    else
        out.conj = conj_sym ? ConjClass::Symmetric
                            : (conj_anti ? ConjClass::Antisymmetric : ConjClass::Neither);

    // Alternate conjugation: (w(-z))* = +-w(conj z)  <=>  conj(s(-z)) q(z) = +- s(z) conj(q(-z)).
    bool alt_even_c = poly::approx_equal(poly::mul(src, q), poly::mul(s, qrc), tol);
    bool alt_odd_c = poly::approx_equal(poly::mul(src, q), poly::scale(poly::mul(s, qrc), -1.0), tol);
    bool alt_even_s = true, alt_odd_s = true;
    for (Cplx z : pts) {
        Cplx a = std::conj(w.eval(-z)), b = w.eval(std::conj(z));
        alt_even_s = alt_even_s && close_rel(a, b);
        alt_odd_s = alt_odd_s && close_rel(a, -b);
    }
    bool alt_even, alt_odd;
    reconcile("alternate conjugation (even)", alt_even_c, alt_even_s, alt_even);
    reconcile("alternate conjugation (odd)", alt_odd_c, alt_odd_s, alt_odd);
    if (zero_s)
        out.alt_conj = AltConjClass::Even;
    else
        out.alt_conj = alt_even ? AltConjClass::Even
                                : (alt_odd ? AltConjClass::Odd : AltConjClass::Neither);

    // Palindromicity relative to d: w(z) = z^d w(1/z)
    //   <=>  s(z) rev(q)(z) z^{max(0, a-d-g)} = rev(s)(z) q(z) z^{max(0, d+g-a)}.
    int a = poly::degree(s), g = poly::degree(q);
    int sh = d + g - a;
    Poly lhsT = poly::mul(s, poly::reversed(q));
    Poly rhsT = poly::mul(poly::reversed(s), q);
    if (sh >= 0)
        rhsT = shifted(rhsT, sh);
    else
        lhsT = shifted(lhsT, -sh);
    bool palT_c = poly::approx_equal(lhsT, rhsT, tol);
    bool palT_s = true;
    for (Cplx z : pts) palT_s = palT_s && close_rel(w.eval(z), std::pow(z, d) * w.eval(1.0 / z));
    reconcile("T-palindromicity", palT_c, palT_s, out.pal_T);

    // (w(z))* = conj(z)^d w(1/conj z)  <=>  conj(s)(u) rev(q)(u) ~ rev(s)(u) conj(q)(u) u^{d+g-a}.
    Poly lhsS = poly::mul(sc, poly::reversed(q));
    Poly rhsS = poly::mul(poly::reversed(s), qc);
    if (sh >= 0)
        rhsS = shifted(rhsS, sh);
    else
        lhsS = shifted(lhsS, -sh);
    bool palS_c = poly::approx_equal(lhsS, rhsS, tol);
    bool palS_s = true;
    for (Cplx z : pts) {
        Cplx zc = std::conj(z);
        palS_s = palS_s && close_rel(std::conj(w.eval(z)), std::pow(zc, d) * w.eval(1.0 / zc));
    }
    reconcile("*-palindromicity", palS_c, palS_s, out.pal_star);

    return out;
}

StructureReport validate_structure(const RationalMatrixFunction& G, StructureTag tag,
                                   double tol) {
    StructureReport rep;
    rep.tag = tag;
    rep.degree_deficient = G.degree_deficient();
    const int d = G.degree();

    auto add_weight_violation = [&](int j, const std::string& cond) {
        rep.weight_violations.emplace_back(j, cond);
    };

    // Coefficient residuals for the A_k slots.
    switch (tag) {
        case StructureTag::Unstructured:
            rep.matrix_residuals.assign(G.poly.size() + G.terms.size(), 0.0);
            rep.ok = true;
            return rep;
        case StructureTag::Symmetric:
            for (const Matrix& A : G.poly) rep.matrix_residuals.push_back(sym_resid(A, Sym::Symmetric));
            break;
        case StructureTag::SkewSymmetric:
            for (const Matrix& A : G.poly) rep.matrix_residuals.push_back(sym_resid(A, Sym::Skew));
            break;
        case StructureTag::TEven:
            for (int k = 0; k <= d; ++k)
                rep.matrix_residuals.push_back(
                    sym_resid(G.poly[static_cast<size_t>(k)], k % 2 == 0 ? Sym::Symmetric : Sym::Skew));
            break;
        case StructureTag::TOdd:
            for (int k = 0; k <= d; ++k)
                rep.matrix_residuals.push_back(
                    sym_resid(G.poly[static_cast<size_t>(k)], k % 2 == 0 ? Sym::Skew : Sym::Symmetric));
            break;
        case StructureTag::Hermitian:
            for (const Matrix& A : G.poly) rep.matrix_residuals.push_back(sym_resid(A, Sym::Hermitian));
            break;
        case StructureTag::SkewHermitian:
            for (const Matrix& A : G.poly) rep.matrix_residuals.push_back(sym_resid(A, Sym::SkewHermitian));
            break;
        case StructureTag::StarEven:
            for (int k = 0; k <= d; ++k)
                rep.matrix_residuals.push_back(sym_resid(G.poly[static_cast<size_t>(k)],
                                                         k % 2 == 0 ? Sym::Hermitian : Sym::SkewHermitian));
            break;
        case StructureTag::StarOdd:
            for (int k = 0; k <= d; ++k)
                rep.matrix_residuals.push_back(sym_resid(G.poly[static_cast<size_t>(k)],
                                                         k % 2 == 0 ? Sym::SkewHermitian : Sym::Hermitian));
            break;
        case StructureTag::TPalindromic:
            for (int k = 0; k <= d; ++k)
                rep.matrix_residuals.push_back(
                    rel_resid(G.poly[static_cast<size_t>(k)],
                              G.poly[static_cast<size_t>(d - k)].transpose()));
            break;
        case StructureTag::StarPalindromic:
            for (int k = 0; k <= d; ++k)
                rep.matrix_residuals.push_back(
                    rel_resid(G.poly[static_cast<size_t>(k)],
                              G.poly[static_cast<size_t>(d - k)].adjoint()));
            break;
    }

    // Weight conditions select the required symmetry of each E_j (Table rows).
    for (int j = 0; j < G.n_terms(); ++j) {
        const auto& [w, E] = G.terms[static_cast<size_t>(j)];
        WeightClass wc;
        try {
            wc = classify_weight(w, d);
        } catch (const ClassificationConflict&) {
            add_weight_violation(j, "classification conflict");
            rep.matrix_residuals.push_back(0.0);
            continue;
        }
        Sym need = Sym::Symmetric;
        bool have_cond = true;
        switch (tag) {
            case StructureTag::Symmetric:
                need = Sym::Symmetric;
                break;
            case StructureTag::SkewSymmetric:
                need = Sym::Skew;
                break;
            case StructureTag::TEven:
                if (wc.parity == Parity::Even) need = Sym::Symmetric;
                else if (wc.parity == Parity::Odd) need = Sym::Skew;
                else { add_weight_violation(j, "parity"); have_cond = false; }
                break;
            case StructureTag::TOdd:
                if (wc.parity == Parity::Odd) need = Sym::Symmetric;
                else if (wc.parity == Parity::Even) need = Sym::Skew;
                else { add_weight_violation(j, "parity"); have_cond = false; }
                break;
            case StructureTag::Hermitian:
                need = Sym::Hermitian;
                if (wc.conj != ConjClass::Symmetric) { add_weight_violation(j, "conj-symmetry"); have_cond = false; }
                break;
            case StructureTag::SkewHermitian:
                need = Sym::SkewHermitian;
                if (wc.conj != ConjClass::Symmetric) { add_weight_violation(j, "conj-symmetry"); have_cond = false; }
                break;
            case StructureTag::StarEven:
                if (wc.alt_conj == AltConjClass::Even) need = Sym::Hermitian;
                else if (wc.alt_conj == AltConjClass::Odd) need = Sym::SkewHermitian;
                else { add_weight_violation(j, "alternate conjugation"); have_cond = false; }
                break;
            case StructureTag::StarOdd:
                if (wc.alt_conj == AltConjClass::Odd) need = Sym::Hermitian;
                else if (wc.alt_conj == AltConjClass::Even) need = Sym::SkewHermitian;
                else { add_weight_violation(j, "alternate conjugation"); have_cond = false; }
                break;
            case StructureTag::TPalindromic:
                need = Sym::Symmetric;
                if (!wc.pal_T) { add_weight_violation(j, "T-palindromicity"); have_cond = false; }
                break;
            case StructureTag::StarPalindromic:
                need = Sym::Hermitian;
                if (!wc.pal_star) { add_weight_violation(j, "*-palindromicity"); have_cond = false; }
                break;
            case StructureTag::Unstructured:
                break;
        }
        rep.matrix_residuals.push_back(have_cond ? sym_resid(E, need) : 0.0);
    }

    rep.ok = rep.weight_violations.empty() &&
             std::all_of(rep.matrix_residuals.begin(), rep.matrix_residuals.end(),
                         [&](double r) { return r <= tol; });
    return rep;
}

std::vector<StructureTag> detect_structures(const RationalMatrixFunction& G, double tol) {
    static const StructureTag all[] = {
        StructureTag::Symmetric, StructureTag::SkewSymmetric, StructureTag::TEven,
        StructureTag::TOdd, StructureTag::Hermitian, StructureTag::SkewHermitian,
        StructureTag::StarEven, StructureTag::StarOdd, StructureTag::StarPalindromic,
        StructureTag::TPalindromic,
    };
    std::vector<StructureTag> out;
    for (StructureTag tag : all)
        if (validate_structure(G, tag, tol).ok) out.push_back(tag);
    return out;
}

RationalMatrixFunction transform_rmf(const RationalMatrixFunction& G, TransformMode mode) {
    if (mode == TransformMode::RotateAndScale) {
        return transform_rmf(transform_rmf(G, TransformMode::RotateZ), TransformMode::ScaleI);
    }
    RationalMatrixFunction out = G;
    out.declared_structure.reset();
    const Cplx I(0.0, 1.0);
    if (mode == TransformMode::ScaleI) {
        for (Matrix& A : out.poly) A *= I;
        for (auto& [w, E] : out.terms) E *= I;
    } else {  // RotateZ
        Cplx ik(1.0);
        for (Matrix& A : out.poly) {
            A *= ik;
            ik *= I;
        }
        for (auto& [w, E] : out.terms)
            w = Weight(poly::substitute_iz(w.s), poly::substitute_iz(w.q));
    }
    return out;
}

std::string tag_name(StructureTag tag) {
    switch (tag) {
        case StructureTag::Unstructured: return "unstructured";
        case StructureTag::Symmetric: return "symmetric";
        case StructureTag::SkewSymmetric: return "skew-symmetric";
        case StructureTag::TEven: return "t-even";
        case StructureTag::TOdd: return "t-odd";
        case StructureTag::Hermitian: return "hermitian";
        case StructureTag::SkewHermitian: return "skew-hermitian";
        case StructureTag::StarEven: return "star-even";
        case StructureTag::StarOdd: return "star-odd";
        case StructureTag::StarPalindromic: return "star-palindromic";
        case StructureTag::TPalindromic: return "t-palindromic";
    }
    return "unstructured";
}

StructureTag tag_from_name(const std::string& name) {
    std::string k = name;
    std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(k.begin(), k.end(), '_', '-');
    if (k == "unstructured") return StructureTag::Unstructured;
    if (k == "symmetric") return StructureTag::Symmetric;
    if (k == "skew-symmetric") return StructureTag::SkewSymmetric;
    if (k == "t-even") return StructureTag::TEven;
    if (k == "t-odd") return StructureTag::TOdd;
    if (k == "hermitian") return StructureTag::Hermitian;
    if (k == "skew-hermitian") return StructureTag::SkewHermitian;
    if (k == "star-even" || k == "*-even") return StructureTag::StarEven;
    if (k == "star-odd" || k == "*-odd") return StructureTag::StarOdd;
    if (k == "star-palindromic" || k == "*-palindromic") return StructureTag::StarPalindromic;
    if (k == "t-palindromic") return StructureTag::TPalindromic;
    throw ParseError("unknown structure tag: " + name);
}

} // namespace rmf
