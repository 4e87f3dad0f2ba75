#include "rmf/verify.hpp"

#include <algorithm>
#include <cmath>

#include "rmf/structure.hpp"

namespace rmf {

namespace {

Cplx unit_phase_conj(Cplx z) {
    double a = std::abs(z);
    return a < 1e-300 ? Cplx(1.0) : std::conj(z) / a;
}

bool herm_slot(const Matrix& E) {
    return (E - E.adjoint()).norm() <= (E + E.adjoint()).norm();
}

MapClass delta_class(StructureTag tag, bool even_index_or_even_weight, const Matrix* E) {
    switch (tag) {
        case StructureTag::Unstructured: return MapClass::General;
        case StructureTag::Symmetric: return MapClass::Symmetric;
        case StructureTag::SkewSymmetric: return MapClass::SkewSymmetric;
        case StructureTag::TEven:
            return even_index_or_even_weight ? MapClass::Symmetric : MapClass::SkewSymmetric;
        case StructureTag::TOdd:
            return even_index_or_even_weight ? MapClass::SkewSymmetric : MapClass::Symmetric;
        case StructureTag::Hermitian:
            return E && !herm_slot(*E) ? MapClass::SkewHermitian : MapClass::Hermitian;
        case StructureTag::SkewHermitian:
            return E && herm_slot(*E) ? MapClass::Hermitian : MapClass::SkewHermitian;
        case StructureTag::StarEven:
            if (E) return herm_slot(*E) ? MapClass::Hermitian : MapClass::SkewHermitian;
            return even_index_or_even_weight ? MapClass::Hermitian : MapClass::SkewHermitian;
        case StructureTag::StarOdd:
            if (E) return herm_slot(*E) ? MapClass::Hermitian : MapClass::SkewHermitian;
            return even_index_or_even_weight ? MapClass::SkewHermitian : MapClass::Hermitian;
        case StructureTag::TPalindromic: return MapClass::Symmetric;      // middle and weights
        case StructureTag::StarPalindromic: return MapClass::Hermitian;   // middle and weights
    }
    return MapClass::General;
}

Matrix gaussian_matrix(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = Cplx(g(rng), g(rng));
    return A;
}

Matrix class_project(MapClass S, const Matrix& D) {
    switch (S) {
        case MapClass::General: return D;
        case MapClass::Symmetric: return (D + D.transpose()) / 2.0;
        case MapClass::SkewSymmetric: return (D - D.transpose()) / 2.0;
        case MapClass::Hermitian: return (D + D.adjoint()) / 2.0;
        case MapClass::SkewHermitian: return (D - D.adjoint()) / 2.0;
    }
    return D;
}

Matrix random_unit_member(MapClass S, Eigen::Index n, std::mt19937_64& rng) {
    Matrix D = class_project(S, gaussian_matrix(n, rng));
    double nrm = spectral_norm(D);
    if (nrm < 1e-300) return Matrix::Zero(n, n);
    return D / nrm;
}

} // namespace

OracleTerm OracleTerm::ellipse(Cplx z, MSParams m) {
    OracleTerm t;
    t.is_pair = false;
    t.coeff = z;
    t.ms = m;
    return t;
}

OracleTerm OracleTerm::transpose_pair(Cplx a, Cplx b, Cplx xty) {
    OracleTerm t;
    t.is_pair = true;
    double h2 = std::min(1.0, std::norm(xty));
    double ab = std::abs(a) * std::abs(b);
    t.p = std::norm(a) + std::norm(b) + 2.0 * h2 * (a * std::conj(b)).real() +
          2.0 * ab * (1.0 - h2);
    t.q = 0.0;
    t.delta = 0.0;
    return t;
}

OracleTerm OracleTerm::adjoint_pair(Cplx a, Cplx b, Cplx ystarx) {
    OracleTerm t;
    t.is_pair = true;
    double g2 = std::min(1.0, std::norm(ystarx));
    double ab = std::abs(a) * std::abs(b);
    Cplx abg2 = a * b * ystarx * ystarx;
    t.p = std::norm(a) + std::norm(b) + 2.0 * ab * (1.0 - g2);
    t.q = 2.0 * std::abs(abg2);
    t.delta = t.q > 0.0 ? -std::arg(abg2) : 0.0;
    return t;
}

double OracleTerm::support(double psi) const {
    if (is_pair) return std::sqrt(std::max(0.0, p + q * std::cos(2.0 * psi + delta)));
    double theta = std::arg(coeff) + ms.phi - psi;
    double ct = std::cos(theta), st = std::sin(theta);
    return std::abs(coeff) * std::sqrt(ms.a * ms.a * ct * ct + ms.b * ms.b * st * st);
}

SupOracleResult sup_oracle_grid(const std::vector<OracleTerm>& terms, int grid_n) {
    SupOracleResult res;
    res.grid_points = grid_n;
    res.method = SupOracleResult::Method::Grid;
    for (int i = 0; i < grid_n; ++i) {
        double psi = 2.0 * M_PI * i / grid_n;
        double v = 0.0;
        for (const OracleTerm& t : terms) v += t.support(psi);
        if (v > res.value) {
            res.value = v;
            res.argmax_phase = psi;
        }
    }
    // Local refinement around the coarse argmax; the value stays a certified
    // lower bound since we only ever evaluate the objective.
    double half = 2.0 * M_PI / grid_n;
    for (int pass = 0; pass < 4; ++pass) {
        double lo = res.argmax_phase - half, step = 2.0 * half / 64;
        for (int i = 0; i <= 64; ++i) {
            double psi = lo + step * i;
            double v = 0.0;
            for (const OracleTerm& t : terms) v += t.support(psi);
            if (v > res.value) {
                res.value = v;
                res.argmax_phase = psi;
            }
        }
        half /= 24.0;
    }
    return res;
}

std::vector<OracleTerm> oracle_terms(const RationalMatrixFunction& G, const Eigentriplet& t,
                                     StructureTag tag) {
    const Cplx lam = t.lambda;
    const int d = G.degree();
    std::vector<OracleTerm> terms;

    if (tag == StructureTag::SkewHermitian || tag == StructureTag::StarEven ||
        tag == StructureTag::StarOdd) {
        auto [G2, t2] = hermitian_delegate(G, t, tag);
        return oracle_terms(G2, t2, StructureTag::Hermitian);
    }

    if (tag == StructureTag::TPalindromic || tag == StructureTag::StarPalindromic) {
        bool star = tag == StructureTag::StarPalindromic;
        Cplx pairing = star ? t.y.dot(t.x) : Cplx(t.x.transpose() * t.y);
        int top = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
        for (int k = 0; k <= top; ++k) {
            Cplx a = std::pow(lam, k), b = std::pow(lam, d - k);
            terms.push_back(star ? OracleTerm::adjoint_pair(a, b, pairing)
                                 : OracleTerm::transpose_pair(a, b, pairing));
        }
        MapClass mid = star ? MapClass::Hermitian : MapClass::Symmetric;
        MSParams ms = ms_params(mid, t.x, t.y);
        if (d % 2 == 0) terms.push_back(OracleTerm::ellipse(std::pow(lam, d / 2), ms));
        for (const auto& [w, E] : G.terms)
            terms.push_back(OracleTerm::ellipse(w.eval(lam), ms));
        return terms;
    }

    for (int k = 0; k <= d; ++k) {
        MapClass S = delta_class(tag, k % 2 == 0, nullptr);
        terms.push_back(OracleTerm::ellipse(std::pow(lam, k), ms_params(S, t.x, t.y)));
    }
    for (const auto& [w, E] : G.terms) {
        MapClass S;
        if (tag == StructureTag::TEven || tag == StructureTag::TOdd) {
            WeightClass wc = classify_weight(w, d);
            if (wc.parity == Parity::Neither)
                throw StructureMismatch("weight parity undefined for the oracle");
            S = delta_class(tag, wc.parity == Parity::Even, nullptr);
        } else {
            S = delta_class(tag, true, &E);
        }
        terms.push_back(OracleTerm::ellipse(w.eval(lam), ms_params(S, t.x, t.y)));
    }
    return terms;
}

SupOracleResult sup_oracle_structured(const RationalMatrixFunction& G, const Eigentriplet& t,
                                      StructureTag tag, int grid_n) {
    return sup_oracle_grid(oracle_terms(G, t, tag), grid_n);
}

PerturbationTuple random_structured_tuple(const RationalMatrixFunction& G, StructureTag tag,
                                          std::mt19937_64& rng) {
    const Eigen::Index n = G.n();
    const int d = G.degree();
    PerturbationTuple dG = PerturbationTuple::zeros(G);

    if (tag == StructureTag::TPalindromic || tag == StructureTag::StarPalindromic) {
        bool star = tag == StructureTag::StarPalindromic;
        for (int k = 0; k <= d; ++k) {
            if (k > d - k) break;
            if (k == d - k) {
                dG.deltas_poly[static_cast<size_t>(k)] = random_unit_member(
                    star ? MapClass::Hermitian : MapClass::Symmetric, n, rng);
            } else {
                Matrix D = random_unit_member(MapClass::General, n, rng);
                dG.deltas_poly[static_cast<size_t>(k)] = D;
                dG.deltas_poly[static_cast<size_t>(d - k)] =
                    star ? Matrix(D.adjoint()) : Matrix(D.transpose());
            }
        }
        MapClass wclass = star ? MapClass::Hermitian : MapClass::Symmetric;
        for (size_t j = 0; j < dG.deltas_terms.size(); ++j)
            dG.deltas_terms[j] = random_unit_member(wclass, n, rng);
        return dG;
    }

    for (int k = 0; k <= d; ++k)
        dG.deltas_poly[static_cast<size_t>(k)] =
            random_unit_member(delta_class(tag, k % 2 == 0, nullptr), n, rng);
    for (int j = 0; j < G.n_terms(); ++j) {
        const auto& [w, E] = G.terms[static_cast<size_t>(j)];
        MapClass S;
        if (tag == StructureTag::TEven || tag == StructureTag::TOdd) {
            WeightClass wc = classify_weight(w, d);
            S = delta_class(tag, wc.parity == Parity::Even, nullptr);
        } else {
            S = delta_class(tag, true, &E);
        }
        dG.deltas_terms[static_cast<size_t>(j)] = random_unit_member(S, n, rng);
    }
    return dG;
}

SupOracleResult sup_oracle_sampling(const RationalMatrixFunction& G, const Eigentriplet& t,
                                    StructureTag tag, int n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double D = std::abs(t.derivative_scalar);
    SupOracleResult res;
    res.method = SupOracleResult::Method::Sampling;
    res.grid_points = n_samples;

    auto eval_tuple = [&](const PerturbationTuple& dG) {
        Cplx v = (t.y.adjoint() * dG.eval(G, t.lambda) * t.x)(0);
        double nrm = dG.norm_2inf();
        if (nrm < 1e-300) return;
        double ratio = std::abs(v) / (nrm * D);
        if (ratio > res.value) {
            res.value = ratio;
            res.argmax_phase = std::arg(v);
        }
    };

    try {
        eval_tuple(worst_case_perturbation(G, t, tag, 1.0));
    } catch (const UnsupportedError&) {
    } catch (const InfeasibleError&) {
    }
    for (int i = 0; i < n_samples; ++i) eval_tuple(random_structured_tuple(G, tag, rng));
    return res;
}

PerturbationTuple worst_case_perturbation(const RationalMatrixFunction& G, const Eigentriplet& t,
                                          StructureTag tag, double eps) {
    const int d = G.degree();
    PerturbationTuple dG = PerturbationTuple::zeros(G);
    dG.epsilon = eps;

    Matrix S, R;
    switch (tag) {
        case StructureTag::Unstructured:
            S = R = extremal_structured(MapClass::General, t.x, t.y);
            break;
        case StructureTag::Symmetric:
            S = R = extremal_structured(MapClass::Symmetric, t.x, t.y);
            break;
        case StructureTag::SkewSymmetric:
            S = R = extremal_structured(MapClass::SkewSymmetric, t.x, t.y);
            break;
        case StructureTag::TEven:
        case StructureTag::TOdd:
            S = extremal_structured(MapClass::Symmetric, t.x, t.y);
            R = extremal_structured(MapClass::SkewSymmetric, t.x, t.y);
            break;
        default:
            throw UnsupportedError("worst-case construction available only for the exact tags");
    }

    auto member = [&](bool even_slot) -> const Matrix& {
        if (tag == StructureTag::TEven) return even_slot ? S : R;
        if (tag == StructureTag::TOdd) return even_slot ? R : S;
        return S;
    };

    for (int k = 0; k <= d; ++k)
        dG.deltas_poly[static_cast<size_t>(k)] =
            eps * unit_phase_conj(std::pow(t.lambda, k)) * member(k % 2 == 0);
    for (int j = 0; j < G.n_terms(); ++j) {
        const Weight& w = G.terms[static_cast<size_t>(j)].first;
        bool even_slot = true;
        if (tag == StructureTag::TEven || tag == StructureTag::TOdd) {
            WeightClass wc = classify_weight(w, d);
            if (wc.parity == Parity::Neither)
                throw StructureMismatch("weight parity undefined for the worst case");
            even_slot = wc.parity == Parity::Even;
        }
        dG.deltas_terms[static_cast<size_t>(j)] =
            eps * unit_phase_conj(w.eval(t.lambda)) * member(even_slot);
    }
    return dG;
}

SlopeReport first_order_experiment(const RationalMatrixFunction& G, const Eigentriplet& t,
                                   const PerturbationTuple& dG_unit,
                                   const std::vector<double>& eps_list) {
    SlopeReport rep;
    Cplx num = (t.y.adjoint() * dG_unit.eval(G, t.lambda) * t.x)(0);
    Cplx rate = -num / t.derivative_scalar;

    for (double eps : eps_list) {
        RationalMatrixFunction Gp = perturbed(G, dG_unit, eps);
        Eigentriplet tp;
        try {
            tp = refine_triplet(Gp, t.lambda, t.x, t.y);
        } catch (const NoConvergence&) {
            continue;
        } catch (const PoleError&) {
            continue;
        }
        rep.eps_list.push_back(eps);
        rep.predicted_shifts.push_back(eps * rate);
        rep.actual_shifts.push_back(tp.lambda - t.lambda);
    }
    if (rep.eps_list.size() < 3)
        throw NoConvergence("fewer than 3 epsilon steps survived the re-solve");

    // Fit only where the quadratic remainder is safely above the re-solve
    // noise: extrapolate from the largest step and drop points whose expected
    // remainder falls under the floor.
    double floor = 1e-13 * (1.0 + std::abs(t.lambda));
    double eps0 = rep.eps_list.front();
    double r0 = std::abs(rep.actual_shifts.front() - rep.predicted_shifts.front());
    std::vector<double> lx, ly;
    for (size_t i = 0; i < rep.eps_list.size(); ++i) {
        double r = std::abs(rep.actual_shifts[i] - rep.predicted_shifts[i]);
        double scale = rep.eps_list[i] / eps0;
        if (r > floor && r0 * scale * scale > floor) {
            lx.push_back(std::log(rep.eps_list[i]));
            ly.push_back(std::log(r));
        }
    }
    if (lx.size() < 2) {
        rep.exact_match = true;
        return rep;
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    rep.remainder_slope = sxy / sxx;
    return rep;
}

} // namespace rmf
