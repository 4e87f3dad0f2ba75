#include "rmf/io.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rmf/structure.hpp"

namespace rmf {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json cplx_json(Cplx z) { return ordered_json::array({z.real(), z.imag()}); }

Cplx cplx_from(const ordered_json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string("expected [re, im] pair in ") + where);
    return Cplx(j[0].get<double>(), j[1].get<double>());
}

ordered_json matrix_json(const Matrix& A) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(cplx_json(A(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from(const ordered_json& j, Eigen::Index n, const char* where) {
    if (!j.is_array()) throw ParseError(std::string("expected a matrix in ") + where);
    if (static_cast<Eigen::Index>(j.size()) != n)
        throw DimensionMismatch(std::string("matrix is not ") + std::to_string(n) + " x " +
                                std::to_string(n) + " in " + where);
    Matrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw DimensionMismatch(std::string("non-square matrix in ") + where);
        for (Eigen::Index k = 0; k < n; ++k)
            A(i, k) = cplx_from(row[static_cast<size_t>(k)], where);
    }
    return A;
}

ordered_json poly_json(const Poly& p) {
    ordered_json out = ordered_json::array();
    for (Cplx c : p) out.push_back(cplx_json(c));
    return out;
}

Poly poly_from(const ordered_json& j, const char* where) {
    if (!j.is_array() || j.empty())
        throw ParseError(std::string("expected a coefficient list in ") + where);
    Poly p;
    for (const auto& c : j) p.push_back(cplx_from(c, where));
    return p;
}

std::string normalized_name(std::string s) {
    for (char& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == '-') c = '_';
    }
    return s;
}

// --- generators ---

Eigen::MatrixXd real_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = g(rng);
    return A;
}

Matrix complex_gaussian(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) A(i, j) = Cplx(g(rng), g(rng));
    return A;
}

// SPD with spectrum 1..n via a random orthogonal similarity.
Matrix spd_matrix(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(real_gaussian(n, n, rng));
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = static_cast<double>(i + 1);
    return (Q * diag.asDiagonal() * Q.transpose()).cast<Cplx>();
}

Matrix spsd_matrix(Eigen::Index n, Eigen::Index rank, std::mt19937_64& rng) {
    Eigen::MatrixXd C = real_gaussian(n, rank, rng);
    return (C * C.transpose()).cast<Cplx>();
}

enum class Proj { Sym, Skew, Herm, SHerm, None };

Matrix project(Proj p, const Matrix& A) {
    switch (p) {
        case Proj::Sym: return (A + A.transpose()) / 2.0;
        case Proj::Skew: return (A - A.transpose()) / 2.0;
        case Proj::Herm: return (A + A.adjoint()) / 2.0;
        case Proj::SHerm: return (A - A.adjoint()) / 2.0;
        case Proj::None: return A;
    }
    return A;
}

double unif(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Cplx cunif(std::mt19937_64& rng) { return Cplx(unif(rng, -1, 1), unif(rng, -1, 1)); }

// Generic random denominator of degree 2 kept away from the origin.
Poly random_q(std::mt19937_64& rng, bool real) {
    if (real) return Poly{Cplx(2.0 + unif(rng, 0, 1)), Cplx(unif(rng, -1, 1)), Cplx(1.0)};
    return Poly{Cplx(2.0) + cunif(rng), cunif(rng), Cplx(1.0)};
}

Weight random_weight(std::mt19937_64& rng, bool real) {
    if (real) return Weight(Poly{Cplx(unif(rng, -1, 1)), Cplx(unif(rng, -1, 1))}, random_q(rng, true));
    return Weight(Poly{cunif(rng), cunif(rng)}, random_q(rng, false));
}

// Parity-patterned weights for the T-even / T-odd / star-even / star-odd rows.
Weight parity_weight(std::mt19937_64& rng, bool even, bool real) {
    Poly q = real ? Poly{Cplx(2.0 + unif(rng, 0, 1)), Cplx(0.0), Cplx(1.0)}
                  : Poly{Cplx(2.0) + cunif(rng), Cplx(0.0), Cplx(1.0)};
    auto coeff = [&] { return real ? Cplx(unif(rng, 0.2, 1.0) * (unif(rng, -1, 1) < 0 ? -1 : 1))
                                   : cunif(rng); };
    Poly s = even ? Poly{coeff(), Cplx(0.0), coeff()} : Poly{Cplx(0.0), coeff()};
    return Weight(std::move(s), std::move(q));
}

Weight palindromic_weight(std::mt19937_64& rng, int d, bool real) {
    auto coeff = [&] { return real ? Cplx(unif(rng, 0.2, 1.0)) : Cplx(0.3) + cunif(rng) * 0.7; };
    Poly q(3);  // palindromic, degree 2
    q[0] = q[2] = coeff();
    q[1] = Cplx(3.0);  // roots away from the unit circle region of interest
    Poly s(static_cast<size_t>(d) + 3);
    for (size_t i = 0; i <= s.size() / 2; ++i) s[i] = s[s.size() - 1 - i] = coeff();
    return Weight(std::move(s), std::move(q));
}

RationalMatrixFunction random_structured(const GenerateParams& p) {
    StructureTag tag = p.structure.value_or(StructureTag::Symmetric);
    if (p.n <= 0 || p.d < 0 || p.m < 0) throw BadParams("n must be positive, d and m nonnegative");
    std::mt19937_64 rng(p.seed);
    const Eigen::Index n = p.n;
    const int d = p.d;

    std::vector<Matrix> A(static_cast<size_t>(d) + 1);
    std::vector<std::pair<Weight, Matrix>> terms;

    auto slot = [&](int k) -> Proj {
        switch (tag) {
            case StructureTag::Symmetric: return Proj::Sym;
            case StructureTag::SkewSymmetric: return Proj::Skew;
            case StructureTag::TEven: return k % 2 == 0 ? Proj::Sym : Proj::Skew;
            case StructureTag::TOdd: return k % 2 == 0 ? Proj::Skew : Proj::Sym;
            case StructureTag::Hermitian: return Proj::Herm;
            case StructureTag::SkewHermitian: return Proj::SHerm;
            case StructureTag::StarEven: return k % 2 == 0 ? Proj::Herm : Proj::SHerm;
            case StructureTag::StarOdd: return k % 2 == 0 ? Proj::SHerm : Proj::Herm;
            default: return Proj::None;
        }
    };

    if (tag == StructureTag::TPalindromic || tag == StructureTag::StarPalindromic) {
        bool star = tag == StructureTag::StarPalindromic;
        for (int k = 0; 2 * k <= d; ++k) {
            if (2 * k == d) {
                A[static_cast<size_t>(k)] =
                    project(star ? Proj::Herm : Proj::Sym, complex_gaussian(n, rng));
            } else {
                Matrix M = complex_gaussian(n, rng);
                A[static_cast<size_t>(k)] = M;
                A[static_cast<size_t>(d - k)] = star ? Matrix(M.adjoint()) : Matrix(M.transpose());
            }
        }
        for (int j = 0; j < p.m; ++j)
            terms.emplace_back(palindromic_weight(rng, d, star),
                               project(star ? Proj::Herm : Proj::Sym, complex_gaussian(n, rng)));
        return RationalMatrixFunction(std::move(A), std::move(terms), tag);
    }

    for (int k = 0; k <= d; ++k)
        A[static_cast<size_t>(k)] = project(slot(k), complex_gaussian(n, rng));

    bool real_weights = tag == StructureTag::Hermitian || tag == StructureTag::SkewHermitian;
    for (int j = 0; j < p.m; ++j) {
        bool even = j % 2 == 0;
        Weight w = Weight();
        Proj ep = Proj::None;
        switch (tag) {
            case StructureTag::Unstructured:
                w = random_weight(rng, false);
                break;
            case StructureTag::Symmetric:
                w = random_weight(rng, false);
                ep = Proj::Sym;
                break;
            case StructureTag::SkewSymmetric:
                w = random_weight(rng, false);
                ep = Proj::Skew;
                break;
            case StructureTag::TEven:
                w = parity_weight(rng, even, false);
                ep = even ? Proj::Sym : Proj::Skew;
                break;
            case StructureTag::TOdd:
                w = parity_weight(rng, even, false);
                ep = even ? Proj::Skew : Proj::Sym;
                break;
            case StructureTag::Hermitian:
                w = random_weight(rng, true);
                ep = Proj::Herm;
                break;
            case StructureTag::SkewHermitian:
                w = random_weight(rng, true);
                ep = Proj::SHerm;
                break;
            case StructureTag::StarEven:
                w = parity_weight(rng, even, true);  // real even -> alt-even
                ep = even ? Proj::Herm : Proj::SHerm;
                break;
            case StructureTag::StarOdd:
                w = parity_weight(rng, even, true);
                ep = even ? Proj::SHerm : Proj::Herm;
                break;
            default:
                break;
        }
        terms.emplace_back(std::move(w), project(ep, complex_gaussian(n, rng)));
    }
    std::optional<StructureTag> declared;
    if (tag != StructureTag::Unstructured) declared = tag;
    return RationalMatrixFunction(std::move(A), std::move(terms), declared);
}

} // namespace

RationalMatrixFunction parse_problem_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("problem file must be a JSON object");
    if (!j.contains("n") || !j.contains("d") || !j.contains("poly"))
        throw ParseError("problem file needs fields n, d, poly");
    Eigen::Index n = j["n"].get<Eigen::Index>();
    int d = j["d"].get<int>();
    if (n <= 0 || d < 0) throw ParseError("n must be positive and d nonnegative");
    if (!j["poly"].is_array() || static_cast<int>(j["poly"].size()) != d + 1)
        throw ParseError("poly must hold d + 1 matrices");

    std::vector<Matrix> A;
    for (const auto& mj : j["poly"]) A.push_back(matrix_from(mj, n, "poly"));

    std::vector<std::pair<Weight, Matrix>> terms;
    if (j.contains("rational")) {
        if (!j["rational"].is_array()) throw ParseError("rational must be a list");
        for (const auto& tj : j["rational"]) {
            if (!tj.contains("s") || !tj.contains("q") || !tj.contains("E"))
                throw ParseError("rational terms need fields s, q, E");
            Poly s = poly_from(tj["s"], "rational.s");
            Poly q = poly_from(tj["q"], "rational.q");
            try {
                terms.emplace_back(Weight(std::move(s), std::move(q)),
                                   matrix_from(tj["E"], n, "rational.E"));
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("bad weight: ") + e.what());
            }
        }
    }

    std::optional<StructureTag> tag;
    if (j.contains("structure") && !j["structure"].is_null())
        tag = tag_from_name(j["structure"].get<std::string>());

    return RationalMatrixFunction(std::move(A), std::move(terms), tag);
}

RationalMatrixFunction parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

std::string problem_to_text(const RationalMatrixFunction& G) {
    ordered_json j;
    j["n"] = G.n();
    j["d"] = G.degree();
    if (G.declared_structure) j["structure"] = tag_name(*G.declared_structure);
    j["poly"] = ordered_json::array();
    for (const Matrix& A : G.poly) j["poly"].push_back(matrix_json(A));
    j["rational"] = ordered_json::array();
    for (const auto& [w, E] : G.terms) {
        ordered_json t;
        t["s"] = poly_json(w.s);
        t["q"] = poly_json(w.q);
        t["E"] = matrix_json(E);
        j["rational"].push_back(std::move(t));
    }
    return j.dump(2) + "\n";
}

void write_problem(const RationalMatrixFunction& G, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << problem_to_text(G);
}

RationalMatrixFunction generate_example(const std::string& name_in, const GenerateParams& p) {
    std::string name = normalized_name(name_in);
    std::mt19937_64 rng(p.seed);
    const Eigen::Index n = p.n;
    if (n <= 0) throw BadParams("n must be positive");

    if (name == "fluid_structure") {
        if (p.a <= 0 || p.alpha <= 0 || p.beta <= 0)
            throw BadParams("fluid_structure constants must be positive");
        Matrix K = spd_matrix(n, rng);
        Matrix M = spd_matrix(n, rng);
        Matrix D = spsd_matrix(n, (n + 1) / 2, rng);
        std::vector<Matrix> A{K, Matrix::Zero(n, n), M / (p.a * p.a)};
        std::vector<std::pair<Weight, Matrix>> terms;
        terms.emplace_back(Weight(Poly{Cplx(0.0), Cplx(0.0), Cplx(1.0)},
                                  Poly{Cplx(p.alpha), Cplx(p.beta)}),
                           D);
        return RationalMatrixFunction(std::move(A), std::move(terms), StructureTag::Symmetric);
    }

    if (name == "fluid_solid") {
        int m = p.m;
        if (m <= 0) throw BadParams("fluid_solid needs m >= 1");
        Matrix Am = spd_matrix(n, rng);
        Matrix Bm = spd_matrix(n, rng);
        std::vector<Matrix> A{Am, -Bm};
        std::vector<std::pair<Weight, Matrix>> terms;
        for (int j = 0; j < m; ++j) {
            double sigma = j < static_cast<int>(p.sigma.size()) ? p.sigma[static_cast<size_t>(j)]
                                                                : static_cast<double>(j + 1);
            if (sigma <= 0) throw BadParams("fluid_solid poles must be positive");
            Eigen::Index rank = j < static_cast<int>(p.ranks.size())
                                    ? p.ranks[static_cast<size_t>(j)]
                                    : std::min<Eigen::Index>(2, n);
            if (rank <= 0 || rank > n) throw BadParams("fluid_solid rank out of range");
            terms.emplace_back(Weight(Poly{Cplx(0.0), Cplx(1.0)}, Poly{Cplx(-sigma), Cplx(1.0)}),
                               spsd_matrix(n, rank, rng));
        }
        return RationalMatrixFunction(std::move(A), std::move(terms), StructureTag::Symmetric);
    }

    if (name == "loaded_random") {
        if (p.d < 1 || p.m < 0) throw BadParams("loaded_random needs d >= 1");
        std::vector<Matrix> A;
        for (int k = 0; k <= p.d; ++k) A.push_back(complex_gaussian(n, rng));
        std::vector<std::pair<Weight, Matrix>> terms;
        for (int j = 0; j < p.m; ++j)
            terms.emplace_back(random_weight(rng, false), complex_gaussian(n, rng));
        return RationalMatrixFunction(std::move(A), std::move(terms));
    }

    if (name == "random_structured") return random_structured(p);

    throw BadParams("unknown example name: " + name_in);
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt_cplx(Cplx z) {
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

ordered_json report_json(const AnalysisReport& rep) {
    ordered_json j;
    j["problem"] = rep.problem;
    if (rep.tag) j["structure"] = tag_name(*rep.tag);
    j["eigenvalues"] = ordered_json::array();
    for (const EigenRecord& r : rep.rows) {
        ordered_json e;
        e["lambda"] = cplx_json(r.triplet.lambda);
        e["right_residual"] = r.triplet.right_residual;
        e["left_residual"] = r.triplet.left_residual;
        e["derivative_scalar"] = cplx_json(r.triplet.derivative_scalar);
        ordered_json as;
        as["is_simple"] = r.assumptions.is_simple;
        as["not_a_pole"] = r.assumptions.not_a_pole;
        as["nonzero_weights"] = r.assumptions.nonzero_weights;
        as["warnings"] = r.assumptions.warnings;
        e["assumptions"] = std::move(as);
        if (r.kappa) e["kappa"] = *r.kappa;
        if (r.structured) {
            const ConditionReport& c = *r.structured;
            ordered_json s;
            s["tag"] = tag_name(c.tag);
            s["alpha"] = c.alpha;
            s["exact"] = c.exact;
            if (c.exact) {
                s["value"] = c.lo;
            } else {
                s["lo"] = c.lo;
                s["hi"] = c.hi;
            }
            ordered_json f;
            if (c.factors.c) f["c"] = *c.factors.c;
            if (c.factors.beta) f["beta"] = *c.factors.beta;
            if (c.factors.gamma) f["gamma"] = *c.factors.gamma;
            if (c.factors.B1) f["B1"] = *c.factors.B1;
            if (c.factors.B2) f["B2"] = *c.factors.B2;
            s["factors"] = std::move(f);
            ordered_json eq;
            eq["holds"] = c.equality.state == EqualityState::Yes
                              ? "yes"
                              : (c.equality.state == EqualityState::No ? "no" : "unknown");
            eq["reason"] = reason_name(c.equality.reason);
            s["equality"] = std::move(eq);
            s["warnings"] = c.warnings;
            e["structured"] = std::move(s);
        }
        if (r.oracle) e["oracle_estimate"] = *r.oracle;
        e["warnings"] = r.warnings;
        j["eigenvalues"].push_back(std::move(e));
    }
    ordered_json st;
    for (const auto& [k, v] : rep.settings) st[k] = v;
    j["settings"] = std::move(st);
    j["warnings"] = rep.warnings;
    return j;
}

} // namespace

std::string render_report(const AnalysisReport& rep, bool json_format) {
    if (json_format) return report_json(rep).dump(2) + "\n";

    std::ostringstream os;
    os << "problem: " << rep.problem << "\n";
    if (rep.tag) os << "structure: " << tag_name(*rep.tag) << "\n";
    os << "idx | lambda | kappa | structured | ratio | equality\n";
    os << "----+--------+-------+------------+-------+---------\n";
    int idx = 0;
    for (const EigenRecord& r : rep.rows) {
        os << idx++ << " | " << fmt_cplx(r.triplet.lambda) << " | ";
        os << (r.kappa ? fmt_double(*r.kappa) : std::string("-")) << " | ";
        if (r.structured) {
            const ConditionReport& c = *r.structured;
            if (c.exact)
                os << fmt_double(c.lo);
            else
                os << "[" << fmt_double(c.lo) << ", " << fmt_double(c.hi) << "]";
            double ratio = r.kappa && *r.kappa > 0 ? c.hi / *r.kappa : 0.0;
            os << " | " << fmt_double(ratio) << " | ";
            os << (c.equality.holds() ? "yes: " : "no: ") << reason_name(c.equality.reason);
        } else {
            os << "- | - | -";
        }
        os << "\n";
    }
    for (const std::string& w : rep.warnings) os << "warning: " << w << "\n";
    return os.str();
}

} // namespace rmf
