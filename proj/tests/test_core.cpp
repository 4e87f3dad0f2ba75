#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmf/core.hpp"

using namespace rmf;

namespace {

Matrix scalar(Cplx v) {
    Matrix A(1, 1);
    A(0, 0) = v;
    return A;
}

// G(z) = z - 2.5 + 1/z, scalar, the running hand example with eigenvalues
// 1/2 and 2.
RationalMatrixFunction scalar_example() {
    std::vector<Matrix> P{scalar(-2.5), scalar(1.0)};
    std::vector<std::pair<Weight, Matrix>> terms;
    terms.emplace_back(Weight({Cplx(1.0)}, {Cplx(0.0), Cplx(1.0)}), scalar(1.0));
    return RationalMatrixFunction(std::move(P), std::move(terms));
}

} // namespace

TEST_CASE("polynomial basics") {
    Poly p{Cplx(1.0), Cplx(-2.5), Cplx(1.0)};
    CHECK(poly::degree(p) == 2);
    CHECK(poly::eval(p, Cplx(3.0)) == Cplx(2.5));
    Poly dp = poly::derivative(p);
    CHECK(poly::degree(dp) == 1);
    CHECK(poly::eval(dp, Cplx(2.0)) == Cplx(1.5));

    Poly z{Cplx(0.0), Cplx(1.0)};
    Poly prod = poly::mul(p, z);
    CHECK(poly::degree(prod) == 3);
    Poly back = poly::divide_exact(prod, z);
    CHECK(poly::approx_equal(back, p, 1e-14));
    CHECK_THROWS_AS(poly::divide_exact(p, Poly{Cplx(1.0), Cplx(1.0)}), std::invalid_argument);

    Poly t = poly::trimmed(Poly{Cplx(1.0), Cplx(2.0), Cplx(0.0), Cplx(0.0)});
    CHECK(t.size() == 2);
    CHECK(poly::is_zero(Poly{Cplx(0.0)}));
    CHECK(poly::coeff_scale(p) == doctest::Approx(2.5));
}

TEST_CASE("polynomial transforms") {
    Poly p{Cplx(1.0), Cplx(2.0), Cplx(3.0)};
    Poly r = poly::reflect(p);  // p(-z)
    CHECK(r[1] == Cplx(-2.0));
    CHECK(r[2] == Cplx(3.0));
    Poly rev = poly::reversed(p);  // z^2 p(1/z)
    CHECK(rev[0] == Cplx(3.0));
    CHECK(rev[2] == Cplx(1.0));
    Poly iz = poly::substitute_iz(p);
    CHECK(std::abs(poly::eval(iz, Cplx(2.0)) - poly::eval(p, Cplx(0.0, 2.0))) < 1e-14);
    Poly m = poly::monic(p);
    CHECK(m[2] == Cplx(1.0));

    auto rts = poly::roots(Poly{Cplx(1.0), Cplx(-2.5), Cplx(1.0)});
    REQUIRE(rts.size() == 2);
    std::sort(rts.begin(), rts.end(), [](Cplx a, Cplx b) { return std::abs(a) < std::abs(b); });
    CHECK(std::abs(rts[0] - Cplx(0.5)) < 1e-12);
    CHECK(std::abs(rts[1] - Cplx(2.0)) < 1e-12);
}

TEST_CASE("weights and poles") {
    Weight w({Cplx(1.0)}, {Cplx(0.0), Cplx(1.0)});  // 1/z
    CHECK(w.eval(Cplx(2.0)) == Cplx(0.5));
    CHECK(std::abs(w.eval_derivative(Cplx(2.0)) - Cplx(-0.25)) < 1e-15);
    CHECK_THROWS_AS(w.eval(Cplx(0.0)), PoleError);
    CHECK_THROWS_AS(Weight({Cplx(1.0)}, {Cplx(0.0)}), std::invalid_argument);
    CHECK(poly::near_pole(w.q, Cplx(1e-14)));
    CHECK(!poly::near_pole(w.q, Cplx(0.5)));
}

TEST_CASE("rational matrix function evaluation") {
    RationalMatrixFunction G = scalar_example();
    CHECK(G.n() == 1);
    CHECK(G.degree() == 1);
    // G(2) = 2 - 2.5 + 0.5 = 0
    CHECK(std::abs(G.eval(Cplx(2.0))(0, 0)) < 1e-15);
    // G'(2) = 1 - 1/4 = 0.75
    CHECK(std::abs(G.eval_derivative(Cplx(2.0))(0, 0) - Cplx(0.75)) < 1e-15);
    // scale at 2: 2.5 + 2 + 0.5 = 5
    CHECK(G.scale_at(Cplx(2.0)) == doctest::Approx(5.0));
    CHECK(G.coefficient_scale() == doctest::Approx(2.5));
    CHECK(G.is_pole(Cplx(0.0)));
    CHECK(!G.is_pole(Cplx(2.0)));
    auto pc = G.pole_candidates();
    REQUIRE(pc.size() == 1);
    CHECK(std::abs(pc[0]) < 1e-12);
}

TEST_CASE("spectral norm") {
    Matrix A(2, 2);
    A << Cplx(3.0), Cplx(0.0), Cplx(0.0), Cplx(0.0, -4.0);
    CHECK(spectral_norm(A) == doctest::Approx(4.0));
    Matrix R = Matrix::Random(40, 40);
    Eigen::JacobiSVD<Matrix> svd(R);
    CHECK(spectral_norm(R) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
}

TEST_CASE("perturbation tuples") {
    RationalMatrixFunction G = scalar_example();
    PerturbationTuple dG = PerturbationTuple::zeros(G);
    REQUIRE(dG.deltas_poly.size() == 2);
    REQUIRE(dG.deltas_terms.size() == 1);
    dG.deltas_poly[0] = scalar(Cplx(2.0));
    dG.deltas_terms[0] = scalar(Cplx(0.0, 1.0));
    CHECK(dG.norm_2inf() == doctest::Approx(2.0));
    // dG(2) = 2 + i * w(2) = 2 + 0.5 i
    CHECK(std::abs(dG.eval(G, Cplx(2.0))(0, 0) - Cplx(2.0, 0.5)) < 1e-15);
    PerturbationTuple half = dG.scaled(0.5);
    CHECK(std::abs(half.eval(G, Cplx(2.0))(0, 0) - Cplx(1.0, 0.25)) < 1e-15);

    RationalMatrixFunction Gp = perturbed(G, dG, 0.1);
    CHECK(std::abs(Gp.eval(Cplx(2.0))(0, 0) - (G.eval(Cplx(2.0))(0, 0) + Cplx(0.2, 0.05))) <
          1e-14);
}
