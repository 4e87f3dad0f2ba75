#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rmf/conditioning.hpp"
#include "rmf/io.hpp"
#include "rmf/structure.hpp"

using namespace rmf;

namespace {

Matrix scalar(Cplx v) {
    Matrix A(1, 1);
    A(0, 0) = v;
    return A;
}

RationalMatrixFunction scalar_example() {
    std::vector<Matrix> P{scalar(-2.5), scalar(1.0)};
    std::vector<std::pair<Weight, Matrix>> terms;
    terms.emplace_back(Weight({Cplx(1.0)}, {Cplx(0.0), Cplx(1.0)}), scalar(1.0));
    return RationalMatrixFunction(std::move(P), std::move(terms));
}

std::mt19937_64 rng(99);

Vector random_unit(int n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Cplx(g(rng), g(rng));
    return v / v.norm();
}

Eigentriplet synthetic(Cplx lambda, const Vector& x, const Vector& y) {
    Eigentriplet t;
    t.lambda = lambda;
    t.x = x;
    t.y = y;
    t.derivative_scalar = Cplx(1.0);
    return t;
}

RationalMatrixFunction make_structured(StructureTag tag, int n, int d, int m,
                                       std::uint64_t seed) {
    GenerateParams p;
    p.n = n;
    p.d = d;
    p.m = m;
    p.seed = seed;
    p.structure = tag;
    return generate_example("random_structured", p);
}

} // namespace

TEST_CASE("weighted coefficient sum") {
    RationalMatrixFunction G = scalar_example();
    // 1 + |2| + |1/2| = 3.5
    CHECK(alpha_weight_sum(G, Cplx(2.0)) == doctest::Approx(3.5));
    CHECK_THROWS_AS(alpha_weight_sum(G, Cplx(0.0)), PoleError);

    RationalMatrixFunction D({scalar(1.0), scalar(0.0), scalar(1.0)}, {});
    CHECK(alpha_weight_sum(D, Cplx(0.0, 1.0)) == doctest::Approx(3.0));
    RationalMatrixFunction C({scalar(1.0)}, {});
    CHECK(alpha_weight_sum(C, Cplx(0.0)) == doctest::Approx(1.0));
}

TEST_CASE("unstructured condition number hand values") {
    RationalMatrixFunction G = scalar_example();
    auto eigs = solve_all(G);
    REQUIRE(eigs.size() == 2);
    // kappa(2) = 3.5 / 0.75 = 14/3
    CHECK(kappa_unstructured(G, eigs[1]) == doctest::Approx(14.0 / 3.0).epsilon(1e-12));

    // G(z) = z - 1: kappa(1) = (1 + 1) / 1 = 2
    RationalMatrixFunction L({scalar(-1.0), scalar(1.0)}, {});
    auto le = solve_all(L);
    REQUIRE(le.size() == 1);
    CHECK(kappa_unstructured(L, le[0]) == doctest::Approx(2.0).epsilon(1e-12));

    // a derivative below the simplicity threshold throws
    RationalMatrixFunction D({scalar(1.0), scalar(-2.0), scalar(1.0)}, {});
    Eigentriplet t = synthetic(Cplx(1.0), Vector::Ones(1), Vector::Ones(1));
    t.derivative_scalar = Cplx(0.0);
    CHECK_THROWS_AS(kappa_unstructured(D, t), NotSimpleError);
}

TEST_CASE("structured factors on constructed cases") {
    // real x = y makes the bilinear pairing 1, so c = 0
    Vector e1 = Vector::Zero(2);
    e1(0) = 1.0;

    // T-even, d = 1, m = 0, lambda = 1: beta = (1 + c)/2 = 1/2 at c = 0
    Matrix A0 = Matrix::Identity(2, 2);
    Matrix A1 = Matrix::Zero(2, 2);
    A1(0, 1) = Cplx(1.0);
    A1(1, 0) = Cplx(-1.0);
    RationalMatrixFunction G({A0, A1}, {});
    Eigentriplet t = synthetic(Cplx(1.0), e1, e1);
    Factors f = structure_factors(G, t, StructureTag::TEven);
    REQUIRE(f.c);
    REQUIRE(f.beta);
    CHECK(*f.c == doctest::Approx(0.0));
    CHECK(*f.beta == doctest::Approx(0.5));
    // gamma swaps the parity weighting: (c*1 + 1)/2 = 1/2 as well here
    f = structure_factors(G, t, StructureTag::TOdd);
    REQUIRE(f.gamma);
    CHECK(*f.gamma == doctest::Approx(0.5));

    // T-palindromic, d = 2, m = 0, lambda = 1: B1 = |1 + 1| + c|1 - 1| + 1 = 3
    RationalMatrixFunction P({A0, Matrix::Identity(2, 2), A0}, {});
    f = structure_factors(P, t, StructureTag::TPalindromic);
    REQUIRE(f.B1);
    CHECK(*f.B1 == doctest::Approx(3.0));
    // star-palindromic B2 drops the c weighting entirely
    f = structure_factors(P, t, StructureTag::StarPalindromic);
    REQUIRE(f.B2);
    CHECK(*f.B2 == doctest::Approx(3.0));
}

TEST_CASE("t-even exact value at a constructed point") {
    // d = 2, m = 0, lambda = i, x, y with |x^T y| = s gives
    // kappa^S = (even part + c * odd part) / alpha * kappa.
    RationalMatrixFunction G = make_structured(StructureTag::TEven, 4, 2, 0, 21);
    Vector x = random_unit(4), y = random_unit(4);
    Eigentriplet t = synthetic(Cplx(0.0, 1.0), x, y);
    Cplx h = x.transpose() * y;
    double c = std::sqrt(std::max(0.0, 1.0 - std::norm(h)));
    ConditionReport rep = kappa_structured(G, t, StructureTag::TEven);
    CHECK(rep.exact);
    double alpha = 3.0;  // 1 + |i| + |i|^2
    CHECK(rep.kappa == doctest::Approx(alpha).epsilon(1e-12));  // derivative scalar 1
    CHECK(rep.lo == doctest::Approx((2.0 + c) / 3.0 * rep.kappa).epsilon(1e-12));
    CHECK(rep.lo == rep.hi);
}

TEST_CASE("symmetric and skew-symmetric structured values") {
    RationalMatrixFunction S = make_structured(StructureTag::Symmetric, 4, 2, 1, 23);
    Vector x = random_unit(4), y = random_unit(4);
    Eigentriplet t = synthetic(Cplx(0.4, 0.3), x, y);
    ConditionReport rep = kappa_structured(S, t, StructureTag::Symmetric);
    CHECK(rep.exact);
    CHECK(rep.lo == doctest::Approx(rep.kappa).epsilon(1e-14));
    CHECK(rep.equality.holds());
    CHECK(rep.equality.reason == EqualityReason::Always);

    RationalMatrixFunction K = make_structured(StructureTag::SkewSymmetric, 4, 2, 1, 29);
    rep = kappa_structured(K, t, StructureTag::SkewSymmetric);
    CHECK(rep.exact);
    REQUIRE(rep.factors.c);
    CHECK(rep.lo == doctest::Approx(*rep.factors.c * rep.kappa).epsilon(1e-12));
}

TEST_CASE("hermitian family intervals and dominance") {
    for (StructureTag tag : {StructureTag::Hermitian, StructureTag::SkewHermitian,
                             StructureTag::StarEven, StructureTag::StarOdd,
                             StructureTag::StarPalindromic, StructureTag::TPalindromic}) {
        for (int rep_i = 0; rep_i < 10; ++rep_i) {
            int d = 1 + rep_i % 3;
            RationalMatrixFunction G = make_structured(tag, 4, d, 1, 31 + rep_i);
            Vector x = random_unit(4), y = random_unit(4);
            Cplx lam(0.8 + 0.05 * rep_i, 0.3);
            Eigentriplet t = synthetic(lam, x, y);
            ConditionReport rep = kappa_structured(G, t, tag);
            INFO(tag_name(tag), " rep ", rep_i);
            CHECK(rep.lo <= rep.hi + 1e-14);
            CHECK(rep.hi <= rep.kappa * (1.0 + 1e-12));
            // The palindromic endpoints are not kappa/sqrt(2)-based, so only
            // the delegated Hermitian-family tags carry that floor.
            if (tag != StructureTag::TPalindromic && tag != StructureTag::StarPalindromic)
                CHECK(rep.lo >= rep.kappa / std::sqrt(2.0) - 1e-12 * rep.kappa);
        }
    }
}

TEST_CASE("equality characterizations") {
    // Hermitian, real simple eigenvalue: G(z) = z - 1
    RationalMatrixFunction L({scalar(-1.0), scalar(1.0)}, {});
    auto le = solve_all(L);
    REQUIRE(le.size() == 1);
    ConditionReport rep = kappa_structured(L, le[0], StructureTag::Hermitian);
    CHECK(rep.exact);
    CHECK(rep.lo == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.equality.holds());
    CHECK(rep.equality.reason == EqualityReason::RealLambda);

    // Hermitian at a nonreal eigenvalue with x = y: only the interval remains
    RationalMatrixFunction H = make_structured(StructureTag::Hermitian, 4, 2, 1, 37);
    Vector x = random_unit(4);
    ConditionReport rep2 =
        kappa_structured(H, synthetic(Cplx(2.0, 1.0), x, x), StructureTag::Hermitian);
    CHECK(!rep2.exact);
    CHECK(!rep2.equality.holds());

    // orthogonal eigenvectors force equality for the star family
    Vector e1 = Vector::Zero(4), e2 = Vector::Zero(4);
    e1(0) = 1.0;
    e2(1) = 1.0;
    rep2 = kappa_structured(H, synthetic(Cplx(2.0, 1.0), e1, e2), StructureTag::Hermitian);
    CHECK(rep2.exact);
    CHECK(rep2.equality.reason == EqualityReason::OrthoStar);

    // skew-Hermitian inherits the Hermitian rule at the same (real) lambda
    RationalMatrixFunction S = make_structured(StructureTag::SkewHermitian, 4, 2, 1, 41);
    rep2 = kappa_structured(S, synthetic(Cplx(0.7, 0.0), x, random_unit(4)),
                            StructureTag::SkewHermitian);
    CHECK(rep2.equality.holds());
    CHECK(rep2.equality.reason == EqualityReason::RealLambda);

    // star-even at purely imaginary lambda
    RationalMatrixFunction E = make_structured(StructureTag::StarEven, 4, 2, 1, 43);
    rep2 = kappa_structured(E, synthetic(Cplx(0.0, 0.9), x, random_unit(4)),
                            StructureTag::StarEven);
    CHECK(rep2.equality.holds());
    CHECK(rep2.equality.reason == EqualityReason::ImagLambda);

    // T-palindromic: even degree with real lambda
    RationalMatrixFunction P = make_structured(StructureTag::TPalindromic, 4, 2, 1, 47);
    rep2 = kappa_structured(P, synthetic(Cplx(-1.3, 0.0), random_unit(4), random_unit(4)),
                            StructureTag::TPalindromic);
    CHECK(rep2.equality.holds());
    CHECK(rep2.equality.reason == EqualityReason::RealLambda);
    // odd degree needs lambda on the positive real axis
    RationalMatrixFunction P3 = make_structured(StructureTag::TPalindromic, 4, 3, 1, 53);
    rep2 = kappa_structured(P3, synthetic(Cplx(-1.3, 0.0), random_unit(4), random_unit(4)),
                            StructureTag::TPalindromic);
    CHECK(!rep2.equality.holds());
    rep2 = kappa_structured(P3, synthetic(Cplx(1.3, 0.0), random_unit(4), random_unit(4)),
                            StructureTag::TPalindromic);
    CHECK(rep2.equality.holds());
    CHECK(rep2.equality.reason == EqualityReason::PosRealLambda);

    // star-palindromic with no weight terms: the angle condition is vacuous
    RationalMatrixFunction Q = make_structured(StructureTag::StarPalindromic, 4, 2, 0, 59);
    rep2 = kappa_structured(Q, synthetic(Cplx(0.5, 0.4), random_unit(4), random_unit(4)),
                            StructureTag::StarPalindromic);
    CHECK(rep2.equality.holds());
    CHECK(rep2.equality.reason == EqualityReason::PalStarAngle);
}

TEST_CASE("transformation consistency of the delegated tags") {
    RationalMatrixFunction S = make_structured(StructureTag::SkewHermitian, 4, 2, 1, 61);
    Vector x = random_unit(4), y = random_unit(4);
    Eigentriplet t = synthetic(Cplx(0.9, 0.0), x, y);

    auto [H, t2] = hermitian_delegate(S, t, StructureTag::SkewHermitian);
    CHECK(validate_structure(H, StructureTag::Hermitian).ok);
    CHECK(std::abs(t2.lambda - t.lambda) < 1e-14);
    ConditionReport a = kappa_structured(S, t, StructureTag::SkewHermitian);
    ConditionReport b = kappa_structured(H, t2, StructureTag::Hermitian);
    CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-12));
    CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-12));
    CHECK(a.kappa == doctest::Approx(b.kappa).epsilon(1e-12));

    RationalMatrixFunction E = make_structured(StructureTag::StarEven, 4, 2, 1, 67);
    Eigentriplet te = synthetic(Cplx(0.2, 0.7), x, y);
    auto [H2, t3] = hermitian_delegate(E, te, StructureTag::StarEven);
    CHECK(validate_structure(H2, StructureTag::Hermitian).ok);
    CHECK(std::abs(t3.lambda - te.lambda / Cplx(0.0, 1.0)) < 1e-14);
    ConditionReport c = kappa_structured(E, te, StructureTag::StarEven);
    ConditionReport d = kappa_structured(H2, t3, StructureTag::Hermitian);
    CHECK(c.lo == doctest::Approx(d.lo).epsilon(1e-12));
    CHECK(c.hi == doctest::Approx(d.hi).epsilon(1e-12));
}

TEST_CASE("structured evaluation validates the tag first") {
    RationalMatrixFunction G = make_structured(StructureTag::Symmetric, 4, 2, 1, 71);
    Eigentriplet t = synthetic(Cplx(0.5, 0.2), random_unit(4), random_unit(4));
    CHECK_THROWS_AS(kappa_structured(G, t, StructureTag::SkewSymmetric), StructureMismatch);
}
