#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rmf/mapping.hpp"

using namespace rmf;

namespace {

const MapClass kClasses[] = {MapClass::General, MapClass::Symmetric, MapClass::SkewSymmetric,
                             MapClass::Hermitian, MapClass::SkewHermitian};

std::mt19937_64 rng(42);

Vector random_vec(int n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Cplx(g(rng), g(rng));
    return v;
}

Vector random_unit(int n) {
    Vector v = random_vec(n);
    return v / v.norm();
}

// A target u that satisfies the class's feasibility condition for v.
Vector feasible_target(MapClass S, const Vector& v) {
    Vector u = random_vec(v.size());
    switch (S) {
        case MapClass::General:
        case MapClass::Symmetric:
            return u;
        case MapClass::SkewSymmetric: {
            Cplx h = v.transpose() * u;
            return u - (h / v.squaredNorm()) * v.conjugate();
        }
        case MapClass::Hermitian: {
            Cplx h = v.dot(u) / v.squaredNorm();
            return u - Cplx(0.0, h.imag()) * v;
        }
        case MapClass::SkewHermitian: {
            Cplx h = v.dot(u) / v.squaredNorm();
            return u - Cplx(h.real()) * v;
        }
    }
    return u;
}

} // namespace

TEST_CASE("range ellipse parameters") {
    Vector x = random_unit(5), y = random_unit(5);
    MSParams p = ms_params(MapClass::General, x, y);
    CHECK(p.a == 1.0);
    CHECK(p.b == 1.0);
    p = ms_params(MapClass::Symmetric, x, y);
    CHECK(p.a == 1.0);
    CHECK(p.b == 1.0);

    // y = x collapses the Hermitian range onto the real axis
    p = ms_params(MapClass::Hermitian, x, x);
    CHECK(p.a == 1.0);
    CHECK(p.b == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(std::abs(p.phi) < 1e-12);
    // and the skew-Hermitian range onto the imaginary axis
    p = ms_params(MapClass::SkewHermitian, x, x);
    CHECK(p.a == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(p.b == 1.0);

    // skew-symmetric uses the bilinear pairing x^T y
    Vector e1 = Vector::Zero(3), e2 = Vector::Zero(3);
    e1(0) = 1.0;
    e2(1) = 1.0;
    p = ms_params(MapClass::SkewSymmetric, e1, e2);
    CHECK(p.a == doctest::Approx(1.0));
    Vector xc = e1;
    xc(0) = Cplx(0.0, 1.0);  // x^T x = -1 even though ||x|| = 1
    p = ms_params(MapClass::SkewSymmetric, xc, xc);
    CHECK(p.a == doctest::Approx(0.0));
}

TEST_CASE("one-sided maps hit the target with minimal norm") {
    for (MapClass S : kClasses) {
        for (int rep = 0; rep < 20; ++rep) {
            int n = 2 + rep % 5;
            if (S == MapClass::SkewSymmetric && n < 2) continue;
            Vector v = random_vec(n);
            Vector u = feasible_target(S, v);
            Matrix D = construct_structured_map(S, v, u);
            INFO("class ", static_cast<int>(S), " rep ", rep);
            CHECK((D * v - u).norm() <= 1e-10 * (1.0 + u.norm()));
            CHECK(structure_residual(S, D) <= 1e-12);
            // minimal spectral norm is ||u|| / ||v||
            CHECK(spectral_norm(D) <= (u.norm() / v.norm()) * (1.0 + 1e-8));
        }
    }
}

TEST_CASE("one-sided feasibility conditions") {
    Vector e1 = Vector::Zero(3);
    e1(0) = 1.0;
    CHECK_THROWS_AS(construct_structured_map(MapClass::SkewSymmetric, e1, e1), InfeasibleError);
    Vector iu = Cplx(0.0, 1.0) * e1;
    CHECK_THROWS_AS(construct_structured_map(MapClass::Hermitian, e1, iu), InfeasibleError);
    CHECK_THROWS_AS(construct_structured_map(MapClass::SkewHermitian, e1, e1), InfeasibleError);
    CHECK_THROWS_AS(construct_structured_map(MapClass::General, Vector::Zero(3), e1),
                    InfeasibleError);
}

TEST_CASE("two-sided maps") {
    Vector e1 = Vector::Zero(3), e2 = Vector::Zero(3);
    e1(0) = 1.0;
    e2(1) = 1.0;

    // Delta e1 = e2, Delta^T e1 = -e2 admits the skew-symmetric solution
    Matrix D = construct_two_sided_map(TwoSidedMode::Transpose, e1, e2, -e2);
    CHECK((D * e1 - e2).norm() < 1e-12);
    CHECK((D.transpose() * e1 + e2).norm() < 1e-12);

    for (int rep = 0; rep < 10; ++rep) {
        Vector v = random_vec(4);
        Vector u = random_vec(4), w = random_vec(4);
        // enforce the scalar compatibility v* u = w* v
        Cplx a = v.dot(u), b = w.dot(v);
        u -= (a - b) / v.squaredNorm() * v;
        Matrix M = construct_two_sided_map(TwoSidedMode::Star, v, u, w);
        CHECK((M * v - u).norm() <= 1e-10 * (1.0 + u.norm()));
        CHECK((M.adjoint() * v - w).norm() <= 1e-10 * (1.0 + w.norm()));
    }

    // incompatible scalar conditions throw
    CHECK_THROWS_AS(construct_two_sided_map(TwoSidedMode::Star, e1, e1, Vector(2.0 * e1)),
                    InfeasibleError);
    CHECK_THROWS_AS(construct_two_sided_map(TwoSidedMode::Transpose, e1, e1, Vector(2.0 * e1)),
                    InfeasibleError);
}

TEST_CASE("extremal members attain the range boundary") {
    for (MapClass S : kClasses) {
        for (int rep = 0; rep < 20; ++rep) {
            int n = 3 + rep % 4;
            Vector x = random_unit(n), y = random_unit(n);
            MSParams p = ms_params(S, x, y);
            double target = std::max(p.a, p.b);
            Matrix D = extremal_structured(S, x, y);
            INFO("class ", static_cast<int>(S), " rep ", rep);
            CHECK(structure_residual(S, D) <= 1e-10);
            CHECK(spectral_norm(D) <= 1.0 + 1e-8);
            CHECK(std::abs(y.dot(D * x)) >= target - 1e-8);
            // no unit member of the class can beat the ellipse radius
            CHECK(std::abs(y.dot(D * x)) <= target + 1e-8);
        }
    }
}

TEST_CASE("random members stay inside the range ellipse") {
    std::normal_distribution<double> g;
    for (MapClass S : kClasses) {
        Vector x = random_unit(4), y = random_unit(4);
        MSParams p = ms_params(S, x, y);
        for (int rep = 0; rep < 200; ++rep) {
            Matrix D(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) D(i, j) = Cplx(g(rng), g(rng));
            switch (S) {
                case MapClass::General: break;
                case MapClass::Symmetric: D = (D + D.transpose()).eval() / 2.0; break;
                case MapClass::SkewSymmetric: D = (D - D.transpose()).eval() / 2.0; break;
                case MapClass::Hermitian: D = (D + D.adjoint()).eval() / 2.0; break;
                case MapClass::SkewHermitian: D = (D - D.adjoint()).eval() / 2.0; break;
            }
            double nrm = spectral_norm(D);
            if (nrm < 1e-12) continue;
            D /= nrm;
            // rotate the value into the ellipse frame and test membership
            Cplx val = y.dot(D * x) * std::polar(1.0, -p.phi);
            double ea = (p.a > 1e-14) ? val.real() / p.a : 0.0;
            double eb = (p.b > 1e-14) ? val.imag() / p.b : 0.0;
            if (p.a <= 1e-14) CHECK(std::abs(val.real()) <= 1e-7);
            if (p.b <= 1e-14) CHECK(std::abs(val.imag()) <= 1e-7);
            CHECK(ea * ea + eb * eb <= 1.0 + 1e-7);
        }
    }
}
