#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rmf/io.hpp"
#include "rmf/structure.hpp"

using namespace rmf;

TEST_CASE("problem files round-trip byte for byte") {
    GenerateParams p;
    p.n = 4;
    p.d = 2;
    p.m = 2;
    p.seed = 12;
    p.structure = StructureTag::TPalindromic;
    RationalMatrixFunction G = generate_example("random_structured", p);

    std::string text1 = problem_to_text(G);
    RationalMatrixFunction G2 = parse_problem_text(text1);
    std::string text2 = problem_to_text(G2);
    CHECK(text1 == text2);

    REQUIRE(G2.poly.size() == G.poly.size());
    for (size_t k = 0; k < G.poly.size(); ++k)
        CHECK((G2.poly[k] - G.poly[k]).norm() == 0.0);
    REQUIRE(G2.terms.size() == G.terms.size());
    for (size_t j = 0; j < G.terms.size(); ++j) {
        CHECK(G2.terms[j].first.s == G.terms[j].first.s);
        CHECK(G2.terms[j].first.q == G.terms[j].first.q);
        CHECK((G2.terms[j].second - G.terms[j].second).norm() == 0.0);
    }
    CHECK(G2.declared_structure == G.declared_structure);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_problem_text("not json at all"), ParseError);
    CHECK_THROWS_AS(parse_problem_text("{}"), ParseError);

    // non-square coefficient
    CHECK_THROWS_AS(parse_problem_text(R"({
        "n": 2, "d": 0,
        "poly": [[[[1, 0], [0, 0]]]]})"),
                    DimensionMismatch);

    // coefficient size disagrees with the declared n
    CHECK_THROWS_AS(parse_problem_text(R"({
        "n": 2, "d": 0,
        "poly": [[[[1, 0]]]]})"),
                    DimensionMismatch);

    // identically zero denominator
    CHECK_THROWS_AS(parse_problem_text(R"({
        "n": 1, "d": 1,
        "poly": [[[[1, 0]]], [[[1, 0]]]],
        "rational": [{"s": [[1, 0]], "q": [[0, 0]], "E": [[[1, 0]]]}]})"),
                    ParseError);

    // unknown structure name
    CHECK_THROWS_AS(parse_problem_text(R"({
        "n": 1, "d": 0, "structure": "bogus",
        "poly": [[[[1, 0]]]]})"),
                    ParseError);

    CHECK_THROWS_AS(parse_problem("/nonexistent/path/problem.json"), ParseError);
}

TEST_CASE("generators produce what they claim") {
    GenerateParams p;
    p.n = 6;
    p.seed = 4;

    RationalMatrixFunction fs = generate_example("fluid_structure", p);
    CHECK(fs.n() == 6);
    CHECK(fs.degree() == 2);
    CHECK(fs.n_terms() == 1);
    CHECK(validate_structure(fs, StructureTag::Symmetric).ok);
    CHECK(fs.declared_structure == StructureTag::Symmetric);

    p.m = 2;
    RationalMatrixFunction sol = generate_example("fluid-solid", p);
    CHECK(sol.degree() == 1);
    CHECK(sol.n_terms() == 2);
    CHECK(validate_structure(sol, StructureTag::Symmetric).ok);
    auto poles = sol.pole_candidates();
    REQUIRE(poles.size() == 2);
    std::sort(poles.begin(), poles.end(),
              [](Cplx a, Cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(poles[0] - Cplx(1.0)) < 1e-10);
    CHECK(std::abs(poles[1] - Cplx(2.0)) < 1e-10);
    // coupling residues have the requested (default) rank
    for (const auto& [w, E] : sol.terms) {
        Eigen::JacobiSVD<Matrix> svd(E);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
        CHECK(rank == 2);
    }

    p.d = 3;
    p.m = 2;
    RationalMatrixFunction lr = generate_example("loaded_random", p);
    CHECK(lr.degree() == 3);
    CHECK(lr.n_terms() == 2);

    GenerateParams bad = p;
    bad.ranks = {99};
    CHECK_THROWS_AS(generate_example("fluid_solid", bad), BadParams);
    CHECK_THROWS_AS(generate_example("no-such-example", p), BadParams);
}

TEST_CASE("generation is deterministic in the seed") {
    GenerateParams p;
    p.n = 5;
    p.d = 2;
    p.m = 1;
    p.seed = 77;
    p.structure = StructureTag::Hermitian;
    std::string a = problem_to_text(generate_example("random_structured", p));
    std::string b = problem_to_text(generate_example("random_structured", p));
    CHECK(a == b);
    p.seed = 78;
    std::string c = problem_to_text(generate_example("random_structured", p));
    CHECK(a != c);
}

TEST_CASE("report rendering") {
    AnalysisReport rep;
    rep.problem = "demo";
    rep.tag = StructureTag::Symmetric;
    std::string table = render_report(rep, false);
    CHECK(table.find("lambda") != std::string::npos);

    EigenRecord r;
    r.triplet.lambda = Cplx(2.0, 0.0);
    r.triplet.x = Vector::Ones(1);
    r.triplet.y = Vector::Ones(1);
    r.triplet.derivative_scalar = Cplx(0.75);
    r.kappa = 14.0 / 3.0;
    rep.rows.push_back(r);
    std::string json1 = render_report(rep, true);
    std::string json2 = render_report(rep, true);
    CHECK(json1 == json2);
    CHECK(json1.find("4.66") != std::string::npos);
    CHECK(json1.find("\"problem\"") != std::string::npos);
}
