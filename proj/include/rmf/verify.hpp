#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rmf/conditioning.hpp"
#include "rmf/core.hpp"
#include "rmf/eigensolve.hpp"
#include "rmf/mapping.hpp"

namespace rmf {

struct SupOracleResult {
    double value = 0.0;
    int grid_points = 0;
    double argmax_phase = 0.0;
    enum class Method { Grid, Sampling } method = Method::Grid;
};

// One convex range contributing to the supremum: either an ellipse range
// scaled by a complex coefficient, or a transpose/adjoint-mirrored coefficient
// pair whose joint range has support sqrt(p + q cos(2 psi + delta)).
struct OracleTerm {
    bool is_pair = false;
    Cplx coeff;       // ellipse terms
    MSParams ms;
    double p = 0.0, q = 0.0, delta = 0.0;  // pair terms

    static OracleTerm ellipse(Cplx z, MSParams m);
    static OracleTerm transpose_pair(Cplx a, Cplx b, Cplx xty);
    static OracleTerm adjoint_pair(Cplx a, Cplx b, Cplx ystarx);

    double support(double psi) const;
};

SupOracleResult sup_oracle_grid(const std::vector<OracleTerm>& terms, int grid_n);

// Builds the term list for the tag at (lambda, x, y) and runs the grid oracle.
// Returns the supremum of |y* DeltaG(lambda) x| over unit structured tuples.
SupOracleResult sup_oracle_structured(const RationalMatrixFunction& G, const Eigentriplet& t,
                                      StructureTag tag, int grid_n = 4096);

std::vector<OracleTerm> oracle_terms(const RationalMatrixFunction& G, const Eigentriplet& t,
                                     StructureTag tag);

// Monte-Carlo estimate of kappa^S: max over random unit structured tuples of
// |y* DeltaG(lambda) x| / |y* G'(lambda) x|.
SupOracleResult sup_oracle_sampling(const RationalMatrixFunction& G, const Eigentriplet& t,
                                    StructureTag tag, int n_samples, std::uint64_t seed);

PerturbationTuple random_structured_tuple(const RationalMatrixFunction& G, StructureTag tag,
                                          std::mt19937_64& rng);

// Extremal tuple of norm eps attaining the formula numerator. Supported for
// Unstructured, Symmetric, SkewSymmetric, TEven, TOdd.
PerturbationTuple worst_case_perturbation(const RationalMatrixFunction& G, const Eigentriplet& t,
                                          StructureTag tag, double eps);

struct SlopeReport {
    std::vector<double> eps_list;
    std::vector<Cplx> predicted_shifts;
    std::vector<Cplx> actual_shifts;
    double remainder_slope = 0.0;
    bool exact_match = false;  // remainders at rounding level, slope undefined
};

SlopeReport first_order_experiment(const RationalMatrixFunction& G, const Eigentriplet& t,
                                   const PerturbationTuple& dG_unit,
                                   const std::vector<double>& eps_list);

} // namespace rmf
