#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmf/core.hpp"
#include "rmf/eigensolve.hpp"

namespace rmf {

enum class EqualityReason {
    OrthoT,           // x^T y = 0
    OrthoStar,        // x* y = 0
    RealLambda,
    ImagLambda,
    PosRealLambda,
    WeightRealAtZero,
    WeightImagAtZero,
    XoEmpty,          // no odd-parity contribution
    XeEmpty,          // no even-parity contribution
    PalStarAngle,     // arg(w_j) - (d/2) arg(lambda) in pi Z
    Always,
    None,
};

enum class EqualityState { Yes, No, Unknown };

struct EqualityVerdict {
    EqualityState state = EqualityState::Unknown;
    EqualityReason reason = EqualityReason::None;
    bool holds() const { return state == EqualityState::Yes; }
};

struct Factors {
    std::optional<double> c, beta, gamma, B1, B2;
};

struct ConditionReport {
    StructureTag tag = StructureTag::Unstructured;
    double kappa = 0.0;
    double alpha = 0.0;
    bool exact = false;     // structured value known exactly
    double lo = 0.0;        // lo == hi == value when exact
    double hi = 0.0;
    Factors factors;
    EqualityVerdict equality;
    std::vector<std::string> warnings;
};

std::string reason_name(EqualityReason r);

double alpha_weight_sum(const RationalMatrixFunction& G, Cplx lambda);

double kappa_unstructured(const RationalMatrixFunction& G, const Eigentriplet& t);

Factors structure_factors(const RationalMatrixFunction& G, const Eigentriplet& t,
                          StructureTag tag);

ConditionReport kappa_structured(const RationalMatrixFunction& G, const Eigentriplet& t,
                                 StructureTag tag);

EqualityVerdict equality_predicate(const RationalMatrixFunction& G, const Eigentriplet& t,
                                   StructureTag tag);

// |lambda| below the floating-point zero threshold relative to the coefficients.
bool lambda_is_zero(const RationalMatrixFunction& G, Cplx lambda);

// The Hermitian problem equivalent to (G, t) under the given tag:
// SkewHermitian -> (iG, lambda); StarEven -> (G(iz), lambda/i);
// StarOdd -> (iG(iz), lambda/i). Eigenvectors are unchanged.
std::pair<RationalMatrixFunction, Eigentriplet> hermitian_delegate(
    const RationalMatrixFunction& G, const Eigentriplet& t, StructureTag tag);

} // namespace rmf
