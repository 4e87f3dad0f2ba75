#pragma once

#include "rmf/core.hpp"

namespace rmf {

enum class MapClass { General, Symmetric, SkewSymmetric, Hermitian, SkewHermitian };

// Ellipse parameters of the range { y* Delta x : Delta in S, ||Delta|| <= 1 },
// which equals e^{i phi} (a [-1,1] + i b [-1,1]-ish ellipse hull).
struct MSParams {
    double a = 1.0;
    double b = 1.0;
    double phi = 0.0;
};

MSParams ms_params(MapClass S, const Vector& x, const Vector& y);

// Minimal spectral-norm Delta in the class with Delta v = u. Throws
// InfeasibleError when the class's scalar feasibility condition fails.
Matrix construct_structured_map(MapClass S, const Vector& v, const Vector& u);

enum class TwoSidedMode { Star, Transpose };

// Delta with Delta v = u and Delta* v = w (Star) or Delta^T v = w (Transpose).
Matrix construct_two_sided_map(TwoSidedMode mode, const Vector& v, const Vector& u,
                               const Vector& w);

// Unit-spectral-norm Delta in the class attaining sup |y* Delta x| over the
// unit ball, with the extremal phase: y* Delta x = max(a,b) rotated onto the
// long axis of the range ellipse. x, y unit vectors.
Matrix extremal_structured(MapClass S, const Vector& x, const Vector& y);

// Mapping residual ||Delta v - u|| and structural residuals, used by tests.
double structure_residual(MapClass S, const Matrix& Delta);

} // namespace rmf
