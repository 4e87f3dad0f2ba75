#pragma once

#include <string>
#include <vector>

#include "rmf/core.hpp"

namespace rmf {

enum class Parity { Odd, Even, Neither };
enum class ConjClass { Symmetric, Antisymmetric, Neither };
enum class AltConjClass { Even, Odd, Neither };

// Algebraic classification of a scalar weight, relative to polynomial degree d
// for the palindromicity flags.
struct WeightClass {
    Parity parity = Parity::Neither;            // w(-z) = -w(z) / w(z)
    ConjClass conj = ConjClass::Neither;        // w(z)* = w(conj z) / -w(conj z)
    AltConjClass alt_conj = AltConjClass::Neither;  // (w(-z))* = +-w(conj z)
    bool pal_T = false;                         // w(z) = z^d w(1/z)
    bool pal_star = false;                      // (w(z))* = conj(z)^d w(1/conj z)
};

struct StructureReport {
    StructureTag tag = StructureTag::Unstructured;
    bool ok = false;
    std::vector<double> matrix_residuals;                      // per coefficient slot
    std::vector<std::pair<int, std::string>> weight_violations;  // (term index, condition)
    bool degree_deficient = false;
};

enum class TransformMode { RotateZ, ScaleI, RotateAndScale };

WeightClass classify_weight(const Weight& w, int d);

StructureReport validate_structure(const RationalMatrixFunction& G, StructureTag tag,
                                   double tol = 1e-10);

// All tags (other than Unstructured) the input satisfies.
std::vector<StructureTag> detect_structures(const RationalMatrixFunction& G,
                                            double tol = 1e-10);

// RotateZ: G(iz); ScaleI: iG(z); RotateAndScale: iG(iz).
RationalMatrixFunction transform_rmf(const RationalMatrixFunction& G, TransformMode mode);

std::string tag_name(StructureTag tag);
StructureTag tag_from_name(const std::string& name);

} // namespace rmf
