#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmf/conditioning.hpp"
#include "rmf/core.hpp"
#include "rmf/eigensolve.hpp"

namespace rmf {

RationalMatrixFunction parse_problem(const std::string& path);
RationalMatrixFunction parse_problem_text(const std::string& text);
void write_problem(const RationalMatrixFunction& G, const std::string& path);
std::string problem_to_text(const RationalMatrixFunction& G);

struct GenerateParams {
    int n = 6;
    int d = 2;
    int m = 1;
    std::uint64_t seed = 1;
    std::optional<StructureTag> structure;
    std::vector<int> ranks;         // fluid_solid coupling ranks
    double a = 1.0;                 // fluid_structure sound speed
    double alpha = 1.0;             // fluid_structure damping denominator
    double beta = 1.0;
    std::vector<double> sigma;      // fluid_solid pole locations
};

// name: fluid_structure | fluid_solid | loaded_random | random_structured
// (hyphens accepted). Throws BadParams on invalid parameters or names.
RationalMatrixFunction generate_example(const std::string& name, const GenerateParams& p);

struct EigenRecord {
    Eigentriplet triplet;
    AssumptionReport assumptions;
    std::optional<double> kappa;
    std::optional<ConditionReport> structured;
    std::optional<double> oracle;   // grid estimate of the structured value
    std::vector<std::string> warnings;
};

struct AnalysisReport {
    std::string problem;
    std::optional<StructureTag> tag;
    std::vector<EigenRecord> rows;
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<std::string> warnings;
};

std::string render_report(const AnalysisReport& rep, bool json_format);

} // namespace rmf
