#pragma once

#include <stdexcept>
#include <string>

namespace rmf {

// Evaluation hit a (numerical) pole of a rational weight. term_index is the
// offending rational term when known, -1 otherwise.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& msg, int term_index = -1)
        : std::runtime_error(msg), term_index(term_index) {}
    int term_index;
};

class ClassificationConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeZeroError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSimpleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StructureMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadParams : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rmf
