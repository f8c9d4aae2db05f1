#pragma once

#include <stdexcept>
#include <string>

namespace deldil {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a geometric precondition (collinear triple, point inside a
// circle that needs an exterior point, coincident points, ...).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// A triangulation that is not structurally a triangulation of the point set.
// Distinct from "valid structure but not Delaunay".
class MalformedTriangulation : public Error {
public:
    using Error::Error;
};

// Parameter record outside its documented domain.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// Iterative search (root finding, perturbation, rejection sampling) gave up.
class SearchFailed : public Error {
public:
    using Error::Error;
};

} // namespace deldil
