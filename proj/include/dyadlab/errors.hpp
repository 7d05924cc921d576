#pragma once

#include <stdexcept>
#include <string>

namespace dyadlab {

/// Interval index does not address a valid node of the grid.
class invalid_interval_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Operation needs the children of an interval that sits at the finest level.
class no_children_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operands live on grids of different depth.
class shape_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative solver ran out of iterations; carries the last iterate.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double last_estimate, int iterations)
        : std::runtime_error(what), last_estimate_(last_estimate), iterations_(iterations) {}

    double last_estimate() const { return last_estimate_; }
    int iterations() const { return iterations_; }

private:
    double last_estimate_;
    int iterations_;
};

} // namespace dyadlab
