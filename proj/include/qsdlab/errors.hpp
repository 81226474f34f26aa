#pragma once

#include <stdexcept>
#include <string>

namespace qsdlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A state component left the finite range during integration.
struct NumericalBlowup : Error {
    double time;
    explicit NumericalBlowup(double t, const std::string& what)
        : Error(what + " (t = " + std::to_string(t) + ")"), time(t) {}
};

/// Series or noise paths tabulated on incompatible time lattices.
struct GridMismatch : Error {
    using Error::Error;
};

/// Eigenvalues closer than the degeneracy tolerance.
struct DegenerateSpectrum : Error {
    using Error::Error;
};

/// Matrix has no complete eigenbasis.
struct NotDiagonalizable : Error {
    using Error::Error;
};

/// Invalid model, correlation, or grid parameters.
struct InvalidSpec : Error {
    using Error::Error;
};

/// Density matrix fails Hermiticity/positivity/trace requirements.
struct InvalidDensity : Error {
    using Error::Error;
};

}  // namespace qsdlab
