#pragma once

#include <stdexcept>
#include <string>

namespace sl3trace {

// Common base so callers can catch the whole library family at once.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A matrix with zero determinant was asked for its inverse.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

// A word referenced a generator index beyond the tuple's rank.
class RankMismatchError : public Error {
public:
    using Error::Error;
};

// An operation that needs rank >= 2 was called with rank < 2.
class RankTooSmallError : public Error {
public:
    using Error::Error;
};

// Diagonalization requires three distinct eigenvalues.
class RepeatedEigenvaluesError : public Error {
public:
    using Error::Error;
};

// Exact-mode diagonalization only proceeds when the characteristic
// polynomial splits over the rationals.
class IrrationalEigenvaluesError : public Error {
public:
    using Error::Error;
};

// Gauge fixing needs nonzero (2,1) and (3,2) entries in the second matrix.
class ZeroLowerDiagonalError : public Error {
public:
    using Error::Error;
};

// The closed-form generator count failed to divide evenly. Firing would be
// a build bug, not a data error.
class NonIntegralError : public Error {
public:
    using Error::Error;
};

// Malformed word strings, tuple files or certificate files.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace sl3trace
