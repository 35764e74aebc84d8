#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace radial {

using Complex = std::complex<double>;

/// z^n by binary exponentiation; 0^0 = 1.
inline Complex ipow(Complex z, std::size_t n)
{
    Complex result{1.0, 0.0};
    while (n != 0) {
        if (n & 1U)
            result *= z;
        z *= z;
        n >>= 1U;
    }
    return result;
}

/// Default tolerance for series truncation, norm convergence and residuals.
inline constexpr double kDefaultTol = 1e-10;

/// Singular values below this fraction of the largest one are numerical noise.
inline constexpr double kSvdRankCutoff = 1e-14;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad symbol parameters, invalid words, bad configs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NonConvergent : public Error {
public:
    using Error::Error;
};

class NotInClassC : public Error {
public:
    using Error::Error;
};

class NotInClassCPrime : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when doubling a symbol whose tail constant c is non-zero. The
/// doubled sequence is 2-periodic at infinity; the parity constants
/// c1 = c2 = c/2 are carried on the exception.
class UnsupportedTail : public Error {
public:
    UnsupportedTail(Complex c1, Complex c2);

    Complex c1() const noexcept { return c1_; }
    Complex c2() const noexcept { return c2_; }

private:
    Complex c1_;
    Complex c2_;
};

} // namespace radial
