#pragma once

#include <stdexcept>
#include <string>

namespace crackforge {

// Base of every error the library throws.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

class InvalidArgument : public Error
{
public:
    using Error::Error;
};

class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

// Raised when a covariance window holds fewer than two crack pixels.
class OrientationUndefined : public Error
{
public:
    using Error::Error;
};

// Raised when a thickness statistic has no foreground (or no background) to measure.
class UndefinedThickness : public Error
{
public:
    using Error::Error;
};

} // namespace crackforge
