#pragma once

#include <stdexcept>
#include <string>

namespace sdpoly
{

// Operands of a binary series operation disagree on truncation order or w-cap.
class OrderMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Inversion requested for a series whose constant term is zero or involves w.
class NotAUnit : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A request that would exceed a configured resource ceiling (oracle size).
class ResourceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A numerical procedure could not reach a trustworthy answer.
class Inconclusive : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An invariant the code relies on was violated. Always a bug.
class InternalError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace sdpoly
