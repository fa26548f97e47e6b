// Exception types shared by every qcf module.

#ifndef QCF_ERRORS_HPP
#define QCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcf
{

/// Argument outside the mathematical domain of the function.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// An iterative method (series, Newton, AGM) failed to reach its tolerance.
class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Result not representable in the floating-point type.
class OverflowError : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

/// Requested quantity has no known formula in the given dimension.
class UnsupportedDimension : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail
{

[[noreturn]] inline void domain_fail(const std::string &where, const std::string &what)
{
    throw DomainError(where + ": " + what);
}

} // namespace detail

} // namespace qcf

#endif
