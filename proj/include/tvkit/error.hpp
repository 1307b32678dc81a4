#pragma once

#include <stdexcept>
#include <string>

namespace tvkit
{
    /// Raised when an argument violates an operation's precondition
    /// (negative threshold, exponent below one, unsorted times, ...).
    class DomainError : public std::invalid_argument
    {
      public:
        using std::invalid_argument::invalid_argument;
    };

    /// Integrand and integrator jump at the same time.
    class CommonJumpError : public DomainError
    {
      public:
        using DomainError::DomainError;
    };

    /// An iterative procedure (refinement, series summation) did not reach
    /// its tolerance within the allowed budget.
    class ConvergenceError : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed CSV/JSON input.
    class FormatError : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    namespace detail
    {
        inline void require (bool condition, const std::string &message)
        {
            if (!condition)
                throw DomainError (message);
        }
    } // namespace detail

} // namespace tvkit
