#pragma once

#include <stdexcept>
#include <string>

namespace bpogr {

// Bad arguments or mismatched operands supplied by a caller.
class UsageError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

// Requested feature lies outside what the library supports.
class Unsupported : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

// Internal consistency check failed. Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

// Text or JSON input could not be parsed.
class ParseError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

} // namespace bpogr
