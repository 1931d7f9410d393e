#pragma once

#include <stdexcept>
#include <string>

namespace kh {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class OverlapError : public Error {
public:
    using Error::Error;
};

class TagError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

// Bisection depth cap hit: the gauge demands cells below the honored floor
// somewhere, typically at a point the dyadic splits cannot reach.
class DepthExceeded : public Error {
public:
    using Error::Error;
};

class NonFiniteSample : public Error {
public:
    NonFiniteSample(const std::string& what, double at) : Error(what), at_(at) {}
    double at() const { return at_; }

private:
    double at_ = 0.0;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class DegenerateOperator : public Error {
public:
    using Error::Error;
};

class NotIncreasing : public Error {
public:
    using Error::Error;
};

class EndpointMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_ = 0;
};

class EvalError : public Error {
public:
    using Error::Error;
};

}  // namespace kh
