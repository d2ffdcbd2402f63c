#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("singular matrix") {}
};

// Phase point with coincident positions.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

// (p,q) -> (I,J) map not locally invertible at the point.
class SingularJacobian : public Error {
public:
    SingularJacobian() : Error("generator jacobian is singular at this point") {}
};

class SingularDenominator : public Error {
public:
    using Error::Error;
};

class ZeroD : public Error {
public:
    ZeroD() : Error("d = 0: N=3 parametrization degenerates") {}
    explicit ZeroD(const std::string& where) : Error("d = 0: N=3 parametrization degenerates at " + where) {}
};

class InconsistentX0 : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownSymbol : public Error {
public:
    using Error::Error;
};

class PowerNotInteger : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

}  // namespace cm
