#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coarse_ends {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedElement : public Error {
public:
    using Error::Error;
};

// Thrown when window generation outgrows the memory cap. radius_reached is
// the largest radius whose ball was fully enumerated before the cap hit.
class BallTooLarge : public Error {
public:
    BallTooLarge(std::int64_t radius_reached, std::size_t cap)
        : Error("ball exceeds memory cap of " + std::to_string(cap) +
                " elements; complete up to radius " + std::to_string(radius_reached)),
          radius_reached(radius_reached),
          cap(cap) {}
    std::int64_t radius_reached;
    std::size_t cap;
};

class InvalidRadii : public Error {
public:
    using Error::Error;
};

class PointOutsideWindow : public Error {
public:
    using Error::Error;
};

class NotUltrametric : public Error {
public:
    explicit NotUltrametric(std::array<std::size_t, 3> triple)
        : Error("ultrametric inequality fails on triple (" + std::to_string(triple[0]) + ", " +
                std::to_string(triple[1]) + ", " + std::to_string(triple[2]) + ")"),
          witness(triple) {}
    std::array<std::size_t, 3> witness;
};

// index is 1-based, matching the numbering of the input families.
class PreconditionViolated : public Error {
public:
    PreconditionViolated(std::size_t index, const std::string& what)
        : Error("precondition violated at index " + std::to_string(index) + ": " + what),
          index(index) {}
    std::size_t index;
};

class CertificationFailed : public Error {
public:
    CertificationFailed(std::size_t branch, const std::string& what)
        : Error("branch " + std::to_string(branch) + " failed certification: " + what),
          branch(branch) {}
    std::size_t branch;
};

class EmptyAlgebra : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::size_t line = 0)
        : Error(line ? "config line " + std::to_string(line) + ": " + what : "config: " + what),
          line(line) {}
    std::size_t line;
};

}  // namespace coarse_ends
