// Exception types shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace brach {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (negative radius, latitude past a pole, rho above the surface, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid argument (too few samples, empty path, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Evaluation at or below the turning radius, where the slope diverges.
class SingularityError : public DomainError {
public:
    SingularityError(const std::string& what, double rho)
        : DomainError(what), rho_(rho) {}
    double rho() const noexcept { return rho_; }

private:
    double rho_;
};

/// Adaptive quadrature ran out of subdivisions.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double worst_lo, double worst_hi,
                 double worst_error)
        : Error(what), worst_lo_(worst_lo), worst_hi_(worst_hi),
          worst_error_(worst_error) {}

    double worst_lo() const noexcept { return worst_lo_; }
    double worst_hi() const noexcept { return worst_hi_; }
    double worst_error() const noexcept { return worst_error_; }

private:
    double worst_lo_;
    double worst_hi_;
    double worst_error_;
};

/// Zero-length path segment where the particle is at rest (0/0 time).
class DegenerateSegmentError : public Error {
public:
    DegenerateSegmentError(const std::string& what, std::size_t segment)
        : Error(what), segment_(segment) {}
    std::size_t segment() const noexcept { return segment_; }

private:
    std::size_t segment_;
};

/// Segment of positive length lying entirely on the surface, where the
/// speed is zero everywhere: the particle never traverses it.
class InfiniteTimeError : public Error {
public:
    InfiniteTimeError(const std::string& what, std::size_t segment)
        : Error(what), segment_(segment) {}
    std::size_t segment() const noexcept { return segment_; }

private:
    std::size_t segment_;
};

/// Bead came to rest before reaching the far end of its tunnel.
class StalledTrajectoryError : public Error {
public:
    StalledTrajectoryError(const std::string& what, double tau, double arclength)
        : Error(what), tau_(tau), arclength_(arclength) {}
    double tau() const noexcept { return tau_; }
    double arclength() const noexcept { return arclength_; }

private:
    double tau_;
    double arclength_;
};

}  // namespace brach
