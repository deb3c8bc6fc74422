#ifndef SQG_ERRORS_HPP
#define SQG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sqg {

// Bad user input: config file contents, CLI flags, out-of-domain parameters.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// File-format or filesystem failures (snapshots, reports).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// NaN or runaway growth detected during time stepping. Carries the simulation
// time at which the problem was detected (negative if unknown).
class BlowupError : public std::runtime_error {
public:
    BlowupError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

// Requested step size violates the advective CFL policy. Carries the largest
// admissible step so the caller can retry.
class CflError : public std::runtime_error {
public:
    CflError(const std::string& what, double admissible_dt)
        : std::runtime_error(what), admissible_dt_(admissible_dt) {}
    double admissible_dt() const { return admissible_dt_; }

private:
    double admissible_dt_;
};

}  // namespace sqg

#endif
