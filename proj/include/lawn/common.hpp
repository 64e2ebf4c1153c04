#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lawn {

using Vec3 = Eigen::Vector3d;
using Positions = std::vector<Vec3>;

// splitmix64 finalizer over (seed, index): independent per-index RNG streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed scenario text. Carries the 1-based line (0 when unknown) and key.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line, std::string key)
        : Error(what), line_(line), key_(std::move(key)) {}
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Raised when a numerical routine does not reach its tolerance.
class SolverError : public Error {
public:
    using Error::Error;
};

// The throughput of robot `robot` does not exceed its entropy rate:
// f = (2/iota)(X - g) is not positive, so the rate-cost map is undefined.
class StabilityError : public Error {
public:
    StabilityError(int robot, double f);
    [[nodiscard]] int robot() const noexcept { return robot_; }
    [[nodiscard]] double margin() const noexcept { return f_; }

private:
    int robot_;
    double f_;
};

inline StabilityError::StabilityError(int robot, double f)
    : Error("assuredly-stable condition violated for robot " + std::to_string(robot) +
            " (f = " + std::to_string(f) + ")"),
      robot_(robot),
      f_(f) {}

}  // namespace lawn
