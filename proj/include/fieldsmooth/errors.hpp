#pragma once

#include <stdexcept>
#include <string>

namespace fieldsmooth {

struct InvalidPath : std::runtime_error {
  explicit InvalidPath(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfDomain : std::runtime_error {
  explicit OutOfDomain(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyOffset : std::runtime_error {
  explicit EmptyOffset(const std::string& msg) : std::runtime_error(msg) {}
};

struct ModelSingularity : std::runtime_error {
  explicit ModelSingularity(const std::string& msg) : std::runtime_error(msg) {}
};

struct InfeasibleReference : std::runtime_error {
  explicit InfeasibleReference(const std::string& msg) : std::runtime_error(msg) {}
};

struct StitchMismatch : std::runtime_error {
  explicit StitchMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fieldsmooth
