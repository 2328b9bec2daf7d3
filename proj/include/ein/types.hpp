#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ein {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;

// Exit code mapping in the CLI: usage 1, domain 2, numeric 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateError : DomainError {
  using DomainError::DomainError;
};
struct NotGenericError : DomainError {
  using DomainError::DomainError;
};
struct ConsistencyError : NumericError {
  using NumericError::NumericError;
};

}  // namespace ein
