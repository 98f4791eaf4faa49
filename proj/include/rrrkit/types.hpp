#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace rrrkit {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

template <class Scalar>
using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVec = Vec<Real>;
using RealMat = Mat<Real>;
using ComplexVec = Vec<Complex>;
using ComplexMat = Mat<Complex>;

enum class Field { Real, Complex };

template <class Scalar>
inline constexpr Field field_of = Field::Real;
template <>
inline constexpr Field field_of<Complex> = Field::Complex;

inline std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

/// phase(v) = v/|v| with the convention phase(0) = 0; over the reals this is
/// the sign function with sign(0) = 0.
inline Real phase(Real v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

inline Complex phase(const Complex& v) {
  const Real a = std::abs(v);
  return a == 0.0 ? Complex{0.0, 0.0} : v / a;
}

/// A value broke a model invariant; carries the name of the offending field.
class validation_error : public std::runtime_error {
 public:
  validation_error(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed serialized input; offset is the byte position when known, 0 otherwise.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A derivative was requested at a point with a zero coordinate, where the
/// magnitude projector is not differentiable; carries the coordinate index.
class sign_boundary_error : public std::domain_error {
 public:
  sign_boundary_error(const std::string& what, Index coordinate)
      : std::domain_error(what + " (coordinate " + std::to_string(coordinate) + ")"),
        coordinate_(coordinate) {}
  Index coordinate() const noexcept { return coordinate_; }

 private:
  Index coordinate_;
};

/// A constructive procedure (solution sampling, certificate building) could
/// not satisfy its requested output.
class construction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rrrkit
