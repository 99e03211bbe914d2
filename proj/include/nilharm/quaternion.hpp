#pragma once

// Quaternions q = q0 + q1 i + q2 j + q3 k as 4-vectors, and their matrices.
//
// H is identified with C^2 by q = a + b j  ->  (a, conj(b)).  In these
// complex coordinates left multiplication by q is chi(q) below, and real
// coordinates (q0, q1, q2, q3) are recovered from C^2 by
// S realify(.) S with S = diag(1, 1, 1, -1).

#include <complex>

#include <Eigen/Dense>

namespace nilharm::quat {

using Quat = Eigen::Vector4d;

inline Quat mul(const Quat& p, const Quat& q) {
  return Quat(p(0) * q(0) - p(1) * q(1) - p(2) * q(2) - p(3) * q(3),
              p(0) * q(1) + p(1) * q(0) + p(2) * q(3) - p(3) * q(2),
              p(0) * q(2) - p(1) * q(3) + p(2) * q(0) + p(3) * q(1),
              p(0) * q(3) + p(1) * q(2) - p(2) * q(1) + p(3) * q(0));
}

inline Quat conj(const Quat& q) { return Quat(q(0), -q(1), -q(2), -q(3)); }

// x -> p x
inline Eigen::Matrix4d left(const Quat& p) {
  Eigen::Matrix4d m;
  m << p(0), -p(1), -p(2), -p(3),
       p(1),  p(0), -p(3),  p(2),
       p(2),  p(3),  p(0), -p(1),
       p(3), -p(2),  p(1),  p(0);
  return m;
}

// x -> x p
inline Eigen::Matrix4d right(const Quat& p) {
  Eigen::Matrix4d m;
  m << p(0), -p(1), -p(2), -p(3),
       p(1),  p(0),  p(3), -p(2),
       p(2), -p(3),  p(0),  p(1),
       p(3),  p(2), -p(1),  p(0);
  return m;
}

inline Eigen::Matrix2cd chi(const Quat& q) {
  std::complex<double> a(q(0), q(1)), b(q(2), -q(3));
  Eigen::Matrix2cd m;
  m << a, -std::conj(b), b, std::conj(a);
  return m;
}

// Inverse of chi on its image (any 2x2 block [[a, -conj b], [b, conj a]]).
inline Quat from_chi(const Eigen::Matrix2cd& m) {
  return Quat(m(0, 0).real(), m(0, 0).imag(), m(1, 0).real(), -m(1, 0).imag());
}

inline Quat unit(int axis) {
  Quat q = Quat::Zero();
  q(axis) = 1.0;
  return q;
}

}  // namespace nilharm::quat
