#pragma once

// Small dense 3x3 linear algebra used by every constitutive law in the
// library. Everything here is value-typed and free of global state.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <tuple>

namespace thermovisc {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o);
  Vec3& operator-=(const Vec3& o);
  Vec3& operator*=(double s);
};

Vec3 operator+(Vec3 a, const Vec3& b);
Vec3 operator-(Vec3 a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(double s, Vec3 a);
Vec3 operator*(Vec3 a, double s);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// General 3x3 matrix, row-major.
struct Mat3 {
  std::array<double, 9> a{};

  static Mat3 zero() { return Mat3{}; }
  static Mat3 identity();
  static Mat3 diag(double d0, double d1, double d2);
  static Mat3 from_rows(const std::array<std::array<double, 3>, 3>& rows);
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);
  static Mat3 outer(const Vec3& u, const Vec3& w);

  constexpr double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

  Vec3 column(std::size_t j) const;
  Vec3 row(std::size_t i) const;
  void set_column(std::size_t j, const Vec3& c);

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  Mat3& operator*=(double s);
};

Mat3 operator+(Mat3 a, const Mat3& b);
Mat3 operator-(Mat3 a, const Mat3& b);
Mat3 operator-(const Mat3& a);
Mat3 operator*(double s, Mat3 a);
Mat3 operator*(Mat3 a, double s);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);

Mat3 transpose(const Mat3& m);
double trace(const Mat3& m);
double det(const Mat3& m);
Mat3 cofactor(const Mat3& m);
/// Throws Error(InvalidArgument) when |det| is zero.
Mat3 inverse(const Mat3& m);
Mat3 inverse_transpose(const Mat3& m);
/// Frobenius inner product M:N = tr(M^T N).
double ddot(const Mat3& m, const Mat3& n);
double fro_norm(const Mat3& m);
double max_abs(const Mat3& m);
bool all_finite(const Mat3& m);
Mat3 skew_part(const Mat3& m);
/// Matrix exponential by scaling and squaring of a Taylor polynomial.
Mat3 expm(const Mat3& m);
/// Skew matrix W with W x = w x x (cross product).
Mat3 hat(const Vec3& w);

/// Symmetric 3x3 matrix stored by its six independent entries
/// (xx, yy, zz, xy, yz, xz).
struct Sym3 {
  std::array<double, 6> s{};

  static Sym3 zero() { return Sym3{}; }
  static Sym3 identity();
  static Sym3 diag(double d0, double d1, double d2);
  /// Symmetric part of a general matrix.
  static Sym3 sym_of(const Mat3& m);

  double operator()(std::size_t i, std::size_t j) const;
  Mat3 to_mat() const;

  Sym3& operator+=(const Sym3& o);
  Sym3& operator-=(const Sym3& o);
  Sym3& operator*=(double s);
};

Sym3 operator+(Sym3 a, const Sym3& b);
Sym3 operator-(Sym3 a, const Sym3& b);
Sym3 operator*(double s, Sym3 a);
Vec3 operator*(const Sym3& a, const Vec3& x);
double trace(const Sym3& m);
double det(const Sym3& m);
double ddot(const Sym3& m, const Sym3& n);
double fro_norm(const Sym3& m);
Sym3 square(const Sym3& m);

/// (Sym(M), Skew(M)); their sum reconstructs M exactly.
std::pair<Sym3, Mat3> sym_skew(const Mat3& m);

/// (tr B, tr cof B, det B).
std::tuple<double, double, double> principal_invariants(const Sym3& b);

/// Eigen decomposition of a symmetric matrix: ascending eigenvalues and a
/// right-handed orthonormal basis of eigenvectors stored as columns.
struct SymEigen {
  std::array<double, 3> values{};
  Mat3 vectors = Mat3::identity();
};

SymEigen sym_eigen(const Sym3& b);
/// Cyclic Jacobi rotations; used as the fallback inside sym_eigen and
/// exposed for cross-checking.
SymEigen sym_eigen_jacobi(const Sym3& b);

inline constexpr double kDefaultDistinctnessTol = 1e-8;

/// sign(prod_i K.v_i) over the ascending right-handed eigenbasis of B when
/// the spectrum of B is simple (pairwise gaps > tol*||B||), else 0.
/// Throws Error(NotPositiveDefinite) for non positive definite B.
int heat_signature(const Sym3& b, const Vec3& k, double distinctness_tol = kDefaultDistinctnessTol);

/// Throws Error(NotPositiveDefinite) unless all eigenvalues of b are > 0.
void require_positive_definite(const Sym3& b, const char* what);

/// Deformation gradient: a Mat3 whose determinant is strictly positive.
class DefGrad {
 public:
  /// Throws Error(NonPositiveDeterminant) when det m <= 0 or m is not finite.
  explicit DefGrad(const Mat3& m);
  static DefGrad identity() { return DefGrad(Mat3::identity()); }

  const Mat3& mat() const noexcept { return m_; }
  double det() const noexcept { return det_; }
  operator const Mat3&() const noexcept { return m_; }

 private:
  Mat3 m_;
  double det_;
};

std::ostream& operator<<(std::ostream& os, const Vec3& v);
std::ostream& operator<<(std::ostream& os, const Mat3& m);

}  // namespace thermovisc
