#include "thermovisc/tensor3.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "thermovisc/error.hpp"

namespace thermovisc {

// ---------------------------------------------------------------- Vec3

Vec3& Vec3::operator+=(const Vec3& o) {
  for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
  return *this;
}
Vec3& Vec3::operator-=(const Vec3& o) {
  for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
  return *this;
}
Vec3& Vec3::operator*=(double s) {
  for (auto& x : v) x *= s;
  return *this;
}
Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
Vec3 operator-(const Vec3& a) { return -1.0 * a; }
Vec3 operator*(double s, Vec3 a) { return a *= s; }
Vec3 operator*(Vec3 a, double s) { return a *= s; }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3{{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------- Mat3

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double d0, double d1, double d2) {
  Mat3 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  return m;
}

Mat3 Mat3::from_rows(const std::array<std::array<double, 3>, 3>& rows) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  return m;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m;
  m.set_column(0, c0);
  m.set_column(1, c1);
  m.set_column(2, c2);
  return m;
}

Mat3 Mat3::outer(const Vec3& u, const Vec3& w) {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = u[i] * w[j];
  return m;
}

Vec3 Mat3::column(std::size_t j) const { return Vec3{{(*this)(0, j), (*this)(1, j), (*this)(2, j)}}; }
Vec3 Mat3::row(std::size_t i) const { return Vec3{{(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}}; }

void Mat3::set_column(std::size_t j, const Vec3& c) {
  for (std::size_t i = 0; i < 3; ++i) (*this)(i, j) = c[i];
}

Mat3& Mat3::operator+=(const Mat3& o) {
  for (std::size_t i = 0; i < 9; ++i) a[i] += o.a[i];
  return *this;
}
Mat3& Mat3::operator-=(const Mat3& o) {
  for (std::size_t i = 0; i < 9; ++i) a[i] -= o.a[i];
  return *this;
}
Mat3& Mat3::operator*=(double s) {
  for (auto& x : a) x *= s;
  return *this;
}
Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
Mat3 operator-(const Mat3& a) { return -1.0 * a; }
Mat3 operator*(double s, Mat3 a) { return a *= s; }
Mat3 operator*(Mat3 a, double s) { return a *= s; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
  return Vec3{{a(0, 0) * x[0] + a(0, 1) * x[1] + a(0, 2) * x[2],
               a(1, 0) * x[0] + a(1, 1) * x[1] + a(1, 2) * x[2],
               a(2, 0) * x[0] + a(2, 1) * x[1] + a(2, 2) * x[2]}};
}

Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(j, i);
  return t;
}

double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

double det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 cofactor(const Mat3& m) {
  Mat3 c;
  c(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  c(0, 1) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  c(0, 2) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  c(1, 0) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  c(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  c(1, 2) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  c(2, 0) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  c(2, 1) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  c(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return c;
}

Mat3 inverse_transpose(const Mat3& m) {
  const double d = det(m);
  if (d == 0.0 || !std::isfinite(d)) throw Error(ErrorKind::InvalidArgument, "inverse of a singular matrix");
  return (1.0 / d) * cofactor(m);
}

Mat3 inverse(const Mat3& m) { return transpose(inverse_transpose(m)); }

double ddot(const Mat3& m, const Mat3& n) {
  double s = 0.0;
  for (std::size_t i = 0; i < 9; ++i) s += m.a[i] * n.a[i];
  return s;
}

double fro_norm(const Mat3& m) { return std::sqrt(ddot(m, m)); }

double max_abs(const Mat3& m) {
  double r = 0.0;
  for (double x : m.a) r = std::max(r, std::abs(x));
  return r;
}

bool all_finite(const Mat3& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](double x) { return std::isfinite(x); });
}

Mat3 skew_part(const Mat3& m) { return 0.5 * (m - transpose(m)); }

Mat3 expm(const Mat3& m) {
  const double nrm = fro_norm(m);
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const Mat3 x = std::ldexp(1.0, -squarings) * m;
  Mat3 result = Mat3::identity();
  Mat3 term = Mat3::identity();
  for (int k = 1; k <= 18; ++k) {
    term = (1.0 / k) * (term * x);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Mat3 hat(const Vec3& w) {
  return Mat3::from_rows({{{0.0, -w[2], w[1]}, {w[2], 0.0, -w[0]}, {-w[1], w[0], 0.0}}});
}

// ---------------------------------------------------------------- Sym3

namespace {
// (i,j) -> storage slot for the (xx, yy, zz, xy, yz, xz) layout.
constexpr std::size_t kSlot[3][3] = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}};
}  // namespace

Sym3 Sym3::identity() { return diag(1.0, 1.0, 1.0); }

Sym3 Sym3::diag(double d0, double d1, double d2) {
  Sym3 m;
  m.s = {d0, d1, d2, 0.0, 0.0, 0.0};
  return m;
}

Sym3 Sym3::sym_of(const Mat3& m) {
  Sym3 r;
  r.s = {m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(1, 2) + m(2, 1)),
         0.5 * (m(0, 2) + m(2, 0))};
  return r;
}

double Sym3::operator()(std::size_t i, std::size_t j) const { return s[kSlot[i][j]]; }

Mat3 Sym3::to_mat() const {
  Mat3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Sym3& Sym3::operator+=(const Sym3& o) {
  for (std::size_t i = 0; i < 6; ++i) s[i] += o.s[i];
  return *this;
}
Sym3& Sym3::operator-=(const Sym3& o) {
  for (std::size_t i = 0; i < 6; ++i) s[i] -= o.s[i];
  return *this;
}
Sym3& Sym3::operator*=(double f) {
  for (auto& x : s) x *= f;
  return *this;
}
Sym3 operator+(Sym3 a, const Sym3& b) { return a += b; }
Sym3 operator-(Sym3 a, const Sym3& b) { return a -= b; }
Sym3 operator*(double f, Sym3 a) { return a *= f; }
Vec3 operator*(const Sym3& a, const Vec3& x) { return a.to_mat() * x; }

double trace(const Sym3& m) { return m.s[0] + m.s[1] + m.s[2]; }
double det(const Sym3& m) { return det(m.to_mat()); }

double ddot(const Sym3& m, const Sym3& n) {
  return m.s[0] * n.s[0] + m.s[1] * n.s[1] + m.s[2] * n.s[2] +
         2.0 * (m.s[3] * n.s[3] + m.s[4] * n.s[4] + m.s[5] * n.s[5]);
}

double fro_norm(const Sym3& m) { return std::sqrt(ddot(m, m)); }

Sym3 square(const Sym3& m) {
  const Mat3 x = m.to_mat();
  return Sym3::sym_of(x * x);
}

std::pair<Sym3, Mat3> sym_skew(const Mat3& m) { return {Sym3::sym_of(m), skew_part(m)}; }

std::tuple<double, double, double> principal_invariants(const Sym3& b) {
  const Mat3 m = b.to_mat();
  return {trace(m), trace(cofactor(m)), det(m)};
}

// ---------------------------------------------------------------- eigen

namespace {

void make_right_handed_ascending(SymEigen& e) {
  std::array<std::size_t, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return e.values[i] < e.values[j]; });
  SymEigen sorted;
  for (std::size_t k = 0; k < 3; ++k) {
    sorted.values[k] = e.values[idx[k]];
    Vec3 c = e.vectors.column(idx[k]);
    sorted.vectors.set_column(k, (1.0 / norm(c)) * c);
  }
  if (det(sorted.vectors) < 0.0) sorted.vectors.set_column(2, -sorted.vectors.column(2));
  e = sorted;
}

double eigen_residual(const Sym3& b, const SymEigen& e) {
  const Mat3 m = b.to_mat();
  double r = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 v = e.vectors.column(k);
    r = std::max(r, norm(m * v - e.values[k] * v));
  }
  return r;
}

// Unit null vector of (B - lambda I) from the largest cross product of its rows.
Vec3 null_vector(const Mat3& b, double lambda) {
  const Mat3 m = b - lambda * Mat3::identity();
  const Vec3 r0 = m.row(0), r1 = m.row(1), r2 = m.row(2);
  const std::array<Vec3, 3> cands{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  const Vec3* best = &cands[0];
  for (const auto& c : cands)
    if (norm(c) > norm(*best)) best = &c;
  const double n = norm(*best);
  return n > 0.0 ? (1.0 / n) * *best : Vec3{};
}

}  // namespace

SymEigen sym_eigen_jacobi(const Sym3& b) {
  Mat3 a = b.to_mat();
  Mat3 v = Mat3::identity();
  const double scale = std::max(fro_norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off <= 1e-34 * scale * scale) break;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Mat3 j = Mat3::identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = transpose(j) * a * j;
        a(p, q) = a(q, p) = 0.0;
        v = v * j;
      }
    }
  }
  SymEigen e;
  e.values = {a(0, 0), a(1, 1), a(2, 2)};
  e.vectors = v;
  make_right_handed_ascending(e);
  return e;
}

SymEigen sym_eigen(const Sym3& b) {
  const Mat3 m = b.to_mat();
  const double off = b.s[3] * b.s[3] + b.s[4] * b.s[4] + b.s[5] * b.s[5];
  SymEigen e;
  if (off == 0.0) {
    e.values = {b.s[0], b.s[1], b.s[2]};
    e.vectors = Mat3::identity();
    make_right_handed_ascending(e);
    return e;
  }

  // Cardano on the shifted, scaled matrix (B - qI)/p.
  const double q = trace(m) / 3.0;
  const double p2 = (m(0, 0) - q) * (m(0, 0) - q) + (m(1, 1) - q) * (m(1, 1) - q) +
                    (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * off;
  const double p = std::sqrt(p2 / 6.0);
  const double r = std::clamp(det((1.0 / p) * (m - q * Mat3::identity())) / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double mid = 3.0 * q - hi - lo;

  const double nrm = fro_norm(m);
  const double min_gap = std::min(mid - lo, hi - mid);
  if (min_gap > 1e-4 * nrm) {
    const Vec3 v_lo = null_vector(m, lo);
    Vec3 v_hi = null_vector(m, hi);
    v_hi -= dot(v_hi, v_lo) * v_lo;
    const double nh = norm(v_hi);
    if (norm(v_lo) > 0.5 && nh > 0.5) {
      v_hi *= 1.0 / nh;
      e.values = {lo, mid, hi};
      e.vectors = Mat3::from_columns(v_lo, cross(v_hi, v_lo), v_hi);
      make_right_handed_ascending(e);
      if (eigen_residual(b, e) <= 1e-13 * nrm) return e;
    }
  }
  return sym_eigen_jacobi(b);
}

void require_positive_definite(const Sym3& b, const char* what) {
  const SymEigen e = sym_eigen(b);
  if (!(e.values[0] > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, what);
}

int heat_signature(const Sym3& b, const Vec3& k, double distinctness_tol) {
  const SymEigen e = sym_eigen(b);
  if (!(e.values[0] > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "heat_signature requires B > 0");
  const double band = distinctness_tol * fro_norm(b);
  if (!(e.values[1] - e.values[0] > band && e.values[2] - e.values[1] > band)) return 0;
  double prod = 1.0;
  for (std::size_t i = 0; i < 3; ++i) prod *= dot(k, e.vectors.column(i));
  return prod > 0.0 ? 1 : (prod < 0.0 ? -1 : 0);
}

// ---------------------------------------------------------------- DefGrad

DefGrad::DefGrad(const Mat3& m) : m_(m), det_(thermovisc::det(m)) {
  if (!all_finite(m) || !(det_ > 0.0)) {
    std::ostringstream os;
    os << "det F = " << det_;
    throw Error(ErrorKind::NonPositiveDeterminant, os.str());
  }
}

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '[' << v[0] << ',' << v[1] << ',' << v[2] << ']';
}

std::ostream& operator<<(std::ostream& os, const Mat3& m) {
  os << '[';
  for (std::size_t i = 0; i < 9; ++i) os << (i ? "," : "") << m.a[i];
  return os << ']';
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::InvalidSymmetry: return "InvalidSymmetry";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DetFiCollapse: return "DetFiCollapse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace thermovisc
