#include "lpstruct/structure/matrix_exp.hpp"

#include <array>
#include <cmath>

#include "lpstruct/error.hpp"

namespace lpstruct::structure {

namespace {

constexpr std::array<double, 14> kPade13{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                         1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                         670442572800.0,      33522128640.0,       1323241920.0,
                                         40840800.0,          960960.0,            16380.0,
                                         182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

// a*x + b*y + c*z + d*I
Matrix combine(double a, const Matrix& x, double b, const Matrix& y, double c, const Matrix& z, double d) {
  Matrix out(x.rows(), x.cols());
  auto o = out.flat();
  auto xf = x.flat(), yf = y.flat(), zf = z.flat();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * xf[i] + b * yf[i] + c * zf[i];
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += d;
  return out;
}

// Solves lhs * X = rhs in place (rhs becomes X), partial pivoting.
void lu_solve(Matrix lhs, Matrix& rhs) {
  const std::size_t n = lhs.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lhs(i, k)) > std::abs(lhs(p, k))) p = i;
    if (lhs(p, k) == 0.0) throw Error("matrix_exp: singular Pade denominator");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lhs(k, j), lhs(p, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(rhs(k, j), rhs(p, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lhs(i, k) / lhs(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lhs(i, j) -= f * lhs(k, j);
      for (std::size_t j = 0; j < n; ++j) rhs(i, j) -= f * rhs(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = rhs(k, j);
      for (std::size_t i = k + 1; i < n; ++i) v -= lhs(k, i) * rhs(i, j);
      rhs(k, j) = v / lhs(k, k);
    }
  }
}

}  // namespace

Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix_exp: matrix is not square");
  for (double v : m.flat())
    if (!std::isfinite(v)) throw InvalidArgument("matrix_exp: non-finite entry");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  if (max_abs(m) == 0.0) return Matrix::identity(n);

  const double norm = norm1(m);
  int s = 0;
  if (norm > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  Matrix a = m;
  if (s > 0) {
    const double scale = std::ldexp(1.0, -s);
    for (double& v : a.flat()) v *= scale;
  }

  const auto& b = kPade13;
  const Matrix a2 = matmul(a, a);
  const Matrix a4 = matmul(a2, a2);
  const Matrix a6 = matmul(a4, a2);
  const Matrix u_inner = matmul(a6, combine(b[13], a6, b[11], a4, b[9], a2, 0.0));
  Matrix u_sum = combine(1.0, u_inner, b[7], a6, b[5], a4, b[1]);
  {
    auto f = u_sum.flat();
    auto a2f = a2.flat();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += b[3] * a2f[i];
  }
  const Matrix u = matmul(a, u_sum);
  const Matrix v_inner = matmul(a6, combine(b[12], a6, b[10], a4, b[8], a2, 0.0));
  Matrix v = combine(1.0, v_inner, b[6], a6, b[4], a4, b[0]);
  {
    auto f = v.flat();
    auto a2f = a2.flat();
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += b[2] * a2f[i];
  }

  Matrix num(n, n), den(n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    num.flat()[i] = v.flat()[i] + u.flat()[i];
    den.flat()[i] = v.flat()[i] - u.flat()[i];
  }
  lu_solve(std::move(den), num);
  for (int i = 0; i < s; ++i) num = matmul(num, num);
  return num;
}

}  // namespace lpstruct::structure
