#include "gsteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace gsteer {

RealMatrix symplectic_form(std::size_t n_modes) {
  RealMatrix omega = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

RealMatrix b_side_symplectic_form(std::size_t modes_a, std::size_t modes_b) {
  return direct_sum(RealMatrix::Zero(2 * modes_a, 2 * modes_a),
                    symplectic_form(modes_b));
}

RealMatrix direct_sum(const RealMatrix& upper, const RealMatrix& lower) {
  RealMatrix out = RealMatrix::Zero(upper.rows() + lower.rows(),
                                    upper.cols() + lower.cols());
  out.topLeftCorner(upper.rows(), upper.cols()) = upper;
  out.bottomRightCorner(lower.rows(), lower.cols()) = lower;
  return out;
}

void require_finite(const RealMatrix& m, const std::string& what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j))) {
        std::ostringstream msg;
        msg << what << ": non-finite entry at (" << i << ", " << j << ")";
        throw ValidationError(msg.str());
      }
    }
  }
}

double relative_asymmetry(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& h, double tolerance) {
  if (h.rows() == 0 || h.rows() != h.cols()) {
    throw ValidationError("HermitianMatrix: expected a non-empty square matrix");
  }
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (!std::isfinite(h(i, j).real()) || !std::isfinite(h(i, j).imag())) {
        std::ostringstream msg;
        msg << "HermitianMatrix: non-finite entry at (" << i << ", " << j << ")";
        throw ValidationError(msg.str());
      }
    }
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const ComplexMatrix diff = h - h.adjoint();
  Eigen::Index wi = 0, wj = 0;
  const double worst = diff.cwiseAbs().maxCoeff(&wi, &wj);
  if (worst > tolerance * scale) {
    std::ostringstream msg;
    msg << "HermitianMatrix: not Hermitian, worst entry (" << wi << ", " << wj
        << ") deviates by " << worst;
    throw ValidationError(msg.str());
  }
  data_ = 0.5 * (h + h.adjoint());
}

HermitianMatrix HermitianMatrix::from_parts(const RealMatrix& re,
                                            const RealMatrix& im) {
  ComplexMatrix h(re.rows(), re.cols());
  h.real() = re;
  h.imag() = im;
  return HermitianMatrix(h);
}

namespace {

// One Jacobi rotation zeroing a(p, q); accumulates into v.
void rotate(RealMatrix& a, RealMatrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0 ? 1.0 : -1.0) /
        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

double off_diagonal_norm2(const RealMatrix& a) {
  double off = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) off += a(i, j) * a(i, j);
  }
  return 2.0 * off;
}

}  // namespace

SymmetricEigen symmetric_eigen(const RealMatrix& s) {
  if (s.rows() == 0 || s.rows() != s.cols()) {
    throw ValidationError("symmetric_eigen: expected a non-empty square matrix");
  }
  require_finite(s, "symmetric_eigen");
  const Eigen::Index n = s.rows();
  RealMatrix a = 0.5 * (s + s.transpose());
  RealMatrix v = RealMatrix::Identity(n, n);

  const double frob2 = a.squaredNorm();
  const double stop = frob2 * 1e-32;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= stop) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        // Entry already negligible against both diagonals: drop it.
        const double small = 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q)));
        if (std::abs(a(p, q)) < small) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](Eigen::Index l, Eigen::Index r) { return a(l, l) < a(r, r); });
  SymmetricEigen out;
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values.push_back(a(src, src));
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& s) {
  return symmetric_eigen(s).values;
}

RealMatrix real_embed(const HermitianMatrix& h) {
  const Eigen::Index d = static_cast<Eigen::Index>(h.dim());
  const RealMatrix re = h.real_part();
  const RealMatrix im = h.imag_part();
  RealMatrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = re;
  out.topRightCorner(d, d) = -im;
  out.bottomLeftCorner(d, d) = im;
  out.bottomRightCorner(d, d) = re;
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
  const std::vector<double> doubled = symmetric_eigenvalues(real_embed(h));
  std::vector<double> out;
  out.reserve(h.dim());
  for (std::size_t k = 0; k + 1 < doubled.size(); k += 2) {
    out.push_back(0.5 * (doubled[k] + doubled[k + 1]));
  }
  return out;
}

double trace_norm(const std::vector<double>& eigenvalues) {
  double sum = 0.0;
  for (double v : eigenvalues) sum += std::abs(v);
  return sum;
}

double trace_norm(const HermitianMatrix& h) {
  return trace_norm(hermitian_eigenvalues(h));
}

PsdReport psd_from_eigenvalues(const std::vector<double>& eigenvalues,
                               double tol) {
  if (!(tol >= 0.0)) throw ValidationError("is_psd: tolerance must be >= 0");
  PsdReport report;
  report.tolerance = tol;
  if (eigenvalues.empty()) {
    report.psd = true;
    return report;
  }
  report.min_eigenvalue =
      *std::min_element(eigenvalues.begin(), eigenvalues.end());
  for (double v : eigenvalues) {
    report.max_abs_eigenvalue = std::max(report.max_abs_eigenvalue, std::abs(v));
  }
  report.psd = report.min_eigenvalue >=
               -tol * std::max(1.0, report.max_abs_eigenvalue);
  return report;
}

PsdReport is_psd(const HermitianMatrix& h, double tol) {
  return psd_from_eigenvalues(hermitian_eigenvalues(h), tol);
}

namespace {

template <typename F>
RealMatrix spectral_map(const RealMatrix& s, F f) {
  const SymmetricEigen eig = symmetric_eigen(s);
  RealVector mapped(static_cast<Eigen::Index>(eig.values.size()));
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    mapped(static_cast<Eigen::Index>(k)) = f(eig.values[k]);
  }
  RealMatrix out = eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

RealMatrix sqrt_psd(const RealMatrix& s) {
  return spectral_map(s, [](double v) { return std::sqrt(std::max(0.0, v)); });
}

RealMatrix abs_symmetric(const RealMatrix& s) {
  return spectral_map(s, [](double v) { return std::abs(v); });
}

RealMatrix matrix_exp(const RealMatrix& x) {
  if (x.rows() != x.cols()) {
    throw ValidationError("matrix_exp: expected a square matrix");
  }
  return x.exp();
}

}  // namespace gsteer
