#include "binets/projective.hpp"

#include <algorithm>
#include <cmath>

#include "binets/random.hpp"

namespace binets {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Regularity: return "regularity";
    case ErrorKind::NotOrthogonal: return "not_orthogonal";
    case ErrorKind::NotConjugate: return "not_conjugate";
    case ErrorKind::NotCircular: return "not_circular";
    case ErrorKind::PointAtInfinity: return "point_at_infinity";
    case ErrorKind::NotASphere: return "not_a_sphere";
    case ErrorKind::InvalidInput: return "invalid_input";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string where)
    : std::runtime_error(where.empty() ? message : message + " at " + where),
      kind_(kind),
      where_(std::move(where)) {}

namespace {

// Flip v so that its first coordinate of non-negligible size is positive.
void fix_sign(Eigen::Ref<Vec> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-9 * scale) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

// Deterministic orthonormal basis of the column space of a projector.
Mat canonical_rows(const Mat& projector, Eigen::Index rank) {
  const Eigen::Index n = projector.rows();
  if (rank == 0) return Mat(0, n);
  Eigen::ColPivHouseholderQR<Mat> qr(projector);
  Mat q = qr.householderQ() * Mat::Identity(n, rank);
  Mat rows = q.transpose();
  for (Eigen::Index r = 0; r < rank; ++r) {
    Vec row = rows.row(r).transpose();
    fix_sign(row);
    rows.row(r) = row.transpose();
  }
  return rows;
}

Mat rows_to_canonical(const Mat& orthonormal_rows) {
  if (orthonormal_rows.rows() == 0) return orthonormal_rows;
  Mat p = orthonormal_rows.transpose() * orthonormal_rows;
  return canonical_rows(p, orthonormal_rows.rows());
}

}  // namespace

HomVector::HomVector(const Vec& coords) : x_(coords) {
  const double n = x_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::Degenerate, "homogeneous vector must be finite and nonzero");
  }
  x_ /= n;
  fix_sign(x_);
}

double point_distance(const HomVector& a, const HomVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "points of different spaces");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j)
      worst = std::max(worst, std::abs(a[i] * b[j] - a[j] * b[i]));
  return worst;
}

bool same_point(const HomVector& a, const HomVector& b, double tol) {
  return point_distance(a, b) <= tol;
}

Mat null_space(const Mat& a, double rank_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  Eigen::Index rank = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > rank_tol * smax) ++rank;
  return svd.matrixV().rightCols(n - rank).transpose();
}

ProjSubspace::ProjSubspace(int ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim + 1) {}

ProjSubspace ProjSubspace::span(const Mat& rows, double rank_tol) {
  ProjSubspace s(static_cast<int>(rows.cols()) - 1);
  if (rows.rows() == 0) return s;
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() > 0 && sv[0] > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > rank_tol * sv[0]) ++rank;
  s.basis_ = rows_to_canonical(svd.matrixV().leftCols(rank).transpose());
  return s;
}

ProjSubspace ProjSubspace::from_orthonormal(const Mat& rows, double tol) {
  const Mat g = rows * rows.transpose();
  if (!rows.allFinite() || (g - Mat::Identity(rows.rows(), rows.rows())).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorKind::InvalidInput, "basis rows are not orthonormal");
  ProjSubspace s(static_cast<int>(rows.cols()) - 1);
  s.basis_ = rows;
  return s;
}

ProjSubspace ProjSubspace::point(const HomVector& p) {
  ProjSubspace s(p.dim());
  s.basis_ = p.coords().transpose();
  return s;
}

ProjSubspace ProjSubspace::whole(int ambient_dim) {
  ProjSubspace s(ambient_dim);
  s.basis_ = Mat::Identity(ambient_dim + 1, ambient_dim + 1);
  return s;
}

ProjSubspace ProjSubspace::kernel(const Mat& eq, int ambient_dim, double rank_tol) {
  if (eq.rows() > 0 && eq.cols() != ambient_dim + 1)
    throw Error(ErrorKind::DimensionMismatch, "equation width does not match ambient space");
  ProjSubspace s(ambient_dim);
  s.basis_ = rows_to_canonical(null_space(eq.rows() ? eq : Mat(0, ambient_dim + 1), rank_tol));
  return s;
}

Mat ProjSubspace::projector() const { return basis_.transpose() * basis_; }

Mat ProjSubspace::annihilator() const {
  if (basis_.rows() == 0) return Mat::Identity(ambient_ + 1, ambient_ + 1);
  return null_space(basis_, kRankTol);
}

double ProjSubspace::distance(const Vec& v) const {
  const double n = v.norm();
  if (n == 0.0) return 0.0;
  if (basis_.rows() == 0) return 1.0;
  Vec r = v - basis_.transpose() * (basis_ * v);
  return r.norm() / n;
}

HomVector ProjSubspace::as_point() const {
  if (dim() != 0) throw Error(ErrorKind::Degenerate, "subspace of dimension " + std::to_string(dim()) + " is not a point");
  return HomVector(basis_.row(0).transpose());
}

double subspace_distance(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "subspaces of different spaces");
  if (a.dim() != b.dim()) return 1.0;
  return (a.projector() - b.projector()).cwiseAbs().maxCoeff();
}

bool same_subspace(const ProjSubspace& a, const ProjSubspace& b, double tol) {
  return a.dim() == b.dim() && subspace_distance(a, b) <= tol;
}

ProjSubspace join(const ProjSubspace& a, const ProjSubspace& b, double rank_tol) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "join of subspaces of different spaces");
  Mat stacked(a.basis().rows() + b.basis().rows(), a.ambient_dim() + 1);
  stacked << a.basis(), b.basis();
  return ProjSubspace::span(stacked, rank_tol);
}

ProjSubspace join(std::span<const HomVector> points, double rank_tol) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "join of no points");
  Mat rows(static_cast<Eigen::Index>(points.size()), points[0].size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != rows.cols()) throw Error(ErrorKind::DimensionMismatch, "join of points of different spaces");
    rows.row(static_cast<Eigen::Index>(i)) = points[i].coords().transpose();
  }
  return ProjSubspace::span(rows, rank_tol);
}

ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b, double rank_tol) {
  const ProjSubspace both[2] = {a, b};
  return meet(std::span<const ProjSubspace>(both, 2), rank_tol);
}

ProjSubspace meet(std::span<const ProjSubspace> spaces, double rank_tol) {
  if (spaces.empty()) throw Error(ErrorKind::InvalidInput, "meet of no subspaces");
  const int n = spaces[0].ambient_dim();
  std::vector<Mat> parts;
  Eigen::Index rows = 0;
  for (const auto& s : spaces) {
    if (s.ambient_dim() != n) throw Error(ErrorKind::DimensionMismatch, "meet of subspaces of different spaces");
    parts.push_back(s.annihilator());
    rows += parts.back().rows();
  }
  Mat stacked(rows, n + 1);
  Eigen::Index r = 0;
  for (const auto& p : parts) {
    stacked.middleRows(r, p.rows()) = p;
    r += p.rows();
  }
  return ProjSubspace::kernel(stacked, n, rank_tol);
}

QuadricForm::QuadricForm(Vec diagonal, FormKind kind) : diag_(std::move(diagonal)), kind_(kind) {}

QuadricForm QuadricForm::moebius() {
  Vec d(5);
  d << 1, 1, 1, 1, -1;
  return {d, FormKind::Moebius};
}

QuadricForm QuadricForm::blaschke() {
  Vec d(5);
  d << 1, 1, 1, -1, 0;
  return {d, FormKind::Blaschke};
}

QuadricForm QuadricForm::lie() {
  Vec d(6);
  d << 1, 1, 1, 1, -1, -1;
  return {d, FormKind::Lie};
}

QuadricForm QuadricForm::euclid3() {
  Vec d(4);
  d << 1, 1, 1, 0;
  return {d, FormKind::Euclid3};
}

QuadricForm QuadricForm::unit_sphere() {
  Vec d(4);
  d << 1, 1, 1, -1;
  return {d, FormKind::UnitSphere};
}

bool QuadricForm::degenerate() const { return (diag_.array() == 0.0).any(); }

double QuadricForm::operator()(const Vec& x, const Vec& y) const {
  if (x.size() != diag_.size() || y.size() != diag_.size())
    throw Error(ErrorKind::DimensionMismatch, "vector size does not match form");
  return (x.array() * diag_.array() * y.array()).sum();
}

std::string to_string(FormKind kind) {
  switch (kind) {
    case FormKind::Moebius: return "moebius";
    case FormKind::Blaschke: return "laguerre";
    case FormKind::Lie: return "lie";
    case FormKind::Euclid3: return "euclid3";
    case FormKind::UnitSphere: return "unit_sphere";
    case FormKind::Custom: return "custom";
  }
  return "custom";
}

FormKind form_kind_from_string(const std::string& name) {
  if (name == "moebius" || name == "mobius") return FormKind::Moebius;
  if (name == "laguerre" || name == "blaschke") return FormKind::Blaschke;
  if (name == "lie") return FormKind::Lie;
  if (name == "euclid3") return FormKind::Euclid3;
  if (name == "unit_sphere") return FormKind::UnitSphere;
  throw Error(ErrorKind::InvalidInput, "unknown form '" + name + "'", "form");
}

double inner(const QuadricForm& form, const HomVector& x, const HomVector& y) {
  return form(x.coords(), y.coords());
}

ProjSubspace polar(const QuadricForm& form, const ProjSubspace& s, double rank_tol) {
  if (s.ambient_dim() + 1 != form.size()) throw Error(ErrorKind::DimensionMismatch, "form does not act on this space");
  Mat eq = s.basis() * form.diagonal().asDiagonal();
  return ProjSubspace::kernel(eq, s.ambient_dim(), rank_tol);
}

ProjTransform::ProjTransform(Mat matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorKind::DimensionMismatch, "transform matrix must be square");
  Eigen::JacobiSVD<Mat> svd(m_);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || !(s[s.size() - 1] > kRankTol * s[0]))
    throw Error(ErrorKind::Degenerate, "transform matrix is singular");
}

ProjTransform ProjTransform::identity(Eigen::Index size) { return ProjTransform(Mat::Identity(size, size)); }

HomVector ProjTransform::apply(const HomVector& p) const {
  if (p.size() != m_.cols()) throw Error(ErrorKind::DimensionMismatch, "transform does not act on this space");
  return HomVector(m_ * p.coords());
}

ProjSubspace ProjTransform::apply(const ProjSubspace& s) const {
  if (s.ambient_dim() + 1 != m_.cols()) throw Error(ErrorKind::DimensionMismatch, "transform does not act on this space");
  if (s.empty()) return s;
  return ProjSubspace::span(s.basis() * m_.transpose());
}

ProjTransform ProjTransform::then(const ProjTransform& next) const { return ProjTransform(next.m_ * m_); }

double ProjTransform::form_residual(const QuadricForm& form) const {
  if (form.size() != m_.rows()) throw Error(ErrorKind::DimensionMismatch, "form does not act on this space");
  const Mat g = form.gram();
  return (m_.transpose() * g * m_ - g).cwiseAbs().maxCoeff();
}

FormIsometry random_form_isometry(const QuadricForm& form, std::uint64_t seed, double magnitude,
                                  const std::vector<Vec>& fixed) {
  if (form.degenerate()) throw Error(ErrorKind::Degenerate, "random isometries need a nondegenerate form");
  const Eigen::Index n = form.size();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(std::abs(form.diagonal()[i]) - 1.0) > 0.0)
      throw Error(ErrorKind::InvalidInput, "form diagonal must consist of +1 and -1");

  Rng rng(seed);
  Mat s = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = rng.uniform(-1.0, 1.0);
      s(i, j) = v;
      s(j, i) = -v;
    }
  if (!fixed.empty()) {
    Mat f(n, static_cast<Eigen::Index>(fixed.size()));
    for (std::size_t k = 0; k < fixed.size(); ++k) {
      if (fixed[k].size() != n) throw Error(ErrorKind::DimensionMismatch, "fixed vector size does not match form");
      f.col(static_cast<Eigen::Index>(k)) = fixed[k];
    }
    // Project the skew generator onto {S : S f = 0}; then A = G S kills f too.
    const Mat comp = null_space(f.transpose());
    const Mat p = comp.transpose() * comp;
    s = p * s * p;
  }
  const double norm = s.cwiseAbs().maxCoeff();
  if (norm > 0) s /= norm;

  // For diagonal G with G^2 = I, A = G S satisfies A^t G + G A = 0.
  const Mat a_unit = form.gram() * s;
  const Mat eye = Mat::Identity(n, n);
  double mag = magnitude;
  for (int halvings = 0; halvings < 60; ++halvings, mag *= 0.5) {
    const Mat a = mag * a_unit;
    Eigen::FullPivLU<Mat> lu(eye - a);
    if (lu.rcond() < 1e-6) continue;
    return {ProjTransform(lu.solve(eye + a)), mag, halvings};
  }
  throw Error(ErrorKind::Degenerate, "could not build a Cayley transform");
}

}  // namespace binets
