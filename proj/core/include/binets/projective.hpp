#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "binets/error.hpp"

namespace binets {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;

// Singular values below kRankTol * sigma_max count as zero.
inline constexpr double kRankTol = 1e-9;

// A point of RP^n. Coordinates are kept at unit Euclidean norm with the first
// significant coordinate positive, so two representatives of one point compare
// equal coordinate-wise up to rounding.
class HomVector {
 public:
  HomVector() = default;  // empty, only as a placeholder
  explicit HomVector(const Vec& coords);

  const Vec& coords() const noexcept { return x_; }
  Eigen::Index size() const noexcept { return x_.size(); }
  int dim() const noexcept { return static_cast<int>(x_.size()) - 1; }
  double operator[](Eigen::Index i) const { return x_[i]; }

 private:
  Vec x_;
};

// Largest 2x2 minor of the two unit representatives: zero iff same point.
double point_distance(const HomVector& a, const HomVector& b);
bool same_point(const HomVector& a, const HomVector& b, double tol = 1e-12);

// Orthonormal row basis of a linear subspace of R^{n+1}; projective dimension
// is rows - 1 (the empty subspace has dimension -1).
class ProjSubspace {
 public:
  explicit ProjSubspace(int ambient_dim = 0);

  static ProjSubspace span(const Mat& vectors_as_rows, double rank_tol = kRankTol);
  // Keeps the rows as they are; they must be orthonormal to within tol.
  static ProjSubspace from_orthonormal(const Mat& rows, double tol = 1e-9);
  static ProjSubspace point(const HomVector& p);
  static ProjSubspace whole(int ambient_dim);
  // Solution set of rows * x = 0.
  static ProjSubspace kernel(const Mat& equations_as_rows, int ambient_dim,
                             double rank_tol = kRankTol);

  int dim() const noexcept { return static_cast<int>(basis_.rows()) - 1; }
  int ambient_dim() const noexcept { return ambient_; }
  bool empty() const noexcept { return basis_.rows() == 0; }
  const Mat& basis() const noexcept { return basis_; }

  Mat projector() const;
  // Rows span the orthogonal complement.
  Mat annihilator() const;
  // Relative distance of v from the subspace.
  double distance(const Vec& v) const;
  bool contains(const Vec& v, double tol = 1e-9) const { return distance(v) <= tol; }
  HomVector as_point() const;

 private:
  int ambient_;
  Mat basis_;
};

double subspace_distance(const ProjSubspace& a, const ProjSubspace& b);
bool same_subspace(const ProjSubspace& a, const ProjSubspace& b, double tol = 1e-9);

ProjSubspace join(const ProjSubspace& a, const ProjSubspace& b, double rank_tol = kRankTol);
ProjSubspace join(std::span<const HomVector> points, double rank_tol = kRankTol);
ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b, double rank_tol = kRankTol);
ProjSubspace meet(std::span<const ProjSubspace> spaces, double rank_tol = kRankTol);

// Orthonormal rows spanning ker(a), with a relative rank threshold.
Mat null_space(const Mat& a, double rank_tol = kRankTol);

enum class FormKind { Moebius, Blaschke, Lie, Euclid3, UnitSphere, Custom };

// Diagonal symmetric bilinear form.
class QuadricForm {
 public:
  QuadricForm(Vec diagonal, FormKind kind = FormKind::Custom);

  static QuadricForm moebius();      // ++++-  on R^5
  static QuadricForm blaschke();     // +++-0  on R^5
  static QuadricForm lie();          // ++++-- on R^6
  static QuadricForm euclid3();      // +++0   on R^4
  static QuadricForm unit_sphere();  // +++-   on R^4

  const Vec& diagonal() const noexcept { return diag_; }
  FormKind kind() const noexcept { return kind_; }
  Eigen::Index size() const noexcept { return diag_.size(); }
  bool degenerate() const;
  Mat gram() const { return diag_.asDiagonal(); }
  double operator()(const Vec& x, const Vec& y) const;

 private:
  Vec diag_;
  FormKind kind_;
};

std::string to_string(FormKind kind);
FormKind form_kind_from_string(const std::string& name);

double inner(const QuadricForm& form, const HomVector& x, const HomVector& y);
ProjSubspace polar(const QuadricForm& form, const ProjSubspace& s, double rank_tol = kRankTol);

class ProjTransform {
 public:
  explicit ProjTransform(Mat matrix);
  static ProjTransform identity(Eigen::Index size);

  const Mat& matrix() const noexcept { return m_; }
  HomVector apply(const HomVector& p) const;
  Vec apply(const Vec& v) const { return m_ * v; }
  ProjSubspace apply(const ProjSubspace& s) const;
  ProjTransform then(const ProjTransform& next) const;
  // max |T^t G T - G|
  double form_residual(const QuadricForm& form) const;

 private:
  Mat m_;
};

struct FormIsometry {
  ProjTransform transform;
  double magnitude_used;  // smaller than requested when a pole was avoided
  int halvings;
};

// Cayley transform (I - A)^{-1}(I + A) of a random element A of the form's Lie
// algebra. Generators annihilating every vector in `fixed` give the stabiliser
// subgroup, e.g. Moebius or Laguerre transformations inside the Lie group.
FormIsometry random_form_isometry(const QuadricForm& form, std::uint64_t seed,
                                  double magnitude,
                                  const std::vector<Vec>& fixed = {});

}  // namespace binets
