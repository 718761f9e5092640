#pragma once
#include <array>
#include <complex>

#include <Eigen/Dense>

#include "nanokit/phase_space.hpp"

namespace nanokit {

// Jordan-chain basis of the center subspace at sonic speed: L U1 = 0,
// L U2 = U1, L U3 = U2, L U4 = U3, L U5 = i s0 U5 (U6 = conj(U5) implied).
struct EigenBasis {
  double w = 0.0;
  double s0 = 0.0;
  std::array<PhasePoint, 5> U;

  static EigenBasis build(double w, const VGrid& g);
};

// Two candidate quadrature tables behind the first four dual functionals.
// per_trace takes the k-th kernel moment of each boundary trace separately;
// first_trace reuses the first trace for every higher moment.  first_trace
// fails the duality check and exists to exercise the repair path.
enum class DualTable { per_trace, first_trace };

// Dual functionals V1*..V5* of the center basis.  At construction the
// functionals are validated against the basis (V_k*(U_j) = delta_kj); if the
// worst deviation exceeds 1e-6 the coefficients are repaired by solving the
// 5x5 duality system, so project_coeffs is always duality-consistent.
class CenterProjection {
 public:
  CenterProjection(double w, const VGrid& g,
                   DualTable table = DualTable::per_trace);

  // coefficients straight from the quadrature table, no repair
  std::array<cplx, 5> raw_coeffs(const PhasePoint& f) const;

  // duality-consistent projection coefficients a1..a5
  std::array<cplx, 5> project_coeffs(const PhasePoint& f) const;

  const Eigen::Matrix<cplx, 5, 5>& gram() const { return G_; }
  double gram_deviation() const { return gram_dev_; }
  bool repaired() const { return repaired_; }
  const EigenBasis& basis() const { return basis_; }

 private:
  const VGrid* g_;
  double w_;
  DualTable table_;
  EigenBasis basis_;
  cplx dsym_is0_;  // symbol lambda-derivative at i s0, sonic speed
  Eigen::Matrix<cplx, 5, 5> G_;
  Eigen::Matrix<cplx, 5, 5> Ginv_;
  double gram_dev_ = 0.0;
  bool repaired_ = false;
};

}  // namespace nanokit
