#pragma once

#include <string>
#include <vector>

namespace pacc {

/// Natural cubic spline through tabulated (r, E) samples.
///
/// Below the first knot evaluation throws (the repulsive wall must be
/// covered by data). Beyond the last knot the curve is held at the last
/// sample, which for curves referenced to separated atoms is the asymptote.
class TabulatedCurve {
 public:
  TabulatedCurve(std::vector<double> r, std::vector<double> e);

  double operator()(double r) const;

  const std::vector<double>& knots() const { return r_; }
  const std::vector<double>& values() const { return e_; }
  // Second derivatives at the knots.
  const std::vector<double>& curvature() const { return m_; }

 private:
  std::vector<double> r_;
  std::vector<double> e_;
  std::vector<double> m_;
};

struct AlkaliCurves {
  TabulatedCurve singlet;
  TabulatedCurve triplet;
};

/// Reads "r_A  E_singlet_eV  E_triplet_eV" lines ('#' comments) and returns
/// curves in internal units.
AlkaliCurves load_alkali_curves(const std::string& path);

}  // namespace pacc
