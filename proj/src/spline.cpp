#include "pacc/spline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pacc/error.hpp"
#include "pacc/units.hpp"

namespace pacc {

TabulatedCurve::TabulatedCurve(std::vector<double> r, std::vector<double> e)
    : r_(std::move(r)), e_(std::move(e)), m_(r_.size(), 0.0) {
  const std::size_t n = r_.size();
  if (n != e_.size()) throw ConfigError("tabulated curve: r and E have different lengths");
  if (n < 4) throw ConfigError("tabulated curve needs at least 4 knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(r_[i] > r_[i - 1])) throw ConfigError("tabulated curve: r must be strictly increasing");
  }

  // Tridiagonal system for the interior second derivatives, m_0 = m_{n-1} = 0.
  std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = r_[i] - r_[i - 1];
    const double h1 = r_[i + 1] - r_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((e_[i + 1] - e_[i]) / h1 - (e_[i] - e_[i - 1]) / h0);
  }
  // Thomas algorithm; lower diagonal entry of row i is h_{i-1}.
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = r_[i] - r_[i - 1];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
  }
}

double TabulatedCurve::operator()(double r) const {
  if (r < r_.front()) {
    std::ostringstream msg;
    msg << "tabulated curve evaluated at r=" << r << " below its first knot " << r_.front();
    throw ConfigError(msg.str());
  }
  if (r >= r_.back()) return e_.back();
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
  const double h = r_[i + 1] - r_[i];
  const double a = (r_[i + 1] - r) / h;
  const double b = (r - r_[i]) / h;
  return a * e_[i] + b * e_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

AlkaliCurves load_alkali_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated curve file " + path);
  std::vector<double> r, singlet, triplet;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double x, s, t;
    if (!(fields >> x >> s >> t)) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'r_A E_singlet_eV E_triplet_eV'");
    }
    r.push_back(units::from_angstrom(x));
    singlet.push_back(units::from_ev(s));
    triplet.push_back(units::from_ev(t));
  }
  return {TabulatedCurve(r, singlet), TabulatedCurve(r, std::move(triplet))};
}

}  // namespace pacc
