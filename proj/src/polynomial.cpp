#include "nodal/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "nodal/errors.hpp"
#include "nodal/io.hpp"

namespace nodal {

// --- UnivarPoly ---------------------------------------------------------------

UnivarPoly::UnivarPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= 1e-12 * scale) coeffs_.pop_back();
}

double UnivarPoly::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UnivarPoly UnivarPoly::derivative() const {
  if (coeffs_.size() <= 1) return UnivarPoly();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UnivarPoly(std::move(d));
}

double UnivarPoly::coefficient_scale() const {
  double s = 0.0;
  for (double c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

double UnivarPoly::abs_eval(double z) const {
  double acc = 0.0;
  const double az = std::abs(z);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

UnivarPoly UnivarPoly::operator*(double s) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= s;
  return UnivarPoly(std::move(c));
}

UnivarPoly UnivarPoly::operator+(double s) const {
  std::vector<double> c = coeffs_;
  if (c.empty()) c.push_back(0.0);
  c[0] += s;
  return UnivarPoly(std::move(c));
}

UnivarPoly UnivarPoly::operator+(const UnivarPoly& o) const {
  std::vector<double> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return UnivarPoly(std::move(c));
}

UnivarPoly UnivarPoly::operator-(const UnivarPoly& o) const { return *this + o * -1.0; }

// --- BivarPoly ----------------------------------------------------------------

double Gradient2::norm() const { return std::hypot(x, y); }

BivarPoly::BivarPoly(int capacity)
    : capacity_(capacity), coeffs_(static_cast<std::size_t>((capacity + 1) * (capacity + 2) / 2), 0.0) {
  if (capacity < 0) throw DomainError("negative polynomial capacity");
}

BivarPoly BivarPoly::constant(double c) {
  BivarPoly p(0);
  p.at(0, 0) = c;
  return p;
}

BivarPoly BivarPoly::from_terms(const std::vector<Term>& terms) {
  int cap = 0;
  for (const Term& t : terms) {
    if (t.i < 0 || t.j < 0) throw DomainError("negative exponent in polynomial term");
    cap = std::max(cap, t.i + t.j);
  }
  BivarPoly p(cap);
  for (const Term& t : terms) p.at(t.i, t.j) += t.c;
  return p;
}

double BivarPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > capacity_) return 0.0;
  return coeffs_[index(i, j)];
}

double BivarPoly::coefficient_scale() const {
  double s = 0.0;
  for (double c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

int BivarPoly::degree() const {
  const double threshold = 1e-9 * coefficient_scale();
  for (int n = capacity_; n >= 0; --n)
    for (int i = 0; i <= n; ++i)
      if (std::abs(coeff(i, n - i)) > threshold) return n;
  return 0;
}

namespace {

// Horner with first and second derivative.
struct Horner3 {
  double p = 0.0, dp = 0.0, ddp = 0.0;
  void step(double t, double c) {
    ddp = ddp * t + 2.0 * dp;
    dp = dp * t + p;
    p = p * t + c;
  }
};

}  // namespace

Jet2 BivarPoly::jet(double x, double y) const {
  // Row polynomials h_i(y) = Σ_j c_ij y^j and their y-derivatives, then Horner in x.
  Horner3 hx0, hx1, hx2;
  for (int i = capacity_; i >= 0; --i) {
    Horner3 hy;
    for (int j = capacity_ - i; j >= 0; --j) hy.step(y, coeffs_[index(i, j)]);
    hx0.step(x, hy.p);
    hx1.step(x, hy.dp);
    hx2.step(x, hy.ddp);
  }
  Jet2 jet;
  jet.value = hx0.p;
  jet.gradient = {hx0.dp, hx1.p};
  jet.hessian = {hx0.ddp, hx1.dp, hx2.p};
  return jet;
}

double BivarPoly::operator()(double x, double y) const {
  double acc = 0.0;
  for (int i = capacity_; i >= 0; --i) {
    double row = 0.0;
    for (int j = capacity_ - i; j >= 0; --j) row = row * y + coeffs_[index(i, j)];
    acc = acc * x + row;
  }
  return acc;
}

Gradient2 BivarPoly::gradient(double x, double y) const { return jet(x, y).gradient; }
Hessian2 BivarPoly::hessian(double x, double y) const { return jet(x, y).hessian; }

double BivarPoly::abs_eval(double x, double y) const {
  const double ax = std::abs(x), ay = std::abs(y);
  double acc = 0.0;
  for (int i = capacity_; i >= 0; --i) {
    double row = 0.0;
    for (int j = capacity_ - i; j >= 0; --j) row = row * ay + std::abs(coeffs_[index(i, j)]);
    acc = acc * ax + row;
  }
  return acc;
}

UnivarPoly BivarPoly::restrict_y0() const {
  std::vector<double> c(static_cast<std::size_t>(capacity_) + 1);
  for (int i = 0; i <= capacity_; ++i) c[i] = coeff(i, 0);
  return UnivarPoly(std::move(c));
}

BivarPoly BivarPoly::mirrored_y() const {
  BivarPoly out = *this;
  for (int i = 0; i <= capacity_; ++i)
    for (int j = 1; j <= capacity_ - i; j += 2) out.at(i, j) = -out.at(i, j);
  return out;
}

BivarPoly BivarPoly::substitute_affine(double A, double B, double C, double D, double E, double F) const {
  BivarPoly u(1), v(1);
  u.at(1, 0) = A; u.at(0, 1) = B; u.at(0, 0) = C;
  v.at(1, 0) = D; v.at(0, 1) = E; v.at(0, 0) = F;
  // Nested Horner: Σ_i u^i (Σ_j c_ij v^j)
  BivarPoly acc(0);
  for (int i = capacity_; i >= 0; --i) {
    BivarPoly row(0);
    for (int j = capacity_ - i; j >= 0; --j) row = row * v + coeffs_[index(i, j)];
    acc = acc * u + row;
  }
  return acc;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
  BivarPoly out(std::max(capacity_, o.capacity_));
  for (int i = 0; i <= out.capacity_; ++i)
    for (int j = 0; j <= out.capacity_ - i; ++j) out.at(i, j) = coeff(i, j) + o.coeff(i, j);
  return out;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + o * -1.0; }

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
  BivarPoly out(capacity_ + o.capacity_);
  for (int i = 0; i <= capacity_; ++i)
    for (int j = 0; j <= capacity_ - i; ++j) {
      const double c = coeffs_[index(i, j)];
      if (c == 0.0) continue;
      for (int k = 0; k <= o.capacity_; ++k)
        for (int l = 0; l <= o.capacity_ - k; ++l) out.at(i + k, j + l) += c * o.coeffs_[o.index(k, l)];
    }
  return out;
}

BivarPoly BivarPoly::operator*(double s) const {
  BivarPoly out = *this;
  for (double& c : out.coeffs_) c *= s;
  return out;
}

BivarPoly BivarPoly::operator+(double s) const {
  BivarPoly out = *this;
  out.at(0, 0) += s;
  return out;
}

std::vector<Term> BivarPoly::terms(double prune_rel) const {
  const double threshold = prune_rel * coefficient_scale();
  std::vector<Term> out;
  for (int i = 0; i <= capacity_; ++i)
    for (int j = 0; j <= capacity_ - i; ++j) {
      const double c = coeffs_[index(i, j)];
      if (c != 0.0 && std::abs(c) > threshold) out.push_back({i, j, c});
    }
  return out;
}

// --- JSON ---------------------------------------------------------------------

std::string polynomial_json(const BivarPoly& p, double prune_rel) {
  std::ostringstream os;
  os << "{\"degree\":" << p.degree() << ",\"vars\":[\"x\",\"y\"],\"terms\":[";
  bool first = true;
  for (const Term& t : p.terms(prune_rel)) {
    if (!first) os << ',';
    first = false;
    os << "{\"i\":" << t.i << ",\"j\":" << t.j << ",\"c\":" << format_real(t.c) << '}';
  }
  os << "]}";
  return os.str();
}

std::string polynomial_json(const UnivarPoly& p) {
  std::ostringstream os;
  os << "{\"degree\":" << std::max(p.degree(), 0) << ",\"vars\":[\"z\"],\"terms\":[";
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == 0.0) continue;
    if (!first) os << ',';
    first = false;
    os << "{\"i\":" << k << ",\"c\":" << format_real(p.coeff(k)) << '}';
  }
  os << "]}";
  return os.str();
}

BivarPoly bivar_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("polynomial JSON: ") + e.what());
  }
  std::vector<Term> terms;
  for (const auto& t : doc.at("terms")) terms.push_back({t.at("i").get<int>(), t.value("j", 0), t.at("c").get<double>()});
  return BivarPoly::from_terms(terms);
}

UnivarPoly univar_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("polynomial JSON: ") + e.what());
  }
  std::vector<double> c;
  for (const auto& t : doc.at("terms")) {
    auto k = static_cast<std::size_t>(t.at("i").get<int>());
    if (c.size() <= k) c.resize(k + 1, 0.0);
    c[k] += t.at("c").get<double>();
  }
  return UnivarPoly(std::move(c));
}

}  // namespace nodal
