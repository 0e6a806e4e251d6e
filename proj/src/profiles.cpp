#include "srh/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "srh/core/errors.hpp"

namespace srh::profiles {

namespace {

constexpr double kPoleGuard = 1e-8;
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// sigma(y) = tanh(sqrt(y))/sqrt(y) extended through y = 0 (value 1) and to
// negative y, where it equals tan(sqrt(-y))/sqrt(-y).  sigma1 = (sigma-1)/y.
// Near zero both are evaluated from the Maclaurin series of tanh.
struct SigmaTables {
  static constexpr int kTerms = 16;
  std::array<double, kTerms> c{};  // sigma(y) = sum c[n] y^n

  SigmaTables() {
    const int ord = 2 * kTerms + 1;
    // tanh z = (e^{2z} - 1)/(e^{2z} + 1); odd coefficients give the series in y = z^2.
    Taylor1 z = Taylor1::variable(0.0, ord);
    Taylor1 e2z = exp(2.0 * z);
    Taylor1 tanh_series = (e2z - Taylor1::constant(1.0, ord)) / (e2z + Taylor1::constant(1.0, ord));
    for (int n = 0; n < kTerms; ++n) c[n] = tanh_series[2 * n + 1];
  }
};

const SigmaTables& sigma_tables() {
  static const SigmaTables t;
  return t;
}

double series_eval(const std::array<double, SigmaTables::kTerms>& c, double y, int deriv) {
  // deriv-th derivative of sum c[n] y^n.
  double acc = 0.0;
  for (int n = SigmaTables::kTerms - 1; n >= deriv; --n) {
    double f = c[n];
    for (int k = 0; k < deriv; ++k) f *= (n - k);
    acc = acc * y + f;
  }
  return acc;
}

struct Sigma {
  double s, s1, s2;    // sigma and first two y-derivatives
  double g, g1, g2;    // sigma1 = (sigma-1)/y and derivatives
};

Sigma sigma_at(double y) {
  const auto& tbl = sigma_tables();
  Sigma out{};
  if (std::abs(y) < 0.25) {
    out.s = series_eval(tbl.c, y, 0);
    out.s1 = series_eval(tbl.c, y, 1);
    out.s2 = series_eval(tbl.c, y, 2);
    // shifted coefficients for sigma1
    std::array<double, SigmaTables::kTerms> c1{};
    for (int n = 0; n + 1 < SigmaTables::kTerms; ++n) c1[n] = tbl.c[n + 1];
    out.g = series_eval(c1, y, 0);
    out.g1 = series_eval(c1, y, 1);
    out.g2 = series_eval(c1, y, 2);
    return out;
  }
  if (y > 0.0) {
    const double w = std::sqrt(y);
    out.s = std::tanh(w) / w;
  } else {
    const double w = std::sqrt(-y);
    out.s = std::tan(w) / w;
  }
  // d sigma/dy = (1 - y*sigma^2 - sigma)/(2y) holds on both branches.
  out.s1 = (1.0 - y * out.s * out.s - out.s) / (2.0 * y);
  out.s2 = ((-out.s * out.s - 2.0 * y * out.s * out.s1 - out.s1) * y - (1.0 - y * out.s * out.s - out.s)) /
           (2.0 * y * y);
  out.g = (out.s - 1.0) / y;
  out.g1 = (out.s1 - out.g) / y;
  out.g2 = (out.s2 - 2.0 * out.g1) / y;
  return out;
}

struct BaseAlpha {
  double alpha, alpha1, alpha2, eps;
};

// Poles of the base family in base coordinates near tau (returns the
// distance to the closest one; infinity when pole-free).
double base_pole_distance(Family f, double param, double tau) {
  switch (f) {
    case Family::const2:
    case Family::tanh2:
      return kInf;
    case Family::reciprocal:
    case Family::coth2:
      return std::abs(tau);
    case Family::cot2: {
      const double k = std::round(tau / kPi);
      return std::abs(tau - k * kPi);
    }
    case Family::eps_continuation: {
      if (param > 0.0) return std::abs(tau);  // poles of coth-type at 0 only
      if (param == 0.0) return std::abs(tau);
      const double period = kPi / std::sqrt(-param);
      const double k = std::round(tau / period);
      return std::abs(tau - k * period);
    }
    case Family::t_continuation: {
      if (param >= 0.0) return kInf;
      const double q = 0.5 * std::log(-param);
      return std::abs(tau - q);
    }
  }
  return kInf;
}

BaseAlpha base_alpha(Family f, double param, double tau) {
  BaseAlpha r{};
  switch (f) {
    case Family::const2:
      r = {2.0, 0.0, 0.0, 1.0};
      break;
    case Family::reciprocal: {
      const double it = 1.0 / tau;
      r = {2.0 * it, -2.0 * it * it, 4.0 * it * it * it, 0.0};
      break;
    }
    case Family::tanh2: {
      const double t = std::tanh(tau);
      const double sech2 = 1.0 - t * t;
      r = {2.0 * t, 2.0 * sech2, -4.0 * sech2 * t, 1.0};
      break;
    }
    case Family::coth2: {
      const double c = 1.0 / std::tanh(tau);
      const double csch2 = c * c - 1.0;
      r = {2.0 * c, -2.0 * csch2, 4.0 * csch2 * c, 1.0};
      break;
    }
    case Family::cot2: {
      const double c = 1.0 / std::tan(tau);
      const double csc2 = 1.0 + c * c;
      r = {2.0 * c, -2.0 * csc2, 4.0 * csc2 * c, -1.0};
      break;
    }
    case Family::eps_continuation: {
      const double y = param * tau * tau;
      const Sigma sg = sigma_at(y);
      const double beta = tau * sg.s;
      const double beta1 = sg.s + 2.0 * param * tau * tau * sg.s1;
      const double beta2 = 6.0 * param * tau * sg.s1 + 4.0 * param * param * tau * tau * tau * sg.s2;
      const double ib = 1.0 / beta;
      r.alpha = 2.0 * ib;
      r.alpha1 = -2.0 * beta1 * ib * ib;
      r.alpha2 = (-2.0 * beta2 + 4.0 * beta1 * beta1 * ib) * ib * ib;
      r.eps = (2.0 * r.alpha1 + r.alpha * r.alpha) / 4.0;
      break;
    }
    case Family::t_continuation: {
      const double e = std::exp(tau);
      const double den = e + param / e;
      const double num = e - param / e;
      r.alpha = 2.0 * num / den;
      r.alpha1 = 8.0 * param / (den * den);
      r.alpha2 = -16.0 * param * num / (den * den * den);
      r.eps = (2.0 * r.alpha1 + r.alpha * r.alpha) / 4.0;
      break;
    }
  }
  return r;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::const2: return "const2";
    case Family::reciprocal: return "reciprocal";
    case Family::tanh2: return "tanh";
    case Family::coth2: return "coth";
    case Family::cot2: return "cot";
    case Family::eps_continuation: return "eps";
    case Family::t_continuation: return "t";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "const2") return Family::const2;
  if (name == "reciprocal") return Family::reciprocal;
  if (name == "tanh") return Family::tanh2;
  if (name == "coth") return Family::coth2;
  if (name == "cot") return Family::cot2;
  if (name == "eps") return Family::eps_continuation;
  if (name == "t") return Family::t_continuation;
  throw ConfigError("unknown profile family \"" + name + "\"");
}

double pole_distance(const ProfileParams& params, double tau) {
  const double c = params.affine_c;
  const double tb = c * (tau - params.affine_p);
  const double d = base_pole_distance(params.family, params.param, tb);
  return d == kInf ? kInf : d / std::abs(c);
}

ProfileEval eval(const ProfileParams& params, double tau) {
  if (params.affine_c == 0.0) throw ConfigError("affine_c must be nonzero");
  const double c = params.affine_c;
  const double p = params.affine_p;
  const double tb = c * (tau - p);

  const double dist_base = base_pole_distance(params.family, params.param, tb);
  if (dist_base <= kPoleGuard || dist_base / std::abs(c) <= kPoleGuard) {
    throw DomainError("profile evaluation within guard band of a pole (tau = " +
                      std::to_string(tau) + ")");
  }

  const BaseAlpha base = base_alpha(params.family, params.param, tb);
  ProfileEval out{};
  out.alpha = c * base.alpha;
  out.alpha1 = c * c * base.alpha1;
  out.alpha2 = c * c * c * base.alpha2;
  out.eps = c * c * base.eps;

  const double theta = params.theta;
  const double kappa = params.kappa;

  if (params.family == Family::eps_continuation) {
    // Small-eps-safe route through W = tau_b^2*sigma1/(2*sigma) which equals
    // (2 - tau_b*alpha_b)/(4*eps_b) with the removable singularity taken out.
    const double y = params.param * tb * tb;
    const Sigma sg = sigma_at(y);
    const double A = tb * tb * sg.g;
    const double A1 = 2.0 * tb * sg.g + 2.0 * params.param * tb * tb * tb * sg.g1;
    const double A2 = 2.0 * sg.g + 10.0 * params.param * tb * tb * sg.g1 +
                      4.0 * params.param * params.param * tb * tb * tb * tb * sg.g2;
    const double D = 2.0 * sg.s;
    const double D1 = 4.0 * params.param * tb * sg.s1;
    const double D2 = 4.0 * params.param * sg.s1 + 8.0 * params.param * params.param * tb * tb * sg.s2;
    const double W = A / D;
    const double W1 = (A1 * D - A * D1) / (D * D);
    const double W2 = A2 / D - (2.0 * A1 * D1 + A * D2) / (D * D) + 2.0 * A * D1 * D1 / (D * D * D);
    // F_hat(tau_hat) = theta*W(tau_b)/c^2 + kappa*alpha_hat  (+ shift term if p != 0).
    out.F = theta * W / (c * c) + kappa * out.alpha;
    out.F1 = theta * W1 / c + kappa * out.alpha1;
    out.F2 = theta * W2 + kappa * out.alpha2;
    out.psi = -tb * tb * tb * sg.g / (4.0 * c * c * c);
    if (p != 0.0) {
      if (params.param == 0.0)
        throw ConfigError("eps continuation with eps = 0 does not admit a translation");
      const double eb = base.eps;
      out.F += -theta * p * base.alpha / (4.0 * c * eb);
      out.F1 += -theta * p * base.alpha1 / (4.0 * eb);
      out.F2 += -theta * p * base.alpha2 * c / (4.0 * eb);
      out.psi += p / (4.0 * out.eps);
    }
    return out;
  }

  if (out.eps != 0.0) {
    const double e4 = 4.0 * out.eps;
    out.F = theta * (2.0 - tau * out.alpha) / e4 + kappa * out.alpha;
    out.F1 = theta * (-out.alpha - tau * out.alpha1) / e4 + kappa * out.alpha1;
    out.F2 = theta * (-2.0 * out.alpha1 - tau * out.alpha2) / e4 + kappa * out.alpha2;
    out.psi = (tau - 2.0 / out.alpha) / e4;
  } else {
    const double a = out.alpha, a1 = out.alpha1, a2 = out.alpha2;
    out.F = kappa * a - 2.0 * theta / (3.0 * a * a);
    out.F1 = kappa * a1 + (4.0 * theta / 3.0) * a1 / (a * a * a);
    out.F2 = kappa * a2 + (4.0 * theta / 3.0) * (a2 / (a * a * a) - 3.0 * a1 * a1 / (a * a * a * a));
    out.psi = 2.0 / (3.0 * a * a * a);
  }
  return out;
}

ProfileParams affine_modify(const ProfileParams& params, double c, double p) {
  if (c == 0.0) throw ConfigError("affine modification requires c != 0");
  ProfileParams out = params;
  // Composition: (c,p) after (c0,p0) gives (c*c0, p + p0/c).
  out.affine_c = c * params.affine_c;
  out.affine_p = p + params.affine_p / c;
  out.theta = c * params.theta;
  // Current eps of the input profile.
  double eps0;
  switch (params.family) {
    case Family::const2:
    case Family::tanh2:
    case Family::coth2:
    case Family::t_continuation: eps0 = 1.0; break;
    case Family::cot2: eps0 = -1.0; break;
    case Family::reciprocal: eps0 = 0.0; break;
    case Family::eps_continuation: eps0 = params.param; break;
  }
  eps0 *= params.affine_c * params.affine_c;
  if (eps0 != 0.0) {
    out.kappa = params.kappa / (c * c) + p * params.theta / (4.0 * c * eps0);
  } else {
    out.kappa = params.kappa / (c * c);
  }
  return out;
}

double continuation_alpha(ContinuationKind kind, double param, double tau) {
  if (kind == ContinuationKind::eps_family) {
    const double y = param * tau * tau;
    const double beta = tau * sigma_at(y).s;
    if (beta == 0.0 || base_pole_distance(Family::eps_continuation, param, tau) <= kPoleGuard)
      throw DomainError("continuation alpha: zero denominator");
    return 2.0 / beta;
  }
  const double e = std::exp(tau);
  const double den = e + param / e;
  if (std::abs(den) <= kPoleGuard)
    throw DomainError("continuation alpha: zero denominator");
  return 2.0 * (e - param / e) / den;
}

std::vector<Interval> valid_intervals(const ProfileParams& params) {
  std::vector<Interval> base;
  const double param = params.param;
  switch (params.family) {
    case Family::const2:
    case Family::tanh2:
      base.push_back({-kInf, kInf});
      break;
    case Family::reciprocal:
    case Family::coth2:
      base.push_back({-kInf, 0.0});
      base.push_back({0.0, kInf});
      break;
    case Family::cot2:
      for (int k = -4; k < 4; ++k) base.push_back({k * kPi, (k + 1) * kPi});
      break;
    case Family::eps_continuation:
      if (param >= 0.0) {
        base.push_back({-kInf, 0.0});
        base.push_back({0.0, kInf});
      } else {
        const double period = kPi / std::sqrt(-param);
        for (int k = -4; k < 4; ++k) base.push_back({k * period, (k + 1) * period});
      }
      break;
    case Family::t_continuation:
      if (param >= 0.0) {
        base.push_back({-kInf, kInf});
      } else {
        const double q = 0.5 * std::log(-param);
        base.push_back({-kInf, q});
        base.push_back({q, kInf});
      }
      break;
  }
  // Map base intervals through tau_hat = p + tau/c.
  std::vector<Interval> out;
  out.reserve(base.size());
  const double c = params.affine_c, p = params.affine_p;
  auto map = [&](double t) {
    if (t == kInf) return c > 0 ? kInf : -kInf;
    if (t == -kInf) return c > 0 ? -kInf : kInf;
    return p + t / c;
  };
  for (const auto& iv : base) {
    double lo = map(iv.lo), hi = map(iv.hi);
    if (lo > hi) std::swap(lo, hi);
    out.push_back({lo, hi});
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

Taylor1 alpha_series(const ProfileParams& params, double tau_star, int order) {
  const ProfileEval pe = eval(params, tau_star);
  Taylor1 a(order);
  a[0] = pe.alpha;
  for (int k = 0; k + 1 <= order; ++k) {
    // 2 a' = 4 eps - a^2, coefficient by coefficient.
    double conv = 0.0;
    for (int i = 0; i <= k; ++i) conv += a[i] * a[k - i];
    double rhs = -0.5 * conv;
    if (k == 0) rhs += 2.0 * pe.eps;
    a[k + 1] = rhs / (k + 1);
  }
  return a;
}

Taylor1 f_series(const ProfileParams& params, double tau_star, int order) {
  const ProfileEval pe = eval(params, tau_star);
  const Taylor1 a = alpha_series(params, tau_star, order);
  Taylor1 f(order);
  f[0] = pe.F;
  if (order >= 1) f[1] = pe.F1;
  for (int k = 0; k + 2 <= order; ++k) {
    // F'' = -F alpha'
    double conv = 0.0;
    for (int i = 0; i <= k; ++i) conv += f[i] * (k - i + 1) * a[k - i + 1];
    f[k + 2] = -conv / ((k + 2) * (k + 1));
  }
  return f;
}

}  // namespace srh::profiles
