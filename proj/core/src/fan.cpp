#include "stab/fan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "stab/errors.hpp"
#include "stab/rational.hpp"

namespace stab {

namespace {

constexpr double kPi = std::numbers::pi;

double ddot(const std::vector<double>& a, const double* b) {
  double acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(ddot(a, a.data())); }

double smoothstep(double y, double band) {
  if (y <= -band) return 0.0;
  if (y >= band) return 1.0;
  // keeps U(-y) = 1 - U(y) bit for bit
  if (y < 0) return 1.0 - smoothstep(-y, band);
  double u = (y / band + 1.0) / 2.0;
  return u * u * (3.0 - 2.0 * u);
}

struct Knot {
  double angle;
  double cum;  // midpoint cumulative weight
  double weight;
};

// Piecewise-linear CDF through (angle_k, cum_k).
double quantile(const std::vector<Knot>& ks, double level) {
  if (ks.empty()) return 0.0;
  if (level <= ks.front().cum) return ks.front().angle;
  if (level >= ks.back().cum) return ks.back().angle;
  auto it = std::upper_bound(ks.begin(), ks.end(), level, [](double l, const Knot& k) { return l < k.cum; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  double span = hi.cum - lo.cum;
  if (span <= 0) return lo.angle;
  return lo.angle + (level - lo.cum) / span * (hi.angle - lo.angle);
}

void finish_knots(std::vector<Knot>& ks, double& total) {
  std::sort(ks.begin(), ks.end(), [](const Knot& a, const Knot& b) { return a.angle < b.angle; });
  double acc = 0;
  for (auto& k : ks) {
    k.cum = acc + k.weight / 2;
    acc += k.weight;
  }
  total = acc;
}

class Evaluator {
 public:
  Evaluator(const SampledMass& mass, int m, const FanModel& model) : mass_(mass), m_(m), model_(model) {
    if (mass.size() == 0) throw InputError("fan: empty mass");
    if (m < 2) throw InputError("fan: need m >= 2");
    const size_t n = mass.size();
    P_.resize(n);
    Q_.resize(n);
    U_.resize(n);
  }

  void set_frame(const Frame& f) {
    if (f.dim() != mass_.d) throw InputError("fan: frame dimension mismatch");
    const size_t n = mass_.size();
    for (size_t i = 0; i < n; ++i) {
      P_[i] = ddot(f.v, mass_.row(i));
      Q_[i] = ddot(f.w, mass_.row(i));
    }
    std::vector<double> sorted = P_;
    std::sort(sorted.begin(), sorted.end());
    s_ = (n % 2) ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2;
    double spread = sorted.back() - sorted.front();
    band_ = model_.band * (spread > 0 ? spread : 1.0);
    for (size_t i = 0; i < n; ++i) U_[i] = smoothstep(P_[i] - s_, band_);
    auto [qlo, qhi] = std::minmax_element(Q_.begin(), Q_.end());
    qmin_ = *qlo;
    qmax_ = *qhi;
    scale_ = std::max({1.0, qmax_ - qmin_, spread});
  }

  double halving() const { return s_; }

  // alpha_i, beta_i for i = 1..m-1 at spine offset t; returns sum gamma
  double angles(double t) {
    up_.clear();
    lo_.clear();
    const size_t n = P_.size();
    for (size_t j = 0; j < n; ++j) {
      double X = Q_[j] - t, Y = P_[j] - s_;
      // copies inside the band sit at height +-band, so angles move continuously in t
      if (U_[j] > 0) up_.push_back({std::atan2(std::max(Y, band_), X), 0.0, U_[j]});
      if (U_[j] < 1) {
        double b = std::atan2(std::min(Y, -band_), X) + 2 * kPi;
        lo_.push_back({b - kPi, 0.0, 1.0 - U_[j]});
      }
    }
    double A = 0, B = 0;
    finish_knots(up_, A);
    finish_knots(lo_, B);
    alpha_.resize(static_cast<size_t>(m_) - 1);
    beta_.resize(static_cast<size_t>(m_) - 1);
    double sum = 0;
    for (int i = 1; i < m_; ++i) {
      alpha_[i - 1] = quantile(up_, A * i / m_);
      beta_[i - 1] = quantile(lo_, B * i / m_);
      sum += alpha_[i - 1] - beta_[i - 1];
    }
    return sum;
  }

  double balance(double tol) {
    double lo = qmin_ - scale_, hi = qmax_ + scale_;
    double flo = angles(lo), fhi = angles(hi);
    if (!(flo < 0 && fhi > 0)) throw SolverError("balance_spine: no sign change of sum gamma", std::min(std::fabs(flo), std::fabs(fhi)));
    double abs_tol = tol * scale_;
    for (int it = 0; it < 200 && hi - lo > abs_tol; ++it) {
      double mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      double f = angles(mid);
      if (f == 0) return mid;
      if (f < 0) {
        lo = mid;
        flo = f;
      } else {
        hi = mid;
        fhi = f;
      }
    }
    double t = lo - flo * (hi - lo) / (fhi - flo);
    if (!(t >= lo && t <= hi)) t = lo + (hi - lo) / 2;
    return t;
  }

  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  int m() const { return m_; }

 private:
  const SampledMass& mass_;
  int m_;
  FanModel model_;
  std::vector<double> P_, Q_, U_;
  double s_ = 0, band_ = 0, qmin_ = 0, qmax_ = 0, scale_ = 1;
  std::vector<Knot> up_, lo_;
  std::vector<double> alpha_, beta_;
};

FanTestValue make_value(Evaluator& ev, double t) {
  FanTestValue out;
  const int m = ev.m();
  out.m = m;
  out.halving = ev.halving();
  out.spine = t;
  out.sum_gamma = ev.angles(t);
  out.alpha = ev.alpha();
  out.beta = ev.beta();
  out.gamma.resize(out.alpha.size());
  for (size_t i = 0; i < out.alpha.size(); ++i) out.gamma[i] = out.alpha[i] - out.beta[i];
  auto g = [&](int i) { return out.gamma[static_cast<size_t>(i) - 1]; };
  for (int i = 1; i <= (m - 1) / 2; ++i) out.lambda.push_back(g(i) - g(m - i));
  for (int i = 2; i <= (m - 1) / 2; ++i) out.mu.push_back(g(i) + g(m - i));
  out.G = out.lambda;
  out.G.insert(out.G.end(), out.mu.begin(), out.mu.end());
  return out;
}

Rational exact(double x) { return rational_from_double(x); }

std::vector<Rational> exact(const std::vector<double>& x) {
  std::vector<Rational> out;
  out.reserve(x.size());
  for (double v : x) out.push_back(exact(v));
  return out;
}

std::array<Rational, 2> ray_at(double angle) {
  return {exact(std::cos(angle)), exact(std::sin(angle))};
}

Fan fan_shell(const PointSet* s, const Frame& frame, double halving, double t, int m) {
  Fan fan;
  fan.m = m;
  fan.spine.v = exact(frame.v);
  fan.spine.w = exact(frame.w);
  fan.spine.s = s ? halving_offset(*s, fan.spine.v) : exact(halving);
  fan.spine.t = exact(t);
  return fan;
}

}  // namespace

Frame::Frame(std::vector<double> v_, std::vector<double> w_) : v(std::move(v_)), w(std::move(w_)) {
  if (v.size() != w.size() || v.size() < 2) throw InputError("Frame: v and w need equal dimension >= 2");
  if (std::fabs(norm(v) - 1) > kFrameTolerance || std::fabs(norm(w) - 1) > kFrameTolerance ||
      std::fabs(ddot(v, w.data())) > kFrameTolerance)
    throw InputError("Frame: v, w not orthonormal");
}

Frame orthonormal_frame(std::vector<double> v, std::vector<double> w) {
  double nv = norm(v);
  if (v.size() != w.size() || nv == 0) throw InputError("orthonormal_frame: bad input");
  for (auto& x : v) x /= nv;
  for (int pass = 0; pass < 2; ++pass) {
    double p = ddot(v, w.data());
    for (size_t i = 0; i < w.size(); ++i) w[i] -= p * v[i];
  }
  double nw = norm(w);
  if (nw < 1e-9) throw InputError("orthonormal_frame: dependent vectors");
  for (auto& x : w) x /= nw;
  return Frame(std::move(v), std::move(w));
}

Frame frame_2d(double a) {
  return Frame({std::cos(a), std::sin(a)}, {-std::sin(a), std::cos(a)});
}

Frame frame_3d(double a, double b, double c) {
  double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
  std::vector<double> v{sa * cb, sa * sb, ca};
  std::vector<double> ea{ca * cb, ca * sb, -sa};
  std::vector<double> eb{-sb, cb, 0.0};
  std::vector<double> w(3);
  for (int i = 0; i < 3; ++i) w[i] = std::cos(c) * ea[i] + std::sin(c) * eb[i];
  return orthonormal_frame(std::move(v), std::move(w));
}

SampledMass sampled_mass(const PointSet& s) {
  SampledMass out;
  out.d = s.dim();
  out.x.reserve(s.size() * static_cast<size_t>(s.dim()));
  for (const auto& p : s)
    for (int i = 0; i < s.dim(); ++i) out.x.push_back(p[i].get_d());
  return out;
}

SampledMass sample_ball(int d, const std::vector<double>& center, double radius, size_t count, std::uint64_t seed) {
  if (static_cast<int>(center.size()) != d) throw InputError("sample_ball: center dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SampledMass out;
  out.d = d;
  std::vector<double> u(static_cast<size_t>(d));
  for (size_t k = 0; k < count; k += 2) {
    double nn = 0;
    for (auto& x : u) {
      x = gauss(rng);
      nn += x * x;
    }
    double r = radius * std::pow(unif(rng), 1.0 / d) / std::sqrt(nn);
    for (int i = 0; i < d; ++i) out.x.push_back(center[i] + r * u[i]);
    if (k + 1 < count)
      for (int i = 0; i < d; ++i) out.x.push_back(center[i] - r * u[i]);
  }
  return out;
}

SampledMass sample_circle(int d, const std::vector<double>& center, double radius, size_t count, double phase) {
  if (static_cast<int>(center.size()) != d || d < 2) throw InputError("sample_circle: center dimension");
  SampledMass out;
  out.d = d;
  for (size_t k = 0; k < count; ++k) {
    double a = phase + 2 * kPi * static_cast<double>(k) / static_cast<double>(count);
    for (int i = 0; i < d; ++i) {
      double x = center[i];
      if (i == 0) x += radius * std::cos(a);
      if (i == 1) x += radius * std::sin(a);
      out.x.push_back(x);
    }
  }
  return out;
}

Rational halving_offset(const PointSet& s, const std::vector<Rational>& v) {
  if (s.size() == 0) throw InputError("halving_offset: empty set");
  if (static_cast<int>(v.size()) != s.dim()) throw InputError("halving_offset: dimension mismatch");
  if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; }))
    throw InputError("halving_offset: zero direction");
  std::vector<Rational> proj;
  proj.reserve(s.size());
  for (const auto& p : s) proj.push_back(dot(std::span<const Rational>(v), p));
  std::sort(proj.begin(), proj.end());
  const size_t n = proj.size();
  if (n % 2) return proj[n / 2];
  return (proj[n / 2 - 1] + proj[n / 2]) / 2;
}

double halving_offset(const SampledMass& mass, const std::vector<double>& v) {
  if (mass.size() == 0) throw InputError("halving_offset: empty mass");
  if (norm(v) == 0) throw InputError("halving_offset: zero direction");
  std::vector<double> proj(mass.size());
  for (size_t i = 0; i < mass.size(); ++i) proj[i] = ddot(v, mass.row(i));
  std::sort(proj.begin(), proj.end());
  const size_t n = proj.size();
  return (n % 2) ? proj[n / 2] : (proj[n / 2 - 1] + proj[n / 2]) / 2;
}

Fan fan_quantile_angles(const SampledMass& mass, const Frame& frame, double spine_offset, int m,
                        const FanModel& model) {
  if (mass.size() < 2 * static_cast<size_t>(m)) throw InputError("fan_quantile_angles: fewer than 2m points");
  Evaluator ev(mass, m, model);
  ev.set_frame(frame);
  ev.angles(spine_offset);
  Fan fan = fan_shell(nullptr, frame, ev.halving(), spine_offset, m);
  fan.angles.assign(static_cast<size_t>(2 * m), 0.0);
  fan.angles[m] = kPi;
  for (int i = 1; i < m; ++i) {
    fan.angles[i] = ev.alpha()[i - 1];
    fan.angles[m + i] = kPi + ev.beta()[i - 1];
  }
  for (int k = 0; k < 2 * m; ++k) fan.rays.push_back(ray_at(fan.angles[k]));
  fan.rays[0] = {Rational(1), Rational(0)};
  fan.rays[m] = {Rational(-1), Rational(0)};
  return fan;
}

double balance_spine(const SampledMass& mass, const Frame& frame, int m, const FanModel& model, double tolerance) {
  Evaluator ev(mass, m, model);
  ev.set_frame(frame);
  return ev.balance(tolerance);
}

double sum_gamma(const SampledMass& mass, const Frame& frame, double spine_offset, int m, const FanModel& model) {
  Evaluator ev(mass, m, model);
  ev.set_frame(frame);
  return ev.angles(spine_offset);
}

double FanTestValue::norm() const {
  double acc = 0;
  for (double g : G) acc += g * g;
  return std::sqrt(acc);
}

FanTestValue test_map(const SampledMass& mass, const Frame& frame, int m, const FanModel& model,
                      double spine_tolerance) {
  if (m == 0) m = 2 * frame.dim() - 1;
  Evaluator ev(mass, m, model);
  ev.set_frame(frame);
  double t = ev.balance(spine_tolerance);
  return make_value(ev, t);
}

int sector_of(const Fan& fan, const ExactPoint& p) {
  const int k2 = static_cast<int>(fan.rays.size());
  Rational X = dot(std::span<const Rational>(fan.spine.w), p) - fan.spine.t;
  Rational Y = dot(std::span<const Rational>(fan.spine.v), p) - fan.spine.s;
  if (sgn(X) == 0 && sgn(Y) == 0) return 0;
  auto cross = [](const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
    return sgn(ax * by - ay * bx);
  };
  for (int k = 0; k < k2; ++k) {
    const auto& r = fan.rays[k];
    if (cross(r[0], r[1], X, Y) == 0 && sgn(r[0] * X + r[1] * Y) > 0) return k == 0 ? 0 : k - 1;
  }
  for (int k = 0; k < k2; ++k) {
    const auto& a = fan.rays[k];
    const auto& b = fan.rays[(k + 1) % k2];
    int wedge = cross(a[0], a[1], b[0], b[1]);
    bool after_a = cross(a[0], a[1], X, Y) > 0;
    bool before_b = cross(X, Y, b[0], b[1]) > 0;
    if (wedge > 0 ? (after_a && before_b) : (after_a || before_b)) return k;
  }
  throw std::logic_error("sector_of: rays are not in circular order");
}

std::vector<std::uint64_t> certify_part_counts(const PointSet& s, const Fan& fan) {
  std::vector<std::uint64_t> counts(fan.rays.size(), 0);
  for (const auto& p : s) ++counts[static_cast<size_t>(sector_of(fan, p))];
  return counts;
}

Fan aligned_fan(const PointSet& s, const Frame& frame, const FanTestValue& value) {
  const int m = value.m;
  Fan fan = fan_shell(&s, frame, value.halving, value.spine, m);
  fan.angles.assign(static_cast<size_t>(2 * m), 0.0);
  fan.rays.resize(static_cast<size_t>(2 * m));
  fan.angles[m] = kPi;
  fan.rays[0] = {Rational(1), Rational(0)};
  fan.rays[m] = {Rational(-1), Rational(0)};
  for (int i = 1; i < m; ++i) {
    double theta = (value.alpha[i - 1] + value.beta[i - 1]) / 2;
    fan.angles[i] = theta;
    fan.angles[m + i] = theta + kPi;
    fan.rays[i] = ray_at(theta);
    fan.rays[m + i] = {-fan.rays[i][0], -fan.rays[i][1]};
  }
  fan.residual = value.norm();
  fan.part_counts = certify_part_counts(s, fan);
  return fan;
}

namespace {

FanSolveResult finish(const PointSet& s, const Frame& f, const FanTestValue& v, int evals) {
  FanSolveResult r{aligned_fan(s, f, v), f, v, evals};
  return r;
}

FanSolveResult solve_2d(const PointSet& s, const SampledMass& mass, const FanSolveOptions& opt) {
  Evaluator ev(mass, 3, opt.model);
  int evals = 0;
  auto G = [&](double a, FanTestValue* out = nullptr) {
    ++evals;
    ev.set_frame(frame_2d(a));
    double t = ev.balance(1e-13);
    FanTestValue v = make_value(ev, t);
    if (out) *out = v;
    return v.G[0];
  };
  const int K = std::max(8, opt.sweep);
  std::vector<double> xs(static_cast<size_t>(K) + 1), gs(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    xs[k] = kPi * k / K;
    gs[k] = G(xs[k]);
  }
  double best_res = std::numeric_limits<double>::infinity();
  for (int k = 0; k < K; ++k) {
    double lo = xs[k], hi = xs[k + 1], glo = gs[k], ghi = gs[k + 1];
    if (glo == 0 || (glo < 0) != (ghi < 0) || ghi == 0) {
      FanTestValue v;
      double a = glo == 0 ? lo : hi;
      if (glo != 0 && ghi != 0) {
        for (int it = 0; it < 200; ++it) {
          double mid = lo + (hi - lo) / 2;
          double g = G(mid, &v);
          a = mid;
          if (std::fabs(g) <= opt.tolerance * 1e-3 || mid <= lo || mid >= hi) break;
          if ((g < 0) == (glo < 0)) {
            lo = mid;
            glo = g;
          } else {
            hi = mid;
          }
        }
      }
      G(a, &v);
      best_res = std::min(best_res, v.norm());
      if (v.norm() <= opt.tolerance) return finish(s, frame_2d(a), v, evals);
    }
  }
  throw SolverError("solve_equipartition_fan: no zero of G found in the sweep", best_res);
}

FanSolveResult solve_3d(const PointSet& s, const SampledMass& mass, const FanSolveOptions& opt) {
  Evaluator ev(mass, 5, opt.model);
  int evals = 0;
  using V3 = Eigen::Vector3d;
  auto frame_of = [](const V3& p) { return frame_3d(p[0], p[1], p[2]); };
  auto G = [&](const V3& p, double tol, FanTestValue* out = nullptr) {
    ++evals;
    ev.set_frame(frame_of(p));
    double t = ev.balance(tol);
    FanTestValue v = make_value(ev, t);
    if (out) *out = v;
    return V3(v.G[0], v.G[1], v.G[2]);
  };

  struct Seed {
    double res;
    V3 p;
  };
  std::vector<Seed> grid;
  const int K = std::max(2, opt.grid);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j)
      for (int k = 0; k < K; ++k) {
        V3 p((i + 0.5) * (kPi / 2) / K, j * 2 * kPi / K, k * kPi / K);
        grid.push_back({G(p, 1e-7).norm(), p});
      }
  const int grid_evals = evals;
  std::sort(grid.begin(), grid.end(), [](const Seed& a, const Seed& b) { return a.res < b.res; });
  const size_t nseeds = std::min(grid.size(), static_cast<size_t>(std::max(1, opt.seeds)));

  const double target = opt.tolerance * 1e-3;
  const double h = 1e-6;
  double best_res = std::numeric_limits<double>::infinity();
  V3 best_p = grid.front().p;
  auto budget_left = [&] { return evals - grid_evals < opt.max_evaluations; };
  auto jacobian = [&](const V3& p, const V3& g) {
    Eigen::Matrix3d J;
    for (int c = 0; c < 3; ++c) {
      V3 q = p;
      q[c] += h;
      J.col(c) = (G(q, 1e-13) - g) / h;
    }
    return J;
  };

  for (size_t si = 0; si < nseeds && budget_left(); ++si) {
    V3 p = grid[si].p;
    V3 g = G(p, 1e-13);
    Eigen::Matrix3d J = jacobian(p, g);
    bool fresh = true;
    for (int it = 0; it < 80 && budget_left(); ++it) {
      double r = g.norm();
      if (r < best_res) {
        best_res = r;
        best_p = p;
      }
      if (r <= target) break;
      V3 dx = -J.fullPivLu().solve(g);
      if (!dx.allFinite()) {
        if (fresh) break;
        J = jacobian(p, g);
        fresh = true;
        continue;
      }
      double len = dx.norm();
      if (len > 0.3) dx *= 0.3 / len;
      bool accepted = false;
      double lam = 1.0;
      V3 pn, gn;
      for (int ls = 0; ls < 10 && budget_left(); ++ls) {
        pn = p + lam * dx;
        gn = G(pn, 1e-13);
        if (gn.norm() < (1 - 1e-4 * lam) * r) {
          accepted = true;
          break;
        }
        lam /= 2;
      }
      if (!accepted) {
        if (fresh) break;
        J = jacobian(p, g);
        fresh = true;
        continue;
      }
      V3 sx = pn - p, y = gn - g;
      J += ((y - J * sx) * sx.transpose()) / sx.squaredNorm();
      p = pn;
      g = gn;
      fresh = false;
    }
    if (g.norm() < best_res) {
      best_res = g.norm();
      best_p = p;
    }
    if (best_res <= target) break;
  }
  FanTestValue v;
  G(best_p, 1e-13, &v);
  if (v.norm() > opt.tolerance)
    throw SolverError("solve_equipartition_fan: refinement did not reach tolerance", v.norm());
  return finish(s, frame_of(best_p), v, evals);
}

}  // namespace

FanSolveResult solve_equipartition_fan(const PointSet& s, int d, const FanSolveOptions& opt) {
  if (d != s.dim()) throw InputError("solve_equipartition_fan: d does not match the point set");
  if (d != 2 && d != 3) throw InputError("solve_equipartition_fan: only d = 2, 3 are supported");
  if (s.size() < static_cast<size_t>(4 * d - 2)) throw InputError("solve_equipartition_fan: need n >= 4d-2");
  SampledMass mass = sampled_mass(s);
  return d == 2 ? solve_2d(s, mass, opt) : solve_3d(s, mass, opt);
}

std::uint64_t sector_triangle_certificate(int m) {
  if (m < 2) throw InputError("sector_triangle_certificate: m < 2");
  std::uint64_t mm = static_cast<std::uint64_t>(m);
  return (mm + 1) * mm * (mm - 1) / 3;
}

SectorConfiguration random_sector_configuration(int m, std::uint64_t seed, int collinear) {
  if (m < 2) throw InputError("random_sector_configuration: m < 2");
  if (collinear < 0 || collinear > m) throw InputError("random_sector_configuration: collinear out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double quantum = std::ldexp(1.0, -30);
  auto dyadic = [&](double x) { return rational_from_double(std::round(x / quantum) * quantum); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> lines(static_cast<size_t>(m));
    for (auto& a : lines) a = unif(rng) * kPi;
    std::sort(lines.begin(), lines.end());
    bool spaced = true;
    for (int i = 0; i + 1 < m; ++i) spaced = spaced && lines[i + 1] - lines[i] > 1e-2;
    spaced = spaced && lines[0] + kPi - lines[m - 1] > 1e-2;
    if (!spaced) continue;
    std::vector<double> rays = lines;
    for (double a : lines) rays.push_back(a + kPi);
    SectorConfiguration c;
    c.m = m;
    c.x = ExactPoint{0, 0};
    for (int k = 0; k < 2 * m; ++k) {
      double lo = rays[k], hi = k + 1 < 2 * m ? rays[k + 1] : rays[0] + 2 * kPi;
      double margin = (hi - lo) * 0.05;
      double a = lo + margin + unif(rng) * (hi - lo - 2 * margin);
      double r = 0.5 + 1.5 * unif(rng);
      c.points.push_back(ExactPoint{dyadic(r * std::cos(a)), dyadic(r * std::sin(a))});
    }
    for (int k = 0; k < collinear; ++k) {
      Rational f = dyadic(0.5 + 1.5 * unif(rng));
      c.points[k + m] = ExactPoint{-f * c.points[k][0], -f * c.points[k][1]};
    }
    // general position apart from the injected pairs
    bool ok = true;
    const int n = 2 * m;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        bool injected = j == i + m && i < collinear;
        if (!injected && orientation(c.x, c.points[i], c.points[j]) == Sign::zero) ok = false;
        for (int k = j + 1; k < n && ok; ++k)
          if (orientation(c.points[i], c.points[j], c.points[k]) == Sign::zero) ok = false;
      }
    if (ok) return c;
  }
  throw ConstructionError("random_sector_configuration: retry budget exhausted");
}

SectorCheck check_sector_configuration(const SectorConfiguration& c) {
  const int n = static_cast<int>(c.points.size());
  const int m = c.m;
  if (n != 2 * m) throw InputError("check_sector_configuration: need 2m points");
  SectorCheck out;
  out.certificate = sector_triangle_certificate(m);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        int gaps[3] = {j - i, k - j, n - (k - i)};
        bool medium = false, lng = false;
        for (int g : gaps) {
          medium = medium || g == m;
          lng = lng || g > m;
        }
        if (lng)
          ++out.long_triangles;
        else if (medium)
          ++out.medium_triangles;
        else
          ++out.short_triangles;
        std::array<ExactPoint, 3> tri{c.points[i], c.points[j], c.points[k]};
        if (orientation(std::span<const ExactPoint>(tri)) == Sign::zero) continue;
        Inclusion inc = classify_in_simplex(std::span<const ExactPoint>(tri), c.x);
        if (inc == Inclusion::interior) ++out.strict;
        if (inc != Inclusion::outside) ++out.closed;
      }
  return out;
}

}  // namespace stab
