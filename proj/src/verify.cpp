#include "lemknot/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace lemknot {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::pair<std::complex<double>, std::complex<double>> horner(
    const std::vector<std::complex<double>>& coeffs, std::complex<double> u) {
  std::complex<double> p{0.0, 0.0}, dp{0.0, 0.0};
  for (size_t k = coeffs.size(); k-- > 0;) {
    dp = dp * u + p;
    p = p * u + coeffs[k];
  }
  return {p, dp};
}

double coeff_scale(const std::vector<std::complex<double>>& coeffs) {
  double s = 0.0;
  for (const auto& c : coeffs) s = std::max(s, std::abs(c));
  return s;
}

std::complex<double> newton_root(const std::vector<std::complex<double>>& coeffs,
                                 std::complex<double> start, int iterations = 12) {
  std::complex<double> u = start;
  for (int it = 0; it < iterations; ++it) {
    auto [p, dp] = horner(coeffs, u);
    if (std::abs(dp) == 0.0) break;
    std::complex<double> delta = p / dp;
    u -= delta;
    if (std::abs(delta) < 1e-15 * (1.0 + std::abs(u))) break;
  }
  return u;
}

// Match each previous root to the nearest new root; empty when not bijective.
std::vector<int> nearest_assignment(const std::vector<std::complex<double>>& prev,
                                    const std::vector<std::complex<double>>& next) {
  const size_t n = prev.size();
  std::vector<int> pick(n, -1);
  std::vector<bool> taken(n, false);
  for (size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (size_t j = 0; j < n; ++j) {
      double d = std::abs(prev[i] - next[j]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(j);
      }
    }
    if (arg < 0 || taken[arg]) return {};
    taken[arg] = true;
    pick[i] = arg;
  }
  return pick;
}

double min_pairwise(const std::vector<std::complex<double>>& roots) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      best = std::min(best, std::abs(roots[i] - roots[j]));
  return best;
}

}  // namespace

std::vector<std::complex<double>> find_roots(
    const std::vector<std::complex<double>>& coeffs) {
  if (coeffs.size() < 2) throw ValidationError("find_roots needs degree >= 1");
  const int n = static_cast<int>(coeffs.size()) - 1;
  double scale = coeff_scale(coeffs);
  if (scale == 0.0) throw DegenerateLeadingError("zero polynomial");
  if (std::abs(coeffs.back()) < 1e-12 * scale)
    throw DegenerateLeadingError("leading coefficient vanishes");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i] / coeffs.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = newton_root(coeffs, solver.eigenvalues()(i));
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

namespace {

// Newton continuation of a full root set; falls back to eigenvalues with
// proximity reassignment. Returns empty on collision.
std::vector<std::complex<double>> continue_roots(
    const std::vector<std::complex<double>>& coeffs,
    const std::vector<std::complex<double>>& prev) {
  const size_t n = prev.size();
  std::vector<std::complex<double>> next(n);
  double scale = coeff_scale(coeffs);
  bool clean = true;
  for (size_t j = 0; j < n; ++j) {
    next[j] = newton_root(coeffs, prev[j]);
    auto [p, dp] = horner(coeffs, next[j]);
    if (std::abs(p) > 1e-9 * scale) clean = false;
  }
  if (clean && min_pairwise(next) < 1e-12) clean = false;
  if (clean) {
    // Newton from distinct seeds can still merge; require a bijection back
    for (size_t i = 0; i < n && clean; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (std::abs(next[i] - next[j]) < 1e-10 * (1.0 + std::abs(next[i]))) {
          clean = false;
          break;
        }
  }
  if (!clean) {
    auto fresh = find_roots(coeffs);
    auto pick = nearest_assignment(prev, fresh);
    if (pick.empty()) return {};
    for (size_t j = 0; j < n; ++j) next[j] = fresh[pick[j]];
  }
  return next;
}

}  // namespace

RootTrack track_braid(const SemiholoPolynomial& f, const TrackOptions& opts) {
  int steps = opts.steps;
  for (int attempt = 0;; ++attempt) {
    const double dh = kTau / steps;
    const double h0 = -dh * 0.381966011250105;  // crossings at h=0 land in bin 0
    RootTrack track;
    track.h_grid.resize(steps + 1);
    track.roots.resize(steps + 1);
    track.min_separation = std::numeric_limits<double>::infinity();

    bool failed = false;
    double max_motion = 0.0;
    for (int k = 0; k <= steps && !failed; ++k) {
      double h = h0 + dh * k;
      track.h_grid[k] = h;
      auto coeffs = f.u_coefficients(std::polar(1.0, h));
      if (k == 0) {
        track.roots[k] = find_roots(coeffs);
      } else {
        track.roots[k] = continue_roots(coeffs, track.roots[k - 1]);
        if (track.roots[k].empty()) {
          failed = true;
          break;
        }
        for (size_t j = 0; j < track.roots[k].size(); ++j)
          max_motion = std::max(max_motion,
                                std::abs(track.roots[k][j] - track.roots[k - 1][j]));
      }
      track.min_separation = std::min(track.min_separation, min_pairwise(track.roots[k]));
    }
    if (!failed && max_motion > 0.45 * track.min_separation) failed = true;

    if (failed) {
      if (attempt >= opts.max_refinements)
        throw CollisionDetectedError(
            "root tracking failed; strands collide or resolution exhausted");
      steps *= 2;
      continue;
    }

    auto perm = nearest_assignment(track.roots[steps], track.roots[0]);
    if (perm.empty())
      throw CollisionDetectedError("monodromy assignment is not a bijection");
    track.monodromy = perm;
    std::vector<bool> seen(perm.size(), false);
    for (size_t i = 0; i < perm.size(); ++i) {
      if (seen[i]) continue;
      ++track.monodromy_cycles;
      for (size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }

    if (opts.analytic != nullptr) {
      double worst = 0.0;
      for (int k = 0; k <= steps; k += std::max(1, steps / 256)) {
        std::vector<std::complex<double>> expect;
        for (const auto& s : *opts.analytic)
          expect.push_back(s.eval(track.h_grid[k]) * opts.analytic_scale);
        auto pick = nearest_assignment(track.roots[k], expect);
        if (pick.empty()) {
          worst = std::numeric_limits<double>::infinity();
          break;
        }
        for (size_t j = 0; j < pick.size(); ++j)
          worst = std::max(worst, std::abs(track.roots[k][j] - expect[pick[j]]));
      }
      track.match_residual = worst;
    }
    return track;
  }
}

namespace {

struct Crossing {
  double h;
  int generator;  // 1-based rank position
  int sign;
};

// Crossing extraction shared by the flat braid track and the on-sphere curve:
// tracks are per-step per-strand complex positions.
std::vector<Crossing> detect_crossings(
    const std::vector<double>& h_grid,
    const std::vector<std::vector<std::complex<double>>>& tracks) {
  const int steps = static_cast<int>(h_grid.size()) - 1;
  const size_t n = tracks.front().size();
  std::vector<Crossing> out;
  std::vector<int> order_a(n), order_b(n), pos_a(n), pos_b(n);
  for (int k = 0; k < steps; ++k) {
    const auto& za = tracks[k];
    const auto& zb = tracks[k + 1];
    std::iota(order_a.begin(), order_a.end(), 0);
    std::iota(order_b.begin(), order_b.end(), 0);
    std::sort(order_a.begin(), order_a.end(),
              [&](int i, int j) { return za[i].real() < za[j].real(); });
    std::sort(order_b.begin(), order_b.end(),
              [&](int i, int j) { return zb[i].real() < zb[j].real(); });
    if (order_a == order_b) continue;
    for (size_t i = 0; i < n; ++i) {
      pos_a[order_a[i]] = static_cast<int>(i);
      pos_b[order_b[i]] = static_cast<int>(i);
    }
    std::vector<Crossing> batch;
    for (size_t i = 0; i < n; ++i) {
      int a = order_a[i];
      if (pos_b[a] == static_cast<int>(i)) continue;
      if (pos_b[a] != static_cast<int>(i) + 1 || i + 1 >= n)
        throw AmbiguousCrossingError("strand moved more than one rank per step");
      int b = order_a[i + 1];
      if (pos_b[b] != static_cast<int>(i))
        throw AmbiguousCrossingError("non-adjacent rank exchange");
      // interpolate the crossing parameter from the x-difference sign change
      double dxa = za[a].real() - za[b].real();
      double dxb = zb[a].real() - zb[b].real();
      double frac = dxb - dxa == 0.0 ? 0.5 : dxa / (dxa - dxb);
      frac = std::clamp(frac, 0.0, 1.0);
      double h = h_grid[k] + frac * (h_grid[k + 1] - h_grid[k]);
      double ya = za[a].imag() + frac * (zb[a].imag() - za[a].imag());
      double yb = za[b].imag() + frac * (zb[b].imag() - za[b].imag());
      // strand arriving from the right below is on the left above; it crosses
      // over when its y is larger
      int sign = yb > ya ? 1 : -1;
      batch.push_back({h, static_cast<int>(i) + 1, sign});
      ++i;  // the partner was consumed
    }
    double bucket = (h_grid[k + 1] - h_grid[k]) / 16.0;
    std::sort(batch.begin(), batch.end(), [&](const Crossing& a, const Crossing& b) {
      if (std::abs(a.h - b.h) > bucket) return a.h < b.h;
      return a.generator < b.generator;
    });
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

// The closed-braid word is defined up to cyclic (Markov) rotation by where
// the height window starts. Canonical form: begin at a batch of odd
// generators, matching the odd-then-even basic word convention for every
// strand parity.
std::vector<Crossing> rotate_to_odd_batch(std::vector<Crossing> crossings) {
  const double batch_gap = 1e-3;
  for (size_t i = 0; i < crossings.size(); ++i) {
    bool batch_start = i == 0 || crossings[i].h - crossings[i - 1].h > batch_gap;
    if (batch_start && crossings[i].generator % 2 == 1) {
      std::rotate(crossings.begin(), crossings.begin() + i, crossings.end());
      break;
    }
  }
  return crossings;
}

BraidWord word_from_crossings(int strands, const std::vector<Crossing>& crossings) {
  BraidWord w{strands, {}};
  for (const auto& c : crossings) w.letters.push_back({c.generator, c.sign});
  return w;
}

} // namespace

BraidWord recover_braid_word(const RootTrack& track) {
  auto crossings = rotate_to_odd_batch(detect_crossings(track.h_grid, track.roots));
  return word_from_crossings(static_cast<int>(track.roots.front().size()), crossings);
}

BraidWord recover_braid_word_refined(const SemiholoPolynomial& f, TrackOptions opts) {
  for (int attempt = 0;; ++attempt) {
    try {
      RootTrack track = track_braid(f, opts);
      return recover_braid_word(track);
    } catch (const AmbiguousCrossingError&) {
      if (attempt >= opts.max_refinements) throw;
      opts.steps *= 2;
    }
  }
}

namespace {

struct SphereSlice {
  std::vector<std::complex<double>> u;  // intersection points, strand-ordered
  std::vector<double> rho;
  std::vector<double> transversality;
};

// March the root branches of f(., c e^{ih}) down in c and find where each
// crosses |u|^2 + c^2 = R^2.
// Throws WrongRootCountError / NotTransverseError when the slice cannot be
// certified (both signal that lambda is too large).
bool slice_sphere(const SemiholoPolynomial& f, double h, const NodalOptions& opts,
                  SphereSlice& out) {
  const double R = opts.sphere_radius;
  const double floor_c = opts.rho_floor * R;
  auto coeffs_at = [&](double c) { return f.u_coefficients(std::polar(c, h)); };

  double c = R;
  std::vector<std::complex<double>> roots = find_roots(coeffs_at(c));
  const size_t n = roots.size();
  std::vector<int> crossings(n, 0);
  out.u.assign(n, {});
  out.rho.assign(n, 0.0);
  out.transversality.assign(n, 0.0);
  std::vector<double> g(n);
  for (size_t j = 0; j < n; ++j) g[j] = std::norm(roots[j]) + c * c - R * R;

  size_t crossed = 0;
  while (c > floor_c) {
    double c_next = std::max(floor_c, c - opts.rho_step * R);
    auto coeffs = coeffs_at(c_next);
    auto next = continue_roots(coeffs, roots);
    if (next.empty()) {
      if (crossed == n) break;  // collisions below the sphere belt are harmless
      throw WrongRootCountError("root collision during descent");
    }
    for (size_t j = 0; j < n; ++j) {
      double g_next = std::norm(next[j]) + c_next * c_next - R * R;
      if (g[j] > 0.0 && g_next <= 0.0) {
        // bisect [c_next, c] for the sphere crossing of this branch
        double lo = c_next, hi = c;
        std::complex<double> root_lo = next[j], root_hi = roots[j];
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          std::complex<double> seed = std::abs(mid - lo) < std::abs(hi - mid) ? root_lo : root_hi;
          std::complex<double> u_mid = newton_root(coeffs_at(mid), seed);
          double g_mid = std::norm(u_mid) + mid * mid - R * R;
          if (g_mid <= 0.0) {
            lo = mid;
            root_lo = u_mid;
          } else {
            hi = mid;
            root_hi = u_mid;
          }
          if (hi - lo < 1e-13 * R) break;
        }
        ++crossings[j];
        if (crossings[j] == 1) {
          out.u[j] = root_lo;
          out.rho[j] = lo;
          out.transversality[j] =
              std::abs(f.evaluate(root_lo, std::polar(lo, h)).fu);
          ++crossed;
        }
      } else if (g[j] <= 0.0 && g_next > 0.0) {
        ++crossings[j];  // re-emerging branch: not a single transverse pass
      }
      g[j] = g_next;
    }
    roots = std::move(next);
    c = c_next;
  }

  for (size_t j = 0; j < n; ++j) {
    if (crossings[j] != 1)
      throw WrongRootCountError("branch crossed the sphere " +
                                std::to_string(crossings[j]) +
                                " times (lambda too large?)");
    if (out.transversality[j] <= opts.transversality_tol)
      throw NotTransverseError("intersection not transverse");
  }
  return true;
}

double field_coefficient_scale(const SemiholoPolynomial& f) {
  double s = 0.0;
  for (const auto& [m, c] : f.terms())
    s = std::max(s, std::abs(c.to_complex()));
  return s;
}

}  // namespace

NodalCertificate verify_nodal_on_sphere(const SemiholoPolynomial& f,
                                        const NodalOptions& opts) {
  NodalCertificate cert;
  int steps = opts.h_steps;
  const double scale = field_coefficient_scale(f);

  for (int attempt = 0;; ++attempt) {
    bool retry = false;
    try {
      const double dh = kTau / steps;
      const double h0 = -dh * 0.381966011250105;
      std::vector<double> h_grid(steps + 1);
      std::vector<std::vector<std::complex<double>>> u_tracks(steps + 1);
      std::vector<std::vector<double>> rho_tracks(steps + 1);
      double min_trans = std::numeric_limits<double>::infinity();
      double max_res = 0.0;

      for (int k = 0; k <= steps; ++k) {
        double h = h0 + dh * k;
        h_grid[k] = h;
        SphereSlice slice;
        try {
          slice_sphere(f, h, opts, slice);
        } catch (const Error& e) {
          cert.passed = false;
          cert.failure = std::string(e.what()) + " at h=" + std::to_string(h);
          return cert;
        }
        if (k > 0) {
          auto pick = nearest_assignment(u_tracks[k - 1], slice.u);
          if (pick.empty()) {
            retry = true;
            break;
          }
          std::vector<std::complex<double>> u_sorted(slice.u.size());
          std::vector<double> rho_sorted(slice.u.size()), tr_sorted(slice.u.size());
          for (size_t j = 0; j < pick.size(); ++j) {
            u_sorted[j] = slice.u[pick[j]];
            rho_sorted[j] = slice.rho[pick[j]];
            tr_sorted[j] = slice.transversality[pick[j]];
          }
          slice.u = std::move(u_sorted);
          slice.rho = std::move(rho_sorted);
          slice.transversality = std::move(tr_sorted);
        }
        for (size_t j = 0; j < slice.u.size(); ++j) {
          min_trans = std::min(min_trans, slice.transversality[j]);
          max_res = std::max(
              max_res, std::abs(f.value(slice.u[j], std::polar(slice.rho[j], h))));
        }
        u_tracks[k] = slice.u;
        rho_tracks[k] = slice.rho;
      }

      if (!retry) {
        auto perm = nearest_assignment(u_tracks[steps], u_tracks[0]);
        if (perm.empty()) {
          retry = true;
        } else {
          // components from the monodromy cycles; each cycle is one curve
          const size_t n = perm.size();
          std::vector<bool> seen(n, false);
          for (size_t start = 0; start < n; ++start) {
            if (seen[start]) continue;
            NodalCurve curve;
            size_t j = start;
            do {
              seen[j] = true;
              for (int k = 0; k < steps; ++k) {
                std::complex<double> v = std::polar(rho_tracks[k][j], h_grid[k]);
                curve.points.push_back({u_tracks[k][j].real(), u_tracks[k][j].imag(),
                                        v.real(), v.imag()});
              }
              j = static_cast<size_t>(perm[j]);
            } while (j != start);
            curve.closed = true;
            curve.residual = max_res;
            cert.curves.push_back(std::move(curve));
          }
          cert.components = static_cast<int>(cert.curves.size());
          cert.word = word_from_crossings(
              static_cast<int>(u_tracks.front().size()),
              rotate_to_odd_batch(detect_crossings(h_grid, u_tracks)));
          cert.max_residual = max_res;
          cert.min_transversality = min_trans;
          if (max_res > opts.residual_tol * std::max(scale, 1.0)) {
            cert.passed = false;
            cert.failure = "residual above tolerance";
            return cert;
          }
          cert.passed = true;
          return cert;
        }
      }
    } catch (const AmbiguousCrossingError&) {
      retry = true;
    } catch (const DegenerateLeadingError& e) {
      cert.passed = false;
      cert.failure = e.what();
      return cert;
    }
    if (retry) {
      if (attempt >= opts.max_refinements) {
        cert.passed = false;
        cert.failure = "resolution exhausted while assembling the nodal curve";
        return cert;
      }
      steps *= 2;
      cert = NodalCertificate{};
      continue;
    }
  }
}

namespace {

double halton(long index, int base) {
  double f = 1.0, r = 0.0;
  for (long i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

struct TubeIndex {
  double cell;
  std::unordered_map<long long, std::vector<std::array<double, 4>>> cells;

  explicit TubeIndex(const std::vector<NodalCurve>& curves, double radius)
      : cell(std::max(radius, 1e-6)) {
    for (const auto& c : curves)
      for (const auto& p : c.points) cells[key(p)].push_back(p);
  }

  long long key(const std::array<double, 4>& p) const {
    long long k = 0;
    for (int i = 0; i < 4; ++i) {
      long long q = static_cast<long long>(std::floor(p[i] / cell)) & 0xffff;
      k = (k << 16) | q;
    }
    return k;
  }

  bool near(const std::array<double, 4>& p, double radius) const {
    std::array<double, 4> probe;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c)
          for (int d = -1; d <= 1; ++d) {
            probe = {p[0] + a * cell, p[1] + b * cell, p[2] + c * cell, p[3] + d * cell};
            auto it = cells.find(key(probe));
            if (it == cells.end()) continue;
            for (const auto& q : it->second) {
              double s = 0.0;
              for (int i = 0; i < 4; ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
              if (s < radius * radius) return true;
            }
          }
    return false;
  }
};

}  // namespace

std::array<double, 4> arg_gradient(const SemiholoPolynomial& f,
                                   const std::array<double, 4>& p) {
  auto ev = f.evaluate({p[0], p[1]}, {p[2], p[3]});
  if (std::abs(ev.f) == 0.0) return {0, 0, 0, 0};
  std::complex<double> inv_f = 1.0 / ev.f;
  std::complex<double> gu = ev.fu * inv_f;
  std::complex<double> gv = (ev.fv + ev.fvb) * inv_f;
  std::complex<double> gw = (ev.fv - ev.fvb) * inv_f;
  // d/dx2 f = i f_u and d/dx4 f = i (f_v - f_vb); Im(i w) = Re(w)
  return {gu.imag(), gu.real(), gv.imag(), gw.real()};
}

FibrationReport fibration_scan(const SemiholoPolynomial& f,
                               const std::vector<NodalCurve>& nodal,
                               const FibrationOptions& opts) {
  FibrationReport rep;
  rep.sample_count = opts.samples;
  rep.tolerance = opts.tolerance;
  rep.min_grad_norm = std::numeric_limits<double>::infinity();
  TubeIndex tube(nodal, opts.tube_radius);

  const int bases[4] = {2, 3, 5, 7};
  const long draw_cap = 4 * opts.samples;  // the tube occupies a small volume
  for (long i = 0; rep.used_samples < opts.samples && i < draw_cap; ++i) {
    double q[4];
    for (int d = 0; d < 4; ++d) q[d] = halton(i + 31, bases[d]);
    // two Box-Muller pairs -> isotropic 4-vector -> unit S^3 sample
    double r1 = std::sqrt(-2.0 * std::log(std::max(q[0], 1e-300)));
    double r2 = std::sqrt(-2.0 * std::log(std::max(q[2], 1e-300)));
    std::array<double, 4> p{r1 * std::cos(kTau * q[1]), r1 * std::sin(kTau * q[1]),
                            r2 * std::cos(kTau * q[3]), r2 * std::sin(kTau * q[3])};
    double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    if (norm == 0.0) continue;
    for (auto& x : p) x /= norm;
    if (tube.near(p, opts.tube_radius)) continue;
    ++rep.used_samples;

    std::array<double, 4> g = arg_gradient(f, p);
    double dot = g[0] * p[0] + g[1] * p[1] + g[2] * p[2] + g[3] * p[3];
    double norm2 = 0.0;
    for (int d = 0; d < 4; ++d) {
      double t = g[d] - dot * p[d];
      norm2 += t * t;
    }
    double grad = std::sqrt(norm2);
    if (grad < rep.min_grad_norm) {
      rep.min_grad_norm = grad;
      rep.argmin = p;
    }
  }
  if (rep.used_samples == 0) rep.min_grad_norm = 0.0;
  rep.margin_positive = rep.min_grad_norm > rep.tolerance;
  return rep;
}

namespace {

bool spec_nodal_pass(const LemniscateSpec& spec, const Rational& lambda,
                     const NodalOptions& opts) {
  LemniscateSpec probe = spec;
  probe.lambda = lambda;
  SemiholoPolynomial f = build_field(probe);
  NodalCertificate cert = verify_nodal_on_sphere(f, opts);
  if (!cert.passed) return false;
  if (cert.components != std::gcd(spec.s, spec.r)) return false;
  return cert.word == braid_word(spec);
}

}  // namespace

LambdaSearchResult lambda_threshold_search(const LemniscateSpec& spec,
                                           const LambdaSearchOptions& opts) {
  LambdaSearchResult result;
  auto test = [&](const Rational& l) {
    bool ok = spec_nodal_pass(spec, l, opts.nodal);
    result.tested.emplace_back(l, ok);
    return ok;
  };

  if (test(opts.lambda_max)) {
    result.best_lambda = opts.lambda_max;
    return result;
  }
  Rational lo = opts.lambda_max;
  bool found = false;
  for (int k = 0; k < 16; ++k) {
    lo = lo / 2;
    if (test(lo)) {
      found = true;
      break;
    }
    if (lo < make_rational(1, 10000)) break;
  }
  if (!found) throw NoValidLambdaError("no lambda down to 1e-4 certifies");

  Rational hi = lo * 2;
  while (hi - lo > opts.resolution) {
    Rational mid = (lo + hi) / 2;
    if (test(mid))
      lo = mid;
    else
      hi = mid;
  }
  result.best_lambda = lo;
  return result;
}

// ---------------------------------------------------------------------------
// hopfion preimages and Gauss linking

namespace {

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

struct TargetFrame {
  Vec3 t, e1, e2;
};

TargetFrame make_frame(const Vec3& target) {
  Vec3 t = target;
  double n = norm(t);
  if (n == 0.0) throw ValidationError("target must be a unit vector");
  t = scale(t, 1.0 / n);
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(t[i]) < std::abs(t[axis])) axis = i;
  Vec3 up{0, 0, 0};
  up[axis] = 1.0;
  Vec3 e1 = cross(up, t);
  e1 = scale(e1, 1.0 / norm(e1));
  Vec3 e2 = cross(t, e1);  // (e1, e2, t) right handed
  return {t, e1, e2};
}

struct PreimageSystem {
  const HopfionField* field;
  TargetFrame frame;

  std::array<double, 2> psi(const Vec3& x) const {
    auto p = field->phi(x);
    return {dot(p, frame.e1), dot(p, frame.e2)};
  }
  double alignment(const Vec3& x) const { return dot(field->phi(x), frame.t); }

  // 2x3 Jacobian by central differences
  std::array<std::array<double, 3>, 2> jacobian(const Vec3& x, double delta) const {
    std::array<std::array<double, 3>, 2> jac{};
    for (int d = 0; d < 3; ++d) {
      Vec3 xp = x, xm = x;
      xp[d] += delta;
      xm[d] -= delta;
      auto pp = psi(xp);
      auto pm = psi(xm);
      jac[0][d] = (pp[0] - pm[0]) / (2 * delta);
      jac[1][d] = (pp[1] - pm[1]) / (2 * delta);
    }
    return jac;
  }
};

// One Gauss-Newton correction x -> x - J^T (J J^T)^{-1} psi.
bool gn_correct(const PreimageSystem& sys, Vec3& x, double delta, double max_step) {
  auto jac = sys.jacobian(x, delta);
  auto p = sys.psi(x);
  double a = 0, b = 0, c = 0;
  for (int d = 0; d < 3; ++d) {
    a += jac[0][d] * jac[0][d];
    b += jac[0][d] * jac[1][d];
    c += jac[1][d] * jac[1][d];
  }
  double det = a * c - b * b;
  if (std::abs(det) < 1e-30) return false;
  double l0 = (c * p[0] - b * p[1]) / det;
  double l1 = (a * p[1] - b * p[0]) / det;
  Vec3 step{};
  for (int d = 0; d < 3; ++d) step[d] = -(jac[0][d] * l0 + jac[1][d] * l1);
  double len = norm(step);
  if (len > max_step) step = scale(step, max_step / len);
  x = add(x, step);
  return true;
}

double min_singular_value_2x3(const std::array<std::array<double, 3>, 2>& jac) {
  double a = 0, b = 0, c = 0;
  for (int d = 0; d < 3; ++d) {
    a += jac[0][d] * jac[0][d];
    b += jac[0][d] * jac[1][d];
    c += jac[1][d] * jac[1][d];
  }
  double tr = a + c;
  double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
  return std::sqrt(std::max(0.0, 0.5 * (tr - disc)));
}

}  // namespace

namespace {

// 3D point hash for cheap proximity queries against traced curves.
struct CurveIndex {
  double cell;
  std::unordered_map<long long, std::vector<Vec3>> cells;

  explicit CurveIndex(double cell_size) : cell(cell_size) {}

  long long key(const Vec3& p) const {
    long long k = 0;
    for (int i = 0; i < 3; ++i) {
      long long q = static_cast<long long>(std::floor(p[i] / cell)) & 0x1fffff;
      k = (k << 21) | q;
    }
    return k;
  }

  void insert(const Vec3& p) { cells[key(p)].push_back(p); }

  bool near(const Vec3& p, double radius) const {
    int span = static_cast<int>(std::ceil(radius / cell));
    Vec3 probe;
    for (int a = -span; a <= span; ++a)
      for (int b = -span; b <= span; ++b)
        for (int c = -span; c <= span; ++c) {
          probe = {p[0] + a * cell, p[1] + b * cell, p[2] + c * cell};
          auto it = cells.find(key(probe));
          if (it == cells.end()) continue;
          for (const auto& q : it->second)
            if (norm(sub(p, q)) < radius) return true;
        }
    return false;
  }
};

}  // namespace

std::vector<SpaceCurve> trace_preimage(const HopfionField& field,
                                       const std::array<double, 3>& target,
                                       const TraceOptions& opts) {
  PreimageSystem sys{&field, make_frame(target)};
  const double L = opts.box_half_width;
  const double fd_delta = 1e-5 * L;
  const double ds = opts.step;
  const double cell = 2.0 * L / opts.seed_grid;

  struct Seed {
    Vec3 x;
    double align;
  };
  std::vector<Seed> seeds;
  const int n = opts.seed_grid;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec3 x{-L + 2 * L * (i + 0.5) / n, -L + 2 * L * (j + 0.5) / n,
               -L + 2 * L * (k + 0.5) / n};
        double a = sys.alignment(x);
        if (a > 0.9) seeds.push_back({x, a});
      }
  std::sort(seeds.begin(), seeds.end(),
            [](const Seed& a, const Seed& b) { return a.align > b.align; });

  std::vector<SpaceCurve> curves;
  CurveIndex index(std::max(2.0 * ds, cell));
  const double skip_radius = std::max(2.0 * ds, 1.2 * cell);

  for (const auto& seed : seeds) {
    Vec3 x = seed.x;
    if (index.near(x, skip_radius)) continue;
    bool converged = false;
    for (int it = 0; it < 40; ++it) {
      auto p = sys.psi(x);
      if (std::hypot(p[0], p[1]) < 1e-11) {
        converged = true;
        break;
      }
      if (!gn_correct(sys, x, fd_delta, 0.6 * cell)) break;
    }
    if (!converged || sys.alignment(x) < 0.9 || index.near(x, 2.5 * ds)) continue;

    SpaceCurve curve;
    curve.min_jacobian_sv = std::numeric_limits<double>::infinity();
    Vec3 start = x;
    Vec3 start_tau{0, 0, 0};
    double travelled = 0.0;
    bool closed = false;
    for (int step = 0; step < opts.max_steps; ++step) {
      auto jac = sys.jacobian(x, fd_delta);
      curve.min_jacobian_sv = std::min(curve.min_jacobian_sv, min_singular_value_2x3(jac));
      Vec3 tau = cross({jac[0][0], jac[0][1], jac[0][2]}, {jac[1][0], jac[1][1], jac[1][2]});
      double tn = norm(tau);
      if (tn < 1e-14) throw OpenCurveError("tangent degenerated; target not regular");
      tau = scale(tau, 1.0 / tn);
      if (step == 0) start_tau = tau;
      curve.points.push_back(x);
      Vec3 x_next = add(x, scale(tau, ds));
      for (int c = 0; c < 3; ++c) gn_correct(sys, x_next, fd_delta, ds);
      x = x_next;
      travelled += ds;
      for (int d = 0; d < 3; ++d)
        if (std::abs(x[d]) > L)
          throw OpenCurveError("preimage trace left the bounding box");
      // samples are ds apart on the curve, so a radius-ds ball around the
      // start cannot be stepped over
      if (travelled > 8.0 * ds && norm(sub(x, start)) < ds &&
          dot(tau, start_tau) > 0.0) {
        closed = true;
        break;
      }
    }
    if (!closed) throw OpenCurveError("preimage trace did not close");
    curve.closed = true;
    for (const auto& p : curve.points) index.insert(p);
    curves.push_back(std::move(curve));
  }
  return curves;
}

namespace {

double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  double la = norm(a), lb = norm(b), lc = norm(c);
  double num = dot(a, cross(b, c));
  double den = la * lb * lc + dot(a, b) * lc + dot(b, c) * la + dot(c, a) * lb;
  return 2.0 * std::atan2(num, den);
}

}  // namespace

LinkingResult gauss_linking(const SpaceCurve& a, const SpaceCurve& b) {
  if (a.points.size() < 3 || b.points.size() < 3)
    throw ValidationError("curves too short for linking");
  // separation guard relative to the discretisation step (median segment)
  std::vector<double> seg(a.points.size());
  for (size_t i = 0; i < a.points.size(); ++i)
    seg[i] = norm(sub(a.points[(i + 1) % a.points.size()], a.points[i]));
  std::nth_element(seg.begin(), seg.begin() + seg.size() / 2, seg.end());
  double step = seg[seg.size() / 2];
  double min_dist = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points)
    for (const auto& q : b.points) min_dist = std::min(min_dist, norm(sub(p, q)));
  if (min_dist < 10.0 * step)
    throw CurvesTooCloseError("curves closer than ten segment lengths");

  double omega = 0.0;
  const size_t na = a.points.size(), nb = b.points.size();
  for (size_t i = 0; i < na; ++i) {
    const Vec3& p0 = a.points[i];
    const Vec3& p1 = a.points[(i + 1) % na];
    for (size_t j = 0; j < nb; ++j) {
      const Vec3& q0 = b.points[j];
      const Vec3& q1 = b.points[(j + 1) % nb];
      // spherical quadrilateral swept by the Gauss map of the segment pair
      Vec3 r00 = sub(q0, p0), r01 = sub(q1, p0), r11 = sub(q1, p1), r10 = sub(q0, p1);
      omega += triangle_solid_angle(r00, r01, r11) + triangle_solid_angle(r00, r11, r10);
    }
  }
  LinkingResult out;
  out.raw_integral = omega / (2.0 * kTau);
  out.linking_number = std::lround(out.raw_integral);
  if (std::abs(out.raw_integral - static_cast<double>(out.linking_number)) >= 0.1)
    throw Error("Gauss integral too far from an integer");
  return out;
}

LinkingResult gauss_linking_total(const std::vector<SpaceCurve>& a,
                                  const std::vector<SpaceCurve>& b) {
  LinkingResult total;
  for (const auto& ca : a)
    for (const auto& cb : b) {
      LinkingResult r = gauss_linking(ca, cb);
      total.raw_integral += r.raw_integral;
      total.linking_number += r.linking_number;
    }
  return total;
}

// ---------------------------------------------------------------------------
// Milnor sphere checks

namespace {

MilnorCertificate milnor_check_common(const SemiholoPolynomial& f,
                                      const RealPolynomial4& F, double point_scale,
                                      double sphere_radius, const NodalOptions& opts) {
  MilnorCertificate cert;
  cert.nodal = verify_nodal_on_sphere(f, opts);
  if (!cert.nodal.passed) {
    cert.failure = cert.nodal.failure;
    return cert;
  }
  cert.word = cert.nodal.word;
  cert.components = cert.nodal.components;

  // baseline |F| on the sphere of the same radius, away from the zero set
  double baseline = 0.0;
  const int bases[4] = {2, 3, 5, 7};
  for (long i = 0; i < 512; ++i) {
    double q[4];
    for (int d = 0; d < 4; ++d) q[d] = halton(i + 17, bases[d]);
    double r1 = std::sqrt(-2.0 * std::log(std::max(q[0], 1e-300)));
    double r2 = std::sqrt(-2.0 * std::log(std::max(q[2], 1e-300)));
    std::array<double, 4> p{r1 * std::cos(kTau * q[1]), r1 * std::sin(kTau * q[1]),
                            r2 * std::cos(kTau * q[3]), r2 * std::sin(kTau * q[3])};
    double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    if (n == 0.0) continue;
    for (auto& x : p) x *= sphere_radius / n;
    auto val = F.eval(p);
    baseline = std::max(baseline, std::hypot(val[0], val[1]));
  }
  if (baseline == 0.0) {
    cert.failure = "real polynomial vanishes on the whole sphere";
    return cert;
  }

  double worst_res = 0.0;
  double min_sv = std::numeric_limits<double>::infinity();
  double max_sv = 0.0;
  for (const auto& curve : cert.nodal.curves) {
    for (const auto& pt : curve.points) {
      std::array<double, 4> x{pt[0] * point_scale, pt[1] * point_scale,
                              pt[2] * point_scale, pt[3] * point_scale};
      auto val = F.eval(x);
      worst_res = std::max(worst_res, std::hypot(val[0], val[1]) / baseline);
      auto jac = F.jacobian(x);
      double a = 0, b = 0, c = 0;
      for (int d = 0; d < 4; ++d) {
        a += jac[0][d] * jac[0][d];
        b += jac[0][d] * jac[1][d];
        c += jac[1][d] * jac[1][d];
      }
      double tr = a + c;
      double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
      min_sv = std::min(min_sv, std::sqrt(std::max(0.0, 0.5 * (tr - disc))));
      max_sv = std::max(max_sv, std::sqrt(0.5 * (tr + disc)));
    }
  }
  cert.field_residual = worst_res;
  cert.min_jacobian_sv = min_sv;
  if (worst_res > 1e-6) {
    cert.failure = "real polynomial does not vanish on the certified curve";
    return cert;
  }
  if (max_sv == 0.0 || min_sv < 1e-9 * max_sv) {
    cert.failure = "Jacobian rank-deficient on the zero set";
    return cert;
  }
  cert.passed = true;
  return cert;
}

}  // namespace

MilnorCertificate verify_milnor_sphere(const LemniscateSpec& spec,
                                       const RealPolynomial4& F, const Rational& rho,
                                       const NodalOptions& base_opts) {
  if (rho <= 0) throw ValidationError("sphere radius must be positive");
  LemniscateSpec scaled = spec;
  scaled.lambda = rho;
  SemiholoPolynomial f_rho = build_field(scaled);
  NodalOptions opts = base_opts;
  opts.sphere_radius = 1.0;
  return milnor_check_common(f_rho, F, rho.get_d(), rho.get_d(), opts);
}

MilnorCertificate verify_milnor_sphere_brauner(int p, int q, const RealPolynomial4& F,
                                               double rho, const NodalOptions& base_opts) {
  if (rho <= 0) throw ValidationError("sphere radius must be positive");
  SemiholoPolynomial f;
  f = f + SemiholoPolynomial::monomial(p, 0, 0, GaussianRational(Rational(1)));
  f = f - SemiholoPolynomial::monomial(0, q, 0, GaussianRational(Rational(1)));
  NodalOptions opts = base_opts;
  opts.sphere_radius = rho;
  return milnor_check_common(f, F, 1.0, rho, opts);
}

}  // namespace lemknot
