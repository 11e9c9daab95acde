#include "hcf/cone.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hcf/errors.hpp"

namespace hcf {

std::string to_string(ConeVariant v) { return v == ConeVariant::standard ? "standard" : "improved"; }

ConeVariant parse_cone_variant(const std::string& s) {
  if (s == "standard") return ConeVariant::standard;
  if (s == "improved") return ConeVariant::improved;
  throw InputError("unknown cone variant: " + s);
}

namespace {

double radical_inverse(std::size_t i, int base) {
  double f = 1, r = 0;
  for (i += 1; i > 0; i /= static_cast<std::size_t>(base)) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::size_t>(base));
  }
  return r;
}

Value constant_times(double m, const Rational& mq, ConeVariant v) {
  // m (1+1/m)^m or 2 (1+1/m)^m
  Value lead = v == ConeVariant::standard ? Value::of(mq) : Value::of(Rational(2));
  return lead * power(1 + 1 / mq, m);
}

}  // namespace

ConeCertificate cone_covering(const std::vector<Ball>& input, const Point& apex, const Rational& R, double m,
                              ConeVariant variant) {
  if (!(m >= 1)) throw InputError("cone exponent must be >= 1");
  ConeCertificate c;
  c.apex = apex;
  c.R = R;
  c.m = m;
  c.variant = variant;
  c.input = input;
  const Rational mq = from_double(m);
  c.input_cost = Value::of(Rational(0));
  c.cost = Value::of(Rational(0));
  for (std::size_t i = 0; i < input.size(); ++i) {
    const Ball& b = input[i];
    if (b.center.size() != apex.size()) throw InputError("cone input dimension mismatch");
    if (b.radius <= 0) throw InputError("cone input ball with zero radius");
    Rational Rp = linf_distance(b.center, apex);
    if (Rp + b.radius > R) throw InputError("cone input ball not inside B(p, R)");
    c.input_cost = c.input_cost + power(b.radius, m - 1);

    const Rational& r = b.radius;
    Rational step = r / mq;
    std::int64_t K = 1;
    if (Rp > 0) {
      Rational k = ceil_q(mq * Rp / r);
      K = std::max<std::int64_t>(1, k.get_num().get_si());
    }
    Rational h = Rp > 0 ? step / Rp : Rational(0);  // parameter spacing, t = 1 at the input center
    for (std::int64_t j = 0; j < K; ++j) {
      ConeBall out;
      out.input = i;
      out.step = static_cast<std::size_t>(j);
      out.ball.center = b.center;
      if (Rp > 0)
        for (std::size_t d = 0; d < apex.size(); ++d)
          out.ball.center[d] += Rational(j) * step * (apex[d] - b.center[d]) / Rp;
      if (variant == ConeVariant::standard) {
        out.ball.radius = (1 + 1 / mq) * r;
      } else if (Rp == 0) {
        out.ball.radius = r;
      } else {
        Rational t = 1 - Rational(j) * h;
        out.ball.radius = min_q(Rational(1), t + h / 2) * r + r / (2 * mq);
        if (j == K - 1) out.ball.radius = max_q(out.ball.radius, t * max_q(r, Rp));
      }
      c.cost = c.cost + power(out.ball.radius, m);
      c.output.push_back(std::move(out));
    }
  }
  c.bound = constant_times(m, mq, variant) * Value::of(R) * c.input_cost;
  c.within_bound = leq(c.cost, c.bound);
  return c;
}

CoverageReport cone_coverage_check(const ConeCertificate& cert, std::size_t samples) {
  CoverageReport rep;
  std::size_t n = cert.apex.size();
  std::vector<double> p(n);
  for (std::size_t d = 0; d < n; ++d) p[d] = to_double(cert.apex[d]);
  struct B {
    std::vector<double> c;
    double r;
    std::size_t input;
  };
  std::vector<B> out;
  for (const auto& o : cert.output) {
    B b{std::vector<double>(n), to_double(o.ball.radius), o.input};
    for (std::size_t d = 0; d < n; ++d) b.c[d] = to_double(o.ball.center[d]);
    out.push_back(std::move(b));
  }
  auto inside = [&](const std::vector<double>& x, const B& b) {
    return distance(x, b.c, Metric::linf) <= b.r * (1 + 1e-12) + 1e-12;
  };
  auto test = [&](const std::vector<double>& x, double t, std::size_t input) {
    std::vector<double> y(n);
    for (std::size_t d = 0; d < n; ++d) y[d] = t * x[d] + (1 - t) * p[d];
    ++rep.samples;
    for (const auto& b : out)
      if (b.input == input && inside(y, b)) return;
    for (const auto& b : out)
      if (inside(y, b)) return;
    ++rep.misses;
    if (rep.miss_points.size() < 5) rep.miss_points.push_back(y);
  };
  if (cert.input.empty()) return rep;
  std::size_t per = std::max<std::size_t>(1, samples / cert.input.size());
  for (std::size_t i = 0; i < cert.input.size(); ++i) {
    const Ball& b = cert.input[i];
    std::vector<double> q(n);
    for (std::size_t d = 0; d < n; ++d) q[d] = to_double(b.center[d]);
    double r = to_double(b.radius);
    std::size_t used = 0;
    // corners and center at a few fixed heights, including both ends
    const double ts[] = {0.0, 0.125, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t mask = 0; mask <= (std::size_t{1} << n) && used < per / 2; ++mask) {
      std::vector<double> x = q;
      if (mask < (std::size_t{1} << n))
        for (std::size_t d = 0; d < n; ++d) x[d] += ((mask >> d) & 1) ? r : -r;
      for (double t : ts) {
        test(x, t, i);
        ++used;
      }
    }
    for (std::size_t k = 0; used < per; ++k, ++used) {
      static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = q[d] + r * (2 * radical_inverse(k, primes[d % 12]) - 1);
      test(x, radical_inverse(k, primes[n % 12]), i);
    }
  }
  return rep;
}

namespace {

Rational dist_to_cells(const Point& x, const Space& s, const Subset& y) {
  Rational best = -1;
  for (auto e : y) {
    Rational d = cell_min_dist(x, s.cell(e), s.delta());
    if (best < 0 || d < best) best = d;
  }
  return best;
}

}  // namespace

std::vector<Point> cone_map_points(const Space& s, const Subset& y, const Point& apex, const Rational& r) {
  if (!s.is_voxel()) throw InputError("cone maps need a voxel space");
  if (r <= 0) throw InputError("cone map needs r > 0");
  if (y.empty()) throw InputError("cone map needs a non-empty Y");
  std::vector<Point> out;
  for (std::size_t e = 0; e < s.size(); ++e) {
    Point x = s.cell_center(e);
    Rational phi = max_q(Rational(0), 1 - dist_to_cells(x, s, y) / r);
    Point z(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) z[d] = phi * x[d] + (1 - phi) * apex[d];
    out.push_back(std::move(z));
  }
  return out;
}

Space cone_map_image(const Space& s, const Subset& y, const Point& apex, const Rational& r) {
  std::set<IntPoint> cells;
  int n = s.dim();
  for (const auto& z : cone_map_points(s, y, apex, r)) {
    // all cells whose closed box contains z
    IntPoint lo(n), hi(n);
    for (int d = 0; d < n; ++d) {
      Rational u = z[d] / s.delta();
      Rational f = floor_q(u);
      hi[d] = f.get_num().get_si();
      lo[d] = (u == f) ? hi[d] - 1 : hi[d];
    }
    IntPoint c = lo;
    while (true) {
      cells.insert(c);
      int d = 0;
      while (d < n && c[d] == hi[d]) c[d] = lo[d], ++d;
      if (d == n) break;
      ++c[d];
    }
  }
  return Space::voxel(n, s.delta(), std::vector<IntPoint>(cells.begin(), cells.end()));
}

}  // namespace hcf
