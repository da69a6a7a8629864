// Adaptive Gauss-Kronrod (7-15) integration.
#include "sdutm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace sdutm {

namespace {

// Kronrod-15 abscissae on [0, 1] of |x| (symmetric rule) and weights; the
// Gauss-7 subset sits at the odd indices.
constexpr int kNodes = 15;
constexpr double kX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
constexpr double kWK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
  double a, b;
  Cx value;
  double error;
};

struct SegCompare {
  bool operator()(const Segment& p, const Segment& q) const { return p.error < q.error; }
};

Segment eval_segment(const std::function<Cx(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Cx k15{0.0, 0.0}, g7{0.0, 0.0};
  for (int i = 0; i < 8; ++i) {
    if (kX[i] == 0.0) {
      const Cx v = f(mid);
      k15 += kWK[i] * v;
      g7 += kWG[3] * v;
    } else {
      const Cx vl = f(mid - half * kX[i]);
      const Cx vr = f(mid + half * kX[i]);
      k15 += kWK[i] * (vl + vr);
      if (i % 2 == 1) g7 += kWG[i / 2] * (vl + vr);
    }
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.value = half * k15;
  s.error = std::abs(half * (k15 - g7));
  return s;
}

std::vector<double> edges_for(double a, double b, const std::vector<double>& breakpoints) {
  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  return edges;
}

} // namespace

std::vector<double> panel_breakpoints(double a, double b, double max_width) {
  std::vector<double> bp;
  if (max_width <= 0.0 || b - a <= max_width) return bp;
  const int n = static_cast<int>(std::ceil((b - a) / max_width));
  bp.reserve(static_cast<size_t>(n - 1));
  for (int i = 1; i < n; ++i) bp.push_back(a + (b - a) * i / n);
  return bp;
}

QuadResult integrate_gk(const std::function<Cx(double)>& f, double a, double b,
                        const QuadOptions& opt) {
  QuadResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Segment, std::vector<Segment>, SegCompare> queue;
  const auto edges = edges_for(a, b, opt.breakpoints);
  Cx total{0.0, 0.0};
  double err = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s = eval_segment(f, edges[i], edges[i + 1]);
    total += s.value;
    err += s.error;
    res.evals += kNodes;
    queue.push(s);
  }
  auto good_enough = [&] {
    return err <= opt.tol_abs + opt.tol_rel * std::abs(total);
  };
  while (!good_enough() && static_cast<int>(queue.size()) < opt.max_segments) {
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment l = eval_segment(f, worst.a, mid);
    Segment r = eval_segment(f, mid, worst.b);
    res.evals += 2 * kNodes;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    queue.push(l);
    queue.push(r);
  }
  res.value = total;
  res.error = err;
  res.converged = good_enough();
  return res;
}

VecQuadResult integrate_gk_vec(const std::function<void(double, Cx*)>& f, int dim,
                               double a, double b, const QuadOptions& opt) {
  VecQuadResult res;
  res.value.assign(static_cast<size_t>(dim), Cx{0.0, 0.0});
  if (a == b || dim == 0) {
    res.converged = true;
    return res;
  }

  struct VSegment {
    double a, b;
    std::vector<Cx> value;
    double error;
  };
  struct VCompare {
    bool operator()(const VSegment& p, const VSegment& q) const { return p.error < q.error; }
  };

  std::vector<Cx> sample(static_cast<size_t>(dim));
  auto eval = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::vector<Cx> k15(static_cast<size_t>(dim), Cx{0.0, 0.0});
    std::vector<Cx> g7(static_cast<size_t>(dim), Cx{0.0, 0.0});
    auto accumulate = [&](double x, double wk, double wg) {
      f(x, sample.data());
      for (int d = 0; d < dim; ++d) {
        k15[static_cast<size_t>(d)] += wk * sample[static_cast<size_t>(d)];
        if (wg != 0.0) g7[static_cast<size_t>(d)] += wg * sample[static_cast<size_t>(d)];
      }
    };
    for (int i = 0; i < 8; ++i) {
      if (kX[i] == 0.0) {
        accumulate(mid, kWK[i], kWG[3]);
      } else {
        const double wg = (i % 2 == 1) ? kWG[i / 2] : 0.0;
        accumulate(mid - half * kX[i], kWK[i], wg);
        accumulate(mid + half * kX[i], kWK[i], wg);
      }
    }
    VSegment s;
    s.a = lo;
    s.b = hi;
    s.value.resize(static_cast<size_t>(dim));
    double e = 0.0;
    for (int d = 0; d < dim; ++d) {
      s.value[static_cast<size_t>(d)] = half * k15[static_cast<size_t>(d)];
      e = std::max(e, std::abs(half * (k15[static_cast<size_t>(d)] -
                                       g7[static_cast<size_t>(d)])));
    }
    s.error = e;
    return s;
  };

  std::priority_queue<VSegment, std::vector<VSegment>, VCompare> queue;
  const auto edges = edges_for(a, b, opt.breakpoints);
  std::vector<Cx>& total = res.value;
  double err = 0.0;
  double scale = 0.0;
  auto add_segment = [&](VSegment&& s) {
    for (int d = 0; d < dim; ++d)
      total[static_cast<size_t>(d)] += s.value[static_cast<size_t>(d)];
    err += s.error;
    queue.push(std::move(s));
  };
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    add_segment(eval(edges[i], edges[i + 1]));
    res.evals += kNodes;
  }
  auto good_enough = [&] {
    scale = 0.0;
    for (const auto& v : total) scale = std::max(scale, std::abs(v));
    return err <= opt.tol_abs + opt.tol_rel * scale;
  };
  while (!good_enough() && static_cast<int>(queue.size()) < opt.max_segments) {
    const VSegment worst = queue.top();
    queue.pop();
    for (int d = 0; d < dim; ++d)
      total[static_cast<size_t>(d)] -= worst.value[static_cast<size_t>(d)];
    err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    add_segment(eval(worst.a, mid));
    add_segment(eval(mid, worst.b));
    res.evals += 2 * kNodes;
  }
  res.error = err;
  res.converged = good_enough();
  return res;
}

} // namespace sdutm
