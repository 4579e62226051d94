#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration of complex integrands and
// Wynn's epsilon algorithm for accelerating sequences of partial integrals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace gl3 {

using cplx = std::complex<double>;

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

struct GK15Nodes {
  static constexpr std::array<double, 8> xk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * GK15Nodes::wk[7];
  cplx gauss = fc * GK15Nodes::wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * GK15Nodes::xk[j];
    const cplx s = f(c - dx) + f(c + dx);
    kron += GK15Nodes::wk[j] * s;
    if (j % 2 == 1) gauss += GK15Nodes::wg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

/// Integral of f over [a, b] to max(abs_tol, rel_tol |I|), bisecting the
/// panel with the largest error estimate; throws QuadratureError when the
/// interval budget runs out.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_intervals = 2000) {
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::gk15(f, a, b));
  cplx total = heap.top().value;
  double err = heap.top().error;
  int n = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (n >= max_intervals)
      throw QuadratureError("integrate: interval budget exhausted on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "], error estimate " + std::to_string(err));
    const detail::Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    const detail::Panel l = detail::gk15(f, p.a, m), r = detail::gk15(f, m, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {total, err, n};
}

struct AcceleratedLimit {
  cplx value{0.0, 0.0};
  double error = std::numeric_limits<double>::infinity();
};

/// Wynn's epsilon table on a sequence of partial sums; returns the even-column
/// entry whose change from its predecessor is smallest.
inline AcceleratedLimit wynn_epsilon(const std::vector<cplx>& partial) {
  AcceleratedLimit best;
  if (partial.empty()) return best;
  best.value = partial.back();
  if (partial.size() >= 2) best.error = std::abs(partial.back() - partial[partial.size() - 2]);
  std::vector<cplx> prev(partial.size(), cplx{0.0, 0.0});  // column k-1
  std::vector<cplx> cur = partial;                         // column k
  for (std::size_t k = 1; cur.size() >= 2; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const cplx diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-300) {
        ok = false;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (!ok) break;
    if (k % 2 == 0 && next.size() >= 2) {
      const double e = std::abs(next.back() - next[next.size() - 2]);
      if (e < best.error) best = {next.back(), e};
    }
    prev = cur;
    cur = std::move(next);
  }
  return best;
}

}  // namespace gl3
