#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace fowalk {

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One accepted Dormand-Prince step carrying the coefficients of the standard
// quartic dense-output interpolant, exact at both endpoints.
template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<double, N> y0{};
  std::array<double, N> y1{};
  std::array<std::array<double, N>, 5> rcont{};

  std::array<double, N> eval(double t) const {
    const double s = (t - t0) / (t1 - t0);
    const double s1 = 1.0 - s;
    std::array<double, N> y{};
    for (std::size_t j = 0; j < N; ++j)
      y[j] = rcont[0][j] +
             s * (rcont[1][j] + s1 * (rcont[2][j] + s * (rcont[3][j] + s1 * rcont[4][j])));
    return y;
  }
};

// Adaptive explicit Runge-Kutta 4(5), Dormand-Prince coefficients. The
// caller owns stepping and restarts; the object only keeps the step-size
// suggestion so restarts at events stay cheap.
template <std::size_t N>
class Dopri5 {
 public:
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;

  void reset_step_size() { h_ = 0.0; }

  // Advance one accepted step from (t, y) without passing t + h_max.
  // RHS signature: void(double t, const std::array<double,N>& y,
  //                     std::array<double,N>& dydt).
  template <class Rhs>
  DenseStep<N> step(Rhs&& rhs, double t, const std::array<double, N>& y, double h_max) {
    if (!(h_max > 0.0)) throw IntegrationError("integrator: nonpositive step window");
    if (h_ <= 0.0) h_ = initial_step(rhs, t, y, h_max);

    double h = std::min(h_, h_max);
    for (int attempt = 0; attempt < 64; ++attempt) {
      // Micro-steps are legitimate when the window itself is tiny (stepping
      // exactly onto a gain boundary); underflow only counts when the error
      // controller shrank the step below resolution.
      if (h < 1e-14 * std::max(1.0, std::abs(t)) && h < h_max)
        throw IntegrationError("integrator: step size underflow");
      DenseStep<N> st;
      const double err = try_step(rhs, t, y, h, st);
      if (err <= 1.0) {
        const double grow = err <= 1e-30 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
        h_ = std::min(h * grow, 10.0 * h_max);
        return st;
      }
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    throw IntegrationError("integrator: repeated step rejection");
  }

 private:
  double h_ = 0.0;

  template <class Rhs>
  double initial_step(Rhs&& rhs, double t, const std::array<double, N>& y, double h_max) {
    std::array<double, N> f{};
    rhs(t, y, f);
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      ynorm = std::max(ynorm, std::abs(y[i]));
      fnorm = std::max(fnorm, std::abs(f[i]));
    }
    double h = fnorm > 1e-12 ? 0.01 * std::max(1e-3, ynorm) / fnorm : 1e-4;
    return std::min(h, h_max);
  }

  template <class Rhs>
  double try_step(Rhs&& rhs, double t, const std::array<double, N>& y, double h,
                  DenseStep<N>& st) {
    static constexpr double c[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5.0},
        {3.0 / 40.0, 9.0 / 40.0},
        {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
        {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
        {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
        {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0}};
    // e = b5 - b4; d: dense-output weights of the classic dopri5 interpolant.
    static constexpr double e[7] = {71.0 / 57600.0,  0.0,          -71.0 / 16695.0, 71.0 / 1920.0,
                                    -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};
    static constexpr double d[7] = {-12715105075.0 / 11282082432.0,
                                    0.0,
                                    87487479700.0 / 32700410799.0,
                                    -10690763975.0 / 1880347072.0,
                                    701980252875.0 / 199316789632.0,
                                    -1453857185.0 / 822651844.0,
                                    69997945.0 / 29380423.0};

    st.t0 = t;
    st.t1 = t + h;
    st.y0 = y;

    std::array<std::array<double, N>, 7> k{};
    rhs(t, y, k[0]);
    std::array<double, N> tmp{};
    for (int s = 1; s < 7; ++s) {
      for (std::size_t j = 0; j < N; ++j) {
        double acc = 0.0;
        for (int i = 0; i < s; ++i) acc += a[s][i] * k[i][j];
        tmp[j] = y[j] + h * acc;
      }
      rhs(t + c[s] * h, tmp, k[s]);
    }
    // Stage 7 is evaluated at the 5th-order solution, so tmp already holds y1.
    st.y1 = tmp;

    double err_sq = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      double err_j = 0.0;
      for (int i = 0; i < 7; ++i) err_j += e[i] * k[i][j];
      err_j *= h;
      const double scale = abs_tol + rel_tol * std::max(std::abs(y[j]), std::abs(st.y1[j]));
      err_sq += (err_j / scale) * (err_j / scale);
    }
    const double err = std::sqrt(err_sq / static_cast<double>(N));

    if (err <= 1.0) {
      for (std::size_t j = 0; j < N; ++j) {
        const double dy = st.y1[j] - y[j];
        const double bspl = h * k[0][j] - dy;
        st.rcont[0][j] = y[j];
        st.rcont[1][j] = dy;
        st.rcont[2][j] = bspl;
        st.rcont[3][j] = dy - h * k[6][j] - bspl;
        double acc = 0.0;
        for (int i = 0; i < 7; ++i) acc += d[i] * k[i][j];
        st.rcont[4][j] = h * acc;
      }
    }
    return err;
  }
};

// Bracketing bisection on a residual known to change sign on [ta, tb]
// (g(ta) > 0 >= g(tb)). For a continuous residual this meets both the time
// and the residual tolerance. A residual that jumps across zero (a gain step
// at a subphase boundary can do that to a contact force) has no point with
// small magnitude; once the bracket reaches machine resolution the jump time
// itself is the crossing and is returned.
template <class G>
double bisect_crossing(G&& g, double ta, double tb, double res_tol, double time_tol) {
  double t_best = tb;
  double g_best = g(tb);
  if (std::isnan(g_best)) throw IntegrationError("event localization hit a NaN residual");
  for (int it = 0; it < 200; ++it) {
    if (tb - ta < time_tol && std::abs(g_best) < res_tol) return t_best;
    const double tm = 0.5 * (ta + tb);
    if (tm <= ta || tm >= tb) return t_best;  // bracket at machine resolution
    const double gm = g(tm);
    if (std::isnan(gm)) throw IntegrationError("event localization hit a NaN residual");
    if (gm > 0.0) {
      ta = tm;
    } else {
      tb = tm;
      t_best = tm;
      g_best = gm;
    }
  }
  return t_best;
}

}  // namespace fowalk
