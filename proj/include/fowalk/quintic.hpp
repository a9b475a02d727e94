#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fowalk {

// Degree-5 polynomial in local time (t - t_start), valid on [t_start, t_end].
struct QuinticSegment {
  std::array<double, 6> c{};  // value = sum_i c[i] * tau^i
  double t_start = 0.0;
  double t_end = 1.0;

  double duration() const { return t_end - t_start; }

  double value(double t) const {
    const double x = t - t_start;
    return ((((c[5] * x + c[4]) * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
  }

  // n-th derivative, n in [0, 5].
  double derivative(double t, int n) const {
    const double x = t - t_start;
    double acc = 0.0;
    for (int i = 5; i >= n; --i) {
      double f = 1.0;
      for (int j = i; j > i - n; --j) f *= j;
      acc = acc * x + f * c[i];
    }
    return acc;
  }
};

// Unique quintic matching position, velocity and acceleration at both ends.
inline QuinticSegment quintic_between(double p0, double v0, double a0, double p1, double v1,
                                      double a1, double t0, double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("quintic_between: t1 must exceed t0");
  const double h = t1 - t0;
  const double h2 = h * h;
  const double h3 = h2 * h;
  const double dp = p1 - p0;

  QuinticSegment seg;
  seg.t_start = t0;
  seg.t_end = t1;
  seg.c[0] = p0;
  seg.c[1] = v0;
  seg.c[2] = 0.5 * a0;
  seg.c[3] = (20.0 * dp - (8.0 * v1 + 12.0 * v0) * h - (3.0 * a0 - a1) * h2) / (2.0 * h3);
  seg.c[4] = (-30.0 * dp + (14.0 * v1 + 16.0 * v0) * h + (3.0 * a0 - 2.0 * a1) * h2) / (2.0 * h3 * h);
  seg.c[5] = (12.0 * dp - 6.0 * (v1 + v0) * h - (a0 - a1) * h2) / (2.0 * h3 * h2);
  return seg;
}

inline QuinticSegment constant_segment(double value, double t0, double t1) {
  if (!(t1 > t0)) throw std::invalid_argument("constant_segment: t1 must exceed t0");
  QuinticSegment seg;
  seg.t_start = t0;
  seg.t_end = t1;
  seg.c[0] = value;
  return seg;
}

// Contiguous chain of quintic segments.
struct PiecewiseCurve {
  std::vector<QuinticSegment> segments;

  double t_start() const { return segments.front().t_start; }
  double t_end() const { return segments.back().t_end; }

  const QuinticSegment& segment_at(double t) const {
    if (segments.empty()) throw std::logic_error("PiecewiseCurve: empty");
    if (t < t_start() - 1e-12 || t > t_end() + 1e-12)
      throw std::domain_error("PiecewiseCurve: evaluation outside domain");
    // Upper_bound on t_start picks the segment whose window contains t; the
    // shared knot belongs to the right segment.
    auto it = std::upper_bound(segments.begin(), segments.end(), t,
                               [](double v, const QuinticSegment& s) { return v < s.t_start; });
    if (it != segments.begin()) --it;
    return *it;
  }

  double value(double t) const { return segment_at(t).value(t); }
  double derivative(double t, int n) const { return segment_at(t).derivative(t, n); }

  void append(const QuinticSegment& seg) {
    if (!segments.empty() && std::abs(seg.t_start - segments.back().t_end) > 1e-12)
      throw std::invalid_argument("PiecewiseCurve: segments must be contiguous");
    segments.push_back(seg);
  }

  // Largest mismatch of the n-th derivative across interior knots, evaluated
  // from the coefficients on each side (no sampling involved).
  double knot_mismatch(int n) const {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
      const double t = segments[i].t_end;
      worst = std::max(worst,
                       std::abs(segments[i].derivative(t, n) - segments[i + 1].derivative(t, n)));
    }
    return worst;
  }
};

// Two quintics joined at tm with continuous value, velocity, acceleration and
// jerk, pinned to (pm, vm) at the joint and to full (p, v, a) states at the
// outer ends. The joint acceleration and jerk fall out of the solve.
inline PiecewiseCurve stitch_pair_c3(double p0, double v0, double a0, double pm, double vm,
                                     double p1, double v1, double a1, double t0, double tm,
                                     double t1) {
  if (!(t0 < tm && tm < t1)) throw std::invalid_argument("stitch_pair_c3: need t0 < tm < t1");
  const double ha = tm - t0;
  const double hb = t1 - tm;

  // Unknowns: x = [a3, a4, a5, b3, b4, b5]; lower coefficients of each segment
  // follow from the pinned left-end states.
  // Segment A: A(x) = p0 + v0 x + a0/2 x^2 + a3 x^3 + a4 x^4 + a5 x^5 on [0, ha]
  // Segment B: B(y) = pm + vm y + c2b y^2 + b3 y^3 + ... with c2b unknown too.
  // Eliminate by writing B with 4 unknowns (c2b, b3, b4, b5) and A with 3
  // (a3, a4, a5); conditions: A(ha)=pm, A'(ha)=vm, A''(ha)=B''(0),
  // A'''(ha)=B'''(0), B(hb)=p1, B'(hb)=v1, B''(hb)=a1.  That is 7 equations
  // for 7 unknowns; solve directly.
  double m[7][8] = {};
  auto pow_row = [](double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  // Row 0: A(ha) = pm
  m[0][0] = pow_row(ha, 3);
  m[0][1] = pow_row(ha, 4);
  m[0][2] = pow_row(ha, 5);
  m[0][7] = pm - (p0 + v0 * ha + 0.5 * a0 * ha * ha);
  // Row 1: A'(ha) = vm
  m[1][0] = 3.0 * pow_row(ha, 2);
  m[1][1] = 4.0 * pow_row(ha, 3);
  m[1][2] = 5.0 * pow_row(ha, 4);
  m[1][7] = vm - (v0 + a0 * ha);
  // Row 2: A''(ha) - 2*c2b = 0
  m[2][0] = 6.0 * ha;
  m[2][1] = 12.0 * pow_row(ha, 2);
  m[2][2] = 20.0 * pow_row(ha, 3);
  m[2][3] = -2.0;
  m[2][7] = -a0;
  // Row 3: A'''(ha) - 6*b3 = 0
  m[3][0] = 6.0;
  m[3][1] = 24.0 * ha;
  m[3][2] = 60.0 * pow_row(ha, 2);
  m[3][4] = -6.0;
  m[3][7] = 0.0;
  // Row 4: B(hb) = p1
  m[4][3] = pow_row(hb, 2);
  m[4][4] = pow_row(hb, 3);
  m[4][5] = pow_row(hb, 4);
  m[4][6] = pow_row(hb, 5);
  m[4][7] = p1 - (pm + vm * hb);
  // Row 5: B'(hb) = v1
  m[5][3] = 2.0 * hb;
  m[5][4] = 3.0 * pow_row(hb, 2);
  m[5][5] = 4.0 * pow_row(hb, 3);
  m[5][6] = 5.0 * pow_row(hb, 4);
  m[5][7] = v1 - vm;
  // Row 6: B''(hb) = a1
  m[6][3] = 2.0;
  m[6][4] = 6.0 * hb;
  m[6][5] = 12.0 * pow_row(hb, 2);
  m[6][6] = 20.0 * pow_row(hb, 3);
  m[6][7] = a1;

  // Gaussian elimination with partial pivoting; the system is tiny and well
  // conditioned for sane knot spacings.
  constexpr int n = 7;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-14) throw std::runtime_error("stitch_pair_c3: singular system");
    if (piv != col)
      for (int cc = 0; cc <= n; ++cc) std::swap(m[piv][cc], m[col][cc]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int cc = col; cc <= n; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  double x[7];
  for (int i = 0; i < n; ++i) x[i] = m[i][7] / m[i][i];

  QuinticSegment a;
  a.t_start = t0;
  a.t_end = tm;
  a.c = {p0, v0, 0.5 * a0, x[0], x[1], x[2]};
  QuinticSegment b;
  b.t_start = tm;
  b.t_end = t1;
  b.c = {pm, vm, x[3], x[4], x[5], x[6]};

  PiecewiseCurve curve;
  curve.append(a);
  curve.append(b);
  return curve;
}

}  // namespace fowalk
