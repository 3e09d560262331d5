#pragma once

// Dense scan for the largest values of a univariate function on an interval.

#include <algorithm>
#include <vector>

namespace delsarte {

struct Extremum {
  double t;
  double value;
};

// Local maxima of g over a uniform grid on [lo, hi], refined by golden
// section, sorted by decreasing value. At most `keep` maxima are refined.
template <class G>
std::vector<Extremum> scan_maxima(G&& g, double lo, double hi, int points, int keep) {
  std::vector<Extremum> out;
  if (hi <= lo) {
    out.push_back({lo, g(lo)});
    return out;
  }
  points = std::max(points, 3);
  const double h = (hi - lo) / (points - 1);
  std::vector<double> ts(points), vs(points);
  for (int i = 0; i < points; ++i) {
    ts[i] = i == points - 1 ? hi : lo + h * i;
    vs[i] = g(ts[i]);
  }
  std::vector<int> peaks;
  for (int i = 0; i < points; ++i) {
    const bool left_ok = i == 0 || vs[i] >= vs[i - 1];
    const bool right_ok = i == points - 1 || vs[i] >= vs[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vs[a] > vs[b]; });
  if (static_cast<int>(peaks.size()) > keep) peaks.resize(keep);

  constexpr double kInvPhi = 0.6180339887498949;
  for (int i : peaks) {
    double a = ts[std::max(i - 1, 0)];
    double b = ts[std::min(i + 1, points - 1)];
    double best_t = ts[i];
    double best_v = vs[i];
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = g(x1);
    double f2 = g(x2);
    for (int iter = 0; iter < 80 && b - a > 1e-15; ++iter) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = g(x2);
      }
      if (f1 > best_v) { best_v = f1; best_t = x1; }
      if (f2 > best_v) { best_v = f2; best_t = x2; }
    }
    out.push_back({best_t, best_v});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Extremum& a, const Extremum& b) { return a.value > b.value; });
  return out;
}

}  // namespace delsarte
