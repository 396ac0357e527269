#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "geo4/planner.hpp"

namespace geo4 {

/// Closed box of lattice points.
struct Bounds {
  i64 m_lo = 1, m_hi = 15, n_lo = 1, n_hi = 15;
};

/// Partition of the in-region points of a box, each list sorted by (m, n).
struct CoverageReport {
  Bounds bounds;
  std::vector<std::pair<LatticePoint, Recipe>> realized;
  std::vector<std::pair<LatticePoint, std::string>> external;
  std::vector<LatticePoint> open;

  [[nodiscard]] std::size_t total() const {
    return realized.size() + external.size() + open.size();
  }
};

/// Plans every in-region point of the box; the work is split across threads
/// but the result does not depend on scheduling.
inline CoverageReport scan(const Bounds &b, Stage stage = Stage::Final,
                           unsigned threads = 0) {
  std::vector<LatticePoint> pts;
  for (i64 m = std::max<i64>(b.m_lo, 1); m <= b.m_hi; ++m)
    for (i64 n = std::max<i64>(b.n_lo, 1); n <= b.n_hi; ++n)
      if (in_region({m, n}))
        pts.push_back({m, n});
  std::vector<PlanResult> out(pts.size());
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(pts.size(), 1)));
  auto work = [&](std::size_t start) {
    for (std::size_t i = start; i < pts.size(); i += threads)
      out[i] = plan(pts[i], stage);
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    for (auto &th : pool)
      th.join();
    for (auto &e : errs)
      if (e)
        std::rethrow_exception(e);
  }
  CoverageReport r;
  r.bounds = b;
  for (auto &p : out) {
    switch (p.status) {
    case PlanStatus::Realized:
      r.realized.emplace_back(p.point, std::move(*p.recipe));
      break;
    case PlanStatus::External:
      r.external.emplace_back(p.point, p.citation);
      break;
    case PlanStatus::Open:
      r.open.push_back(p.point);
      break;
    }
  }
  return r;
}

/// One row per point, ordered by (m, n).
inline std::string coverage_csv(const CoverageReport &r) {
  std::vector<std::pair<LatticePoint, std::string>> rows;
  for (const auto &[p, rec] : r.realized)
    rows.emplace_back(p, "realized," + rec.id);
  for (const auto &[p, cite] : r.external)
    rows.emplace_back(p, "external,external");
  for (const auto &p : r.open)
    rows.emplace_back(p, "open,");
  std::sort(rows.begin(), rows.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  std::string s = "m,n,status,recipe-id\n";
  for (const auto &[p, tail] : rows)
    s += std::to_string(p.m) + "," + std::to_string(p.n) + "," + tail + "\n";
  return s;
}

/// Scatter of the box with the c1^2 = 0 lines n = 5m + 4 and n = (m - 4) / 5;
/// open points are drawn as hollow red circles.
inline std::string coverage_svg(const CoverageReport &r) {
  const Bounds &b = r.bounds;
  const i64 cell = 12, margin = 40;
  const i64 w = std::max<i64>(b.m_hi - b.m_lo + 1, 1) * cell + 2 * margin;
  const i64 h = std::max<i64>(b.n_hi - b.n_lo + 1, 1) * cell + 2 * margin;
  auto x = [&](double m) { return margin + (m - static_cast<double>(b.m_lo)) * cell + cell / 2.0; };
  auto y = [&](double n) { return h - margin - (n - static_cast<double>(b.n_lo)) * cell - cell / 2.0; };
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(1);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << w / 2 << "\" y=\"" << h - 8 << "\" font-size=\"12\" text-anchor=\"middle\">b2+ = m</text>\n";
  o << "<text x=\"12\" y=\"" << h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 12 " << h / 2
    << ")\" text-anchor=\"middle\">b2- = n</text>\n";
  // Boundary lines, clipped to the box.
  auto line = [&](double m0, double n0, double m1, double n1) {
    o << "<line x1=\"" << x(m0) << "\" y1=\"" << y(n0) << "\" x2=\"" << x(m1) << "\" y2=\""
      << y(n1) << "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
  };
  const double m_lo = static_cast<double>(b.m_lo), m_hi = static_cast<double>(b.m_hi);
  const double n_lo = static_cast<double>(b.n_lo), n_hi = static_cast<double>(b.n_hi);
  {
    double a0 = std::max(m_lo, (n_lo - 4) / 5), a1 = std::min(m_hi, (n_hi - 4) / 5);
    if (a0 <= a1)
      line(a0, 5 * a0 + 4, a1, 5 * a1 + 4);
    double c0 = std::max(n_lo, (m_lo - 4) / 5), c1 = std::min(n_hi, (m_hi - 4) / 5);
    if (c0 <= c1)
      line(5 * c0 + 4, c0, 5 * c1 + 4, c1);
  }
  for (const auto &[p, rec] : r.realized)
    o << "<circle cx=\"" << x(static_cast<double>(p.m)) << "\" cy=\"" << y(static_cast<double>(p.n))
      << "\" r=\"2.5\" fill=\"black\"/>\n";
  for (const auto &[p, cite] : r.external)
    o << "<circle cx=\"" << x(static_cast<double>(p.m)) << "\" cy=\"" << y(static_cast<double>(p.n))
      << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  for (const auto &p : r.open)
    o << "<circle cx=\"" << x(static_cast<double>(p.m)) << "\" cy=\"" << y(static_cast<double>(p.n))
      << "\" r=\"4\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
  o << "<g font-size=\"11\">\n"
    << "<circle cx=\"" << margin << "\" cy=\"14\" r=\"2.5\" fill=\"black\"/><text x=\"" << margin + 8
    << "\" y=\"18\">realized (" << r.realized.size() << ")</text>\n"
    << "<circle cx=\"" << margin + 120 << "\" cy=\"14\" r=\"2.5\" fill=\"steelblue\"/><text x=\""
    << margin + 128 << "\" y=\"18\">external (" << r.external.size() << ")</text>\n"
    << "<circle cx=\"" << margin + 240 << "\" cy=\"14\" r=\"4\" fill=\"none\" stroke=\"red\"/><text x=\""
    << margin + 248 << "\" y=\"18\">open (" << r.open.size() << ")</text>\n"
    << "</g>\n</svg>\n";
  return o.str();
}

} // namespace geo4
