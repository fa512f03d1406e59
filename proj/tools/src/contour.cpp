#include "brownlab/contour.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

namespace brownlab {

namespace {

using Key = std::pair<int, int>;  // doubled lattice coordinates of an edge midpoint

// Edge pairs per marching-squares case; corners c0 (x,y), c1 (x+1,y),
// c2 (x+1,y+1), c3 (x,y+1); edges e0 bottom, e1 right, e2 top, e3 left.
constexpr std::array<std::array<int, 4>, 16> kCases{{
    {-1, -1, -1, -1}, {3, 0, -1, -1}, {0, 1, -1, -1}, {3, 1, -1, -1},
    {1, 2, -1, -1},   {3, 0, 1, 2},   {0, 2, -1, -1}, {3, 2, -1, -1},
    {2, 3, -1, -1},   {0, 2, -1, -1}, {0, 1, 2, 3},   {1, 2, -1, -1},
    {1, 3, -1, -1},   {0, 1, -1, -1}, {3, 0, -1, -1}, {-1, -1, -1, -1},
}};

Key edge_key(int x, int y, int e) {
  switch (e) {
    case 0: return {2 * x + 1, 2 * y};
    case 1: return {2 * x + 2, 2 * y + 1};
    case 2: return {2 * x + 1, 2 * y + 2};
    default: return {2 * x, 2 * y + 1};
  }
}

}  // namespace

std::vector<Polyline> mask_contours(const brown::numerics::DensityGridResult& mask) {
  const auto& g = mask.grid;
  auto inside = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < g.re_steps && y < g.im_steps && mask.at(x, y).in_spectrum;
  };
  std::vector<std::pair<Key, Key>> segs;
  for (int y = -1; y < g.im_steps; ++y)
    for (int x = -1; x < g.re_steps; ++x) {
      const int c = (inside(x, y) ? 1 : 0) | (inside(x + 1, y) ? 2 : 0) | (inside(x + 1, y + 1) ? 4 : 0) |
                    (inside(x, y + 1) ? 8 : 0);
      const auto& e = kCases[std::size_t(c)];
      for (int k = 0; k < 4 && e[std::size_t(k)] >= 0; k += 2)
        segs.emplace_back(edge_key(x, y, e[std::size_t(k)]), edge_key(x, y, e[std::size_t(k) + 1]));
    }
  std::map<Key, std::vector<std::size_t>> at;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    at[segs[i].first].push_back(i);
    at[segs[i].second].push_back(i);
  }
  auto pt = [&](Key k) {
    return brown::cplx(g.re_min + (0.5 * k.first + 0.5) * g.dx(), g.im_min + (0.5 * k.second + 0.5) * g.dy());
  };
  std::vector<bool> used(segs.size(), false);
  std::vector<Polyline> out;
  auto next_seg = [&](Key k) -> std::optional<std::size_t> {
    for (std::size_t j : at[k])
      if (!used[j]) return j;
    return std::nullopt;
  };
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<Key> fwd{segs[i].first, segs[i].second};
    for (;;) {
      const auto j = next_seg(fwd.back());
      if (!j) break;
      used[*j] = true;
      fwd.push_back(segs[*j].first == fwd.back() ? segs[*j].second : segs[*j].first);
    }
    std::vector<Key> back;
    Key head = fwd.front();
    for (;;) {
      const auto j = next_seg(head);
      if (!j) break;
      used[*j] = true;
      head = segs[*j].first == head ? segs[*j].second : segs[*j].first;
      back.push_back(head);
    }
    Polyline pl;
    for (auto it = back.rbegin(); it != back.rend(); ++it) pl.points.push_back(pt(*it));
    for (Key k : fwd) pl.points.push_back(pt(k));
    pl.closed = pl.points.size() > 2 && pl.points.front() == pl.points.back();
    out.push_back(std::move(pl));
  }
  return out;
}

std::string polyline_csv(const std::vector<Polyline>& lines) {
  std::ostringstream os;
  os << "polyline,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (auto z : lines[i].points) {
      std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", i, z.real(), z.imag());
      os << buf;
    }
  return os.str();
}

}  // namespace brownlab
