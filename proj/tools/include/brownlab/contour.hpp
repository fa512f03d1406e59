#pragma once

#include <string>
#include <vector>

#include "brown/numerics.hpp"

namespace brownlab {

struct Polyline {
  std::vector<brown::cplx> points;
  bool closed = false;
};

// Boundary of the in_spectrum mask by marching squares on cell centres,
// with the window exterior treated as outside.
std::vector<Polyline> mask_contours(const brown::numerics::DensityGridResult& mask);
// Columns polyline,re,im.
std::string polyline_csv(const std::vector<Polyline>& lines);

}  // namespace brownlab
