#pragma once

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "enlarge/body.hpp"

namespace enlarge::testing {

inline Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

inline Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

inline Mat cols(std::initializer_list<Vec> list) {
  Mat m(list.begin()->size(), static_cast<Eigen::Index>(list.size()));
  Eigen::Index j = 0;
  for (const auto& v : list) m.col(j++) = v;
  return m;
}

}  // namespace enlarge::testing
