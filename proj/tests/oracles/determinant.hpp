#pragma once

// |Delta(-1)| from the HOMFLY polynomial: the Conway polynomial is P at a = 1,
// and Delta(-1) = Conway(2i).

#include <cstdint>
#include <cstdlib>

#include "bandsurg/laurent.hpp"

namespace oracle {

inline std::int64_t determinant_from_homfly(const bandsurg::LaurentPoly2& p, bool* real_valued = nullptr) {
  std::int64_t re = 0, im = 0;
  for (const auto& t : p.terms()) {
    // (2i)^k
    std::int64_t mag = t.coef;
    for (int j = 0; j < std::abs(t.ez); ++j) mag *= 2;
    const int phase = ((t.ez % 4) + 4) % 4;
    if (t.ez < 0) return -1;
    if (phase == 0) re += mag;
    if (phase == 1) im += mag;
    if (phase == 2) re -= mag;
    if (phase == 3) im -= mag;
  }
  if (real_valued) *real_valued = im == 0;
  return std::llabs(re);
}

}  // namespace oracle
