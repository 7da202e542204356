#pragma once

#include <string>
#include <vector>

#include "kerrgcs/special.hpp"

namespace kerrgcs {

/// Complex samples on a real grid (θ = Ut or x), with the grid's meaning.
struct ComplexSeries {
  std::string grid_label;  ///< "theta" (units of Ut) or "x"
  std::vector<double> grid;
  std::vector<cplx> values;
};

}  // namespace kerrgcs
