#pragma once

#include "fabercone/cone.hpp"

namespace fabercone {

// Independent ray enumerator used to cross-check the double description
// path: converts the dual generator cone to inequalities by
// Fourier-Motzkin elimination and reads the facets back off as rays.
// Exponential in the worst case; intended for small test cones only.
ConeV fm_extremal_rays(const ConeH& cone);

}  // namespace fabercone
