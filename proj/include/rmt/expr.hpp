#pragma once

#include <functional>
#include <string>

#include "rmt/moments.hpp"

namespace rmt {

// Compiles a small arithmetic expression over variables x and y into a
// callable. Grammar: + - * / ^ ( ), numbers, and the functions
// abs, min, max, floor, sqrt, exp, log, sin, cos, step (1 if arg >= 0),
// le(a,b) (1 if a <= b). Used for variance-profile strings.
Sigma2 compile_sigma2(const std::string& expr);
Sigma1 compile_sigma1(const std::string& expr);  // y unbound

// Named built-ins plus expression fallback:
//   upper_triangular       sigma(x,y) = 1(x <= y)
//   band:a                 sigma(x)   = 1(x <= a)
//   band2:a                sigma(x)   = 1(x <= a or x >= 1-a)
Sigma2 profile2_by_name(const std::string& name);
Sigma1 profile1_by_name(const std::string& name);

}  // namespace rmt
