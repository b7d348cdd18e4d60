#ifndef EFLOWER_EFLOWER_HPP
#define EFLOWER_EFLOWER_HPP

#include "eflower/error.hpp"
#include "eflower/vec2.hpp"

#include "eflower/geometry/core.hpp"
#include "eflower/geometry/ellipse.hpp"
#include "eflower/geometry/focusing.hpp"
#include "eflower/geometry/polygon.hpp"
#include "eflower/geometry/serialize.hpp"
#include "eflower/geometry/sol.hpp"
#include "eflower/geometry/string_construction.hpp"
#include "eflower/geometry/svg.hpp"
#include "eflower/geometry/table.hpp"
#include "eflower/geometry/validate.hpp"
#include "eflower/geometry/zones.hpp"

#include "eflower/dynamics/billiard.hpp"
#include "eflower/dynamics/invariant.hpp"
#include "eflower/dynamics/orbit.hpp"
#include "eflower/dynamics/tangent.hpp"

#include "eflower/analysis/classify.hpp"
#include "eflower/analysis/correlation.hpp"
#include "eflower/analysis/ensemble.hpp"
#include "eflower/analysis/lyapunov.hpp"
#include "eflower/analysis/period2.hpp"
#include "eflower/analysis/portrait.hpp"
#include "eflower/analysis/seeds.hpp"

#endif  // EFLOWER_EFLOWER_HPP
