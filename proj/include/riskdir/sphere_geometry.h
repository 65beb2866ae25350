#ifndef RISKDIR_SPHERE_GEOMETRY_H_
#define RISKDIR_SPHERE_GEOMETRY_H_

#include "riskdir/arc_set.h"
#include "riskdir/cap_set.h"
#include "riskdir/sphere.h"

#endif  // RISKDIR_SPHERE_GEOMETRY_H_
