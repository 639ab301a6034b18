#pragma once

// Numerical geometry engine for quasihyperbolic planes (upper half-plane with
// line element F(dx,dy)/y): closed-form Stadium geometry, a generic
// convex-norm engine, Busemann axiom checkers, homogeneity maps and the
// finite-dimensionality embedding.

#include "qhgeo/core.hpp"
#include "qhgeo/rootfind.hpp"
#include "qhgeo/quadrature.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/geodesic.hpp"
#include "qhgeo/sphere.hpp"
#include "qhgeo/space.hpp"
#include "qhgeo/report.hpp"
#include "qhgeo/checks.hpp"
#include "qhgeo/ulgh.hpp"
#include "qhgeo/homogeneity.hpp"
#include "qhgeo/embedding.hpp"
#include "qhgeo/io.hpp"
