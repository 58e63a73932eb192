// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

// Sign-exact planar predicates. A floating-point evaluation is accepted when
// it clears a forward error bound; otherwise the determinant is recomputed
// in exact rational arithmetic.

#pragma once

#include "pdcell/geometry.hpp"

namespace pdcell::detail {

/// +1 if a, b, c turn counter-clockwise, -1 if clockwise, 0 if collinear.
int orient2d(Point2 a, Point2 b, Point2 c);

/// +1 if d lies strictly inside the circle through the counter-clockwise
/// triangle a, b, c, -1 if strictly outside, 0 if co-circular.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

/// Number of calls that needed the exact fallback (diagnostics only).
long exact_fallbacks();

}  // namespace pdcell::detail
