#pragma once

// Umbrella header: directional and Birkhoff-James orthogonality in
// finite-dimensional complex normed spaces, orthogonality-direction arcs,
// norming-functional witnesses, smoothness, and restricted numerical ranges.

#include "bjortho/arcs.hpp"
#include "bjortho/functionals.hpp"
#include "bjortho/minimize.hpp"
#include "bjortho/numerical_range.hpp"
#include "bjortho/orthogonality.hpp"
#include "bjortho/sampling.hpp"
#include "bjortho/serialize.hpp"
#include "bjortho/spaces.hpp"
#include "bjortho/types.hpp"
#include "bjortho/version.hpp"
