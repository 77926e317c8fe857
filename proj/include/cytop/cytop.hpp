#pragma once

#include "cytop/errors.hpp"
#include "cytop/exact_linalg.hpp"
#include "cytop/face_models.hpp"
#include "cytop/invariants.hpp"
#include "cytop/io.hpp"
#include "cytop/ktheory.hpp"
#include "cytop/nef.hpp"
#include "cytop/polytope.hpp"
#include "cytop/strata.hpp"
