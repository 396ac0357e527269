#pragma once

#include "geo4/errors.hpp"
#include "geo4/rational.hpp"
#include "geo4/matrix.hpp"
#include "geo4/invariants.hpp"
#include "geo4/mcg.hpp"
#include "geo4/lefschetz.hpp"
#include "geo4/fpgroup.hpp"
#include "geo4/pi1_certificates.hpp"
#include "geo4/recipe.hpp"
#include "geo4/blocks.hpp"
#include "geo4/validate.hpp"
#include "geo4/planner.hpp"
#include "geo4/scan.hpp"
