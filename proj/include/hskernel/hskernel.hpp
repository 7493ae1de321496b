#pragma once

// Umbrella header for the algebra; session.hpp and commands.hpp additionally
// need nlohmann/json on the include path.

#include "hskernel/coefficient.hpp"
#include "hskernel/config.hpp"
#include "hskernel/diffop.hpp"
#include "hskernel/errors.hpp"
#include "hskernel/graded_dual.hpp"
#include "hskernel/groebner.hpp"
#include "hskernel/hs.hpp"
#include "hskernel/logarithmic.hpp"
#include "hskernel/multi_index.hpp"
#include "hskernel/parse.hpp"
#include "hskernel/poly.hpp"
#include "hskernel/series.hpp"
