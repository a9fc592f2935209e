#pragma once

// Everything except the JSON layer (io.hpp) and the verification suites (verify.hpp).

#include "mukai/error.hpp"
#include "mukai/integer.hpp"
#include "mukai/rational.hpp"
#include "mukai/quad_ext.hpp"
#include "mukai/matrix.hpp"
#include "mukai/linalg.hpp"
#include "mukai/quadspace.hpp"
#include "mukai/lie.hpp"
#include "mukai/symrep.hpp"
#include "mukai/k3hilb.hpp"
#include "mukai/lattice.hpp"
