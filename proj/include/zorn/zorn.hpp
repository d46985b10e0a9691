#pragma once

// Umbrella header: exact split-octonion matrix arithmetic, congruence-subloop
// factorization, level splitting, finite quotient enumeration, and subloop
// analysis.

#include "zorn/algebra.hpp"
#include "zorn/errors.hpp"
#include "zorn/expr.hpp"
#include "zorn/factor.hpp"
#include "zorn/floop.hpp"
#include "zorn/parallel.hpp"
#include "zorn/quotient.hpp"
#include "zorn/ring.hpp"
#include "zorn/serialize.hpp"
#include "zorn/wohl.hpp"
