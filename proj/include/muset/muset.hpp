#pragma once

// Exact computation with measurable sets as finite-modulus approximation
// streams over a countable generating ring, plus the induced probability
// measure and the reduction between the two name systems.

#include "muset/cover.hpp"
#include "muset/enumeration.hpp"
#include "muset/errors.hpp"
#include "muset/expr.hpp"
#include "muset/mu_ops.hpp"
#include "muset/name_io.hpp"
#include "muset/names.hpp"
#include "muset/rat.hpp"
#include "muset/real_stream.hpp"
#include "muset/ring_set.hpp"
#include "muset/space.hpp"
#include "muset/stream.hpp"
#include "muset/tilde_ops.hpp"
