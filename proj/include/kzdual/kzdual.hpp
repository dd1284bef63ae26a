#pragma once

#include "kzdual/errors.hpp"
#include "kzdual/rational.hpp"
#include "kzdual/sampling.hpp"
#include "kzdual/weight_basis.hpp"
#include "kzdual/gl_action.hpp"
#include "kzdual/diff_operators.hpp"
#include "kzdual/projector_cache.hpp"
#include "kzdual/difference_operators.hpp"
#include "kzdual/duality.hpp"
#include "kzdual/serialize.hpp"
#include "kzdual/suites.hpp"
