#pragma once

// Umbrella header: exact vector-lattice-valued measures at desk scale.

#include "ordmeas/fuzz.hpp"
#include "ordmeas/integral.hpp"
#include "ordmeas/lattice.hpp"
#include "ordmeas/laws.hpp"
#include "ordmeas/measure.hpp"
#include "ordmeas/operator.hpp"
#include "ordmeas/random.hpp"
#include "ordmeas/rational.hpp"
#include "ordmeas/repr.hpp"
#include "ordmeas/serialize.hpp"
#include "ordmeas/space.hpp"
