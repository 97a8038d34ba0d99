#pragma once

// Umbrella header: exact measure theory and martingale verification on
// finite probability spaces, over arbitrary-precision rationals.

#include "martkit/bigint.hpp"
#include "martkit/condexp.hpp"
#include "martkit/errors.hpp"
#include "martkit/martingale.hpp"
#include "martkit/measure.hpp"
#include "martkit/parallel.hpp"
#include "martkit/partition.hpp"
#include "martkit/process.hpp"
#include "martkit/rational.hpp"
#include "martkit/vec.hpp"
