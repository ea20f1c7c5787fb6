#pragma once

#include "bounds.hpp"
#include "dof.hpp"
#include "params.hpp"
#include "ratesplit.hpp"
#include "region.hpp"
#include "sim/codebook.hpp"
#include "sim/decoder.hpp"
#include "sim/jammer.hpp"
#include "sim/lemma.hpp"
#include "sim/plan.hpp"
#include "sim/simulate.hpp"
