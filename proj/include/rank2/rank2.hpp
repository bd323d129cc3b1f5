#pragma once

#include "rank2/brokenlines.hpp"
#include "rank2/cluster.hpp"
#include "rank2/errors.hpp"
#include "rank2/greedy.hpp"
#include "rank2/laurent.hpp"
#include "rank2/lattice.hpp"
#include "rank2/scattering.hpp"
#include "rank2/serialize.hpp"
#include "rank2/verify.hpp"
