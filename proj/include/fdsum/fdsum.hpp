#pragma once

#include "fdsum/api.hpp"
#include "fdsum/barvinok.hpp"
#include "fdsum/cone.hpp"
#include "fdsum/errors.hpp"
#include "fdsum/lattice.hpp"
#include "fdsum/limit.hpp"
#include "fdsum/numeric.hpp"
#include "fdsum/oracle.hpp"
#include "fdsum/srf.hpp"
