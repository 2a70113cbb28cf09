#pragma once

#include "qdyn/big_poly.hpp"
#include "qdyn/error.hpp"
#include "qdyn/heuristics.hpp"
#include "qdyn/iterate_algebra.hpp"
#include "qdyn/modular_dynamics.hpp"
#include "qdyn/number_theory.hpp"
#include "qdyn/orbit_integers.hpp"
#include "qdyn/separation.hpp"
#include "qdyn/support.hpp"
