#ifndef GHWSM_GHWSM_HPP
#define GHWSM_GHWSM_HPP

#include "expr.hpp"
#include "geometry.hpp"
#include "interval.hpp"
#include "interval_vector.hpp"
#include "ivf.hpp"
#include "problem_file.hpp"
#include "subdiff.hpp"
#include "support.hpp"
#include "wsm.hpp"

#endif // GHWSM_GHWSM_HPP
