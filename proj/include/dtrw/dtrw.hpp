#ifndef DTRW_DTRW_HPP
#define DTRW_DTRW_HPP

#include "dtrw/analytic.hpp"
#include "dtrw/experiment.hpp"
#include "dtrw/fd.hpp"
#include "dtrw/lattice.hpp"
#include "dtrw/mc.hpp"
#include "dtrw/renewal.hpp"
#include "dtrw/rng.hpp"
#include "dtrw/specfn.hpp"
#include "dtrw/waiting.hpp"
#include "dtrw/walk.hpp"

#endif  // DTRW_DTRW_HPP
