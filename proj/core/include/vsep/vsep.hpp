#pragma once

#include "vsep/coarsen.hpp"
#include "vsep/errors.hpp"
#include "vsep/generate.hpp"
#include "vsep/graph.hpp"
#include "vsep/log.hpp"
#include "vsep/oracle.hpp"
#include "vsep/perturb.hpp"
#include "vsep/problem.hpp"
#include "vsep/qp.hpp"
#include "vsep/rng.hpp"
#include "vsep/solver.hpp"
