#pragma once

// Umbrella header.

#include "lpbfs/differential.hpp"
#include "lpbfs/errors.hpp"
#include "lpbfs/generate.hpp"
#include "lpbfs/io.hpp"
#include "lpbfs/matrix.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/oracles.hpp"
#include "lpbfs/phase1.hpp"
#include "lpbfs/phase2.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/solver.hpp"
#include "lpbfs/tableau.hpp"
