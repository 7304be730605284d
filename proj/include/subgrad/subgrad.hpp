// Umbrella header.
#pragma once

#include "subgrad/analysis.hpp"
#include "subgrad/descent.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/harness.hpp"
#include "subgrad/io.hpp"
#include "subgrad/problem.hpp"
#include "subgrad/problems.hpp"
#include "subgrad/quadrature.hpp"
#include "subgrad/rng.hpp"
#include "subgrad/vec.hpp"
