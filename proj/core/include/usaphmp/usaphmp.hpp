#pragma once

#include "usaphmp/bench.hpp"
#include "usaphmp/engine.hpp"
#include "usaphmp/error.hpp"
#include "usaphmp/evaluation.hpp"
#include "usaphmp/instance.hpp"
#include "usaphmp/io.hpp"
#include "usaphmp/operators.hpp"
#include "usaphmp/oracle.hpp"
#include "usaphmp/rng.hpp"
#include "usaphmp/solution.hpp"
