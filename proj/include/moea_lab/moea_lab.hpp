#pragma once

#include "algorithms.hpp"
#include "bitstring.hpp"
#include "bounds.hpp"
#include "config.hpp"
#include "control.hpp"
#include "experiment.hpp"
#include "objectives.hpp"
#include "pareto.hpp"
#include "random.hpp"
#include "variation.hpp"
