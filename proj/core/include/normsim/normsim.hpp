// Umbrella header.
#pragma once

#include "normsim/analysis.hpp"
#include "normsim/config.hpp"
#include "normsim/config_file.hpp"
#include "normsim/csv.hpp"
#include "normsim/experiment.hpp"
#include "normsim/genome.hpp"
#include "normsim/metrics.hpp"
#include "normsim/mutation.hpp"
#include "normsim/plot.hpp"
#include "normsim/random.hpp"
#include "normsim/simulation.hpp"
#include "normsim/summary.hpp"
#include "normsim/world.hpp"
