#pragma once

// Umbrella header: the full multilevel k-way partitioning toolkit.

#include "kwaymlp/benchmark.hpp"
#include "kwaymlp/coarsening.hpp"
#include "kwaymlp/config.hpp"
#include "kwaymlp/contraction.hpp"
#include "kwaymlp/cycles.hpp"
#include "kwaymlp/flow_network.hpp"
#include "kwaymlp/flow_refinement.hpp"
#include "kwaymlp/generators.hpp"
#include "kwaymlp/gpa.hpp"
#include "kwaymlp/graph.hpp"
#include "kwaymlp/initial_partition.hpp"
#include "kwaymlp/kway_fm.hpp"
#include "kwaymlp/matching.hpp"
#include "kwaymlp/max_flow.hpp"
#include "kwaymlp/metis_io.hpp"
#include "kwaymlp/min_cut_dag.hpp"
#include "kwaymlp/partition.hpp"
#include "kwaymlp/pqueue.hpp"
#include "kwaymlp/quotient.hpp"
#include "kwaymlp/rating.hpp"
#include "kwaymlp/scheduling.hpp"
#include "kwaymlp/stop_rule.hpp"
#include "kwaymlp/two_way_fm.hpp"
#include "kwaymlp/types.hpp"
