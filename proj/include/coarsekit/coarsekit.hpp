#pragma once

#include "coarsekit/asymptotic.hpp"
#include "coarsekit/bigint.hpp"
#include "coarsekit/boxspace.hpp"
#include "coarsekit/coarse.hpp"
#include "coarsekit/eigen.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/graph.hpp"
#include "coarsekit/host.hpp"
#include "coarsekit/io.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/metric.hpp"
#include "coarsekit/parallel.hpp"
#include "coarsekit/rep.hpp"
#include "coarsekit/rng.hpp"
#include "coarsekit/sl2.hpp"
#include "coarsekit/spectral.hpp"
#include "coarsekit/treelift.hpp"
