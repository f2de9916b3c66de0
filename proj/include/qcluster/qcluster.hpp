#pragma once

#include "qcluster/axioms.hpp"
#include "qcluster/clusterers.hpp"
#include "qcluster/error.hpp"
#include "qcluster/flow_cut.hpp"
#include "qcluster/instances.hpp"
#include "qcluster/io.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/random.hpp"
#include "qcluster/similarity.hpp"
#include "qcluster/submodular.hpp"
#include "qcluster/tree.hpp"
