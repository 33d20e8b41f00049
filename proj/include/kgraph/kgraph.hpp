#pragma once

#include "kgraph/error.hpp"
#include "kgraph/gf.hpp"
#include "kgraph/graph.hpp"
#include "kgraph/graph_json.hpp"
#include "kgraph/multipoly.hpp"
#include "kgraph/pointcount.hpp"
#include "kgraph/ratfit.hpp"
#include "kgraph/symanzik.hpp"
