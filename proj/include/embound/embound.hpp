#ifndef EMBOUND_EMBOUND_HPP
#define EMBOUND_EMBOUND_HPP

#include "embound/closedform.hpp"
#include "embound/emb.hpp"
#include "embound/error.hpp"
#include "embound/geometric.hpp"
#include "embound/harness.hpp"
#include "embound/linalg.hpp"
#include "embound/measures.hpp"
#include "embound/optimize.hpp"
#include "embound/random.hpp"
#include "embound/state.hpp"
#include "embound/state_io.hpp"

#endif
