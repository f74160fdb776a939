#pragma once

#include "canonical.hpp"
#include "classify.hpp"
#include "digraph.hpp"
#include "error.hpp"
#include "gf2.hpp"
#include "invariants.hpp"
#include "random.hpp"
#include "record.hpp"
