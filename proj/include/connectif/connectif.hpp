#pragma once

#include "connectif/brunnian.hpp"
#include "connectif/canonical.hpp"
#include "connectif/enumerate.hpp"
#include "connectif/error.hpp"
#include "connectif/generic_graph.hpp"
#include "connectif/links.hpp"
#include "connectif/structure.hpp"
#include "connectif/subset.hpp"
