#pragma once

#include "buildings/error.hpp"
#include "buildings/exact.hpp"
#include "buildings/metric_tree.hpp"
#include "buildings/rootsys.hpp"
#include "buildings/titsdiagram.hpp"
#include "buildings/treefold/fold.hpp"
#include "buildings/treefold/generators.hpp"
#include "buildings/treefold/instance.hpp"
#include "buildings/treefold/retraction.hpp"
#include "buildings/treefold/validate.hpp"
#include "buildings/treefold/verify.hpp"
