#pragma once

#include "unisearch/core.hpp"
#include "unisearch/solvers.hpp"
#include "unisearch/bounds.hpp"
#include "unisearch/oracle.hpp"
#include "unisearch/registry.hpp"
#include "unisearch/bench.hpp"
#include "unisearch/report.hpp"
