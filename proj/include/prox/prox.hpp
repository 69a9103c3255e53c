#pragma once

#include <prox/algebra/group.hpp>
#include <prox/algebra/module.hpp>
#include <prox/algebra/ring.hpp>
#include <prox/axioms.hpp>
#include <prox/descriptive.hpp>
#include <prox/errors.hpp>
#include <prox/io.hpp>
#include <prox/proximal.hpp>
#include <prox/relation.hpp>
#include <prox/report.hpp>
#include <prox/scan.hpp>
#include <prox/subset.hpp>
#include <prox/topology.hpp>
