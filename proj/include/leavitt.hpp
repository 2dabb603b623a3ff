#pragma once

#include "leavitt/algebra.hpp"
#include "leavitt/cli.hpp"
#include "leavitt/expr.hpp"
#include "leavitt/feasibility.hpp"
#include "leavitt/finiteness.hpp"
#include "leavitt/graph.hpp"
#include "leavitt/json_io.hpp"
#include "leavitt/oracle.hpp"
#include "leavitt/random.hpp"
#include "leavitt/rational.hpp"
#include "leavitt/relative.hpp"
#include "leavitt/scalar.hpp"
#include "leavitt/trace.hpp"
