#pragma once

#include "pivotkit/comm_model.hpp"
#include "pivotkit/compressed.hpp"
#include "pivotkit/dense.hpp"
#include "pivotkit/generate.hpp"
#include "pivotkit/matrix_io.hpp"
#include "pivotkit/parsim.hpp"
#include "pivotkit/report.hpp"
#include "pivotkit/restricted.hpp"
#include "pivotkit/solve.hpp"
#include "pivotkit/supernode.hpp"
#include "pivotkit/tpp.hpp"
