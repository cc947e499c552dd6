#pragma once

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/json.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"
#include "qudit/gates.hpp"
#include "qudit/number_rep.hpp"
#include "qudit/pauli_group.hpp"
#include "qudit/su2_rep.hpp"
#include "qudit/sweep.hpp"
#include "qudit/verify.hpp"
