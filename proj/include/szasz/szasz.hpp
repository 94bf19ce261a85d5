#pragma once

#include "szasz/bounds.hpp"
#include "szasz/conditions.hpp"
#include "szasz/experiments.hpp"
#include "szasz/matrix.hpp"
#include "szasz/poly.hpp"
#include "szasz/realization.hpp"
