#pragma once

#include "curveflow/assembly.hpp"
#include "curveflow/commands.hpp"
#include "curveflow/config.hpp"
#include "curveflow/curve.hpp"
#include "curveflow/energy.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/integrator.hpp"
#include "curveflow/linsolve.hpp"
#include "curveflow/metrics.hpp"
#include "curveflow/point.hpp"
#include "curveflow/shapes.hpp"
