#pragma once

#include "tomodiscord/causal.hpp"
#include "tomodiscord/circuits.hpp"
#include "tomodiscord/experiments.hpp"
#include "tomodiscord/io.hpp"
#include "tomodiscord/measures.hpp"
#include "tomodiscord/numeric.hpp"
#include "tomodiscord/qstate.hpp"
#include "tomodiscord/quadrature.hpp"
#include "tomodiscord/randgen.hpp"
#include "tomodiscord/report.hpp"
#include "tomodiscord/search.hpp"
#include "tomodiscord/tomography.hpp"
