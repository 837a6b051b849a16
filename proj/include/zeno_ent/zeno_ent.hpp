#pragma once

#include "zeno_ent/dynamics.hpp"
#include "zeno_ent/entanglement.hpp"
#include "zeno_ent/model.hpp"
#include "zeno_ent/optimize.hpp"
#include "zeno_ent/report.hpp"
#include "zeno_ent/scenario.hpp"
#include "zeno_ent/zeno.hpp"
