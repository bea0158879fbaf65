#pragma once

#include "lexpref/var_set.hpp"
#include "lexpref/error.hpp"
#include "lexpref/core_model.hpp"
#include "lexpref/statements.hpp"
#include "lexpref/consistency.hpp"
#include "lexpref/optimality.hpp"
#include "lexpref/oracle.hpp"
#include "lexpref/instance.hpp"
#include "lexpref/generator.hpp"
