#pragma once

#include "defectwalk/oracle/dense.hpp"
#include "defectwalk/oracle/highprec.hpp"
#include "defectwalk/oracle/power.hpp"
#include "defectwalk/oracle/residual.hpp"
#include "defectwalk/oracle/roots.hpp"
#include "defectwalk/validation.hpp"
