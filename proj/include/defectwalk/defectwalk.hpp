#pragma once

#include "defectwalk/lattice.hpp"
#include "defectwalk/matrix2.hpp"
#include "defectwalk/scalar.hpp"
#include "defectwalk/spectrum.hpp"
#include "defectwalk/walk.hpp"
