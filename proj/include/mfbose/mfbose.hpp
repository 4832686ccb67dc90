#pragma once

#include "mfbose/errors.hpp"
#include "mfbose/focked.hpp"
#include "mfbose/lattice.hpp"
#include "mfbose/potentials.hpp"
#include "mfbose/selfconsistent.hpp"
#include "mfbose/special.hpp"
#include "mfbose/types.hpp"
#include "mfbose/variational.hpp"
