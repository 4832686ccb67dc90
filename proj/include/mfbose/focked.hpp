#pragma once

#include "mfbose/fock/basis.hpp"
#include "mfbose/fock/coherent.hpp"
#include "mfbose/fock/operators.hpp"
#include "mfbose/fock/states.hpp"
