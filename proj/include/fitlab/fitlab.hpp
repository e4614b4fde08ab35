#pragma once

// Umbrella header.

#include "fitlab/automorphism.hpp"
#include "fitlab/builtins.hpp"
#include "fitlab/common.hpp"
#include "fitlab/factor.hpp"
#include "fitlab/field.hpp"
#include "fitlab/group.hpp"
#include "fitlab/harness.hpp"
#include "fitlab/identities.hpp"
#include "fitlab/intpoly.hpp"
#include "fitlab/lattice.hpp"
#include "fitlab/linlab.hpp"
#include "fitlab/matrix.hpp"
#include "fitlab/numth.hpp"
#include "fitlab/perm.hpp"
#include "fitlab/sigma.hpp"
