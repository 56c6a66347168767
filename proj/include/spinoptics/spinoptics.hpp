#pragma once

// Umbrella header for the spinoptics library.

#include "spinoptics/clebsch_gordan.hpp"
#include "spinoptics/coupled_label.hpp"
#include "spinoptics/exact_complex.hpp"
#include "spinoptics/half_int.hpp"
#include "spinoptics/optical_setup.hpp"
#include "spinoptics/permanent.hpp"
#include "spinoptics/postselect.hpp"
#include "spinoptics/setup_compiler.hpp"
#include "spinoptics/state_vector.hpp"
#include "spinoptics/verification.hpp"
