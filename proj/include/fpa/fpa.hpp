#pragma once

// Umbrella header.

#include "fpa/closed_forms.hpp"
#include "fpa/csv.hpp"
#include "fpa/laurent.hpp"
#include "fpa/mc.hpp"
#include "fpa/moments.hpp"
#include "fpa/philox.hpp"
#include "fpa/quad.hpp"
