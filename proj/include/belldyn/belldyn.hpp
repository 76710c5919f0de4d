#pragma once

#include "belldyn/channel_spec.hpp"
#include "belldyn/channels.hpp"
#include "belldyn/closedform.hpp"
#include "belldyn/coherence.hpp"
#include "belldyn/eigen.hpp"
#include "belldyn/errors.hpp"
#include "belldyn/matrix.hpp"
#include "belldyn/state.hpp"
#include "belldyn/sweep.hpp"
