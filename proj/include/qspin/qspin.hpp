#pragma once

#include "bell.hpp"
#include "bks.hpp"
#include "core.hpp"
#include "decoherence.hpp"
#include "eigen.hpp"
#include "ghz.hpp"
#include "hardy.hpp"
#include "histories.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "nosignal.hpp"
#include "rng.hpp"
#include "spin.hpp"
#include "state.hpp"
#include "verify.hpp"
