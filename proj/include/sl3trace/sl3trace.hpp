#pragma once

// Convenience umbrella for the whole library.

#include "sl3trace/calculus.hpp"
#include "sl3trace/certify.hpp"
#include "sl3trace/cubic.hpp"
#include "sl3trace/errors.hpp"
#include "sl3trace/invariants.hpp"
#include "sl3trace/io.hpp"
#include "sl3trace/linalg.hpp"
#include "sl3trace/magnus.hpp"
#include "sl3trace/matrix3.hpp"
#include "sl3trace/rational.hpp"
#include "sl3trace/rng.hpp"
#include "sl3trace/sample.hpp"
#include "sl3trace/scalar.hpp"
#include "sl3trace/tuple.hpp"
#include "sl3trace/version.hpp"
#include "sl3trace/word.hpp"
