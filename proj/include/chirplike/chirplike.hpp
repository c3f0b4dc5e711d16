#pragma once

#include "chirplike/asymptotics.hpp"
#include "chirplike/designmat.hpp"
#include "chirplike/errors.hpp"
#include "chirplike/estimators.hpp"
#include "chirplike/model.hpp"
#include "chirplike/montecarlo.hpp"
#include "chirplike/optimize.hpp"
#include "chirplike/version.hpp"
