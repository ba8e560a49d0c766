#pragma once

// Umbrella header for the finite spectral-triple toolkit.

#include "finspec/campaign.hpp"
#include "finspec/config.hpp"
#include "finspec/dixmier.hpp"
#include "finspec/errors.hpp"
#include "finspec/exponential.hpp"
#include "finspec/norm_ladder.hpp"
#include "finspec/omega_form.hpp"
#include "finspec/operator.hpp"
#include "finspec/product_integral.hpp"
#include "finspec/random.hpp"
#include "finspec/spectral_triple.hpp"
#include "finspec/star_algebra.hpp"
#include "finspec/trace.hpp"
