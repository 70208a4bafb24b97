#pragma once

#include "slo/algebra_io.hpp"
#include "slo/catalog.hpp"
#include "slo/closure_quotient.hpp"
#include "slo/finite_algebra.hpp"
#include "slo/free_constructions.hpp"
#include "slo/free_model.hpp"
#include "slo/homomorphism.hpp"
#include "slo/models.hpp"
#include "slo/normal_band.hpp"
#include "slo/power_algebra.hpp"
#include "slo/sig_term.hpp"
#include "slo/slo_core.hpp"
#include "slo/suites.hpp"
