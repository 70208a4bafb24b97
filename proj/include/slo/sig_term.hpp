#pragma once

#include "slo/dsl.hpp"
#include "slo/signature.hpp"
#include "slo/term.hpp"
