#pragma once

#include "analyzer.hpp"
#include "classifier.hpp"
#include "coefficients.hpp"
#include "errors.hpp"
#include "evaluator.hpp"
#include "levy.hpp"
#include "parallel.hpp"
#include "primes.hpp"
#include "rational.hpp"
#include "sampler.hpp"
#include "spec.hpp"
#include "spec_io.hpp"
