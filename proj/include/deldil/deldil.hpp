#pragma once

#include "deldil/closed_form.hpp"
#include "deldil/constructions.hpp"
#include "deldil/delaunay.hpp"
#include "deldil/dilation.hpp"
#include "deldil/geometry.hpp"
#include "deldil/io.hpp"
#include "deldil/perturbation.hpp"
#include "deldil/predicates.hpp"
#include "deldil/random_experiments.hpp"
#include "deldil/triangulation.hpp"
#include "deldil/validity.hpp"
