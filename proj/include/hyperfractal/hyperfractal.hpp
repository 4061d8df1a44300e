#pragma once

#include "hyperfractal/city.hpp"
#include "hyperfractal/dyadic.hpp"
#include "hyperfractal/estimator.hpp"
#include "hyperfractal/geometry.hpp"
#include "hyperfractal/io/city_config.hpp"
#include "hyperfractal/io/figures.hpp"
#include "hyperfractal/io/geojson.hpp"
#include "hyperfractal/io/points_csv.hpp"
#include "hyperfractal/io/streets_csv.hpp"
#include "hyperfractal/io/svg.hpp"
#include "hyperfractal/manhattan.hpp"
#include "hyperfractal/measure.hpp"
#include "hyperfractal/rng.hpp"
