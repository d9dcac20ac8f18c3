#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pcfss/goi/machine.hpp"
#include "pcfss/opsem.hpp"
#include "pcfss/syntax.hpp"
#include "pcfss/typer.hpp"

namespace pcfss::testkit {

using Rng = std::mt19937_64;

double uniform01(Rng& rng);

// Well-typed ANF terms; `depth` bounds nesting.  No fixpoints.
Type random_type(Rng& rng, int depth);
Term random_term(Rng& rng, const Context& ctx, const Type& a, int depth);
Value random_value(Rng& rng, const Context& ctx, const Type& a, int depth);

// Shapes built from I, R, S, !, tensor and dual of those.
goi::Shape random_shape(Rng& rng, int depth);
// Shapes in the image of type_shape.
goi::Shape random_interp_shape(Rng& rng, int depth);
// A token of the given polarity, nullopt when that side carries none.
std::optional<goi::Token> random_token(Rng& rng, const goi::Shape& s, goi::Polarity p);

// Valid inputs for m: dom-positive or cod-negative tokens.
std::vector<goi::Signal> random_probe(Rng& rng, const goi::Machine& m, std::size_t len);

// Traces: `natural` runs the program with fresh uniforms (truncated at
// max_len); the other forms perturb or replace it.
Trace natural_trace(Rng& rng, const Term& t, std::size_t max_len);
Trace random_trace(Rng& rng, std::size_t max_len);
double random_weight(Rng& rng);

}  // namespace pcfss::testkit
