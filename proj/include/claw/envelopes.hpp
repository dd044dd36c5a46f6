#pragma once

// One-sided Lipschitz envelopes. The upper-rate envelope E_p f is the largest
// function below f whose increase rate is at most p:
//   E_p f(x) = p x + min_{y <= x} (f(y) - p y),
// with the lower one-sided limit used at jumps. The lower-rate envelope bounds
// the decrease rate instead and is the mirror image under x -> -x.

#include "claw/pwl.hpp"

namespace claw {

struct EnvelopeResult {
    PLFunction envelope;
    PLFunction residual;  // input - envelope
    double contact_set_measure = 0.0;  // meas{envelope < input}
};

// Throws std::domain_error unless p > 0.
EnvelopeResult upper_rate_envelope(const PLFunction& f, double p);
EnvelopeResult lower_rate_envelope(const PLFunction& f, double p);

}  // namespace claw
