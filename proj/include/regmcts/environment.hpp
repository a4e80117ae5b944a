#pragma once

#include <cstdint>

#include "regmcts/rng.hpp"

namespace regmcts {

// Deterministic-transition planning environment. States are opaque handles;
// transitions and rewards are deterministic, all stochasticity lives in
// evaluate(). evaluate() must only be called on terminal states.
class Environment {
 public:
  using State = std::int64_t;

  virtual ~Environment() = default;

  virtual int action_count() const = 0;
  virtual State root_state() const = 0;
  virtual State step(State state, int action) const = 0;
  virtual bool is_terminal(State state) const = 0;
  virtual double reward(State state, int action) const = 0;
  virtual double evaluate(State state, Rng& rng) const = 0;
};

}  // namespace regmcts
