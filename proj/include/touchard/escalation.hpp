#pragma once

#include <string>
#include <utility>

#include "touchard/error.hpp"
#include "touchard/numkernel.hpp"

namespace touchard::num {

struct Stabilized {
  BigReal value;  // rounded back to the caller's context
  bool verified;
  int working_digits;
};

// Double-and-compare: evaluates at ctx, 2ctx, 4ctx, ... until two successive
// results share `required_digits` leading digits. Throws PrecisionExhausted
// after ctx.max_escalations() doublings.
template <typename Eval>
Stabilized escalate_until_stable(Eval&& eval, const PrecisionContext& ctx, double required_digits,
                                 const std::string& what) {
  PrecisionContext level = ctx;
  BigReal previous = eval(level);
  for (int i = 0;; ++i) {
    PrecisionContext next = level.doubled();
    BigReal current = eval(next);
    if (agreeing_digits(previous, current) >= required_digits)
      return {current.at(ctx), true, next.digits()};
    if (i + 1 >= ctx.max_escalations())
      throw PrecisionExhausted(what + ": no agreement to " + std::to_string(static_cast<int>(required_digits)) +
                                   " digits after " + std::to_string(ctx.max_escalations()) + " escalations",
                               previous.serialize(), current.serialize());
    previous = std::move(current);
    level = next;
  }
}

}  // namespace touchard::num
