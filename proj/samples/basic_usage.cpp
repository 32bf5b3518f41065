// Library tour: a terminating S, a convergent 3F2, and the counterexample.

#include <iostream>

#include "hypersum/verifier.hpp"

int main() {
  using namespace hypersum;

  const auto p = RamanujanParams::terminating(2, Scalar::ratio(1, 2), Scalar::ratio(1, 3), Scalar(4));
  std::cout << "S = " << s_direct(p).value.to_string() << ", closed form = " << s_closed_form(p).to_string() << '\n';

  const EvalResult r = eval_at_1(HypParams({Scalar(1), Scalar(1), Scalar(1)}, {Scalar(2), Scalar(3)}));
  std::cout << "3F2(1,1,1;2,3;1) = " << r.value.value().to_decimal(20) << " (" << to_string(r.method) << ", "
            << r.terms_used << " terms)\n";

  const IdentityReport c = counterexample_unit_z(Scalar::ratio(1, 2), Scalar::ratio(1, 2));
  std::cout << "alpha = beta = 1/2: S(1) = " << c.lhs->value().to_decimal(12) << ", verdict " << to_string(c.verdict)
            << '\n';
  return 0;
}
