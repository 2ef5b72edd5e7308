// Minimizes one function with each method and prints the evaluation cost.
#include <cmath>
#include <cstdio>

#include "unisearch/unisearch.hpp"

int main() {
  using namespace unisearch;
  const Interval iv(0.5, 2);
  const auto f = [](double x) { return 5 / x + x * x; };

  for (MethodKind kind : {MethodKind::interval_halving, MethodKind::trichotomy,
                          MethodKind::golden_section, MethodKind::dichotomous}) {
    Objective objective(f);
    const auto r = minimize(Method{kind, {}}, objective, iv, StopRule::half_width(1e-6));
    std::printf("%-12s x = %.9f  f = %.9f  evals = %zu\n", std::string(method_name(kind)).c_str(),
                r.x_min, r.f_min, r.n_evals);
  }

  Objective objective(f);
  const auto r = minimize_fibonacci(objective, iv, 30);
  std::printf("%-12s x = %.9f  f = %.9f  evals = %zu\n", "fibonacci", r.x_min, r.f_min, r.n_evals);
}
