// Eigenvalues for one defect strength, a residual check on the matching
// eigenvector, and the growth of a walker started at the origin.
#include <cstdio>

#include "defectwalk/defectwalk.hpp"

int main() {
  using namespace defectwalk;
  const auto omega = DefectParameter::spectral(2.0);
  const auto quad = eigenvalues(omega);
  for (int j = 1; j <= 4; ++j) {
    const Complex l = quad(j);
    std::printf("lambda%d = %+.12f %+.12fi  |lambda| = %.12f  %s\n", j, l.real(), l.imag(), std::abs(l),
                std::string(to_string(classify(l))).c_str());
  }

  const auto psi = eigenvector(omega, 1, 64);
  std::printf("interior residual of the lambda1 eigenvector on [-64, 64]: %.3e\n",
              eigen_residual(psi, omega, quad(1)));

  const double rate = growth_rate(initial_state(InitialState::origin_up, 512), omega, 400);
  std::printf("growth rate after 400 steps: %.6f (|lambda1| = %.6f)\n", rate, std::abs(quad(1)));
}
