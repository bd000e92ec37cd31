#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "defectwalk/spectrum.hpp"
#include "defectwalk/walk.hpp"
#include "generators.hpp"

using namespace defectwalk;
using defectwalk::testing::Sampler;

namespace {

const double rt10 = std::sqrt(10.0);

// R±(2) evaluated with 50-digit arithmetic, rounded to double.
constexpr double r_plus_2 = 0.91239001092387890434;
constexpr double r_minus_2 = 0.65761351266049564532;
// 2√(2/5) under a square root.
constexpr double modulus_2 = 1.1246826503806981;

Complex cis(double theta) { return std::polar(1.0, theta); }

}  // namespace

// --- defect parameter -------------------------------------------------------

TEST(DefectParameter, RejectsZeroAndNonFinite) {
  EXPECT_THROW(DefectParameter(0.0), DomainError);
  EXPECT_THROW(DefectParameter(std::nan("")), DomainError);
  EXPECT_THROW(DefectParameter{INFINITY}, DomainError);
}

TEST(DefectParameter, SpectralFactoryRejectsHomogeneous) {
  EXPECT_THROW(DefectParameter::spectral(1.0), DomainError);
  EXPECT_NO_THROW(DefectParameter::spectral(-1.0));
  EXPECT_EQ(DefectParameter(3.0).perturbation_strength(), 2.0);
  EXPECT_TRUE(DefectParameter(-1.0).is_unitary());
}

// --- R± and the quadruple --------------------------------------------------

TEST(RFunctions, UnitaryDefectValues) {
  EXPECT_NEAR(r_plus(DefectParameter(-1.0)), 1.0 / rt10, 1e-16);
  EXPECT_NEAR(r_minus(DefectParameter(-1.0)), 3.0 / rt10, 1e-16);
}

TEST(RFunctions, HomogeneousValueIsEvaluable) {
  EXPECT_DOUBLE_EQ(r_plus(DefectParameter(1.0)), 1.0 / std::numbers::sqrt2);
  EXPECT_DOUBLE_EQ(r_minus(DefectParameter(1.0)), 1.0 / std::numbers::sqrt2);
}

TEST(RFunctions, OmegaTwoMatchesExtendedPrecisionOracle) {
  EXPECT_NEAR(r_plus(DefectParameter(2.0)), r_plus_2, 2e-16);
  EXPECT_NEAR(r_minus(DefectParameter(2.0)), r_minus_2, 2e-16);
}

TEST(RFunctions, StrictlyPositive) {
  Sampler s(21);
  for (int i = 0; i < 2000; ++i) {
    const DefectParameter w(s.omega(1e-6));
    ASSERT_GT(r_plus(w), 0.0) << w.value();
    ASSERT_GT(r_minus(w), 0.0) << w.value();
  }
}

TEST(Eigenvalues, UnitaryDefectExactValues) {
  const auto q = eigenvalues(DefectParameter(-1.0));
  const Complex expected[] = {{3 / rt10, 1 / rt10}, {-3 / rt10, 1 / rt10}, {-3 / rt10, -1 / rt10}, {3 / rt10, -1 / rt10}};
  for (int j = 1; j <= 4; ++j) {
    EXPECT_LT(std::abs(q(j).real() - expected[j - 1].real()), 1e-14);
    EXPECT_LT(std::abs(q(j).imag() - expected[j - 1].imag()), 1e-14);
    EXPECT_NEAR(std::abs(q(j)), 1.0, 1e-15);
  }
}

TEST(Eigenvalues, OmegaTwo) {
  const auto q = eigenvalues(DefectParameter(2.0));
  EXPECT_NEAR(q(1).real(), r_minus_2, 2e-16);
  EXPECT_NEAR(q(1).imag(), r_plus_2, 2e-16);
  EXPECT_NEAR(std::abs(q(1)), modulus_2, 1e-15);
}

TEST(Eigenvalues, ExcludedParameters) {
  EXPECT_THROW(eigenvalues(DefectParameter(1.0)), DomainError);
  EXPECT_THROW(eigenvalues(DefectParameter(0.0)), DomainError);
  EXPECT_THROW(eigenvalues(DefectParameter(2.0))(5), DomainError);
}

TEST(Eigenvalues, QuadrupleSymmetryAndFirstQuadrant) {
  Sampler s(22);
  for (int i = 0; i < 1000; ++i) {
    const auto q = eigenvalues(DefectParameter(s.omega()));
    ASSERT_EQ(q(2), -std::conj(q(1)));
    ASSERT_EQ(q(3), -q(1));
    ASSERT_EQ(q(4), std::conj(q(1)));
    ASSERT_GT(q(1).real(), 0.0);
    ASSERT_GT(q(1).imag(), 0.0);
  }
}

TEST(Eigenvalues, ModulusIdentity) {
  Sampler s(23);
  for (int i = 0; i < 2000; ++i) {
    const DefectParameter w(s.omega());
    const double closed = eigenvalue_modulus_squared(w);
    const double rp = r_plus(w);
    const double rm = r_minus(w);
    ASSERT_NEAR(rm * rm + rp * rp, closed, 1e-12 * closed) << w.value();
    for (const auto& l : eigenvalues(w)) ASSERT_NEAR(std::norm(l), closed, 1e-12 * closed);
  }
}

TEST(Eigenvalues, NonUnitaryDefectLeavesTheCircle) {
  for (double w : {-5.0, -3.0, -2.0, -1.5, -0.9, -0.5, -0.1, 0.1, 0.5, 0.9, 0.99, 1.01, 1.5, 2.0, 3.0, 5.0}) {
    for (const auto& l : eigenvalues(DefectParameter(w))) EXPECT_GT(std::abs(std::abs(l) - 1.0), 1e-8) << w;
  }
}

TEST(Eigenvalues, Placement) {
  Sampler s(24);
  for (int i = 0; i < 1000; ++i) {
    const DefectParameter w(s.omega());
    const auto q = eigenvalues(w);
    ASSERT_EQ(classify(q(1)), RegionLabel::xi_plus) << w.value();
    ASSERT_EQ(classify(q(4)), RegionLabel::xi_plus) << w.value();
    ASSERT_EQ(classify(q(2)), RegionLabel::xi_minus) << w.value();
    ASSERT_EQ(classify(q(3)), RegionLabel::xi_minus) << w.value();
  }
}

// --- branch table -----------------------------------------------------------

TEST(BranchTable, PositiveDefect) {
  const DefectParameter w(2.0);
  EXPECT_EQ(branch_of(w, 1), (Branch{Family::plus, SignChoice::upper}));
  EXPECT_EQ(branch_of(w, 2), (Branch{Family::minus, SignChoice::upper}));
  EXPECT_EQ(branch_of(w, 3), (Branch{Family::minus, SignChoice::lower}));
  EXPECT_EQ(branch_of(w, 4), (Branch{Family::plus, SignChoice::lower}));
}

TEST(BranchTable, NegativeDefectSwapsSign) {
  const DefectParameter w(-2.0);
  EXPECT_EQ(branch_of(w, 1), (Branch{Family::plus, SignChoice::lower}));
  EXPECT_EQ(branch_of(w, 2), (Branch{Family::minus, SignChoice::lower}));
  EXPECT_EQ(branch_of(w, 3), (Branch{Family::minus, SignChoice::upper}));
  EXPECT_EQ(branch_of(w, 4), (Branch{Family::plus, SignChoice::upper}));
}

// --- z±, χ±, transfer matrices -----------------------------------------------

TEST(BulkTransfer, ZPlusAtOne) {
  const auto [zp, zm] = z_pm(Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(zp - Complex(1.0 + std::numbers::sqrt2, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(zp * zm - 1.0), 0.0, 1e-15);
}

TEST(BulkTransfer, ZPlusAtI) {
  const auto [zp, zm] = z_pm(Complex(0.0, 1.0));
  EXPECT_LT(std::abs(zp - Complex(0.0, 1.0)), 1e-15);
  EXPECT_NEAR(std::abs(zp), 1.0, 1e-15);
}

TEST(BulkTransfer, CoalescenceAtSigmaZero) {
  for (const auto& p : coalescence_points()) {
    const auto b = bulk_spectrum(p);
    EXPECT_TRUE(b.coalescent);
    EXPECT_EQ(b.z_plus, b.z_minus);
    const auto [cp, cm] = chi_pm(p);
    EXPECT_EQ(cp, cm);
  }
}

TEST(BulkTransfer, ChiPlusAtOne) {
  const auto [cp, cm] = chi_pm(Complex(1.0, 0.0));
  EXPECT_LT(std::abs(cp[0] - 1.0), 1e-15);
  EXPECT_LT(std::abs(cp[1] - 1.0), 1e-15);
  EXPECT_GT(std::abs(cp[1] - cm[1]), 1.0);
}

TEST(BulkTransfer, EigenpairsAndReciprocity) {
  Sampler s(31);
  for (int i = 0; i < 10000; ++i) {
    const Complex l = s.annulus(0.2, 3.0);
    if (distance_to_essential_spectrum(l) < 1e-6 && std::abs(std::abs(l) - 1.0) < 1e-6) continue;
    const auto b = bulk_spectrum(l);
    ASSERT_LT(std::abs(b.z_plus * b.z_minus - 1.0), 1e-13) << l;
    const auto t = bulk_transfer_matrix(l);
    const auto [cp, cm] = chi_pm(l);
    const auto tp = t * cp;
    const auto tm = t * cm;
    const double scale = std::max({1.0, std::abs(b.z_plus), std::abs(b.z_minus)}) * std::max(1.0, std::abs(cp[1]));
    ASSERT_LT(std::abs(tp[0] - b.z_plus * cp[0]) + std::abs(tp[1] - b.z_plus * cp[1]), 1e-12 * scale) << l;
    ASSERT_LT(std::abs(tm[0] - b.z_minus * cm[0]) + std::abs(tm[1] - b.z_minus * cm[1]), 1e-12 * scale) << l;
    ASSERT_LT(std::abs(b.kappa_plus * b.kappa_minus + 1.0), 1e-12 * std::max(1.0, std::abs(b.kappa_plus)));
  }
}

TEST(BulkTransfer, RejectsZero) {
  EXPECT_THROW(z_pm(Complex(0.0, 0.0)), DomainError);
  EXPECT_THROW(chi_pm(Complex(0.0, 0.0)), DomainError);
  EXPECT_THROW(transfer_matrix(Complex(0.0, 0.0), 1, DefectParameter(2.0)), DomainError);
}

TEST(TransferMatrix, BulkAtOne) {
  const auto t = transfer_matrix(Complex(1.0, 0.0), 5, DefectParameter(7.0));
  EXPECT_EQ(t(0, 0), Complex(std::numbers::sqrt2, 0.0));
  EXPECT_EQ(t(0, 1), Complex(1.0, 0.0));
  EXPECT_EQ(t(1, 0), Complex(1.0, 0.0));
  EXPECT_EQ(t(1, 1), Complex(std::numbers::sqrt2, 0.0));
}

TEST(TransferMatrix, DefectAtOne) {
  const auto t = transfer_matrix(Complex(1.0, 0.0), 0, DefectParameter(2.0));
  EXPECT_NEAR(std::abs(t(0, 0) - std::numbers::sqrt2 / 2.0), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(t(1, 1) - 2.0 * std::numbers::sqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.det() - 1.0), 0.0, 1e-15);
}

TEST(TransferMatrix, UnitDeterminant) {
  Sampler s(32);
  for (int i = 0; i < 1000; ++i) {
    const Complex l = s.annulus(0.2, 3.0);
    const DefectParameter w(s.omega());
    const long x = static_cast<long>(s.uniform(-3.0, 3.0));
    ASSERT_LT(std::abs(transfer_matrix(l, x, w).det() - 1.0), 1e-12) << l << " " << w.value() << " " << x;
  }
}

// --- classification ---------------------------------------------------------

TEST(Classify, Examples) {
  EXPECT_EQ(classify(Complex(1.0, 0.0)), RegionLabel::xi_plus);
  EXPECT_EQ(classify(Complex(-1.0, 0.0)), RegionLabel::xi_minus);
  EXPECT_EQ(classify(Complex(0.0, 1.0)), RegionLabel::sigma);
  EXPECT_EQ(classify(cis(std::numbers::pi / 4.0)), RegionLabel::sigma0);
  EXPECT_EQ(classify(cis(-3.0 * std::numbers::pi / 4.0)), RegionLabel::sigma0);
  EXPECT_THROW(classify(Complex(0.0, 0.0)), DomainError);
}

TEST(Classify, ImaginaryAxisSplit) {
  EXPECT_EQ(classify(Complex(0.0, 2.0)), RegionLabel::xi_plus);
  EXPECT_EQ(classify(Complex(0.0, -0.5)), RegionLabel::xi_plus);
  EXPECT_EQ(classify(Complex(0.0, 0.5)), RegionLabel::xi_minus);
  EXPECT_EQ(classify(Complex(0.0, -2.0)), RegionLabel::xi_minus);
  EXPECT_EQ(classify(Complex(0.0, -1.0)), RegionLabel::sigma);
}

TEST(Classify, UnitCircleOffTheArcs) {
  EXPECT_EQ(classify(cis(0.1)), RegionLabel::xi_plus);
  EXPECT_EQ(classify(cis(std::numbers::pi - 0.1)), RegionLabel::xi_minus);
}

TEST(Classify, LabelsAsStrings) {
  EXPECT_EQ(to_string(RegionLabel::sigma0), "Sigma0");
  EXPECT_EQ(to_string(RegionLabel::sigma), "Sigma");
  EXPECT_EQ(to_string(RegionLabel::xi_plus), "XiPlus");
  EXPECT_EQ(to_string(RegionLabel::xi_minus), "XiMinus");
}

TEST(Classify, ModulusDichotomy) {
  Sampler s(33);
  int xi_plus = 0;
  int xi_minus = 0;
  while (xi_plus < 10000 || xi_minus < 10000) {
    Complex l = s.annulus(0.05, 4.0);
    if (s.uniform(0.0, 1.0) < 0.05) l = Complex(0.0, s.uniform(-4.0, 4.0));  // imaginary axis
    if (l == Complex{}) continue;
    const auto label = classify(l);
    const double zp = std::abs(z_pm(l).first);
    if (label == RegionLabel::xi_plus) {
      ++xi_plus;
      ASSERT_GT(zp, 1.0) << l;
    } else if (label == RegionLabel::xi_minus) {
      ++xi_minus;
      ASSERT_LT(zp, 1.0) << l;
    }
  }
  for (int i = 0; i < 10000; ++i) {
    const Complex l = s.on_arcs();
    ASSERT_NE(classify(l) == RegionLabel::sigma || classify(l) == RegionLabel::sigma0, false) << l;
    ASSERT_LT(std::abs(std::abs(z_pm(l).first) - 1.0), 1e-10) << l;
  }
}

TEST(EssentialSpectrum, TwoSamplesAreTheEndpoints) {
  const auto pts = essential_spectrum_arcs(2);
  const auto ends = coalescence_points();
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_LT(std::abs(pts[0] - ends[0]), 1e-15);
  EXPECT_LT(std::abs(pts[1] - ends[1]), 1e-15);
  EXPECT_LT(std::abs(pts[2] - ends[2]), 1e-15);
  EXPECT_LT(std::abs(pts[3] - ends[3]), 1e-15);
}

TEST(EssentialSpectrum, SamplesLieOnSigma) {
  for (const auto& p : essential_spectrum_arcs(200)) {
    EXPECT_LT(std::abs(std::abs(p) - 1.0), 1e-15);
    const auto label = classify(p);
    EXPECT_TRUE(label == RegionLabel::sigma || label == RegionLabel::sigma0) << p;
  }
  EXPECT_THROW(essential_spectrum_arcs(1), DomainError);
}

// --- dependence determinants -----------------------------------------------

TEST(Dependence, VanishesAtEigenvalues) {
  Sampler s(41);
  for (int i = 0; i < 500; ++i) {
    const DefectParameter w(s.omega());
    const auto q = eigenvalues(w);
    ASSERT_LT(std::abs(dependence_det_plus(q(1), w)), 1e-9) << w.value();
    ASSERT_LT(std::abs(dependence_det_plus(q(4), w)), 1e-9) << w.value();
    ASSERT_LT(std::abs(dependence_det_minus(q(2), w)), 1e-9) << w.value();
    ASSERT_LT(std::abs(dependence_det_minus(q(3), w)), 1e-9) << w.value();
  }
}

TEST(Dependence, OmegaTwoAtLambdaOne) {
  const DefectParameter w(2.0);
  EXPECT_LT(std::abs(dependence_det_plus(eigenvalues(w)(1), w)), 1e-10);
  EXPECT_GT(std::abs(dependence_det_plus(Complex(1.0, 0.0), w)), 0.1);
}

TEST(Dependence, RawAndClosedFormsAgree) {
  Sampler s(42);
  for (int i = 0; i < 2000; ++i) {
    const Complex l = s.annulus(0.2, 3.0);
    if (distance_to_essential_spectrum(l) < 1e-3) continue;
    const DefectParameter w(s.omega());
    const Complex raw_p = dependence_det_plus(l, w);
    const Complex raw_m = dependence_det_minus(l, w);
    ASSERT_LT(std::abs(raw_p - dependence_det_plus_closed(l, w)), 1e-9 * std::max(1.0, std::abs(raw_p))) << l;
    ASSERT_LT(std::abs(raw_m - dependence_det_minus_closed(l, w)), 1e-9 * std::max(1.0, std::abs(raw_m))) << l;
  }
}

TEST(Dependence, DefectRatiosAtRoots) {
  for (double wv : {-3.0, -1.0, -0.5, 0.5, 2.0, 3.0}) {
    const DefectParameter w(wv);
    const auto q = eigenvalues(w);
    for (int j = 1; j <= 4; ++j) {
      const auto br = branch_of(w, j);
      const Complex ratio =
          br.family == Family::plus ? defect_ratio_plus(q(j), w) : defect_ratio_minus(q(j), w);
      EXPECT_LT(std::abs(ratio - expected_defect_ratio(br)), 1e-12) << wv << " lambda" << j;
      // Λ₁ ∈ {(-1 ± i)/√2}, Λ₂ ∈ {(1 ± i)/√2}
      const double re = br.family == Family::plus ? -1.0 : 1.0;
      EXPECT_NEAR(ratio.real() * std::numbers::sqrt2, re, 1e-12);
      EXPECT_NEAR(std::abs(ratio.imag() * std::numbers::sqrt2), 1.0, 1e-12);
    }
  }
}

TEST(Dependence, CollinearityFactors) {
  Sampler s(43);
  for (int i = 0; i < 500; ++i) {
    const DefectParameter w(s.omega());
    const auto q = eigenvalues(w);
    for (int j = 1; j <= 4; ++j) {
      const auto br = branch_of(w, j);
      const auto b = bulk_spectrum(q(j));
      const bool plus = br.family == Family::plus;
      const auto image = transfer_matrix(q(j), 0, w) * Vector2<Complex>{1.0, plus ? b.kappa_plus : b.kappa_minus};
      const Complex gamma = expected_collinearity_factor(b, br);
      const Complex target = plus ? b.kappa_minus : b.kappa_plus;
      const double scale = std::max(1.0, std::abs(gamma) * std::max(1.0, std::abs(target)));
      ASSERT_LT(std::abs(image[0] - gamma), 1e-10 * scale) << w.value() << " lambda" << j;
      ASSERT_LT(std::abs(image[1] - gamma * target), 1e-10 * scale) << w.value() << " lambda" << j;
      ASSERT_LT(std::abs(collinearity_factor(q(j), w, br.family) - gamma), 1e-10 * scale);
    }
  }
}

// --- eigenvectors -------------------------------------------------------------

TEST(Eigenvector, InteriorResidualOmegaTwo) {
  const DefectParameter w(2.0);
  const auto q = eigenvalues(w);
  for (int j = 1; j <= 4; ++j) {
    const auto psi = eigenvector(w, j, 64);
    EXPECT_LT(eigen_residual(psi, w, q(j)), 1e-10) << "lambda" << j;
  }
}

TEST(Eigenvector, ResidualAcrossRandomDefects) {
  Sampler s(51);
  for (int i = 0; i < 200; ++i) {
    const DefectParameter w(s.omega(1e-2));
    const auto q = eigenvalues(w);
    for (int j = 1; j <= 4; ++j) {
      ASSERT_LT(eigen_residual(eigenvector(w, j, 24), w, q(j)), 1e-10) << w.value() << " lambda" << j;
    }
  }
}

TEST(Eigenvector, NormalizationConvention) {
  const DefectParameter w(-3.0);
  for (int j = 1; j <= 4; ++j) {
    const auto psi = eigenvector(w, j, 20);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
    EXPECT_GT(psi.at(0).right.real(), 0.0);
    EXPECT_EQ(psi.at(0).right.imag(), 0.0);
    const auto raw = eigenvector(w, j, 20, Normalization::defect_site);
    EXPECT_LT(std::abs(raw.at(0).right - 1.0), 1e-15);
  }
}

TEST(Eigenvector, GeometricDecayRatio) {
  const DefectParameter w(2.0);
  for (int j = 1; j <= 4; ++j) {
    const auto p = eigenvector_profile(w, j);
    const auto psi = eigenvector(w, j, 40);
    const double ratio = std::sqrt(psi.weight(31) / psi.weight(30));
    EXPECT_NEAR(ratio, std::abs(p.z_decay_right), 1e-12) << "lambda" << j;
    const double left = std::sqrt(psi.weight(-31) / psi.weight(-30));
    EXPECT_NEAR(left, 1.0 / std::abs(p.z_decay_left), 1e-12) << "lambda" << j;
  }
}

TEST(Eigenvector, ProfilesDecayOnBothSides) {
  Sampler s(52);
  for (int i = 0; i < 1000; ++i) {
    const DefectParameter w(s.omega());
    for (int j = 1; j <= 4; ++j) {
      const auto p = eigenvector_profile(w, j);
      ASSERT_LT(std::abs(p.z_decay_right), 1.0) << w.value() << " lambda" << j;
      ASSERT_GT(std::abs(p.z_decay_left), 1.0) << w.value() << " lambda" << j;
    }
  }
}

TEST(Eigenvector, UnitaryDefectSiteEntriesHaveEqualModulus) {
  const DefectParameter w(-1.0);
  const auto psi = eigenvector(w, 1, 10);
  EXPECT_NEAR(std::abs(psi.at(0).left), std::abs(psi.at(0).right), 1e-15);
}

TEST(Eigenvector, LookupByValue) {
  const DefectParameter w(2.0);
  const auto q = eigenvalues(w);
  EXPECT_EQ(eigenvalue_index(w, q(3)), 3);
  const auto by_value = eigenvector(w, q(3) + Complex(1e-12, 0.0), 8);
  const auto by_index = eigenvector(w, 3, 8);
  auto diff = by_value;
  diff -= by_index;
  EXPECT_EQ(diff.norm(), 0.0);
}

TEST(Eigenvector, RejectsNonEigenvalueNamingTheNearest) {
  const DefectParameter w(2.0);
  try {
    eigenvector(w, Complex(0.6, 0.9), 8);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("nearest is lambda1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(eigenvector(w, 0, 8), DomainError);
  EXPECT_THROW(eigenvector(w, 1, 0), DomainError);
}

TEST(TransferSolution, SatisfiesEigenEquationForAnyLambda) {
  Sampler s(53);
  for (int i = 0; i < 300; ++i) {
    const Complex l = s.annulus(0.3, 2.5);
    const DefectParameter w(s.omega());
    const Vector2<Complex> seed{Complex(s.uniform(-1, 1), s.uniform(-1, 1)), Complex(s.uniform(-1, 1), s.uniform(-1, 1))};
    const auto psi = transfer_solution(l, w, seed, 10);
    ASSERT_LT(eigen_residual(psi, w, l, 1), 1e-10 * psi.norm()) << l << " " << w.value();
  }
}

TEST(TransferSolution, ReproducesClosedFormEigenvector) {
  for (double wv : {-2.0, 0.5, 3.0}) {
    const DefectParameter w(wv);
    for (int j = 1; j <= 4; ++j) {
      const auto psi = eigenvector(w, j, 8, Normalization::defect_site);
      auto built = transfer_solution(eigenvalues(w)(j), w, Vector2<Complex>{psi.at(-1).left, psi.at(0).right}, 8);
      built -= psi;
      EXPECT_LT(built.norm(), 1e-12) << wv << " lambda" << j;
    }
  }
}
