// Copyright 2026 The cohlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohlab/sampler.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "cohlab/experiments.hpp"
#include "cohlab/measures.hpp"

namespace cohlab {
namespace {

struct MeanAndError {
  double mean;
  double stderr_of_mean;
};

MeanAndError mean_and_error(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

TEST(SampleHaarPure, DimensionOneIsAPhase) {
  RandomStream s(1, 0);
  const PureState psi = sample_haar_pure(1, s);
  EXPECT_NEAR(std::norm(psi[0]), 1.0, 1e-15);
}

TEST(SampleHaarPure, ZeroDimensionIsInvalid) {
  RandomStream s(1, 0);
  try {
    sample_haar_pure(0, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_dimension);
  }
}

TEST(SampleHaarPure, UnitNorm) {
  for (std::size_t d : {1u, 2u, 17u, 1000u, 100000u}) {
    RandomStream s(12, d);
    const PureState psi = sample_haar_pure(d, s);
    EXPECT_NEAR(squared_norm(psi.amplitudes()), 1.0, 1e-12) << d;
  }
}

TEST(SampleHaarPure, DeterministicPerStream) {
  RandomStream a(9, 4);
  RandomStream b(9, 4);
  const PureState x = sample_haar_pure(50, a);
  const PureState y = sample_haar_pure(50, b);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(x[i], y[i]);
}

TEST(SampleHaarPure, FirstComponentMomentsAtD100) {
  const std::size_t d = 100;
  std::vector<double> p1, p1sq;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    RandomStream s(2718, i);
    const double p = std::norm(sample_haar_pure(d, s)[0]);
    p1.push_back(p);
    p1sq.push_back(p * p);
  }
  const MeanAndError m1 = mean_and_error(p1);
  const MeanAndError m2 = mean_and_error(p1sq);
  EXPECT_NEAR(m1.mean, 0.01, 3.0 * m1.stderr_of_mean);
  EXPECT_NEAR(m2.mean, 1.9801980198019803e-4, 3.0 * m2.stderr_of_mean);
}

TEST(SampleHaarPure, BetaMomentsAcrossDimensions) {
  // E[p_1^k] = k! (d-1)! / (d-1+k)!
  for (std::size_t d : {2u, 10u, 100u}) {
    const double dd = static_cast<double>(d);
    const MomentsReport r = run_moments_check(d, 40000, 31);
    EXPECT_NEAR(r.expected_p1, 1.0 / dd, 1e-15);
    EXPECT_NEAR(r.expected_p1_squared, 2.0 / (dd * (dd + 1.0)), 1e-15);
    EXPECT_LE(r.z_p1(), 4.0) << d;
    EXPECT_LE(r.z_p1_squared(), 4.0) << d;
  }
}

TEST(SampleHaarPure, HaarInvarianceUnderFourierMatrix) {
  const std::size_t d = 20;
  Eigen::MatrixXcd fourier(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      fourier(j, k) = std::polar(1.0 / std::sqrt(20.0), 2.0 * std::numbers::pi * static_cast<double>(j * k) / 20.0);
  std::vector<double> plain, rotated;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    RandomStream s(314, i);
    const PureState psi = sample_haar_pure(d, s);
    plain.push_back(relative_entropy_coherence(psi));
    const Eigen::VectorXcd v = fourier * Eigen::Map<const Eigen::VectorXcd>(psi.amplitudes().data(), 20);
    rotated.push_back(relative_entropy_coherence(PureState::normalized({v.data(), v.data() + v.size()})));
  }
  const MeanAndError a = mean_and_error(plain);
  const MeanAndError b = mean_and_error(rotated);
  EXPECT_NEAR(a.mean, b.mean, 3.0 * std::hypot(a.stderr_of_mean, b.stderr_of_mean));
}

TEST(SampleHaarUnitary, DimensionOneIsAPhase) {
  RandomStream s(1, 1);
  EXPECT_NEAR(std::abs(sample_haar_unitary(1, s).entries()(0, 0)), 1.0, 1e-15);
}

TEST(SampleHaarUnitary, IsUnitary) {
  RandomStream s(4, 4);
  const UnitaryMatrix u = sample_haar_unitary(16, s);
  const double defect = (u.entries().adjoint() * u.entries() - Eigen::MatrixXcd::Identity(16, 16)).norm();
  EXPECT_LE(defect, 1e-10 * 16);
  RandomStream z(4, 5);
  EXPECT_THROW(sample_haar_unitary(0, z), Error);
}

TEST(SampleHaarUnitary, EntryModulusFollowsExactLawAtD2) {
  const KolmogorovReport r = run_unitary_entry_ks(2, 100000, 17);
  EXPECT_LT(r.ks_distance, 0.01);
}

TEST(SampleHaarUnitary, PhaseOfFirstEntryIsUniform) {
  // Householder QR alone leaves arg(U_11) tied to the sign convention of R;
  // with the phase fix E cos(arg U_11) = 0.
  double fixed_cos = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    RandomStream s(55, static_cast<std::uint64_t>(i));
    const Complex u11 = sample_haar_unitary(2, s).entries()(0, 0);
    fixed_cos += u11.real() / std::abs(u11);
  }
  EXPECT_NEAR(fixed_cos / n, 0.0, 4.0 * std::sqrt(0.5 / n));
}

TEST(SampleRandomSubspace, FullDimensionSpansEverything) {
  RandomStream s(6, 0);
  const SubspaceBasis basis = sample_random_subspace(4, 4, s);
  RandomStream t(6, 1);
  const PureState psi = sample_haar_pure(4, t);
  EXPECT_NEAR(basis.coordinates(psi).norm(), 1.0, 1e-12);
}

TEST(SampleRandomSubspace, ColumnsOrthonormal) {
  RandomStream s(6, 2);
  const SubspaceBasis basis = sample_random_subspace(8, 2, s);
  EXPECT_EQ(basis.ambient_dim(), 8u);
  EXPECT_EQ(basis.sub_dim(), 2u);
  const Eigen::MatrixXcd gram = basis.columns().adjoint() * basis.columns();
  EXPECT_LE((gram - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SampleRandomSubspace, InvalidDimensions) {
  RandomStream s(6, 3);
  EXPECT_THROW(sample_random_subspace(3, 4, s), Error);
  EXPECT_THROW(sample_random_subspace(3, 0, s), Error);
}

TEST(SampleRandomSubspace, UnitaryInvarianceOfStatesInRandomSubspaces) {
  std::vector<double> p1;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    RandomStream s(808, i);
    const SubspaceBasis basis = sample_random_subspace(100, 3, s);
    p1.push_back(std::norm(sample_pure_in_subspace(basis, s)[0]));
  }
  const MeanAndError m = mean_and_error(p1);
  EXPECT_NEAR(m.mean, 0.01, 3.0 * m.stderr_of_mean);
}

TEST(SamplePureInSubspace, OneDimensionalSubspaceIsItsRay) {
  RandomStream s(21, 0);
  const SubspaceBasis basis = sample_random_subspace(9, 1, s);
  for (int k = 0; k < 5; ++k) {
    const PureState psi = sample_pure_in_subspace(basis, s);
    EXPECT_NEAR(std::abs(basis.coordinates(psi)(0)), 1.0, 1e-12);
  }
}

TEST(SamplePureInSubspace, LiesInSpanWithUnitNorm) {
  RandomStream s(21, 1);
  const SubspaceBasis basis = sample_random_subspace(8, 2, s);
  const PureState psi = sample_pure_in_subspace(basis, s);
  EXPECT_NEAR(squared_norm(psi.amplitudes()), 1.0, 1e-12);
  EXPECT_NEAR(basis.coordinates(psi).norm(), 1.0, 1e-12);
}

TEST(SamplePureInSubspace, FrameCoefficientsAreHaarInDimensionS) {
  RandomStream s(21, 2);
  const SubspaceBasis basis = sample_random_subspace(8, 2, s);
  std::vector<double> c1;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    RandomStream t(22, i);
    c1.push_back(std::norm(basis.coordinates(sample_pure_in_subspace(basis, t))(0)));
  }
  const MeanAndError m = mean_and_error(c1);
  EXPECT_NEAR(m.mean, 0.5, 3.0 * m.stderr_of_mean);
}

Eigen::MatrixXcd dense(const Decomposition& dec) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dec.dim()), static_cast<Eigen::Index>(dec.dim()));
  for (std::size_t a = 0; a < dec.size(); ++a) {
    const auto& psi = dec.states()[a];
    for (std::size_t i = 0; i < dec.dim(); ++i)
      for (std::size_t j = 0; j < dec.dim(); ++j)
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += dec.weights()[a] * psi[i] * std::conj(psi[j]);
  }
  return rho;
}

TEST(SampleRandomDecomposition, RankOneSeedIsUnique) {
  RandomStream s(30, 0);
  const PureState psi = sample_haar_pure(5, s);
  const Decomposition out = sample_random_decomposition(Decomposition::pure(psi), 4, s);
  for (const PureState& phi : out.states()) {
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < 5; ++i) overlap += std::conj(psi[i]) * phi[i];
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
  }
}

TEST(SampleRandomDecomposition, IdentityIsometryReturnsSeed) {
  const Decomposition seed({0.5, 0.5}, {PureState::basis(2, 0), PureState::basis(2, 1)});
  const Decomposition out = mix_decomposition(seed, Eigen::MatrixXcd::Identity(2, 2));
  ASSERT_EQ(out.size(), 2u);
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_NEAR(out.weights()[a], 0.5, 1e-15);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(out.states()[a][i] - seed.states()[a][i]), 0.0, 1e-15);
  }
}

TEST(SampleRandomDecomposition, PreservesDensityMatrix) {
  RandomStream s(31, 0);
  const Decomposition seed({0.3, 0.7}, {sample_haar_pure(3, s), sample_haar_pure(3, s)});
  const Decomposition out = sample_random_decomposition(seed, 4, s);
  EXPECT_LE((dense(out) - dense(seed)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE(density_residual(seed, out), 1e-9);
}

TEST(SampleRandomDecomposition, DropsVanishingMembers) {
  const Decomposition seed({0.5, 0.5}, {PureState::basis(3, 0), PureState::basis(3, 1)});
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(3, 2);
  w(0, 0) = 1.0;
  w(1, 1) = 1.0;
  const Decomposition out = mix_decomposition(seed, w);
  EXPECT_EQ(out.size(), 2u);
}

TEST(SampleRandomDecomposition, DegenerateWeightsBehaveAsPure) {
  RandomStream s(32, 0);
  const PureState psi = sample_haar_pure(6, s);
  const Decomposition seed({1.0, 0.0}, {psi, sample_haar_pure(6, s)});
  const Decomposition out = sample_random_decomposition(seed, 5, s);
  EXPECT_NEAR(decomposition_average_coherence(out), relative_entropy_coherence(psi), 1e-10);
}

TEST(SampleRandomDecomposition, RejectsShrinking) {
  RandomStream s(33, 0);
  const Decomposition seed({0.5, 0.5}, {sample_haar_pure(3, s), sample_haar_pure(3, s)});
  try {
    sample_random_decomposition(seed, 1, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
}

TEST(Decomposition, ValidatesWeights) {
  EXPECT_THROW(Decomposition({0.5, 0.6}, {PureState::basis(2, 0), PureState::basis(2, 1)}), Error);
  EXPECT_THROW(Decomposition({1.5, -0.5}, {PureState::basis(2, 0), PureState::basis(2, 1)}), Error);
  EXPECT_THROW(Decomposition({0.5, 0.5}, {PureState::basis(2, 0), PureState::basis(3, 1)}), Error);
}

TEST(PureState, FromAmplitudesValidatesNorm) {
  EXPECT_THROW(PureState::from_amplitudes({1.0, 1.0}), Error);
  EXPECT_THROW(PureState::from_amplitudes({}), Error);
  EXPECT_THROW(PureState::normalized({0.0, 0.0}), Error);
}

}  // namespace
}  // namespace cohlab
