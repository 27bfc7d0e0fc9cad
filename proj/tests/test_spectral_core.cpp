#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bwm/snapshot_io.hpp"
#include "bwm/spacetime.hpp"
#include "bwm/spectral.hpp"
#include "bwm/suites.hpp"

using namespace bwm;

namespace {

Field plane(const Grid& g, std::initializer_list<int> k, double amp = 1.0, bool sine = false) {
  Field f(g, 1);
  for (std::size_t x = 0; x < g.points(); ++x) {
    const IntVec idx = g.unflatten(x);
    double ph = 0.0;
    int a = 0;
    for (int ki : k) {
      ph += g.wavenumber() * ki * g.coordinate(idx[static_cast<std::size_t>(a)]);
      ++a;
    }
    f(0, x) = amp * (sine ? std::sin(ph) : std::cos(ph));
  }
  return f;
}

}  // namespace

TEST(Grid, RejectsBadParameters) {
  EXPECT_THROW(Grid(0, 16, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(5, 16, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 12, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 4, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 16, 0.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 16, INFINITY), InvalidArgument);
  EXPECT_THROW(Grid(4, 128, 1.0), InvalidArgument);  // 2^28 points
  EXPECT_NO_THROW(Grid(3, 256, 1.0));                // 2^24 exactly
}

TEST(Grid, GeometryAndIndexing) {
  const Grid g(3, 16, 4.0);
  EXPECT_EQ(g.points(), 4096u);
  EXPECT_EQ(g.modes(), 16u * 16u * 9u);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.25 * 0.25 * 0.25);
  EXPECT_DOUBLE_EQ(g.volume(), 64.0);
  EXPECT_DOUBLE_EQ(g.wavenumber(), kTwoPi / 4.0);
  for (std::size_t i : {0u, 1u, 17u, 4095u, 2048u}) EXPECT_EQ(g.flatten(g.unflatten(i)), i);
  const IntVec idx = g.unflatten(1 + 16 * 2 + 256 * 3);
  EXPECT_EQ(idx[0], 3);
  EXPECT_EQ(idx[1], 2);
  EXPECT_EQ(idx[2], 1);
  const Grid fine = Grid::refined(g, 2);
  EXPECT_EQ(fine.n(), 32);
  EXPECT_EQ(fine.box(), g.box());
}

TEST(Fft, RoundTripAndParseval) {
  const Grid g(2, 32, 3.0);
  const Field f = random_smooth_field(g, 2, 7, 9);
  const Field back = transform_inverse(transform_forward(f));
  EXPECT_LT(max_abs(back - f), 1e-14);
  EXPECT_NEAR(l2_norm(f), l2_norm(transform_forward(f)), 1e-13 * l2_norm(f));
}

TEST(Fft, ModeIterationCoversHalfSpectrum) {
  const std::vector<int> shape{4, 6, 8};
  std::size_t count = 0;
  double weight = 0.0;
  fft::for_each_mode(shape, [&](std::size_t i, const int* k, unsigned, double w) {
    EXPECT_EQ(i, count);
    EXPECT_GE(k[0], -2);
    EXPECT_LT(k[0], 2);
    ++count;
    weight += w;
  });
  EXPECT_EQ(count, fft::half_size(shape));
  // Interior columns count twice; k_last = 0 and Nyquist once.
  EXPECT_DOUBLE_EQ(weight, 4.0 * 6 * 8);
}

TEST(Field, ArithmeticAndFiniteness) {
  const Grid g(1, 8, 1.0);
  Field a(g, 2), b(g, 2);
  a(1, 3) = 2.0;
  b(1, 3) = 0.5;
  EXPECT_DOUBLE_EQ((a + b)(1, 3), 2.5);
  EXPECT_DOUBLE_EQ((a - b)(1, 3), 1.5);
  EXPECT_DOUBLE_EQ((3.0 * a)(1, 3), 6.0);
  a.axpy(2.0, b);
  EXPECT_DOUBLE_EQ(a(1, 3), 3.0);
  EXPECT_TRUE(a.all_finite());
  a(0, 0) = NAN;
  EXPECT_FALSE(a.all_finite());
  EXPECT_THROW(a.require_finite("a"), NonFinite);
  EXPECT_THROW(a += Field(g, 3), InvalidArgument);
  EXPECT_THROW(Field(g, 0), InvalidArgument);
  const auto means = component_means(b);
  EXPECT_DOUBLE_EQ(means[1], 0.5 / 8);
}

TEST(Spectral, DerivativesOfPlaneWaves) {
  const Grid g(2, 16, kTwoPi);
  const Field c = plane(g, {2, 1});
  const Field s = plane(g, {2, 1}, 1.0, true);
  const SpectralField C = transform_forward(c);
  EXPECT_LT(max_abs(transform_inverse(partial(C, 0)) + 2.0 * s), 1e-13);
  EXPECT_LT(max_abs(transform_inverse(partial(C, 1)) + 1.0 * s), 1e-13);
  EXPECT_LT(max_abs(transform_inverse(laplacian(C)) + 5.0 * c), 1e-12);
  EXPECT_LT(max_abs(transform_inverse(bilaplacian(C)) - 25.0 * c), 1e-11);
  EXPECT_LT(max_abs(transform_inverse(partial2(C, 0, 1)) + 2.0 * c), 1e-12);
  const auto hess = spectral_derivative(C, DerivativeKind::hessian);
  ASSERT_EQ(hess.size(), 3u);
  EXPECT_LT(max_abs(transform_inverse(hess[hessian_index(2, 1, 1)]) + c), 1e-12);
  EXPECT_EQ(hessian_index(3, 0, 2), hessian_index(3, 2, 0));
  EXPECT_THROW(partial(C, 2), InvalidArgument);
}

TEST(Spectral, NyquistOddDerivativeVanishes) {
  const Grid g(1, 8, kTwoPi);
  Field f(g, 1);
  for (std::size_t x = 0; x < 8; ++x) f(0, x) = x % 2 ? -1.0 : 1.0;
  EXPECT_LT(max_abs(transform_inverse(partial(transform_forward(f), 0))), 1e-15);
  EXPECT_LT(max_abs(transform_inverse(laplacian(transform_forward(f))) + 16.0 * f), 1e-12);
}

TEST(LittlewoodPaley, PhiPartitionOfUnity) {
  for (double s : {0.013, 0.3, 1.0, 1.7, 3.3, 123.4}) {
    double sum = 0.0;
    for (int j = -40; j <= 40; ++j) sum += lp_phi(std::ldexp(s, -j));
    EXPECT_NEAR(sum, 1.0, 1e-14) << s;
  }
  EXPECT_EQ(lp_phi(0.5), 0.0);
  EXPECT_EQ(lp_phi(2.0), 0.0);
  EXPECT_THROW(DyadicIndex(31), InvalidArgument);
  EXPECT_DOUBLE_EQ(DyadicIndex(-3).value(), 0.125);
}

TEST(LittlewoodPaley, ShellsReconstructMeanFreePart) {
  const Grid g(2, 32, 5.0);
  const Field f = random_smooth_field(g, 1, 3, 12);
  const ShellRange r = resolvable_shells(g);
  Field sum(g, 1);
  for (int j = r.lo; j <= r.hi; ++j) sum += littlewood_paley_project(f, DyadicIndex(j));
  EXPECT_LT(max_abs(sum - remove_mean(f)), 1e-12);
  // Shells outside the range see nothing.
  EXPECT_LT(max_abs(littlewood_paley_project(f, DyadicIndex(r.hi + 1))), 1e-15);
  EXPECT_LT(max_abs(littlewood_paley_project(f, DyadicIndex(r.lo - 1))), 1e-15);
}

TEST(Sectors, FamilySizesAndMembership) {
  EXPECT_EQ(DirectionSet(1).size(), 2u);
  EXPECT_EQ(DirectionSet(2).size(), 8u);
  EXPECT_EQ(DirectionSet(3).size(), 26u);
  const DirectionSet fam(2);
  EXPECT_NO_THROW(fam.index_of(make_direction({1, 1})));
  EXPECT_THROW(fam.index_of(make_direction({1, 2})), InvalidArgument);
  EXPECT_THROW(make_direction({0, 0}), InvalidArgument);
}

TEST(Sectors, WeightsSumToOneAndRespectCones) {
  const DirectionSet fam(3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, kMaxDim> xi{n01(rng), n01(rng), n01(rng), 0.0};
    double sum = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const double w = fam.weight(i, xi);
      EXPECT_GE(w, 0.0);
      if (w > 0.0) EXPECT_LE(direction_angle(fam[i], xi), kPi / 4 + 1e-12);
      sum += w;
    }
    EXPECT_NEAR(sum, 1.0, 1e-13);
  }
}

TEST(Sectors, ProjectionsReconstruct) {
  for (int d = 1; d <= 3; ++d) {
    const Grid g(d, 16, kTwoPi);
    const Field f = random_smooth_field(g, 2, 11, 6);
    const DirectionSet fam(d);
    Field sum(g, 2);
    for (std::size_t i = 0; i < fam.size(); ++i) sum += sector_project(f, fam, fam[i]);
    EXPECT_LT(max_abs(sum - remove_mean(f)), 1e-12) << d;
  }
}

TEST(Padding, PadThenTruncateIsIdentityAwayFromNyquist) {
  const Grid g(2, 16, 2.0);
  const Field f = random_smooth_field(g, 1, 21, 7);
  const Grid fine = Grid::refined(g, 2);
  const SpectralField P = pad_spectrum(transform_forward(f), fine);
  const Field fv = transform_inverse(P);
  // Interpolant values agree on the shared points.
  for (std::size_t x = 0; x < g.points(); ++x) {
    const IntVec idx = g.unflatten(x);
    IntVec fidx{};
    for (int a = 0; a < 2; ++a) fidx[static_cast<std::size_t>(a)] = 2 * idx[static_cast<std::size_t>(a)];
    EXPECT_NEAR(fv(0, fine.flatten(fidx)), f(0, x), 1e-13);
  }
  EXPECT_LT(max_abs(transform_inverse(truncate_spectrum(P, g)) - f), 1e-13);
  EXPECT_THROW(pad_spectrum(P, g), InvalidArgument);
}

TEST(SpaceTime, BlockValidation) {
  const Grid g(1, 8, 1.0);
  std::vector<Field> few(7, Field(g, 1));
  EXPECT_THROW(SpaceTimeBlock(0.0, 0.1, few), InvalidArgument);
  std::vector<Field> ok(8, Field(g, 1));
  EXPECT_THROW(SpaceTimeBlock(0.0, 0.0, ok), InvalidArgument);
  EXPECT_THROW(SpaceTimeBlock(0.0, 0.1, ok, Taper::none, few), InvalidArgument);
  const SpaceTimeBlock b(1.0, 0.5, ok);
  EXPECT_DOUBLE_EQ(b.time(3), 2.5);
  EXPECT_DOUBLE_EQ(b.taper_weight(0), 0.0);
  EXPECT_DOUBLE_EQ(b.taper_weight(4), 1.0);
  EXPECT_EQ(b.tapered().window(), Taper::none);
  EXPECT_EQ(taper_from_string(to_string(Taper::hann)), Taper::hann);
  EXPECT_THROW(taper_from_string("kaiser"), InvalidArgument);
}

TEST(SpaceTime, ModulationWeight) {
  EXPECT_DOUBLE_EQ(modulation_weight(4.0, 2.0), 0.0);
  EXPECT_NEAR(modulation_weight(3.0, 0.0), 3.0, 1e-15);
  EXPECT_NEAR(modulation_weight(0.0, 2.0), 4.0, 1e-15);
  EXPECT_THROW(modulation_weight(0.0, 0.0), InvalidArgument);
  EXPECT_DOUBLE_EQ(spacetime_frequency(3.0, 4.0), std::pow(25.0, 0.25));
}

TEST(SpaceTime, SpectrumInverseRecoversTaperedBlock) {
  const Grid g(2, 8, kTwoPi);
  std::vector<Field> snaps;
  for (int n = 0; n < 16; ++n) snaps.push_back(random_smooth_field(g, 2, 100 + static_cast<std::uint64_t>(n), 3));
  const SpaceTimeBlock block(0.0, 0.2, snaps);
  const SpacetimeSpectrum S(block);
  const SpaceTimeBlock back = S.inverse();
  const SpaceTimeBlock tap = block.tapered();
  for (std::size_t n = 0; n < block.steps(); ++n) EXPECT_LT(max_abs(back.snapshot(n) - tap.snapshot(n)), 1e-13);
  // Parseval in (t, x).
  double direct = 0.0;
  for (const auto& f : tap.snapshots()) direct += std::pow(l2_norm(f), 2) * 0.2;
  EXPECT_NEAR(S.weighted_mass([](double, double) { return 1.0; }), direct, 1e-12 * direct);
}

TEST(SpaceTime, FrequencyProjectionsPartitionAndRejectUnresolvable) {
  const Grid g(1, 16, kTwoPi);
  std::vector<Field> snaps;
  for (int n = 0; n < 32; ++n) snaps.push_back(random_smooth_field(g, 1, 40 + static_cast<std::uint64_t>(n), 5, true));
  const SpaceTimeBlock block(0.0, 0.05, snaps);
  const SpacetimeSpectrum S(block);
  const ScaleRange r = frequency_range(S);
  EXPECT_LT(r.lo, r.hi);
  EXPECT_THROW(spacetime_project(block, {SpacetimeFilter::frequency, 1024.0, {}}), Unresolvable);
  // Near- and far-cone pieces add up to the tapered block.
  const auto near = spacetime_project(block, {SpacetimeFilter::nearcone, 1.0, {}});
  const auto far = spacetime_project(block, {SpacetimeFilter::farcone, 1.0, {}});
  const auto tap = block.tapered();
  for (std::size_t n = 0; n < block.steps(); ++n) {
    EXPECT_LT(max_abs(near.snapshot(n) + far.snapshot(n) - tap.snapshot(n)), 1e-12);
  }
  EXPECT_DOUBLE_EQ(cone_cutoff(4.0, 4.0, {}), 1.0);
  EXPECT_DOUBLE_EQ(cone_cutoff(0.0, 4.0, {}), 0.0);
}

TEST(SnapshotIo, RoundTripIsBitExact) {
  const Grid g(2, 8, 1.25);
  const Field f = random_smooth_field(g, 3, 9, 3);
  std::stringstream ss;
  write_snapshot(ss, f, 0.375);
  write_snapshot(ss, 2.0 * f, 0.5);
  std::vector<Snapshot> recs;
  while (read_snapshot(ss, recs)) {
  }
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].time, 0.375);
  EXPECT_EQ(recs[1].field.grid(), g);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(recs[0].field.values()[i], f.values()[i]);
  // Header layout: magic, d, n, box, L, time.
  const std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 4), "BWM1");
  EXPECT_EQ(bytes.size(), 2 * (4 + 4 + 4 + 8 + 4 + 8 + 8 * 3 * 64));
}

TEST(SnapshotIo, RejectsMalformedRecords) {
  std::vector<Snapshot> recs;
  std::stringstream bad("XXXX0000000000000000");
  EXPECT_THROW(read_snapshot(bad, recs), InvalidArgument);
  const Grid g(1, 8, 1.0);
  std::stringstream ss;
  write_snapshot(ss, Field(g, 1), 0.0);
  std::string cut = ss.str();
  cut.resize(cut.size() - 3);
  std::stringstream trunc(cut);
  EXPECT_THROW(read_snapshot(trunc, recs), InvalidArgument);
  std::stringstream empty;
  EXPECT_FALSE(read_snapshot(empty, recs));
  EXPECT_THROW(read_snapshot_file("/nonexistent/file.bwm"), InvalidArgument);
}

TEST(SnapshotIo, FileRoundTripThroughBlockReader) {
  const auto dir = std::filesystem::temp_directory_path() / "bwm_test_io";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "block.bwm").string();
  const Grid g(1, 8, 1.0);
  std::vector<Snapshot> recs;
  for (int n = 0; n < 8; ++n) recs.push_back({random_smooth_field(g, 1, static_cast<std::uint64_t>(n), 2), 0.1 * n});
  write_snapshot_file(path, recs);
  const SpaceTimeBlock b = read_block_file(path);
  EXPECT_EQ(b.steps(), 8u);
  EXPECT_NEAR(b.dt(), 0.1, 1e-15);
  recs[5].time = 0.77;
  write_snapshot_file(path, recs);
  EXPECT_THROW(read_block_file(path), InvalidArgument);
}
