#include <doctest.h>

#include <algorithm>

#include "magnon/hamiltonian.hpp"
#include "magnon/spectral.hpp"
#include "magnon/transmission.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace magnon;

namespace
{

// Critical gamma at zero phase from the phase-diagram module.
constexpr double kCriticalGamma0 = 1.4851989746;

TransmissionParams Probe(double gamma, double theta_deg, double omega_m = 25.0)
{
  return TransmissionParams(test::Reference(omega_m, gamma, theta_deg * test::kDeg), 0.1);
}

std::vector<double> Column(const TransmissionGrid &grid, std::size_t im)
{
  const auto begin = grid.magnitude.begin() + im * grid.omega_values.size();
  return {begin, begin + grid.omega_values.size()};
}

/// [first, last] omega_m of the central run of columns with exactly two peaks.
std::pair<double, double> TwoPeakWindow(double gamma, double theta_deg)
{
  const TransmissionGrid grid =
      TransmissionMap(Probe(gamma, theta_deg), 20, 30, 5001, 22, 28, 601, {true, 2});
  std::vector<std::size_t> counts;
  for (std::size_t im = 0; im < grid.omega_m_values.size(); im++)
  {
    counts.push_back(test::FindPeaks(Column(grid, im), 0.01).size());
  }
  const std::size_t centre = 300;
  if (counts[centre] != 2)
  {
    return {0.0, 0.0};
  }
  std::size_t lo = centre;
  std::size_t hi = centre;
  while (lo > 0 && counts[lo - 1] == 2)
  {
    lo--;
  }
  while (hi + 1 < counts.size() && counts[hi + 1] == 2)
  {
    hi++;
  }
  return {grid.omega_m_values[lo], grid.omega_m_values[hi]};
}

std::vector<test::Peak> TopTwoPeaks(const std::vector<LineCutSample> &cut)
{
  std::vector<double> y;
  for (const auto &s : cut)
  {
    y.push_back(s.value);
  }
  auto peaks = test::FindPeaks(y, 1e-3);
  std::sort(peaks.begin(), peaks.end(),
            [](const test::Peak &a, const test::Peak &b) { return a.value > b.value; });
  peaks.resize(std::min<std::size_t>(2, peaks.size()));
  std::sort(peaks.begin(), peaks.end(),
            [](const test::Peak &a, const test::Peak &b) { return a.index < b.index; });
  return peaks;
}

}  // namespace

TEST_SUITE("transmission")
{
  TEST_CASE("closed form matches the linear-response solution at the reference point")
  {
    const TransmissionParams tp = Probe(0.5, 0);
    for (double w : Linspace(22, 28, 601))
    {
      if (w == 25.0)
      {
        continue;
      }
      const Complex a = S21(tp, w);
      const Complex b = oracle::LinearResponseS21(tp, w);
      CHECK(std::abs(a - b) < 1e-8 * std::abs(b));
    }
  }

  TEST_CASE("closed form matches the linear-response solution on random samples")
  {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; i++)
    {
      const SystemParams p = SampleParams(rng);
      const double beta = 0.01 + 0.5 * UniformUnit(rng);
      const double w = p.omega_c() - 6 + 12 * UniformUnit(rng);
      const TransmissionParams tp(p, beta);
      const Complex a = S21(tp, w);
      const Complex b = oracle::LinearResponseS21(tp, w);
      CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
  }

  TEST_CASE("raw units agree with units of g")
  {
    const SystemParams raw(48, 52, 50.6, 1.0, 2.0, 0.8);
    const TransmissionParams a(raw, 0.1);
    const TransmissionParams b(raw.Normalized(), 0.1);
    for (double w : Linspace(44, 56, 97))
    {
      CHECK(std::abs(S21(a, w) - S21(b, w / 2.0)) < 1e-13);
    }
  }

  TEST_CASE("zero phase removes the magnon term from the numerator")
  {
    // Numerator reduces to (-2w + wc1 + wc2) i beta, which vanishes at w = w_c.
    CHECK(S21(Probe(0.5, 0), 25.0) == Complex(0.0, 0.0));
    CHECK(std::abs(S21(Probe(0.5, 45), 25.0)) > 1e-3);
  }

  TEST_CASE("transmission vanishes with the leakage rate")
  {
    const SystemParams p = test::Reference(25.3, 0.5, 0.7);
    for (double w : {22.1, 24.0, 25.7, 27.9})
    {
      CHECK(std::abs(S21(TransmissionParams(p, 1e-9), w)) < 1e-6);
    }
  }

  TEST_CASE("poles and invalid leakage")
  {
    CHECK_THROWS_AS(S21(TransmissionParams(test::Reference(25.0, 0.0, 0.3), 0.1), 25.0),
                    PoleAtInput);
    CHECK_THROWS_AS(TransmissionParams(test::Reference(25, 0.5, 0), 0.0), InvalidParameters);
    CHECK_THROWS_AS(TransmissionParams(test::Reference(25, 0.5, 0), -0.1), InvalidParameters);
  }

  TEST_CASE("magnitude is symmetric under theta -> 2pi - theta")
  {
    for (const SystemParams &p : test::RandomParams(100, 42))
    {
      const TransmissionParams a(p, 0.1);
      const TransmissionParams b(p.With(Knob::Theta, kTwoPi - p.theta()), 0.1);
      for (double w : Linspace(p.omega_c() - 4, p.omega_c() + 4, 17))
      {
        const double x = std::abs(S21(a, w));
        CHECK(std::abs(x - std::abs(S21(b, w))) <= 1e-12 * std::max(1.0, x));
      }
    }
  }

  TEST_CASE("transmission peaks sit on real eigenvalues")
  {
    for (double wm : {22.0, 23.0, 24.0, 25.0, 26.0, 27.0, 28.0})
    {
      const SystemParams p = test::Reference(wm, 0.5, 45 * test::kDeg);
      const Spectrum s = ComputeSpectrum(BuildHamiltonian(p));
      REQUIRE(s.classification == Classification::AllReal);
      const TransmissionParams tp(p, 0.1);
      std::vector<double> w = Linspace(18, 32, 7001);
      std::vector<double> y;
      for (double x : w)
      {
        y.push_back(std::abs(S21(tp, x)));
      }
      const auto peaks = test::FindPeaks(y, 1e-6);
      CHECK(!peaks.empty());
      for (const auto &peak : peaks)
      {
        double nearest = 1e9;
        for (const Complex &z : s.eigenvalues)
        {
          nearest = std::min(nearest, std::abs(w[peak.index] - z.real()));
        }
        CHECK(nearest < 3 * tp.beta());
      }
    }
  }

  TEST_CASE("map columns and normalization")
  {
    const TransmissionParams tp = Probe(0.5, 30);
    const TransmissionGrid raw = TransmissionMap(tp, 20, 30, 201, 22, 28, 31);
    const TransmissionGrid norm = TransmissionMap(tp, 20, 30, 201, 22, 28, 31, {true, 3});
    CHECK(!raw.normalized);
    CHECK(norm.normalized);
    REQUIRE(raw.magnitude.size() == 201 * 31);
    for (std::size_t im = 0; im < 31; im++)
    {
      const TransmissionParams col(tp.system().With(Knob::OmegaM, raw.omega_m_values[im]), 0.1);
      CHECK(raw.At(17, im) == std::abs(S21(col, raw.omega_values[17])));
      const auto c = Column(norm, im);
      CHECK(*std::max_element(c.begin(), c.end()) == 1.0);
    }
  }

  TEST_CASE("pole cells are capped and flagged")
  {
    const TransmissionParams tp = Probe(0.0, 30);
    const TransmissionGrid grid = TransmissionMap(tp, 20, 30, 11, 20, 30, 11);
    CHECK(!grid.pole_cells.empty());
    for (std::size_t cell : grid.pole_cells)
    {
      CHECK(grid.magnitude[cell] == kPoleCeiling);
    }
    const std::size_t diag = 5 * 11 + 5;
    CHECK(std::find(grid.pole_cells.begin(), grid.pole_cells.end(), diag) !=
          grid.pole_cells.end());
  }

  TEST_CASE("map is independent of worker count")
  {
    const TransmissionParams tp = Probe(1.4, 45);
    const auto a = TransmissionMap(tp, 20, 30, 301, 22, 28, 41, {true, 1});
    const auto b = TransmissionMap(tp, 20, 30, 301, 22, 28, 41, {true, 4});
    CHECK(a.magnitude == b.magnitude);
  }

  TEST_CASE("double-Z band at zero phase, anticrossing at 45 degrees")
  {
    const auto zero_phase = TwoPeakWindow(0.5, 0);
    CHECK(zero_phase.first > 24.0);
    CHECK(zero_phase.second < 26.0);
    CHECK(zero_phase.second - zero_phase.first > 0.2);
    CHECK(std::abs(0.5 * (zero_phase.first + zero_phase.second) - 25.0) < 0.05);

    const TransmissionGrid coherent =
        TransmissionMap(Probe(0.5, 45), 20, 30, 5001, 22, 28, 121, {true, 2});
    for (std::size_t im = 0; im < coherent.omega_m_values.size(); im++)
    {
      CHECK(test::FindPeaks(Column(coherent, im), 0.01).size() == 4);
    }

    const auto strong = TwoPeakWindow(1.4, 45);
    CHECK(strong.second - strong.first > zero_phase.second - zero_phase.first);
  }

  TEST_CASE("line cut at resonance: equal twin peaks that spread with phase")
  {
    const auto cut45 = LineCut(Probe(0.5, 45), 0.0, 20, 30, 20001);
    const auto cut90 = LineCut(Probe(0.5, 90), 0.0, 20, 30, 20001);
    const auto p45 = TopTwoPeaks(cut45);
    const auto p90 = TopTwoPeaks(cut90);
    REQUIRE(p45.size() == 2);
    REQUIRE(p90.size() == 2);
    CHECK(std::abs(p45[0].value - p45[1].value) < 1e-3);
    CHECK(std::abs(p90[0].value - p90[1].value) < 1e-3);
    CHECK(p45[1].value == doctest::Approx(1.0).epsilon(1e-3));
    const double sep45 = cut45[p45[1].index].omega - cut45[p45[0].index].omega;
    const double sep90 = cut90[p90[1].index].omega - cut90[p90[0].index].omega;
    CHECK(sep90 > sep45);
  }

  TEST_CASE("line cut at the critical gamma transmits over a wider band")
  {
    auto band = [](double gamma)
    {
      const auto cut = LineCut(Probe(gamma, 0), 0.0, 20, 30, 20001);
      std::size_t above = 0;
      for (const auto &s : cut)
      {
        above += s.value >= 0.9;
      }
      return above * (10.0 / 20000.0);
    };
    CHECK(band(kCriticalGamma0) > 1.2 * band(0.5));
  }

  TEST_CASE("line cut samples and normalization")
  {
    const auto cut = LineCut(Probe(0.5, 45), 0.3, 22, 28, 101);
    REQUIRE(cut.size() == 101);
    CHECK(cut.front().omega == 22.0);
    CHECK(cut.back().omega == 28.0);
    double peak = 0.0;
    for (const auto &s : cut)
    {
      peak = std::max(peak, s.value);
      CHECK(s.value >= 0.0);
    }
    CHECK(peak == 1.0);
    CHECK_THROWS_AS(LineCut(Probe(0.5, 45), 0.0, 28, 22, 10), std::invalid_argument);
  }
}
