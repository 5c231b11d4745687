#include <sstream>

#include <gtest/gtest.h>

#include "zakgross/errors.hpp"
#include "zakgross/serialize.hpp"
#include "zakgross/state_spec.hpp"
#include "zakgross/zak_gross.hpp"

using namespace zakgross;
using nlohmann::json;

TEST(StateSpec, RoundTripsEveryKind) {
  const std::vector<json> docs = {
      {{"kind", "vacuum"}},
      {{"kind", "coherent"}, {"x", 1.0}, {"p", -0.5}},
      {{"kind", "thermal"}, {"beta", 0.7}},
      {{"kind", "displaced_thermal"}, {"beta", 1.0}, {"x", 2.0}, {"p", 0.25}},
      {{"kind", "approx_gkp"}, {"j", 1}, {"sigma", 0.4}, {"kappa", 0.3}, {"peak_cutoff", 2}},
      {{"kind", "ideal_codeword"},
       {"logical", {{"preset", "fourier"}, {"index", 2}}},
       {"s", 0.1},
       {"t", 0.2}},
  };
  for (const json& doc : docs) {
    const StateSpec spec = state_spec_from_json(doc);
    EXPECT_EQ(kind_name(spec.kind), doc.at("kind").get<std::string>());
    const StateSpec again = state_spec_from_json(to_json(spec));
    EXPECT_EQ(to_json(again), to_json(spec)) << doc.dump();
  }
}

TEST(StateSpec, TemperatureIsInverseBeta) {
  const StateSpec spec = state_spec_from_json({{"kind", "thermal"}, {"temperature", 4.0}});
  EXPECT_DOUBLE_EQ(spec.beta, 0.25);
  EXPECT_THROW(state_spec_from_json({{"kind", "thermal"}, {"temperature", 0.0}}), ConfigError);
}

TEST(StateSpec, MalformedDocumentsAreConfigErrors) {
  EXPECT_THROW(state_spec_from_json(json::array()), ConfigError);
  EXPECT_THROW(state_spec_from_json({{"kind", "squeezed"}}), ConfigError);
  EXPECT_THROW(state_spec_from_json({{"kind", "coherent"}, {"x", 1.0}}), ConfigError);
  EXPECT_THROW(state_spec_from_json({{"kind", "coherent"}, {"x", "1"}, {"p", 0}}), ConfigError);
  EXPECT_THROW(state_spec_from_json({{"kind", "approx_gkp"}, {"j", 0.5}, {"sigma", 1}, {"kappa", 1}}),
               ConfigError);
  EXPECT_THROW(dv_state_spec_from_json({{"preset", "t-gate"}}), ConfigError);
  EXPECT_THROW(dv_state_spec_from_json({{"rho", {{"re", {{1.0, 0.0}}}}}}), ConfigError);
}

TEST(StateSpec, BuildsMatchingStates) {
  const QuditSystem sys(3);
  const CvState coherent =
      build_state(state_spec_from_json({{"kind", "coherent"}, {"x", 1.0}, {"p", -0.5}}), sys);
  EXPECT_NEAR(std::abs(coherent.chi(0.3, 0.2) - GaussianState::coherent(1.0, -0.5).chi(0.3, 0.2)),
              0.0, 1e-15);
  const CvState gkp = build_state(
      state_spec_from_json(
          {{"kind", "approx_gkp"}, {"j", 0}, {"sigma", 0.51}, {"kappa", 0.4}, {"peak_cutoff", 1}}),
      sys);
  ASSERT_NE(gkp.superposition(), nullptr);
  EXPECT_EQ(gkp.superposition()->peaks().size(), 3u);
  const CvState ideal = build_state(
      state_spec_from_json({{"kind", "ideal_codeword"}, {"logical", {{"preset", "magic"}}}}), sys);
  EXPECT_TRUE(ideal.singular());
  EXPECT_THROW(build_state(state_spec_from_json({{"kind", "approx_gkp"},
                                                 {"j", 5},
                                                 {"sigma", 0.5},
                                                 {"kappa", 0.5}}),
                           sys),
               DomainError);
}

TEST(StateSpec, DensityMatrixInput) {
  const json doc = {{"rho", {{"re", {{0.5, 0.0}, {0.0, 0.5}}}, {"im", {{0.0, 0.1}, {-0.1, 0.0}}}}}};
  const DvStateSpec spec = dv_state_spec_from_json(doc);
  ASSERT_TRUE(spec.rho.has_value());
  EXPECT_DOUBLE_EQ((*spec.rho)(0, 1).imag(), 0.1);
  EXPECT_EQ(to_json(dv_state_spec_from_json(to_json(spec))), to_json(spec));
  EXPECT_NEAR(build_dv_state(dv_state_spec_from_json({{"preset", "mixed"}}), 5).rho()(2, 2).real(),
              0.2, 1e-15);
}

TEST(Serialize, CsvIsRoundTripSafe) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  const QuditSystem sys(3);
  const TorusGrid grid = zg_grid(sys, CvState(GaussianState::vacuum()), 3, 3);
  std::ostringstream out;
  write_grid_csv(out, grid.samples);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "u,v,value");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const int i = rows / 3;
    const int j = rows % 3;
    EXPECT_EQ(std::stod(line.substr(c2 + 1)), grid.samples.values(i, j));
    EXPECT_EQ(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), grid.samples.second.at(j));
    ++rows;
  }
  EXPECT_EQ(rows, 9);
}

TEST(Serialize, JsonEnvelope) {
  const QuditSystem sys(3);
  const TorusGrid grid = zg_grid(sys, CvState(GaussianState::thermal(1.0)), 6, 3);
  const json doc = grid_json(grid.geometry, grid.samples);
  EXPECT_EQ(doc.at("system").at("d"), 3);
  EXPECT_DOUBLE_EQ(doc.at("system").at("ell").get<double>(), sys.ell());
  EXPECT_EQ(doc.at("grid").at("nu"), 6);
  EXPECT_EQ(doc.at("grid").at("nv"), 3);
  ASSERT_EQ(doc.at("values").size(), 18u);
  EXPECT_EQ(doc.at("values")[4].get<double>(), grid.samples.values(1, 1));
}
