#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gevpool/bootstrap.hpp"
#include "gevpool/multiple_testing.hpp"
#include "gevpool/return_levels.hpp"
#include "gevpool/sim_study.hpp"
#include "gevpool/version.hpp"

namespace py = pybind11;
using namespace gevpool;

PYBIND11_MODULE(_core, m) {
  m.doc() = "pooling diagnostics for spatial block maxima under scale-GEV trend models";
  m.attr("__version__") = kVersion;

  // parameters and the GEV core
  py::class_<GevParams>(m, "GevParams")
      .def(py::init<>())
      .def(py::init([](double mu, double sigma, double gamma) {
             return GevParams{mu, sigma, gamma};
           }),
           py::arg("mu"), py::arg("sigma"), py::arg("gamma"))
      .def_readwrite("mu", &GevParams::mu)
      .def_readwrite("sigma", &GevParams::sigma)
      .def_readwrite("gamma", &GevParams::gamma)
      .def("__repr__", [](const GevParams& p) {
        return "GevParams(mu=" + std::to_string(p.mu) + ", sigma=" + std::to_string(p.sigma) +
               ", gamma=" + std::to_string(p.gamma) + ")";
      });

  py::class_<ScaleGevParams>(m, "ScaleGevParams")
      .def(py::init<>())
      .def(py::init([](double mu, double sigma, double gamma, double alpha) {
             return ScaleGevParams{mu, sigma, gamma, alpha};
           }),
           py::arg("mu"), py::arg("sigma"), py::arg("gamma"), py::arg("alpha"))
      .def_readwrite("mu", &ScaleGevParams::mu)
      .def_readwrite("sigma", &ScaleGevParams::sigma)
      .def_readwrite("gamma", &ScaleGevParams::gamma)
      .def_readwrite("alpha", &ScaleGevParams::alpha)
      .def("__repr__", [](const ScaleGevParams& p) {
        return "ScaleGevParams(mu=" + std::to_string(p.mu) + ", sigma=" + std::to_string(p.sigma) +
               ", gamma=" + std::to_string(p.gamma) + ", alpha=" + std::to_string(p.alpha) + ")";
      });

  m.def("gev_cdf", &gev_cdf, py::arg("x"), py::arg("params"));
  m.def("gev_log_density", &gev_log_density, py::arg("x"), py::arg("params"));
  m.def("gev_quantile", &gev_quantile, py::arg("q"), py::arg("params"));
  m.def("effective_params", &effective_params, py::arg("theta"), py::arg("c"),
        "stationary GEV parameters of the trend model at covariate value c");
  m.def("to_frechet", &to_frechet, py::arg("maxima"), py::arg("covariate"), py::arg("theta"));
  m.def("from_frechet", &from_frechet, py::arg("frechet"), py::arg("covariate"), py::arg("theta"));

  // panels
  py::class_<BlockMaximaPanel>(m, "BlockMaximaPanel")
      .def(py::init<>())
      .def_readwrite("years", &BlockMaximaPanel::years)
      .def_readwrite("location_ids", &BlockMaximaPanel::location_ids)
      .def_readwrite("maxima", &BlockMaximaPanel::maxima)
      .def_readwrite("covariate", &BlockMaximaPanel::covariate)
      .def_readwrite("coords", &BlockMaximaPanel::coords)
      .def_readwrite("loi", &BlockMaximaPanel::loi)
      .def("n_years", &BlockMaximaPanel::n_years)
      .def("n_locations", &BlockMaximaPanel::n_locations)
      .def("column", &BlockMaximaPanel::column, py::arg("d"));
  m.def("validate_panel", &validate_panel, py::arg("panel"));
  m.def("load_panel", &load_panel, py::arg("panel_csv"), py::arg("coords_csv"), py::arg("loi_id"));

  // fitting
  py::class_<ScaleGevFit>(m, "ScaleGevFit")
      .def_readonly("theta", &ScaleGevFit::theta)
      .def_readonly("nll", &ScaleGevFit::nll)
      .def_readonly("converged", &ScaleGevFit::converged)
      .def_readonly("info", &ScaleGevFit::info)
      .def_readonly("n", &ScaleGevFit::n);
  m.def(
      "fit_scale_gev",
      [](const std::vector<double>& series, const std::vector<double>& covariate) {
        return fit_scale_gev(series, covariate);
      },
      py::arg("series"), py::arg("covariate"));
  m.def(
      "fit_pooled_scale_gev",
      [](const BlockMaximaPanel& panel, const std::vector<int>& subset) {
        return fit_pooled_scale_gev(panel, subset);
      },
      py::arg("panel"), py::arg("subset"));

  // dependence models
  py::enum_<MaxStableFamily>(m, "MaxStableFamily")
      .value("smith", MaxStableFamily::kSmith)
      .value("schlather", MaxStableFamily::kSchlather)
      .value("brown_resnick", MaxStableFamily::kBrownResnick);
  py::enum_<BivariateFamily>(m, "BivariateFamily")
      .value("logistic", BivariateFamily::kLogistic)
      .value("asym_logistic", BivariateFamily::kAsymmetricLogistic)
      .value("husler_reiss", BivariateFamily::kHuslerReiss);

  py::class_<MaxStableSpec>(m, "MaxStableSpec")
      .def(py::init<>())
      .def(py::init([](MaxStableFamily family, const std::vector<double>& params) {
             return MaxStableSpec{family, params};
           }),
           py::arg("family"), py::arg("params"))
      .def_readwrite("family", &MaxStableSpec::family)
      .def_readwrite("params", &MaxStableSpec::params);
  py::class_<BivariateSpec>(m, "BivariateSpec")
      .def(py::init<>())
      .def(py::init([](BivariateFamily family, const std::vector<double>& params) {
             return BivariateSpec{family, params};
           }),
           py::arg("family"), py::arg("params"))
      .def_readwrite("family", &BivariateSpec::family)
      .def_readwrite("params", &BivariateSpec::params);

  py::class_<MaxStableFit>(m, "MaxStableFit")
      .def_readonly("spec", &MaxStableFit::spec)
      .def_readonly("pairwise_nll", &MaxStableFit::pairwise_nll)
      .def_readonly("clic", &MaxStableFit::clic)
      .def_readonly("converged", &MaxStableFit::converged)
      .def_readonly("warnings", &MaxStableFit::warnings);
  py::class_<BivariateFit>(m, "BivariateFit")
      .def_readonly("spec", &BivariateFit::spec)
      .def_readonly("nll", &BivariateFit::nll)
      .def_readonly("aic", &BivariateFit::aic)
      .def_readonly("converged", &BivariateFit::converged)
      .def_readonly("warnings", &BivariateFit::warnings);

  m.def("fit_max_stable", &fit_max_stable, py::arg("frechet_panel"), py::arg("coords"),
        py::arg("family"));
  m.def("select_max_stable", &select_max_stable, py::arg("frechet_panel"), py::arg("coords"),
        py::arg("candidates"));
  m.def("fit_biv_ev", &fit_biv_ev, py::arg("pair"), py::arg("family"));
  m.def("select_biv_ev", &select_biv_ev, py::arg("pair"), py::arg("candidates"));
  m.def(
      "simulate_max_stable",
      [](const MaxStableSpec& spec, const Eigen::MatrixXd& coords, int n, std::uint64_t seed) {
        Rng rng(seed);
        return simulate_max_stable(spec, coords, n, rng);
      },
      py::arg("spec"), py::arg("coords"), py::arg("n"), py::arg("seed"));
  m.def(
      "simulate_biv_ev",
      [](const BivariateSpec& spec, int n, std::uint64_t seed) {
        Rng rng(seed);
        return simulate_biv_ev(spec, n, rng);
      },
      py::arg("spec"), py::arg("n"), py::arg("seed"));
  m.def("extremal_coefficient",
        py::overload_cast<const MaxStableSpec&, const Eigen::Vector2d&>(&extremal_coefficient),
        py::arg("spec"), py::arg("lag"));
  m.def("extremal_coefficient",
        py::overload_cast<const BivariateSpec&>(&extremal_coefficient), py::arg("spec"));

  // bootstrap homogeneity tests
  py::enum_<TestStatistic>(m, "TestStatistic")
      .value("ed", TestStatistic::kEd)
      .value("ls", TestStatistic::kLs);
  py::enum_<DependenceKind>(m, "DependenceKind")
      .value("max_stable", DependenceKind::kMaxStable)
      .value("bivariate", DependenceKind::kBivariate);

  py::class_<BootstrapConfig>(m, "BootstrapConfig")
      .def(py::init<>())
      .def_readwrite("B", &BootstrapConfig::B)
      .def_readwrite("seed", &BootstrapConfig::seed)
      .def_readwrite("statistic", &BootstrapConfig::statistic)
      .def_readwrite("dependence", &BootstrapConfig::dependence)
      .def_readwrite("ms_candidates", &BootstrapConfig::ms_candidates)
      .def_readwrite("biv_candidates", &BootstrapConfig::biv_candidates);

  py::class_<PairTestRecord>(m, "PairTestRecord")
      .def_readonly("subset", &PairTestRecord::subset)
      .def_readonly("observed_t", &PairTestRecord::observed_t)
      .def_readonly("boot_ts", &PairTestRecord::boot_ts)
      .def_readonly("p_raw", &PairTestRecord::p_raw)
      .def_readonly("dependence", &PairTestRecord::dependence)
      .def_readonly("null_fit", &PairTestRecord::null_fit)
      .def_readonly("dropped", &PairTestRecord::dropped)
      .def_readonly("warnings", &PairTestRecord::warnings);

  m.def("bootstrap_pairwise", &bootstrap_pairwise, py::arg("panel"), py::arg("partners"),
        py::arg("config"));
  m.def("bootstrap_global", &bootstrap_global, py::arg("panel"), py::arg("targets"),
        py::arg("config"));

  // multiplicity adjustments and the pooling recommendation
  py::enum_<AdjustMethod>(m, "AdjustMethod")
      .value("im", AdjustMethod::kIm)
      .value("holm", AdjustMethod::kHolm)
      .value("bh", AdjustMethod::kBh);

  py::class_<AdjustedPValues>(m, "AdjustedPValues")
      .def_readonly("method", &AdjustedPValues::method)
      .def_readonly("raw", &AdjustedPValues::raw)
      .def_readonly("adjusted", &AdjustedPValues::adjusted)
      .def_readonly("alpha", &AdjustedPValues::alpha);
  m.def("adjust_im", &adjust_im, py::arg("raw"), py::arg("alpha") = 0.1);
  m.def("adjust_holm", &adjust_holm, py::arg("raw"), py::arg("alpha") = 0.1);
  m.def("adjust_bh", &adjust_bh, py::arg("raw"), py::arg("alpha") = 0.1);
  m.def("rejections", &rejections, py::arg("adjusted"));

  py::class_<PartnerDecision>(m, "PartnerDecision")
      .def_readonly("partner", &PartnerDecision::partner)
      .def_readonly("p_raw", &PartnerDecision::p_raw)
      .def_readonly("p_holm", &PartnerDecision::p_holm)
      .def_readonly("p_bh", &PartnerDecision::p_bh)
      .def_readonly("reject_im", &PartnerDecision::reject_im)
      .def_readonly("reject_holm", &PartnerDecision::reject_holm)
      .def_readonly("reject_bh", &PartnerDecision::reject_bh);
  py::class_<PoolingReport>(m, "PoolingReport")
      .def_readonly("loi", &PoolingReport::loi)
      .def_readonly("alpha", &PoolingReport::alpha)
      .def_readonly("method", &PoolingReport::method)
      .def_readonly("partners", &PoolingReport::partners)
      .def_readonly("recommended", &PoolingReport::recommended);
  m.def("recommend", &recommend, py::arg("records"), py::arg("loi"), py::arg("method"),
        py::arg("alpha"));

  // return levels
  m.def("local_rl", &local_rl, py::arg("theta"), py::arg("T"), py::arg("reference_c"));
  py::class_<RegionalEstimate>(m, "RegionalEstimate")
      .def_readonly("local", &RegionalEstimate::local)
      .def_readonly("rl_regional", &RegionalEstimate::rl_regional)
      .def_readonly("rp_regional", &RegionalEstimate::rp_regional)
      .def_readonly("B_sim", &RegionalEstimate::B_sim)
      .def_readonly("cdf_probs", &RegionalEstimate::cdf_probs)
      .def_readonly("cdf_values", &RegionalEstimate::cdf_values)
      .def_readonly("warnings", &RegionalEstimate::warnings);
  m.def(
      "regional_rl_rp",
      [](const ScaleGevParams& pooled, const MaxStableSpec& dependence,
         const Eigen::MatrixXd& coords, double T, double reference_c, int B_sim,
         std::uint64_t seed, py::object r) {
        ReturnSpec spec;
        spec.T = T;
        spec.reference_c = reference_c;
        if (!r.is_none()) {
          spec.has_r = true;
          spec.r = r.cast<double>();
        }
        Rng rng(seed);
        return regional_rl_rp(pooled, dependence, coords, spec, B_sim, rng);
      },
      py::arg("pooled"), py::arg("dependence"), py::arg("coords"), py::arg("T"),
      py::arg("reference_c"), py::arg("B_sim") = 100000, py::arg("seed") = 0,
      py::arg("r") = py::none());

  // simulation study
  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("n_years", &Scenario::n_years)
      .def_readwrite("base", &Scenario::base)
      .def_readwrite("deviating", &Scenario::deviating)
      .def_readwrite("c_mu", &Scenario::c_mu)
      .def_readwrite("c_sigma", &Scenario::c_sigma)
      .def_readwrite("c_gamma", &Scenario::c_gamma)
      .def_readwrite("c_alpha", &Scenario::c_alpha)
      .def_readwrite("dependence", &Scenario::dependence);
  m.def("default_scenarios", &default_scenarios);
  m.def(
      "generate_scenario_data",
      [](const Scenario& s, std::uint64_t seed) {
        Rng rng(seed);
        return generate_scenario_data(s, rng);
      },
      py::arg("scenario"), py::arg("seed"));
}
