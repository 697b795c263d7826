#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphtrack/experiment.hpp"
#include "graphtrack/metrics.hpp"
#include "graphtrack/observability.hpp"
#include "graphtrack/rng.hpp"

namespace py = pybind11;
using namespace graphtrack;

PYBIND11_MODULE(graphtrack, m) {
  m.doc() = "Tracking of time-varying sparse graph topologies from "
            "graph-filtered signals";

  py::register_exception<NumericalError>(m, "NumericalError");

  // ---- graph core ----
  py::class_<EdgeIndexMap>(m, "EdgeIndexMap")
      .def(py::init<int>(), py::arg("n_nodes"))
      .def_property_readonly("n_nodes", &EdgeIndexMap::n_nodes)
      .def_property_readonly("max_edges", &EdgeIndexMap::max_edges)
      .def("pair_of", &EdgeIndexMap::pair_of, py::arg("m"))
      .def("index_of", &EdgeIndexMap::index_of, py::arg("a"), py::arg("b"));

  m.def("build_incidence", &build_incidence, py::arg("map"));
  m.def("laplacian_from_weights", &laplacian_from_weights, py::arg("incidence"),
        py::arg("weights"));
  m.def("support_of", &support_of, py::arg("weights"), py::arg("threshold"));

  // ---- graph filter ----
  py::class_<PolynomialGraphFilter>(m, "PolynomialGraphFilter")
      .def(py::init([](const Vector& coeffs) {
             return PolynomialGraphFilter{coeffs};
           }),
           py::arg("coeffs"))
      .def_readwrite("coeffs", &PolynomialGraphFilter::coeffs)
      .def_property_readonly("order", &PolynomialGraphFilter::order);

  m.def("builtin_filter", &builtin_filter, py::arg("name"),
        py::arg("order") = -1);
  m.def("apply_filter", &apply_filter, py::arg("filter"), py::arg("laplacian"),
        py::arg("q"));
  m.def("jacobian_naive", &jacobian_naive, py::arg("filter"), py::arg("weights"),
        py::arg("incidence"), py::arg("q"));
  m.def("jacobian_dp", &jacobian_dp, py::arg("filter"), py::arg("map"),
        py::arg("laplacian"), py::arg("q"));
  m.def(
      "linear_observation",
      [](double a0, double a1, const Matrix& incidence, const Vector& q) {
        auto obs = linear_observation(a0, a1, incidence, q);
        return py::make_tuple(obs.H, obs.c);
      },
      py::arg("a0"), py::arg("a1"), py::arg("incidence"), py::arg("q"));

  // ---- trackers ----
  py::class_<TrackerState>(m, "TrackerState")
      .def(py::init([](const Vector& estimate, const Matrix& covariance) {
             return TrackerState{estimate, covariance};
           }),
           py::arg("estimate"), py::arg("covariance"))
      .def_readwrite("estimate", &TrackerState::estimate)
      .def_readwrite("covariance", &TrackerState::covariance);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init([](const Matrix& q, const Matrix& r) {
             return NoiseModel{q, r};
           }),
           py::arg("Q"), py::arg("R"))
      .def_static("isotropic", &NoiseModel::isotropic, py::arg("state_dim"),
                  py::arg("q_sigma"), py::arg("obs_dim"), py::arg("r_sigma"))
      .def_readwrite("Q", &NoiseModel::Q)
      .def_readwrite("R", &NoiseModel::R);

  py::class_<IstaConfig>(m, "IstaConfig")
      .def(py::init([](int iterations, double mu, std::vector<double> steps) {
             return IstaConfig{iterations, mu, std::move(steps)};
           }),
           py::arg("iterations") = 1, py::arg("mu") = 0.25,
           py::arg("step_sizes") = std::vector<double>{1.0})
      .def_readwrite("iterations", &IstaConfig::iterations)
      .def_readwrite("mu", &IstaConfig::mu)
      .def_readwrite("step_sizes", &IstaConfig::step_sizes);

  py::class_<StateTransition>(m, "StateTransition")
      .def_static("identity", &StateTransition::identity)
      .def_static("linear", &StateTransition::linear, py::arg("F"))
      .def("apply", &StateTransition::apply, py::arg("x"))
      .def("jacobian_at", &StateTransition::jacobian_at, py::arg("x"));

  py::class_<SupportMask>(m, "SupportMask")
      .def(py::init([](std::vector<int> active) {
             return SupportMask{std::move(active)};
           }),
           py::arg("active"))
      .def_readwrite("active", &SupportMask::active)
      .def("indicator", &SupportMask::indicator, py::arg("dim"));

  m.def("soft_threshold", &soft_threshold, py::arg("v"), py::arg("beta"));
  m.def("predict", &predict, py::arg("state"), py::arg("transition"),
        py::arg("noise"));
  m.def(
      "innovation_moments",
      [](const TrackerState& pred, const Matrix& h, const NoiseModel& noise) {
        auto moments = innovation_moments(pred, h, noise);
        return py::make_tuple(moments.S, moments.K);
      },
      py::arg("predicted"), py::arg("jacobian"), py::arg("noise"));
  m.def("ekf_step", &ekf_step, py::arg("state"), py::arg("transition"),
        py::arg("noise"), py::arg("filter"), py::arg("incidence"), py::arg("map"),
        py::arg("q"), py::arg("y"));
  m.def("ista_update", &ista_update, py::arg("predicted"), py::arg("jacobian"),
        py::arg("noise"), py::arg("y"), py::arg("h_pred"), py::arg("config"),
        py::arg("init"), py::arg("init_is_unregularized_update") = false);
  m.def("gsp_ekf_step", &gsp_ekf_step, py::arg("state"), py::arg("transition"),
        py::arg("noise"), py::arg("filter"), py::arg("incidence"), py::arg("map"),
        py::arg("q"), py::arg("y"), py::arg("config"));
  m.def("oracle_step", &oracle_step, py::arg("state"), py::arg("transition"),
        py::arg("noise"), py::arg("filter"), py::arg("incidence"), py::arg("map"),
        py::arg("q"), py::arg("y"), py::arg("mask"), py::arg("mean_jump"));
  m.def("linear_kf_step", &linear_kf_step, py::arg("state"),
        py::arg("transition"), py::arg("noise"), py::arg("a0"), py::arg("a1"),
        py::arg("incidence"), py::arg("q"), py::arg("y"));

  // ---- observability ----
  m.def(
      "observability_matrix",
      [](const std::vector<Matrix>& h_seq, const std::vector<Matrix>& f_seq) {
        return observability_matrix({h_seq, f_seq});
      },
      py::arg("H_seq"), py::arg("F_seq"));
  m.def(
      "is_t_step_observable",
      [](const std::vector<Matrix>& h_seq, const std::vector<Matrix>& f_seq,
         double tol) {
        auto res = is_t_step_observable({h_seq, f_seq}, tol);
        return py::make_tuple(res.observable, res.rank);
      },
      py::arg("H_seq"), py::arg("F_seq"), py::arg("tol") = -1.0);
  m.def("min_observability_horizon", &min_observability_horizon,
        py::arg("n_nodes"));

  // ---- metrics ----
  m.def("normalized_mse", &normalized_mse, py::arg("estimate"), py::arg("truth"));
  m.def("eier", &eier, py::arg("est_support"), py::arg("true_support"),
        py::arg("n_nodes"));

  // ---- simulation ----
  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("n_nodes", &ScenarioConfig::n_nodes)
      .def_readwrite("t_max", &ScenarioConfig::t_max)
      .def_readwrite("init_edge_count", &ScenarioConfig::init_edge_count)
      .def_readwrite("change_interval", &ScenarioConfig::change_interval)
      .def_readwrite("changes_per_event", &ScenarioConfig::changes_per_event)
      .def_readwrite("sigma_e", &ScenarioConfig::sigma_e)
      .def_readwrite("sigma_v", &ScenarioConfig::sigma_v)
      .def_readwrite("filter", &ScenarioConfig::filter)
      .def_readwrite("new_edge_mean", &ScenarioConfig::new_edge_mean)
      .def_readwrite("new_edge_var", &ScenarioConfig::new_edge_var)
      .def_readwrite("seed", &ScenarioConfig::seed);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("true_states", &Trajectory::true_states)
      .def_readonly("inputs", &Trajectory::inputs)
      .def_readonly("observations", &Trajectory::observations)
      .def_readonly("true_supports", &Trajectory::true_supports)
      .def_property_readonly("t_max", &Trajectory::t_max);

  m.def("generate", &generate, py::arg("config"));
  m.def("substream_seed", &Rng::substream_seed, py::arg("seed"),
        py::arg("stream"));
}
