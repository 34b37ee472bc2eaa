#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "degdiff/cli.hpp"
#include "degdiff/continuum.hpp"
#include "degdiff/entropy.hpp"
#include "degdiff/optimizer.hpp"
#include "degdiff/oracle.hpp"
#include "degdiff/profile.hpp"
#include "degdiff/solver.hpp"
#include "degdiff/special_functions.hpp"

namespace py = pybind11;
using namespace degdiff;

namespace {

PhasePartition make_partition(double u_minus, double u_plus, std::vector<double> breakpoints,
                              std::vector<double> coefficients) {
  breakpoints.insert(breakpoints.begin(), std::min(u_minus, u_plus));
  breakpoints.push_back(std::max(u_minus, u_plus));
  return {std::move(breakpoints), std::move(coefficients)};
}

SolveOptions make_options(double grad_tol, int max_iters) {
  SolveOptions o;
  o.grad_tol = grad_tol;
  o.max_iters = max_iters;
  return o;
}

// Entropy functions of a fixed oriented problem.
struct Problem {
  RiemannProblem problem;
  BoundaryLayout layout;

  Problem(double u_minus, double u_plus, std::vector<double> breakpoints, std::vector<double> coefficients)
      : problem(normalize_orientation(u_minus, u_plus,
                                      make_partition(u_minus, u_plus, std::move(breakpoints), std::move(coefficients)))),
        layout(build_layout(problem.partition)) {}
};

py::dict result_dict(const SolveResult& r) {
  py::dict d;
  d["minimizer"] = r.minimizer;
  d["entropy"] = r.entropy;
  d["grad_norm"] = r.grad_norm;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  return d;
}

py::dict comparison_dict(const oracle::ProfileComparison& c) {
  py::dict d;
  d["l1"] = c.l1;
  d["l1_relative"] = c.l1_relative;
  d["linf_collar"] = c.linf_collar;
  d["diffused_mass"] = c.diffused_mass;
  return d;
}

continuum::DiffusionFunction make_diffusion(const std::vector<double>& u, const std::vector<double>& a) {
  if (u.size() != a.size()) throw std::invalid_argument("u and a must have the same length");
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < u.size(); ++i) samples.emplace_back(u[i], a[i]);
  return continuum::DiffusionFunction(std::move(samples));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Self-similar solutions of Riemann problems for degenerate diffusion.";

  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("F", &sf::F, py::arg("x"));
  m.def("F_inverse", &sf::F_inverse, py::arg("p"));
  m.def("log_F_diff", &sf::log_F_diff, py::arg("x"), py::arg("y"));

  py::class_<Problem>(m, "Problem")
      .def(py::init<double, double, std::vector<double>, std::vector<double>>(), py::arg("u_minus"),
           py::arg("u_plus"), py::arg("breakpoints"), py::arg("coefficients"))
      .def_property_readonly("n", [](const Problem& p) { return p.layout.n; })
      .def_property_readonly("m", [](const Problem& p) { return p.layout.m; })
      .def_property_readonly("flipped", [](const Problem& p) { return p.problem.orientation_flipped; })
      .def("entropy", [](const Problem& p, const std::vector<double>& xi) { return entropy_value(p.problem, p.layout, xi); })
      .def("entropy_shifted",
           [](const Problem& p, const std::vector<double>& xi) { return entropy_shifted(p.problem, p.layout, xi); })
      .def("gradient",
           [](const Problem& p, const std::vector<double>& xi) { return entropy_gradient(p.problem, p.layout, xi); })
      .def("hessian",
           [](const Problem& p, const std::vector<double>& xi) {
             const auto h = entropy_hessian(p.problem, p.layout, xi);
             std::vector<std::vector<double>> dense(h.order(), std::vector<double>(h.order()));
             for (std::size_t i = 0; i < h.order(); ++i)
               for (std::size_t j = 0; j < h.order(); ++j) dense[i][j] = h.at(i, j);
             return dense;
           })
      .def("initial_guess", [](const Problem& p) { return initial_guess(p.problem, p.layout); })
      .def(
          "minimize",
          [](const Problem& p, std::optional<std::vector<double>> start, double grad_tol, int max_iters) {
            return result_dict(minimize(p.problem, p.layout, make_options(grad_tol, max_iters), std::move(start)));
          },
          py::arg("start") = py::none(), py::arg("grad_tol") = 1e-12, py::arg("max_iters") = 200)
      .def(
          "grid_search",
          [](const Problem& p, double box_radius, double coarse_step) {
            const auto g = oracle::grid_search_min(p.problem, p.layout, box_radius, coarse_step);
            py::dict d;
            d["minimizer"] = g.minimizer;
            d["entropy"] = g.entropy;
            d["final_step"] = g.final_step;
            return d;
          },
          py::arg("box_radius"), py::arg("coarse_step"))
      .def("stefan_bisection", [](const Problem& p) { return oracle::stefan_bisection(p.problem); });

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("converged", &Solution::converged)
      .def_property_readonly("boundaries", [](const Solution& s) { return s.profile.boundaries(); })
      .def_property_readonly("entropy",
                             [](const Solution& s) -> std::optional<double> {
                               if (!s.optimization) return std::nullopt;
                               return s.optimization->entropy;
                             })
      .def_property_readonly("iterations",
                             [](const Solution& s) { return s.optimization ? s.optimization->iterations : 0; })
      .def_property_readonly("plot_radius", [](const Solution& s) { return plot_radius(s); })
      .def(
          "eval",
          [](const Solution& s, double xi) {
            const auto v = eval_selfsimilar(s.profile, xi);
            return std::pair{v.left, v.right};
          },
          py::arg("xi"))
      .def(
          "eval_solution",
          [](const Solution& s, double t, double x) {
            const auto v = eval_solution(s.profile, t, x);
            return std::pair{v.left, v.right};
          },
          py::arg("t"), py::arg("x"))
      .def("invert", [](const Solution& s, double u) { return invert(s.profile, u); }, py::arg("u"))
      .def("jump_residuals",
           [](const Solution& s) {
             py::list out;
             for (const auto& r : jump_residuals(s.problem, s.layout, s.profile)) {
               py::dict d;
               d["boundary"] = r.boundary;
               d["xi"] = r.xi;
               d["u_left"] = r.u_left;
               d["u_right"] = r.u_right;
               d["residual"] = r.residual;
               d["classification"] = std::string(to_string(r.classification));
               out.append(d);
             }
             return out;
           })
      .def(
          "fd_compare",
          [](const Solution& s, double T, double dx, unsigned threads) {
            oracle::FDOptions o;
            o.T = T;
            o.dx = dx;
            o.threads = threads;
            return comparison_dict(oracle::compare_profiles(oracle::fd_solve(s.problem, o), s.profile, s.problem));
          },
          py::arg("T") = 1.0, py::arg("dx") = 0.01, py::arg("threads") = 1);

  m.def(
      "solve",
      [](double u_minus, double u_plus, std::vector<double> breakpoints, std::vector<double> coefficients,
         double grad_tol, int max_iters) {
        return solve(u_minus, u_plus, make_partition(u_minus, u_plus, std::move(breakpoints), std::move(coefficients)),
                     make_options(grad_tol, max_iters));
      },
      py::arg("u_minus"), py::arg("u_plus"), py::arg("breakpoints"), py::arg("coefficients"),
      py::arg("grad_tol") = 1e-12, py::arg("max_iters") = 200);

  m.def(
      "minimize_functional",
      [](const std::vector<double>& u, const std::vector<double>& a, std::size_t cells) {
        const auto r = continuum::minimize_functional(make_diffusion(u, a), cells);
        py::dict d;
        d["grid"] = r.profile.grid;
        d["xi"] = r.profile.xi;
        d["value"] = r.value;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("u"), py::arg("a"), py::arg("cells"));

  m.def(
      "convergence_study",
      [](const std::vector<double>& u, const std::vector<double>& a, const std::vector<std::size_t>& cells) {
        const auto study = continuum::convergence_study(make_diffusion(u, a), cells);
        py::list rows;
        for (const auto& r : study.rows) {
          py::dict d;
          d["cells"] = r.cells;
          d["converged"] = r.converged;
          d["shifted_entropy"] = r.shifted_entropy;
          d["distance_to_finest"] = r.distance_to_finest;
          d["distance_to_previous"] = r.distance_to_previous;
          d["xi"] = r.inverse.xi;
          rows.append(d);
        }
        py::dict out;
        out["grid"] = study.common_grid;
        out["rows"] = rows;
        return out;
      },
      py::arg("u"), py::arg("a"), py::arg("cells"));

  m.def(
      "run_config",
      [](const std::string& command, const std::string& text, unsigned threads) {
        const auto c = cli::parse_command(command);
        if (!c) throw std::invalid_argument("unknown command '" + command + "'");
        auto config = cli::parse_config(text);
        config.command = *c;
        cli::check_command(config);
        const auto out = cli::execute(config, threads);
        return py::make_tuple(out.status, out.summary, out.files);
      },
      py::arg("command"), py::arg("config"), py::arg("threads") = 1);
}
