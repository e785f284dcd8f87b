#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gkz/cli.hpp"

namespace py = pybind11;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
py::tuple run(const std::string& verb, const std::string& document) {
  gkz::Json doc;
  try {
    doc = gkz::Json::parse(document);
  } catch (const gkz::Json::parse_error& e) {
    throw gkz::ParseError(std::string("input is not valid JSON: ") + e.what());
  }
  gkz::CommandResult res = gkz::run_command(verb, doc, gkz::job_from_document(doc));
  return py::make_tuple(res.report.dump(), res.exit_code);
}

}  // namespace

PYBIND11_MODULE(_gkz, m) {
  m.doc() = "Exact GKZ A-hypergeometric systems";

  auto base = py::register_exception<gkz::Error>(m, "GkzError");
  py::register_exception<gkz::ConfigError>(m, "ConfigError", base);
  py::register_exception<gkz::PreconditionError>(m, "PreconditionError", base);
  py::register_exception<gkz::GenericityError>(m, "GenericityError", base);
  py::register_exception<gkz::InconclusiveError>(m, "InconclusiveError", base);
  py::register_exception<gkz::ParseError>(m, "ParseError", base);
  py::register_exception<gkz::InternalError>(m, "InternalError", base);

  m.def("commands", &gkz::command_names, "Names of the available commands.");
  m.def("run", &run, py::arg("command"), py::arg("document"),
        "Run a command on a JSON job or report; returns (report JSON, exit code).");
  m.def("render", [](const std::string& report) { return gkz::render_human(gkz::Json::parse(report)); },
        py::arg("report"), "Human-readable text for a report.");
}
