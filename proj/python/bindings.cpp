#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdpa/commands.hpp"

namespace py = pybind11;
using namespace gdpa;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations with generalized divided power algebras";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UnsupportedRing>(m, "UnsupportedRing", error.ptr());
  auto precondition = py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  // The module keeps the type alive; the translator attaches the JSON pointer to each instance.
  static py::handle schema_type = py::exception<SchemaError>(m, "SchemaError", precondition.ptr()).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SchemaError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(schema_type)(e.what());
      exc.attr("pointer") = e.pointer;
      PyErr_SetObject(schema_type.ptr(), exc.ptr());
    }
  });

  py::class_<CommandOptions>(m, "CommandOptions")
      .def(py::init<>())
      .def_readwrite("ring", &CommandOptions::ring)
      .def_readwrite("family", &CommandOptions::family)
      .def_readwrite("values", &CommandOptions::values)
      .def_readwrite("q0", &CommandOptions::q0)
      .def_readwrite("input", &CommandOptions::input)
      .def_readwrite("mode", &CommandOptions::mode)
      .def_readwrite("ideal", &CommandOptions::ideal)
      .def_readwrite("up_to", &CommandOptions::up_to)
      .def_readwrite("n", &CommandOptions::n)
      .def_readwrite("m", &CommandOptions::m)
      .def_readwrite("h", &CommandOptions::h)
      .def_readwrite("p", &CommandOptions::p)
      .def_readwrite("r", &CommandOptions::r)
      .def_readwrite("horizon", &CommandOptions::horizon)
      .def_readwrite("max_i", &CommandOptions::max_i)
      .def_readwrite("limit", &CommandOptions::limit)
      .def_readwrite("count", &CommandOptions::count)
      .def_readwrite("max_d", &CommandOptions::max_d)
      .def_readwrite("seed", &CommandOptions::seed);

  m.def("commands", [] {
    std::vector<std::string> names;
    for (const auto& c : commands()) names.push_back(c.name);
    return names;
  });

  m.def(
      "run_command",
      [](const std::string& name, const CommandOptions& o) {
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_command(name, o);
        }
        return py::make_tuple(r.code, r.json.dump(), r.text);
      },
      py::arg("name"), py::arg("options"), "Runs a command; returns (exit code, JSON text, plain text).");
}
