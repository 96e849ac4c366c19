#include <pybind11/pybind11.h>
PYBIND11_MODULE(_grbm, m) { m.doc() = "grbm"; }
