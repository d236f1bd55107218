#include <pybind11/pybind11.h>
PYBIND11_MODULE(riskmdp, m) { m.doc() = "stub"; }
