#include <pybind11/pybind11.h>
PYBIND11_MODULE(qcl_py, m) { m.doc() = "placeholder"; }
