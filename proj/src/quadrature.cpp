#include "seqlevy/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>
#include <string>

namespace seqlevy {

namespace {

double trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

gsl_integration_workspace* workspace() {
  static thread_local std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>
      ws(gsl_integration_workspace_alloc(4096));
  return ws.get();
}

const int g_handler_off = [] {
  gsl_set_error_handler_off();
  return 0;
}();

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol) {
  (void)g_handler_off;
  if (a == b) return {0.0, 0.0};

  gsl_function gf;
  gf.function = &trampoline;
  gf.params = const_cast<void*>(static_cast<const void*>(&f));

  QuadResult out;
  const int status = gsl_integration_qags(&gf, a, b, abs_tol, 1e-12, 4096,
                                          workspace(), &out.value, &out.abs_error);
  // Roundoff-limited results are kept: the reported error bound is honest.
  if (status != GSL_SUCCESS && status != GSL_EROUND) {
    throw std::runtime_error(std::string("quadrature failed: ") +
                             gsl_strerror(status));
  }
  return out;
}

}  // namespace seqlevy
