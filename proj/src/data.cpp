#include "nozzle/data.hpp"

#include <cmath>

#include "nozzle/errors.hpp"
#include "nozzle/interpolation.hpp"

namespace nozzle {

InitialData::InitialData()
    : eval_([](double) { return Sample{0.0, 0.0, 0.0, 0.0}; }), description_("zero") {}

InitialData InitialData::riemann(Expression z0, Expression w0) {
  InitialData d;
  d.description_ = "z0=" + z0.text() + ", w0=" + w0.text();
  d.eval_ = [z0 = std::move(z0), w0 = std::move(w0)](double x) {
    const auto z = z0.eval_dx(x);
    const auto w = w0.eval_dx(x);
    return Sample{z.value, w.value, z.slope, w.slope};
  };
  return d;
}

InitialData InitialData::primitive(Expression rho0, Expression v0, const GasLaw& law) {
  InitialData d;
  d.description_ = "rho0=" + rho0.text() + ", v0=" + v0.text();
  const double th = law.theta();
  d.eval_ = [rho0 = std::move(rho0), v0 = std::move(v0), th](double x) {
    const auto rho = rho0.eval_dx(x);
    const auto v = v0.eval_dx(x);
    if (!(rho.value > 0.0)) throw VacuumError("initial density must be positive");
    const double c = std::pow(rho.value, th) / th;
    const double c_x = std::pow(rho.value, th - 1.0) * rho.slope;
    return Sample{v.value - c, v.value + c, v.slope - c_x, v.slope + c_x};
  };
  return d;
}

InitialData InitialData::table(std::vector<double> x, std::vector<double> z,
                               std::vector<double> w) {
  InitialData d;
  d.description_ = "table with " + std::to_string(x.size()) + " rows";
  auto zi = std::make_shared<CubicHermite>(CubicHermite::monotone(x, std::move(z)));
  auto wi = std::make_shared<CubicHermite>(CubicHermite::monotone(std::move(x), std::move(w)));
  d.eval_ = [zi, wi](double s) {
    return Sample{zi->value(s), wi->value(s), zi->slope(s), wi->slope(s)};
  };
  return d;
}

BoundaryData::BoundaryData(Expression zB, Expression wB) : zB_(std::move(zB)), wB_(std::move(wB)) {
  if (zB_.uses_x() || wB_.uses_x()) throw ConfigError("boundary data may depend on t only");
}

BoundaryData::Sample BoundaryData::at(double t) const {
  const auto z = zB_.eval_dt(0.0, t);
  const auto w = wB_.eval_dt(0.0, t);
  return {z.value, w.value, z.slope, w.slope};
}

std::string BoundaryData::describe() const { return "zB=" + zB_.text() + ", wB=" + wB_.text(); }

}  // namespace nozzle
