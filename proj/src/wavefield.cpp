#include "nlse/wavefield.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "nlse/errors.hpp"
#include "nlse/numstr.hpp"

namespace nlse {

const char* FrameInfo::name() const {
  switch (kind) {
    case Kind::physical: return "physical";
    case Kind::rescaled_piii: return "rescaled-piii";
    case Kind::rescaled_pv: return "rescaled-pv";
  }
  return "?";
}

void WaveField::validate() const {
  if (x.empty() || t.empty()) throw ValidationError("wave field needs nonempty grids");
  if (psi.size() != x.size() * t.size())
    throw ValidationError("wave field sample count does not match grid");
  if (!mass.empty() && mass.size() != psi.size())
    throw ValidationError("mass sample count does not match grid");
}

std::vector<double> linspace(double a, double b, int count) {
  if (count < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = a;
    return g;
  }
  const double h = (b - a) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = a + h * i;
  g.back() = b;
  return g;
}

void write_wavefield_csv(const WaveField& field, const std::string& path) {
  field.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const bool with_mass = !field.mass.empty();
  out << "x,t,re_psi,im_psi,abs_psi";
  if (with_mass) out << ",mass";
  out << "\n";
  for (std::size_t it = 0; it < field.t.size(); ++it) {
    for (std::size_t ix = 0; ix < field.x.size(); ++ix) {
      const auto z = field.at(it, ix);
      out << format_double(field.x[ix]) << ',' << format_double(field.t[it]) << ','
          << format_double(z.real()) << ',' << format_double(z.imag()) << ','
          << format_double(std::abs(z));
      if (with_mass) out << ',' << format_double(field.mass[field.index(it, ix)]);
      out << "\n";
    }
  }
  if (!out) throw IoError("failed writing '" + path + "'");

  nlohmann::json meta;
  meta["frame"] = field.frame.name();
  if (field.frame.kind != FrameInfo::Kind::physical) {
    meta["n"] = field.frame.n;
    meta["mu_mean"] = field.frame.mu_mean;
    if (field.frame.kind == FrameInfo::Kind::rescaled_pv) meta["zeta"] = field.frame.zeta;
  }
  meta["x"] = {{"min", field.x.front()}, {"max", field.x.back()}, {"count", field.x.size()}};
  meta["t"] = {{"min", field.t.front()}, {"max", field.t.back()}, {"count", field.t.size()}};
  meta["columns"] = with_mass ? "x,t,re_psi,im_psi,abs_psi,mass" : "x,t,re_psi,im_psi,abs_psi";
  std::ofstream mout(path + ".meta.json");
  if (!mout) throw IoError("cannot open '" + path + ".meta.json' for writing");
  mout << meta.dump(2) << "\n";
  if (!mout) throw IoError("failed writing '" + path + ".meta.json'");
}

}  // namespace nlse
