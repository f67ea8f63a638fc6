#include "nlse/spectral_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlse/errors.hpp"

namespace nlse {

// ---------------------------------------------------------------- Distribution

Distribution Distribution::make_chi_squared(double dof) {
  if (!(dof > 0)) throw ValidationError("chi-squared dof must be positive");
  return {Kind::chi_squared, dof, 0.0};
}

Distribution Distribution::make_exponential(double rate) {
  if (!(rate > 0)) throw ValidationError("exponential rate must be positive");
  return {Kind::exponential, rate, 0.0};
}

Distribution Distribution::make_constant(double value) {
  if (!(value > 0)) throw ValidationError("shifted-constant value must be positive");
  return {Kind::shifted_constant, value, 0.0};
}

Distribution Distribution::make_gaussian(double mean, double variance) {
  if (!(variance > 0)) throw ValidationError("gaussian variance must be positive");
  return {Kind::gaussian, mean, variance};
}

double Distribution::mean() const {
  switch (kind) {
    case Kind::chi_squared: return a;
    case Kind::exponential: return 1.0 / a;
    case Kind::shifted_constant: return a;
    case Kind::gaussian: return a;
  }
  throw ValidationError("unknown distribution kind");
}

bool Distribution::positive() const { return kind != Kind::gaussian; }

double Distribution::sample(RandomStream& rng) const {
  switch (kind) {
    case Kind::chi_squared: return rng.chi_squared(a);
    case Kind::exponential: return rng.exponential(a);
    case Kind::shifted_constant: return a;
    case Kind::gaussian: return a + std::sqrt(b) * rng.normal();
  }
  throw ValidationError("unknown distribution kind");
}

std::string Distribution::spec() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::chi_squared: os << "chi2:" << a; break;
    case Kind::exponential: os << "exp:" << a; break;
    case Kind::shifted_constant: os << "const:" << a; break;
    case Kind::gaussian: os << "gauss:" << a << ":" << b; break;
  }
  return os.str();
}

Distribution Distribution::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') { parts.push_back(cur); cur.clear(); }
    else cur.push_back(ch);
  }
  parts.push_back(cur);
  auto num = [&](std::size_t i) {
    try {
      std::size_t pos = 0;
      double v = std::stod(parts.at(i), &pos);
      if (pos != parts[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ValidationError("bad distribution parameter in '" + text + "'");
    }
  };
  const std::string& name = parts[0];
  if (name == "chi2" && parts.size() == 2) return make_chi_squared(num(1));
  if (name == "exp" && parts.size() == 2) return make_exponential(num(1));
  if (name == "const" && parts.size() == 2) return make_constant(num(1));
  if (name == "gauss" && parts.size() == 3) return make_gaussian(num(1), num(2));
  throw ValidationError("unrecognized distribution spec '" + text +
                        "' (expected chi2:a, exp:rate, const:v, or gauss:mean:var)");
}

// ---------------------------------------------------------------- SpectralData

double min_separation(const std::vector<std::complex<double>>& lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      best = std::min(best, std::abs(lambda[i] - lambda[j]));
  return best;
}

void SpectralData::validate() const {
  // Empty data is the vacuum (zero-soliton) case and is legitimate.
  if (p.size() != lambda.size())
    throw ValidationError("connection coefficient count does not match eigenvalue count");
  if (c && c->size() != lambda.size())
    throw ValidationError("norming constant count does not match eigenvalue count");
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i].imag() > 0))
      throw ValidationError("eigenvalue " + std::to_string(i) + " is not in the upper half plane");
    if (p[i] == std::complex<double>(0, 0))
      throw ValidationError("connection coefficient " + std::to_string(i) + " is zero");
  }
  if (zeta && !(*zeta > 0 && *zeta < 1))
    throw ValidationError("lattice drift must satisfy 0 < zeta < 1");
  if (lambda.size() > 1 && min_separation(lambda) < kSeparationFloor)
    throw ValidationError("eigenvalue pair closer than the separation floor");
}

void RandomEnsembleConfig::validate() const {
  if (n < 1) throw ValidationError("ensemble size must be at least 1");
  if (realizations < 1) throw ValidationError("realization count must be at least 1");
  if (!amplitude.positive())
    throw ValidationError("amplitude law must be positive sub-exponential (gaussian is velocity-only)");
  if (zeta && !(*zeta > 0 && *zeta < 1))
    throw ValidationError("lattice drift must satisfy 0 < zeta < 1");
}

// ------------------------------------------------------------------- sampling

namespace {
std::uint64_t fold(std::uint64_t a, std::uint64_t b) {
  RandomStream s(a);
  return s.derive(b).next_bits();
}
}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t realization) {
  return fold(seed, realization);
}

void sample_mu_v(const RandomEnsembleConfig& config, int realization,
                 std::vector<double>& mu, std::vector<double>& v) {
  config.validate();
  RandomStream root(substream_seed(config.seed, static_cast<std::uint64_t>(realization)));
  mu.resize(static_cast<std::size_t>(config.n));
  v.assign(static_cast<std::size_t>(config.n), 0.0);
  for (int k = 0; k < config.n; ++k) {
    auto amp = root.derive(2 * static_cast<std::uint64_t>(k));
    mu[static_cast<std::size_t>(k)] = config.amplitude.sample(amp);
    if (config.velocity) {
      auto vel = root.derive(2 * static_cast<std::uint64_t>(k) + 1);
      v[static_cast<std::size_t>(k)] = config.velocity->sample(vel);
    }
  }
}

SpectralData sample_ensemble(const RandomEnsembleConfig& config, int realization) {
  config.validate();
  std::vector<double> mu, v;
  sample_mu_v(config, realization, mu, v);
  const double drift = config.zeta.value_or(0.0);

  auto assemble = [&] {
    std::vector<std::complex<double>> lambda(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k)
      lambda[k] = std::complex<double>(-drift * static_cast<double>(k + 1) + v[k], mu[k]);
    return lambda;
  };

  // Amplitude laws can put mass arbitrarily close to zero, so exact or
  // near-coincident eigenvalues occur with positive probability.  Redraw
  // the second member of any offending pair from an attempt-tagged
  // substream; give up after a bounded number of passes.
  std::vector<std::complex<double>> lambda = assemble();
  RandomStream root(substream_seed(config.seed, static_cast<std::uint64_t>(realization)));
  constexpr int kMaxPasses = 16;
  for (int pass = 0; pass < kMaxPasses && min_separation(lambda) < kSeparationFloor; ++pass) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      for (std::size_t j = i + 1; j < lambda.size(); ++j) {
        if (std::abs(lambda[i] - lambda[j]) >= kSeparationFloor) continue;
        auto redraw = root.derive(0x5EEDull + j).derive(static_cast<std::uint64_t>(pass));
        mu[j] = config.amplitude.sample(redraw);
        if (config.velocity) v[j] = config.velocity->sample(redraw);
      }
    }
    lambda = assemble();
  }
  if (min_separation(lambda) < kSeparationFloor && lambda.size() > 1)
    throw NumericalError("could not separate sampled eigenvalues after bounded redraws");

  SpectralData data;
  data.lambda = std::move(lambda);
  data.p.assign(data.lambda.size(), std::complex<double>(1.0, 0.0));
  data.c = norming_from_connection(data.lambda, data.p);
  if (config.zeta) data.zeta = config.zeta;
  data.seed = substream_seed(config.seed, static_cast<std::uint64_t>(realization));
  data.validate();
  return data;
}

// ----------------------------------------------------------------- dictionary

namespace {

// Sum of logs of the two eigenvalue products shared by both dictionary
// directions.  exp(sum of logs) equals the product exactly regardless of
// branch choices, and the log form survives magnitudes far outside the
// representable range of any single factor.
std::complex<double> log_product_sum(const std::vector<std::complex<double>>& lambda, std::size_t nidx) {
  std::complex<double> s(0, 0);
  for (std::size_t l = 0; l < lambda.size(); ++l) {
    s += std::log(lambda[nidx] - std::conj(lambda[l]));
    if (l != nidx) s -= std::log(lambda[nidx] - lambda[l]);
  }
  return s;
}

void check_dictionary_inputs(const std::vector<std::complex<double>>& lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (!(lambda[i].imag() > 0))
      throw ValidationError("eigenvalue " + std::to_string(i) + " is not in the upper half plane");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if (std::abs(lambda[i] - lambda[j]) < kSeparationFloor)
        throw IllConditionedError("eigenvalue pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") closer than the separation floor");
}

}  // namespace

std::vector<std::complex<double>> norming_from_connection(
    const std::vector<std::complex<double>>& lambda, const std::vector<std::complex<double>>& p) {
  if (lambda.size() != p.size()) throw ValidationError("dictionary input size mismatch");
  check_dictionary_inputs(lambda);
  std::vector<std::complex<double>> c(lambda.size());
  for (std::size_t nidx = 0; nidx < lambda.size(); ++nidx) {
    if (p[nidx] == std::complex<double>(0, 0))
      throw ValidationError("connection coefficient " + std::to_string(nidx) + " is zero");
    c[nidx] = std::exp(log_product_sum(lambda, nidx) - std::log(p[nidx]));
  }
  return c;
}

std::vector<std::complex<double>> connection_from_norming(
    const std::vector<std::complex<double>>& lambda, const std::vector<std::complex<double>>& c) {
  if (lambda.size() != c.size()) throw ValidationError("dictionary input size mismatch");
  check_dictionary_inputs(lambda);
  std::vector<std::complex<double>> p(lambda.size());
  for (std::size_t nidx = 0; nidx < lambda.size(); ++nidx) {
    if (c[nidx] == std::complex<double>(0, 0))
      throw ValidationError("norming constant " + std::to_string(nidx) + " is zero");
    p[nidx] = std::exp(log_product_sum(lambda, nidx) - std::log(c[nidx]));
  }
  return p;
}

// ------------------------------------------------------------------ evolution

SpectralData evolve_spectral_data(const SpectralData& data, double t) {
  data.validate();
  SpectralData out = data;
  for (std::size_t k = 0; k < data.lambda.size(); ++k) {
    const std::complex<double> phase = 2.0 * t * data.lambda[k] * data.lambda[k];
    const std::complex<double> fwd = std::exp(std::complex<double>(0, 1) * phase);
    out.p[k] = data.p[k] / fwd;
    if (out.c) (*out.c)[k] = (*data.c)[k] * fwd;
  }
  return out;
}

// -------------------------------------------------------------- serialization

namespace {
nlohmann::json complex_list(const std::vector<std::complex<double>>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

std::vector<std::complex<double>> complex_list_from(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<std::complex<double>> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ValidationError(std::string(what) + " entries must be [re, im] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}
}  // namespace

std::string spectral_to_json(const SpectralData& data) {
  nlohmann::json j;
  j["n"] = data.n();
  if (data.zeta) j["zeta"] = *data.zeta;
  j["eigenvalues"] = complex_list(data.lambda);
  j["p"] = complex_list(data.p);
  if (data.c) j["c"] = complex_list(*data.c);
  j["seed"] = data.seed;
  return j.dump(2);
}

SpectralData spectral_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("spectral data is not valid JSON: ") + e.what());
  }
  SpectralData data;
  if (!j.contains("eigenvalues")) throw ValidationError("spectral data missing 'eigenvalues'");
  data.lambda = complex_list_from(j["eigenvalues"], "eigenvalues");
  if (j.contains("p")) data.p = complex_list_from(j["p"], "p");
  else data.p.assign(data.lambda.size(), std::complex<double>(1, 0));
  if (j.contains("c") && !j["c"].is_null()) data.c = complex_list_from(j["c"], "c");
  if (j.contains("zeta") && !j["zeta"].is_null()) data.zeta = j["zeta"].get<double>();
  if (j.contains("seed")) data.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("n") && j["n"].get<int>() != data.n())
    throw ValidationError("declared n does not match eigenvalue count");
  data.validate();
  return data;
}

void save_spectral(const SpectralData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << spectral_to_json(data) << "\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

SpectralData load_spectral(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  return spectral_from_json(buf.str());
}

}  // namespace nlse
