#include "roumieu/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fftw3.h>

#include "roumieu/error.hpp"

namespace roumieu {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// fftw_malloc'ed scratch so SIMD alignment, and therefore rounding, does not
// depend on where std::vector happened to put its storage.
class FftwBuffer {
 public:
  explicit FftwBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * std::max<std::size_t>(n, 1)))) {
    if (!data_) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* get() noexcept { return data_; }
  Complex* as_complex() noexcept { return reinterpret_cast<Complex*>(data_); }

 private:
  std::size_t n_;
  fftw_complex* data_;
};

std::vector<Complex> transform(const GridSpec& spec, const std::vector<Complex>& values, int sign) {
  spec.validate();
  const std::size_t total = spec.size();
  if (values.size() != total) throw DimensionMismatch("sample count does not match the grid");
  FftwBuffer in(total);
  FftwBuffer out(total);
  std::vector<int> dims(spec.dimension(), spec.resolution);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in.get(), out.get(), sign,
                         FFTW_ESTIMATE);
  }
  if (!plan) throw Error("FFTW planner failed");
  std::copy(values.begin(), values.end(), in.as_complex());
  fftw_execute(plan);
  std::vector<Complex> result(out.as_complex(), out.as_complex() + total);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return result;
}

// Angular frequencies per axis in FFT index order.
std::vector<std::vector<double>> frequency_axes(const GridSpec& spec) {
  std::vector<std::vector<double>> axes(spec.dimension());
  for (std::size_t j = 0; j < spec.dimension(); ++j) {
    axes[j].resize(static_cast<std::size_t>(spec.resolution));
    for (int k = 0; k < spec.resolution; ++k) axes[j][k] = spec.frequency(j, spec.signed_mode(k));
  }
  return axes;
}

// Multi-index of a flat row-major position, last axis fastest.
void unflatten(std::size_t flat, int resolution, std::vector<int>& idx) {
  for (std::size_t j = idx.size(); j-- > 0;) {
    idx[j] = static_cast<int>(flat % static_cast<std::size_t>(resolution));
    flat /= static_cast<std::size_t>(resolution);
  }
}

template <class F>
std::vector<Complex> multiply_spectrum(const GridSpec& spec, const std::vector<Complex>& spectrum, F&& factor) {
  const auto axes = frequency_axes(spec);
  const std::size_t n = spec.dimension();
  std::vector<int> idx(n);
  std::vector<double> xi(n);
  std::vector<Complex> out(spectrum.size());
  for (std::size_t f = 0; f < spectrum.size(); ++f) {
    unflatten(f, spec.resolution, idx);
    for (std::size_t j = 0; j < n; ++j) xi[j] = axes[j][idx[j]];
    out[f] = spectrum[f] == Complex(0.0) ? Complex(0.0) : factor(std::span<const double>(xi)) * spectrum[f];
  }
  return out;
}

std::vector<Complex> symbol_times(const GridSpec& spec, const std::vector<Complex>& spectrum,
                                  const SymbolPolynomial& q) {
  if (q.dimension() != spec.dimension()) throw DimensionMismatch("symbol and grid dimensions differ");
  return multiply_spectrum(spec, spectrum, [&](std::span<const double> xi) { return eval(q, xi); });
}

// Coefficients at transform roundoff level carry no information, but high
// order symbols would amplify them into spurious tails.
std::vector<Complex> denoised(std::vector<Complex> spectrum) {
  double peak = 0.0;
  for (const auto& c : spectrum) peak = std::max(peak, std::abs(c));
  const double floor = kSpectralNoiseFloor * peak;
  for (auto& c : spectrum)
    if (std::abs(c) <= floor) c = 0.0;
  return spectrum;
}

double psi(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

const char* family_name(Fixture::Family f) {
  switch (f) {
    case Fixture::Family::gaussian_bump: return "gaussianBump";
    case Fixture::Family::plane_wave: return "planeWave";
    case Fixture::Family::polynomial_bump: return "polynomialBump";
    case Fixture::Family::zero: return "zero";
  }
  return "zero";
}

// Length of the overlap of the node cell [x - h/2, x + h/2] (and its periodic
// images) with (a, b).
double overlap(double x, double h, double a, double b, double period) {
  double total = 0.0;
  for (int shift = -1; shift <= 1; ++shift) {
    const double c = x + shift * period;
    total += std::max(0.0, std::min(c + h / 2, b) - std::max(c - h / 2, a));
  }
  return total;
}

double sum_sq(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

}  // namespace

void GridSpec::validate() const {
  if (resolution < 16 || (resolution & (resolution - 1)) != 0)
    throw InvalidArgument("grid resolution must be a power of two >= 16, got " + std::to_string(resolution));
  if (cell.dimension() == 0) throw InvalidArgument("grid cell has dimension 0");
}

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (std::size_t j = 0; j < dimension(); ++j) total *= static_cast<std::size_t>(resolution);
  return total;
}

std::vector<double> GridSpec::node(std::size_t flat) const {
  std::vector<int> idx(dimension());
  unflatten(flat, resolution, idx);
  std::vector<double> x(dimension());
  for (std::size_t j = 0; j < dimension(); ++j) x[j] = cell.lo()[j] + idx[j] * spacing(j);
  return x;
}

GridSpec default_grid(const BoxDomain& omega, int resolution, double inflation) {
  if (!(inflation > 1.0)) throw InvalidArgument("cell inflation must exceed 1");
  GridSpec g{omega.inflated(inflation), resolution};
  g.validate();
  return g;
}

GridFunction::GridFunction(GridSpec spec, std::vector<Complex> samples)
    : spec_(std::move(spec)), samples_(std::move(samples)) {
  spec_.validate();
  if (samples_.size() != spec_.size()) throw DimensionMismatch("sample count does not match the grid");
}

GridFunction GridFunction::zeros(const GridSpec& spec) {
  return GridFunction(spec, std::vector<Complex>(spec.size(), Complex(0.0)));
}

GridFunction GridFunction::operator*(Complex scale) const {
  std::vector<Complex> out(samples_);
  for (auto& c : out) c *= scale;
  return GridFunction(spec_, std::move(out));
}

std::vector<Complex> fft_forward(const GridSpec& spec, const std::vector<Complex>& values) {
  return transform(spec, values, FFTW_FORWARD);
}

std::vector<Complex> fft_inverse(const GridSpec& spec, const std::vector<Complex>& values) {
  auto out = transform(spec, values, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(spec.size());
  for (auto& c : out) c *= scale;
  return out;
}

Fixture Fixture::gaussian_bump(std::vector<double> center, double width, std::vector<int> modulation) {
  if (!(width > 0.0)) throw InvalidArgument("gaussianBump width must be positive");
  Fixture f;
  f.family = Family::gaussian_bump;
  f.center = std::move(center);
  f.width = width;
  f.frequency = std::move(modulation);
  return f;
}

Fixture Fixture::plane_wave(std::vector<int> k) {
  if (k.empty()) throw InvalidArgument("planeWave needs a frequency vector");
  Fixture f;
  f.family = Family::plane_wave;
  f.frequency = std::move(k);
  return f;
}

Fixture Fixture::polynomial_bump(std::vector<double> center, double width) {
  if (!(width > 0.0)) throw InvalidArgument("polynomialBump width must be positive");
  Fixture f;
  f.family = Family::polynomial_bump;
  f.center = std::move(center);
  f.width = width;
  return f;
}

Fixture Fixture::zero_function() { return Fixture{}; }

std::string Fixture::id() const {
  std::ostringstream os;
  os << family_name(family);
  if (family == Family::zero) return os.str();
  os << "(";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ",";
    first = false;
  };
  if (family != Family::plane_wave) {
    sep();
    os << "center=[";
    for (std::size_t j = 0; j < center.size(); ++j) os << (j ? " " : "") << center[j];
    os << "]";
    sep();
    os << "width=" << width;
  }
  if (!frequency.empty()) {
    sep();
    os << "k=[";
    for (std::size_t j = 0; j < frequency.size(); ++j) os << (j ? " " : "") << frequency[j];
    os << "]";
  }
  os << ")";
  return os.str();
}

double cell_cutoff(const GridSpec& spec, const std::vector<double>& x) {
  const auto mid = spec.cell.center();
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) v *= psi((x[j] - mid[j]) / (spec.cell.side(j) / 2));
  return v;
}

GridFunction sample(const Fixture& fixture, const GridSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dimension();
  if (fixture.family == Fixture::Family::zero) return GridFunction::zeros(spec);
  if (!fixture.frequency.empty() && fixture.frequency.size() != n)
    throw DimensionMismatch("fixture frequency has the wrong length");
  std::vector<double> center = fixture.center.empty() ? spec.cell.center() : fixture.center;
  if (fixture.family != Fixture::Family::plane_wave && center.size() != n)
    throw DimensionMismatch("fixture center has the wrong length");

  std::vector<double> ktilde(n, 0.0);
  for (std::size_t j = 0; j < fixture.frequency.size(); ++j)
    ktilde[j] = spec.frequency(j, fixture.frequency[j]);

  std::vector<Complex> out(spec.size());
  const double w2 = fixture.width * fixture.width;
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto x = spec.node(f);
    double phase = 0.0;
    for (std::size_t j = 0; j < n; ++j) phase += ktilde[j] * x[j];
    const Complex wave = std::polar(1.0, phase);
    if (fixture.family == Fixture::Family::plane_wave) {
      out[f] = wave;
      continue;
    }
    double r2 = 0.0;
    double lin = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      r2 += (x[j] - center[j]) * (x[j] - center[j]);
      lin += (x[j] - center[j]) / fixture.width;
    }
    double v = std::exp(-r2 / (2 * w2)) * cell_cutoff(spec, x);
    if (fixture.family == Fixture::Family::polynomial_bump) v *= lin;
    out[f] = v * wave;
  }
  return GridFunction(spec, std::move(out));
}

nlohmann::json to_json(const Fixture& f) {
  nlohmann::json j;
  j["family"] = family_name(f.family);
  if (f.family == Fixture::Family::gaussian_bump || f.family == Fixture::Family::polynomial_bump) {
    j["center"] = f.center;
    j["width"] = f.width;
  }
  if (!f.frequency.empty()) j["frequency"] = f.frequency;
  j["id"] = f.id();
  return j;
}

Fixture fixture_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("family") || !doc["family"].is_string())
    throw ParseError("fixture needs a string 'family'");
  const std::string family = doc["family"].get<std::string>();
  std::vector<double> center;
  if (doc.contains("center")) {
    if (!doc["center"].is_array()) throw ParseError("fixture 'center' must be an array");
    for (const auto& v : doc["center"]) {
      if (!v.is_number()) throw ParseError("fixture 'center' must hold numbers");
      center.push_back(v.get<double>());
    }
  }
  std::vector<int> freq;
  if (doc.contains("frequency")) {
    if (!doc["frequency"].is_array()) throw ParseError("fixture 'frequency' must be an array");
    for (const auto& v : doc["frequency"]) {
      if (!v.is_number()) throw ParseError("fixture 'frequency' must hold numbers");
      const double k = v.get<double>();
      if (k != std::round(k) || std::abs(k) > 1e6)
        throw InvalidArgument("frequency " + v.dump() + " is not an integer; the periodic cell admits only integer modes");
      freq.push_back(static_cast<int>(std::lround(k)));
    }
  }
  double width = 0.1;
  if (doc.contains("width")) {
    if (!doc["width"].is_number()) throw ParseError("fixture 'width' must be a number");
    width = doc["width"].get<double>();
  }
  if (family == "zero") return Fixture::zero_function();
  if (family == "planeWave") return Fixture::plane_wave(std::move(freq));
  if (family == "gaussianBump") return Fixture::gaussian_bump(std::move(center), width, std::move(freq));
  if (family == "polynomialBump") return Fixture::polynomial_bump(std::move(center), width);
  throw ParseError("unknown fixture family '" + family + "'");
}

nlohmann::json to_json(const GridSpec& g) {
  return {{"cell", {{"lo", g.cell.lo()}, {"hi", g.cell.hi()}}}, {"resolution", g.resolution}};
}

double spectral_tail(const GridSpec& spec, const std::vector<Complex>& spectrum) {
  const std::size_t n = spec.dimension();
  const int band = spec.resolution / 4;
  std::vector<int> idx(n);
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t f = 0; f < spectrum.size(); ++f) {
    const double e = std::norm(spectrum[f]);
    if (e == 0.0) continue;
    total += e;
    unflatten(f, spec.resolution, idx);
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(spec.signed_mode(idx[j])) > band) {
        tail += e;
        break;
      }
    }
  }
  return total > 0.0 ? std::sqrt(tail / total) : 0.0;
}

Applied apply_operator(const SymbolPolynomial& q, const GridFunction& u) {
  const auto& spec = u.spec();
  auto spectrum = symbol_times(spec, denoised(fft_forward(spec, u.samples())), q);
  const double tail = spectral_tail(spec, spectrum);
  return Applied{GridFunction(spec, fft_inverse(spec, spectrum)), tail};
}

Applied apply_operator(const VariableOperator& p, const GridFunction& u) {
  const auto& spec = u.spec();
  if (p.dimension() != spec.dimension()) throw DimensionMismatch("operator and grid dimensions differ");
  const auto spectrum = denoised(fft_forward(spec, u.samples()));
  std::vector<Complex> acc(spec.size(), Complex(0.0));
  std::vector<std::vector<double>> nodes(spec.size());
  for (std::size_t f = 0; f < nodes.size(); ++f) nodes[f] = spec.node(f);
  for (const auto& [alpha, coeff] : p.coefficients()) {
    const auto d = fft_inverse(spec, symbol_times(spec, spectrum, SymbolPolynomial::monomial(alpha)));
    for (std::size_t f = 0; f < acc.size(); ++f) acc[f] += eval(coeff, nodes[f]) * d[f];
  }
  const double tail = spectral_tail(spec, fft_forward(spec, acc));
  return Applied{GridFunction(spec, std::move(acc)), tail};
}

double cell_l2(const GridFunction& u) {
  double vol = 1.0;
  for (std::size_t j = 0; j < u.spec().dimension(); ++j) vol *= u.spec().spacing(j);
  return std::sqrt(vol * sum_sq(u.samples()));
}

double restricted_l2(const GridFunction& u, const BoxDomain& omega, double delta) {
  const auto& spec = u.spec();
  const std::size_t n = spec.dimension();
  if (omega.dimension() != n) throw DimensionMismatch("region and grid dimensions differ");
  if (delta < 0.0) throw InvalidArgument("delta must be >= 0");
  const double slack = 1e-12 * std::max(1.0, spec.cell.diameter());
  if (!spec.cell.contains_closure(omega.lo(), slack) || !spec.cell.contains_closure(omega.hi(), slack))
    throw InvalidArgument("region is not inside the periodic cell");
  const auto shrunk = omega.shrunk(delta);
  if (!shrunk) return 0.0;

  std::vector<std::vector<double>> weights(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double h = spec.spacing(j);
    weights[j].resize(static_cast<std::size_t>(spec.resolution));
    for (int k = 0; k < spec.resolution; ++k) {
      const double x = spec.cell.lo()[j] + k * h;
      weights[j][k] = overlap(x, h, shrunk->lo()[j], shrunk->hi()[j], spec.cell.side(j));
    }
  }
  std::vector<int> idx(n);
  double s = 0.0;
  for (std::size_t f = 0; f < u.size(); ++f) {
    const double e = std::norm(u[f]);
    if (e == 0.0) continue;
    unflatten(f, spec.resolution, idx);
    double w = 1.0;
    for (std::size_t j = 0; j < n && w > 0.0; ++j) w *= weights[j][idx[j]];
    s += w * e;
  }
  return std::sqrt(s);
}

double shrink_norm(const GridFunction& u, const BoxDomain& omega, double mu, double t, int grid_points) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(t > 0.0)) throw InvalidArgument("t must be positive");
  if (grid_points < 4) throw InvalidArgument("shrink_norm needs at least 4 grid points");
  const int geometric = grid_points / 2;
  const int uniform = grid_points - geometric;
  std::vector<double> deltas;
  for (int i = 0; i < geometric; ++i)
    deltas.push_back(t * std::pow(10.0, -6.0 * (1.0 - static_cast<double>(i) / (geometric - 1))));
  for (int i = 1; i <= uniform; ++i) deltas.push_back(t * i / uniform);
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());

  auto f = [&](double d) { return std::pow(d, mu) * restricted_l2(u, omega, d); };
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double v = f(deltas[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best_value <= 0.0) return 0.0;

  double a = best > 0 ? deltas[best - 1] : 0.0;
  double b = best + 1 < deltas.size() ? deltas[best + 1] : t;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max({best_value, fc, fd});
}

double weighted_norm(const GridFunction& u, const WeightFunction& h, double p) {
  const auto& spec = u.spec();
  const std::size_t n = spec.dimension();
  if (h.dimension() != n) throw DimensionMismatch("weight and grid dimensions differ");
  if (!(p >= 1.0)) throw InvalidArgument("p must lie in [1, inf]");
  const auto spectrum = fft_forward(spec, u.samples());
  // u^(xi) ~ (2 pi)^{-n/2} prod h_j sum_k u_k e^{-i xi x_k}; lattice cell prod 2 pi / L_j.
  double amp = std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(n));
  double dxi = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    amp *= spec.spacing(j);
    dxi *= 2.0 * std::numbers::pi / spec.cell.side(j);
  }
  const auto axes = frequency_axes(spec);
  std::vector<int> idx(n);
  std::vector<double> xi(n);
  const bool sup = std::isinf(p);
  double acc = 0.0;
  for (std::size_t f = 0; f < spectrum.size(); ++f) {
    const double a = std::abs(spectrum[f]);
    if (a == 0.0) continue;
    unflatten(f, spec.resolution, idx);
    for (std::size_t j = 0; j < n; ++j) xi[j] = axes[j][idx[j]];
    const double v = h(xi) * amp * a;
    if (sup)
      acc = std::max(acc, v);
    else
      acc += std::pow(v, p);
  }
  if (sup) return acc;
  return std::pow(acc * dxi, 1.0 / p);
}

namespace {

NormSweep make_sweep(std::string kind, const BoxDomain& region, double delta) {
  NormSweep s;
  s.kind = std::move(kind);
  s.region = {{"box", to_json(region)}, {"delta", delta}};
  return s;
}

void push(NormSweep& s, int label, double norm, double tail, bool force_flag = false) {
  s.labels.push_back(label);
  s.norms.push_back(norm);
  s.tails.push_back(tail);
  s.flagged.push_back(force_flag || tail > kSpectralTailLimit);
}

}  // namespace

NormSweep iterate_norms(const SymbolPolynomial& q, const GridFunction& u, int lmax, const BoxDomain& region,
                        double delta) {
  if (lmax < 0) throw InvalidArgument("lmax must be >= 0");
  const auto& spec = u.spec();
  const auto spectrum = denoised(fft_forward(spec, u.samples()));
  NormSweep s = make_sweep("iterate", region, delta);
  for (int l = 0; l <= lmax; ++l) {
    const auto v = symbol_times(spec, spectrum, pow(q, static_cast<unsigned>(l)));
    push(s, l, restricted_l2(GridFunction(spec, fft_inverse(spec, v)), region, delta), spectral_tail(spec, v));
  }
  return s;
}

NormSweep iterate_norms(const VariableOperator& p, const GridFunction& u, int lmax, const BoxDomain& region,
                        double delta) {
  if (lmax < 0) throw InvalidArgument("lmax must be >= 0");
  const auto& spec = u.spec();
  NormSweep s = make_sweep("iterate", region, delta);
  GridFunction v = u;
  bool flagged = false;
  for (int l = 0; l <= lmax; ++l) {
    double tail;
    if (l == 0) {
      tail = spectral_tail(spec, fft_forward(spec, v.samples()));
    } else {
      auto applied = apply_operator(p, v);
      tail = applied.tail;
      v = std::move(applied.value);
    }
    flagged = flagged || tail > kSpectralTailLimit;
    push(s, l, restricted_l2(v, region, delta), tail, flagged);
  }
  return s;
}

NormSweep derivative_norms(const GridFunction& u, int amax, const BoxDomain& region, double delta) {
  if (amax < 0) throw InvalidArgument("amax must be >= 0");
  const auto& spec = u.spec();
  const auto spectrum = denoised(fft_forward(spec, u.samples()));
  NormSweep s = make_sweep("derivative", region, delta);
  for (int a = 0; a <= amax; ++a) {
    double best = 0.0;
    double worst_tail = 0.0;
    for (const auto& alpha : multi_indices_of_order(spec.dimension(), a)) {
      const auto v = symbol_times(spec, spectrum, SymbolPolynomial::monomial(alpha));
      best = std::max(best, restricted_l2(GridFunction(spec, fft_inverse(spec, v)), region, delta));
      worst_tail = std::max(worst_tail, spectral_tail(spec, v));
    }
    push(s, a, best, worst_tail);
  }
  return s;
}

nlohmann::json to_json(const NormSweep& s) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < s.labels.size(); ++i)
    entries.push_back({{"label", s.labels[i]}, {"norm", s.norms[i]}, {"tail", s.tails[i]}, {"flagged", static_cast<bool>(s.flagged[i])}});
  return {{"kind", s.kind}, {"region", s.region}, {"entries", entries}};
}

void write_csv(const std::vector<std::pair<std::string, NormSweep>>& sweeps, std::ostream& out) {
  out << "fixture,kind,label,norm,tail,flagged\n";
  out << std::setprecision(17);
  for (const auto& [fixture, s] : sweeps)
    for (std::size_t i = 0; i < s.labels.size(); ++i)
      out << '"' << fixture << '"' << ',' << s.kind << ',' << s.labels[i] << ',' << s.norms[i] << ',' << s.tails[i] << ','
          << (s.flagged[i] ? 1 : 0) << '\n';
}

void write_csv(const NormSweep& s, std::ostream& out) { write_csv({{"", s}}, out); }

}  // namespace roumieu
