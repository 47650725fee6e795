#pragma once

// Periodic spectral grids. A GridFunction samples a function on N^n uniform
// nodes of a periodic cell; D^alpha acts as multiplication by xi^alpha on the
// discrete Fourier side (D_j = -i d/dx_j).

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "roumieu/box.hpp"
#include "roumieu/symbols.hpp"
#include "roumieu/weights.hpp"

namespace roumieu {

struct GridSpec {
  BoxDomain cell;
  int resolution = 64;

  /// Throws InvalidArgument unless resolution is a power of two >= 16.
  void validate() const;
  std::size_t dimension() const noexcept { return cell.dimension(); }
  std::size_t size() const;
  double spacing(std::size_t axis) const { return cell.side(axis) / resolution; }
  /// Node coordinates of a flat (row-major, last axis fastest) index.
  std::vector<double> node(std::size_t flat) const;
  /// Angular frequency 2*pi*k/L of integer mode k on an axis.
  double frequency(std::size_t axis, int k) const { return 2.0 * 3.14159265358979323846 * k / cell.side(axis); }
  /// Signed mode number of an FFT index: k for k < N/2, k - N otherwise.
  int signed_mode(int index) const { return index < resolution / 2 ? index : index - resolution; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Periodic cell = omega scaled by `inflation` about its center.
GridSpec default_grid(const BoxDomain& omega, int resolution = 64, double inflation = 1.5);

class GridFunction {
 public:
  GridFunction(GridSpec spec, std::vector<Complex> samples);
  static GridFunction zeros(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }

  GridFunction operator*(Complex scale) const;

 private:
  GridSpec spec_;
  std::vector<Complex> samples_;
};

/// Unnormalized forward DFT (sum u_k e^{-2 pi i k m / N}) over all axes.
std::vector<Complex> fft_forward(const GridSpec& spec, const std::vector<Complex>& values);
/// Inverse of fft_forward, including the 1/N^n factor.
std::vector<Complex> fft_inverse(const GridSpec& spec, const std::vector<Complex>& values);

/// Built-in fixture families.
struct Fixture {
  enum class Family { gaussian_bump, plane_wave, polynomial_bump, zero };

  Family family = Family::zero;
  std::vector<double> center;
  double width = 0.1;
  /// Integer mode vector: the plane-wave frequency, or an optional modulation
  /// of the Gaussian bump.
  std::vector<int> frequency;

  static Fixture gaussian_bump(std::vector<double> center, double width, std::vector<int> modulation = {});
  static Fixture plane_wave(std::vector<int> k);
  static Fixture polynomial_bump(std::vector<double> center, double width);
  static Fixture zero_function();

  std::string id() const;
};

/// Smooth cutoff prod_j exp(1 - 1/(1 - t_j^2)), t_j the node offset from the
/// cell center in units of half the side; vanishes with all derivatives at
/// the cell boundary.
double cell_cutoff(const GridSpec& spec, const std::vector<double>& x);

GridFunction sample(const Fixture& fixture, const GridSpec& spec);

nlohmann::json to_json(const Fixture& f);
Fixture fixture_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const GridSpec& g);

/// Energy share outside the inner half of the mode range, as a norm ratio.
double spectral_tail(const GridSpec& spec, const std::vector<Complex>& spectrum);
inline constexpr double kSpectralTailLimit = 1e-6;
/// Spectral coefficients below this share of the peak are treated as roundoff
/// and zeroed before a symbol is applied.
inline constexpr double kSpectralNoiseFloor = 1e-14;

struct Applied {
  GridFunction value;
  double tail = 0.0;
  bool resolved() const noexcept { return tail <= kSpectralTailLimit; }
};

Applied apply_operator(const SymbolPolynomial& q, const GridFunction& u);
Applied apply_operator(const VariableOperator& p, const GridFunction& u);

/// sqrt(h^n sum |u|^2) over the whole cell.
double cell_l2(const GridFunction& u);
/// (integral over omega_delta of |u|^2)^{1/2}: nodes weighted by the overlap of
/// their cells with omega_delta. Zero once omega_delta is empty.
double restricted_l2(const GridFunction& u, const BoxDomain& omega, double delta);
/// sup_{0 < delta <= t} delta^mu ||u||_{L2(omega_delta)} on a geometric+uniform
/// delta grid refined by golden section around the best grid point.
double shrink_norm(const GridFunction& u, const BoxDomain& omega, double mu, double t,
                   int grid_points = 200);
/// (integral |h(xi) u^(xi)|^p dxi)^{1/p} with the unitary transform; p = inf gives the max.
double weighted_norm(const GridFunction& u, const WeightFunction& h, double p);

struct NormSweep {
  std::string kind;  // "iterate" or "derivative"
  std::vector<int> labels;
  std::vector<double> norms;
  std::vector<bool> flagged;
  std::vector<double> tails;
  nlohmann::json region;
};

/// norms[l] = ||A^l u||_{L2(region_delta)}, l = 0..lmax. Constant coefficients use
/// pow(Q, l) in one spectral step.
NormSweep iterate_norms(const SymbolPolynomial& q, const GridFunction& u, int lmax,
                        const BoxDomain& region, double delta);
NormSweep iterate_norms(const VariableOperator& p, const GridFunction& u, int lmax,
                        const BoxDomain& region, double delta);
/// norms[a] = max_{|alpha| = a} ||D^alpha u||_{L2(region_delta)}.
NormSweep derivative_norms(const GridFunction& u, int amax, const BoxDomain& region, double delta);

nlohmann::json to_json(const NormSweep& s);
/// Columns fixture,kind,label,norm,tail,flagged with a header row.
void write_csv(const NormSweep& s, std::ostream& out);
void write_csv(const std::vector<std::pair<std::string, NormSweep>>& sweeps, std::ostream& out);

}  // namespace roumieu
