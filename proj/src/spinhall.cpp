#include "pshe/spinhall.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "pshe/errors.hpp"

namespace pshe {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner is not re-entrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

class Plan2d {
 public:
  Plan2d(int n, fftw_complex* in, fftw_complex* out) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~Plan2d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  Plan2d(const Plan2d&) = delete;
  Plan2d& operator=(const Plan2d&) = delete;

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

double axis_coordinate(int index, int n, double step) {
  return (index < n / 2 ? index : index - n) * step;
}

// Circular component of the reflected field for one input polarization:
// spectrum = (a + b*k_y) * G(k_x, k_y).
struct LinearSpectrum {
  cplx a;
  cplx b;
};

}  // namespace

ShiftResult transverse_shifts(const ReflectionPair& pair, double lambda_um,
                              double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw DomainError("theta must lie in (0, pi/2)");
  }
  const double re_abs = std::abs(pair.r_e);
  const double rm_abs = std::abs(pair.r_m);
  const double phase_diff = pair.phi_e() - pair.phi_m();
  const double cot = 1.0 / std::tan(theta);

  ShiftResult out;
  out.lambda_um = lambda_um;
  out.h_singular = rm_abs < kSingularReflection;
  out.v_singular = re_abs < kSingularReflection;
  out.delta_h_plus = -(1.0 + re_abs / rm_abs * std::cos(phase_diff)) * cot / kTwoPi;
  out.delta_v_plus = -(1.0 + rm_abs / re_abs * std::cos(-phase_diff)) * cot / kTwoPi;
  out.delta_h_minus = -out.delta_h_plus;
  out.delta_v_minus = -out.delta_v_plus;
  return out;
}

BeamSpec BeamSpec::with_waist_in_wavelengths(double lambda_um, double waist) {
  BeamSpec beam;
  beam.waist_um = waist * lambda_um;
  return beam;
}

void validate(const BeamSpec& beam) {
  if (!(beam.waist_um > 0.0) || !std::isfinite(beam.waist_um)) {
    throw ValidationError("waist_um", "beam waist must be positive and finite");
  }
  if (!(beam.extent >= kMinSpectrumExtent) || beam.samples < kMinSpectrumSamples) {
    std::ostringstream os;
    os << "angular spectrum under-resolved: need extent*w0 >= "
       << kMinSpectrumExtent << " and >= " << kMinSpectrumSamples
       << " samples per axis (got " << beam.extent << ", " << beam.samples << ")";
    throw ResolutionError(os.str());
  }
  // Real-space box is pi*N/extent waists wide; keep the beam away from the
  // periodic images.
  const double box_in_waists = std::numbers::pi * beam.samples / beam.extent;
  if (box_in_waists < 20.0) {
    throw ResolutionError("real-space window narrower than 20 beam waists; "
                          "increase samples or reduce extent");
  }
}

double spectrum_norm(const BeamSpec& beam) {
  validate(beam);
  const int n = beam.samples;
  const double w0 = beam.waist_um;
  const double dk = 2.0 * beam.extent / w0 / n;
  const double amp2 = w0 * w0 / kTwoPi;
  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (int ix = 0; ix < n; ++ix) {
    const double kx = (ix - n / 2) * dk;
    for (int iy = 0; iy < n; ++iy) {
      const double ky = (iy - n / 2) * dk;
      sum += amp2 * std::exp(-w0 * w0 * (kx * kx + ky * ky) / 2.0);
    }
  }
  return sum * dk * dk;
}

std::optional<CentroidShift> centroid_shift_oracle(const ReflectionPair& pair,
                                                   const Kinematics& kin,
                                                   const BeamSpec& beam) {
  validate(beam);
  if (std::abs(pair.r_e) < kSingularReflection ||
      std::abs(pair.r_m) < kSingularReflection) {
    return std::nullopt;
  }

  const int n = beam.samples;
  const double w0 = beam.waist_um;
  const double dk = 2.0 * beam.extent / w0 / n;
  const double dy = kTwoPi / (n * dk);
  const double amp = w0 / std::sqrt(kTwoPi);

  // Off-diagonal element of the reflection matrix per unit k_y.
  const cplx cross = (pair.r_m + pair.r_e) / std::tan(kin.theta()) / kin.k();
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  // h input: E_h = r_m G, E_v = -k_y*cross*G.  v input: E_h = k_y*cross*G,
  // E_v = r_e G.  sigma(+/-) = (E_h +/- i E_v)/sqrt(2).
  const LinearSpectrum h_plus{pair.r_m * inv_sqrt2, -kI * cross * inv_sqrt2};
  const LinearSpectrum h_minus{pair.r_m * inv_sqrt2, kI * cross * inv_sqrt2};
  const LinearSpectrum v_plus{kI * pair.r_e * inv_sqrt2, cross * inv_sqrt2};
  const LinearSpectrum v_minus{-kI * pair.r_e * inv_sqrt2, cross * inv_sqrt2};

  const std::size_t total = static_cast<std::size_t>(n) * n;
  FftwBuffer in = allocate(total);
  FftwBuffer out = allocate(total);
  // Forward kernel exp(-i k_y y): orientation of the reflected-frame y axis
  // that assigns the upper sign of the closed form to sigma(+).
  const Plan2d plan(n, in.get(), out.get());

  auto centroid = [&](const LinearSpectrum& s) {
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
      const double kx = (ix - n / 2) * dk;
      for (int iy = 0; iy < n; ++iy) {
        const double ky = (iy - n / 2) * dk;
        const double g = amp * std::exp(-w0 * w0 * (kx * kx + ky * ky) / 4.0);
        const cplx v = (s.a + s.b * ky) * g;
        const std::size_t idx = static_cast<std::size_t>(ix) * n + iy;
        in[idx][0] = v.real();
        in[idx][1] = v.imag();
      }
    }
    plan.execute();
    double weight = 0.0;
    double moment = 0.0;
#pragma omp parallel for reduction(+ : weight, moment) schedule(static)
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const std::size_t idx = static_cast<std::size_t>(ix) * n + iy;
        const double intensity = out[idx][0] * out[idx][0] + out[idx][1] * out[idx][1];
        weight += intensity;
        moment += intensity * axis_coordinate(iy, n, dy);
      }
    }
    return moment / weight / kin.lambda_um();
  };

  CentroidShift result;
  result.delta_h_plus = centroid(h_plus);
  result.delta_h_minus = centroid(h_minus);
  result.delta_v_plus = centroid(v_plus);
  result.delta_v_minus = centroid(v_minus);
  return result;
}

std::optional<CentroidShift> centroid_shift_oracle(const Stack& stack,
                                                   const Kinematics& kin,
                                                   const BeamSpec& beam) {
  return centroid_shift_oracle(reflection_pair(stack, kin), kin, beam);
}

}  // namespace pshe
