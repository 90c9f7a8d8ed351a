#include "lptx/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lptx {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Plan cache shared by all fields of a given size. FFTW planning is not
// thread safe; execution through fftw_execute_dft on distinct arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::scoped_lock lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(std::size_t(n) * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_2d(n, n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void require_finite(const Field& f, const char* op) {
  if (!f.finite()) throw std::invalid_argument(std::string(op) + ": field has non-finite samples");
}

void require_same_grid(const Field& a, const Field& b, const char* op) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

Field run_transform(const Field& f, int sign, double scale, bool out_spectral) {
  require_finite(f, "transform");
  Field out(f.grid(), out_spectral);
  fftw_plan plan = PlanCache::instance().get(f.n(), sign);
  auto* in = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(f.data().data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data().data());
  fftw_execute_dft(plan, in, dst);
  out *= scale;
  return out;
}

}  // namespace

int Grid::band_max() const {
  // log2(n/2) - 1; bands touching the Nyquist shell are excluded.
  int k = -1;
  for (int shell = n / 2; shell > 1; shell /= 2) ++k;
  return k;
}

double Grid::freq_norm(int i, int j) const {
  double a = freq(i), b = freq(j);
  return std::sqrt(a * a + b * b);
}

double Grid::wrap(double dx) const {
  dx = std::fmod(dx, length);
  if (dx > 0.5 * length) dx -= length;
  if (dx < -0.5 * length) dx += length;
  return dx;
}

Grid make_grid(int n_points, double domain_length) {
  if (!power_of_two(n_points) || n_points < 8)
    throw std::invalid_argument("make_grid: n_points must be a power of two >= 8");
  if (!(domain_length > 0.0)) throw std::invalid_argument("make_grid: domain_length must be positive");
  return Grid{n_points, domain_length};
}

Field::Field(const Grid& grid, bool spectral)
    : grid_(grid), spectral_(spectral), v_(std::size_t(grid.n) * grid.n) {}

Field& Field::operator+=(const Field& o) {
  require_same_grid(*this, o, "Field::operator+=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(*this, o, "Field::operator-=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& z : v_) z *= s;
  return *this;
}

Field& Field::operator*=(std::complex<double> s) {
  for (auto& z : v_) z *= s;
  return *this;
}

double Field::max_abs() const {
  double m = 0.0;
  for (const auto& z : v_) m = std::max(m, std::abs(z));
  return m;
}

bool Field::finite() const {
  for (const auto& z : v_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Field pointwise_multiply(const Field& a, const Field& b) {
  require_same_grid(a, b, "pointwise_multiply");
  if (a.spectral() || b.spectral())
    throw std::invalid_argument("pointwise_multiply: expects physical-space fields");
  Field out(a.grid(), false);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Field forward_transform(const Field& f) {
  if (f.spectral()) throw std::invalid_argument("forward_transform: field already spectral");
  // hat f = L/n^2 * DFT(f): unitary w.r.t. the Riemann-sum L^2 norm.
  double scale = f.grid().length / (double(f.n()) * f.n());
  return run_transform(f, FFTW_FORWARD, scale, true);
}

Field inverse_transform(const Field& f) {
  if (!f.spectral()) throw std::invalid_argument("inverse_transform: field is not spectral");
  double scale = 1.0 / f.grid().length;
  return run_transform(f, FFTW_BACKWARD, scale, false);
}

Field to_spectral(const Field& f) { return f.spectral() ? f : forward_transform(f); }
Field to_physical(const Field& f) { return f.spectral() ? inverse_transform(f) : f; }

Field real_part(Field f) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::complex<double>(f[i].real(), 0.0);
  return f;
}

namespace {

constexpr char kMagic[8] = {'L', 'P', 'T', 'X', 'F', '1', 0, 0};

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

}  // namespace

void write_field_record(std::ostream& os, const Field& f) {
  os.write(kMagic, 8);
  put_u32(os, std::uint32_t(f.n()));
  put_u32(os, f.spectral() ? 1u : 0u);
  // Interleaved (re, im) doubles; std::complex<double> has exactly that layout.
  os.write(reinterpret_cast<const char*>(f.data().data()),
           std::streamsize(f.size() * sizeof(std::complex<double>)));
}

Field read_field_record(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 6) != 0)
    throw std::runtime_error("field dump: bad magic");
  std::uint32_t n = get_u32(is);
  std::uint32_t flags = get_u32(is);
  Grid g = make_grid(int(n));
  Field f(g, (flags & 1u) != 0);
  is.read(reinterpret_cast<char*>(f.data().data()), std::streamsize(f.size() * sizeof(std::complex<double>)));
  if (!is) throw std::runtime_error("field dump: truncated payload");
  return f;
}

void save_field(const Field& f, const std::filesystem::path& file) {
  require_finite(f, "save_field");
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + file.string());
  write_field_record(os, f);
  if (!os) throw std::runtime_error("save_field: write failure on " + file.string());
}

Field load_field(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + file.string());
  Field f = read_field_record(is);
  require_finite(f, "load_field");
  return f;
}

}  // namespace lptx
