#include "geomod/oracles.hpp"

#include <numeric>

namespace geomod {

namespace {

// cumulative integral over one uniform grid of 2m+1 values, O(h^4)
std::vector<Complex> cumulative_simpson(const std::vector<Complex>& f, double h, Complex start) {
  std::size_t n = f.size();
  std::vector<Complex> g(n, start);
  for (std::size_t i = 2; i < n; i += 2)
    g[i] = g[i - 2] + (h / 3.0) * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  for (std::size_t i = 1; i < n; i += 2) {
    if (i + 1 < n)
      g[i] = g[i - 1] + (h / 12.0) * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
    else
      g[i] = g[i - 1] + (h / 12.0) * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
  }
  return g;
}

}  // namespace

Signature simpson_path_signature(const std::vector<FormLetter>& alphabet, const Path& path,
                                 int order, std::size_t panels_per_segment) {
  std::vector<std::string> labels;
  for (const auto& w : alphabet) labels.push_back(w.label);
  Signature sig(labels, order);
  std::size_t nseg = path.nsegments();
  if (nseg == 0) return sig;

  const std::size_t pts = 2 * panels_per_segment + 1;
  std::size_t total = nseg * pts;  // grids per segment, joined at the seams
  std::vector<std::vector<Complex>> letter_vals(alphabet.size(), std::vector<Complex>(total));
  std::vector<double> hs(nseg);
  for (std::size_t s = 0; s < nseg; ++s) {
    Complex za = path.waypoints[s], zb = path.waypoints[s + 1];
    Complex zdot = zb - za;  // unit parameter per segment
    hs[s] = 1.0 / (pts - 1);
    for (std::size_t j = 0; j < pts; ++j) {
      double t = static_cast<double>(j) / (pts - 1);
      Complex z = za + t * zdot;
      for (std::size_t l = 0; l < alphabet.size(); ++l)
        letter_vals[l][s * pts + j] = pullback_integrand(alphabet[l], z, zdot, 1e-13);
    }
  }

  std::size_t L = alphabet.size();
  std::vector<std::vector<Complex>> prev(1, std::vector<Complex>(total, Complex(1.0)));
  for (int r = 1; r <= order; ++r) {
    std::vector<std::vector<Complex>> curr(prev.size() * L);
    for (std::size_t p = 0; p < prev.size(); ++p)
      for (std::size_t l = 0; l < L; ++l) {
        std::vector<Complex> integ(total);
        for (std::size_t j = 0; j < total; ++j) integ[j] = prev[p][j] * letter_vals[l][j];
        std::vector<Complex> cum(total);
        Complex acc = 0.0;
        for (std::size_t s = 0; s < nseg; ++s) {
          std::vector<Complex> seg(integ.begin() + s * pts, integ.begin() + (s + 1) * pts);
          auto g = cumulative_simpson(seg, hs[s], acc);
          std::copy(g.begin(), g.end(), cum.begin() + s * pts);
          acc = g.back();
        }
        curr[p * L + l] = std::move(cum);
      }
    auto& lvl = sig.levels()[r];
    for (std::size_t i = 0; i < curr.size(); ++i) lvl[i] = curr[i].back();
    prev = std::move(curr);
  }
  return sig;
}

long count_coset_rows_infty(const GroupPreset& preset, long c_bound) {
  long d_bound = std::max(c_bound, 1L);
  long count = 0;
  for (long c = 0; c <= c_bound; ++c) {
    long dlo = (c == 0) ? 1 : -d_bound;
    long dhi = (c == 0) ? 1 : d_bound;
    for (long d = dlo; d <= dhi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (preset.name == "gamma2") {
        if (c % 2 != 0 || ((d % 2) + 2) % 2 != 1) continue;
      } else if (preset.name == "gamma0_11") {
        if (c % 11 != 0) continue;
      } else {
        throw std::invalid_argument("count_coset_rows_infty: unknown preset");
      }
      ++count;
    }
  }
  return count;
}

}  // namespace geomod
