#include "mu/anneal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "mu/errors.hpp"
#include "mu/hubo.hpp"

namespace mu {

namespace {

// Dense view of a degree <= 2 polynomial for fast sweeps.
struct DenseQubo {
  int n = 0;
  double offset = 0.0;
  std::vector<double> linear;
  std::vector<std::vector<std::pair<int, double>>> neighbors;
};

DenseQubo densify(const QuboModel& q) {
  DenseQubo d;
  d.n = q.variable_count();
  d.offset = q.poly.constant();
  d.linear.assign(d.n, 0.0);
  d.neighbors.assign(d.n, {});
  for (const auto& [mono, c] : q.poly.terms()) {
    if (mono.size() == 1) {
      d.linear[q.var_map.at(BinaryVar{mono[0]})] += c;
    } else if (mono.size() == 2) {
      int i = q.var_map.at(BinaryVar{mono[0]});
      int j = q.var_map.at(BinaryVar{mono[1]});
      d.neighbors[i].push_back({j, c});
      d.neighbors[j].push_back({i, c});
    } else {
      throw Error("annealer requires a degree <= 2 polynomial");
    }
  }
  return d;
}

double exact_energy(const DenseQubo& d, const std::vector<std::uint8_t>& bits) {
  double e = d.offset;
  for (int i = 0; i < d.n; ++i) {
    if (!bits[i]) continue;
    e += d.linear[i];
    for (auto [j, w] : d.neighbors[i])
      if (j > i && bits[j]) e += w;
  }
  return e;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One-hot groups present in the model, torsion index -> dense var indices.
std::map<int, std::vector<int>> onehot_groups(const QuboModel& q) {
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < q.variable_count(); ++i) {
    BinaryVar v = q.index_to_var[i];
    if (!v.is_aux()) groups[v.torsion()].push_back(i);
  }
  return groups;
}

bool bits_feasible(const std::map<int, std::vector<int>>& groups,
                   const std::vector<std::uint8_t>& bits) {
  for (const auto& [torsion, vars] : groups) {
    int ones = 0;
    for (int i : vars) ones += bits[i];
    if (ones != 1) return false;
  }
  return true;
}

}  // namespace

std::pair<double, double> default_beta_range(const QuboModel& q) {
  DenseQubo d = densify(q);
  double max_delta = 0.0, min_delta = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d.n; ++i) {
    double reach = std::abs(d.linear[i]);
    double smallest = d.linear[i] != 0.0 ? std::abs(d.linear[i])
                                         : std::numeric_limits<double>::infinity();
    for (auto [j, w] : d.neighbors[i]) {
      reach += std::abs(w);
      smallest = std::min(smallest, std::abs(w));
    }
    max_delta = std::max(max_delta, reach);
    if (std::isfinite(smallest)) min_delta = std::min(min_delta, smallest);
  }
  if (max_delta == 0.0) max_delta = 1.0;
  if (!std::isfinite(min_delta) || min_delta == 0.0) min_delta = max_delta;
  return {std::log(2.0) / max_delta, std::log(100.0) / min_delta};
}

int SampleSet::feasible_count() const {
  int c = 0;
  for (const Sample& s : samples) c += s.feasible;
  return c;
}

Assignment SampleSet::assignment(const QuboModel& q, int sample) const {
  Assignment a;
  const Sample& s = samples[sample];
  for (int i = 0; i < q.variable_count(); ++i) a[q.index_to_var[i]] = s.bits[i] != 0;
  return a;
}

SampleSet simulated_anneal(const QuboModel& q, const AnnealParams& p) {
  const DenseQubo d = densify(q);
  const auto groups = onehot_groups(q);

  std::vector<double> betas(p.sweeps);
  const double ratio = p.sweeps > 1
                           ? std::pow(p.beta_end / p.beta_start, 1.0 / (p.sweeps - 1))
                           : 1.0;
  double beta = p.beta_start;
  for (int s = 0; s < p.sweeps; ++s, beta *= ratio) betas[s] = beta;

  SampleSet out;
  out.samples.reserve(p.reads);
  for (int read = 0; read < p.reads; ++read) {
    std::mt19937_64 rng(p.seed + static_cast<std::uint64_t>(read));
    std::vector<std::uint8_t> bits(d.n);
    for (auto& b : bits) b = rng() & 1;

    // Local fields h_i = dE of setting bit i with the rest fixed.
    std::vector<double> h = d.linear;
    for (int i = 0; i < d.n; ++i)
      if (bits[i])
        for (auto [j, w] : d.neighbors[i]) h[j] += w;

    for (int s = 0; s < p.sweeps; ++s) {
      const double b = betas[s];
      for (int i = 0; i < d.n; ++i) {
        const double delta = bits[i] ? -h[i] : h[i];
        if (delta > 0.0 && uniform01(rng) >= std::exp(-b * delta)) continue;
        const double sign = bits[i] ? -1.0 : 1.0;
        bits[i] ^= 1;
        for (auto [j, w] : d.neighbors[i]) h[j] += sign * w;
      }
    }

    Sample sample;
    sample.energy = exact_energy(d, bits);
    sample.feasible = bits_feasible(groups, bits);
    sample.bits = std::move(bits);
    out.samples.push_back(std::move(sample));
  }

  std::stable_sort(out.samples.begin(), out.samples.end(),
                   [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
  return out;
}

std::pair<Assignment, double> brute_force(const BinaryPolynomial& p) {
  const std::vector<BinaryVar> vars = p.variables();
  const int n = static_cast<int>(vars.size());
  if (n > 26)
    throw TooManyVariables("brute force caps at 26 variables, got " + std::to_string(n));

  // Per-variable incidence for incremental (Gray code) evaluation.
  std::unordered_map<std::uint32_t, int> bit_of;
  for (int i = 0; i < n; ++i) bit_of[vars[i].code] = i;
  std::vector<std::vector<std::pair<std::uint64_t, double>>> touching(n);
  for (const auto& [mono, c] : p.terms()) {
    std::uint64_t mask = 0;
    for (std::uint32_t code : mono) mask |= 1ull << bit_of[code];
    for (std::uint32_t code : mono) {
      int b = bit_of[code];
      touching[b].push_back({mask & ~(1ull << b), c});
    }
  }

  std::uint64_t cur = 0, best_state = 0;
  double energy = p.constant();
  double best = energy;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int b = std::countr_zero(t);
    double delta = 0.0;
    for (const auto& [others, c] : touching[b])
      if ((cur & others) == others) delta += c;
    const bool now_set = !(cur >> b & 1);
    energy += now_set ? delta : -delta;
    cur ^= 1ull << b;
    if (energy < best || (energy == best && cur < best_state)) {
      best = energy;
      best_state = cur;
    }
  }

  Assignment a;
  for (int i = 0; i < n; ++i) a[vars[i]] = (best_state >> i) & 1;
  return {a, best};
}

DecodeResult decode(const Assignment& a, int n, int d) {
  DecodeResult out;
  TorsionAssignment theta;
  theta.d = d;
  for (int i = 1; i <= n; ++i) {
    int ones = 0, chosen = 0;
    for (int k = 1; k <= d; ++k) {
      auto it = a.find(BinaryVar::onehot(i, k));
      if (it == a.end())
        throw UnboundVariable("assignment does not bind " +
                              BinaryVar::onehot(i, k).token());
      if (it->second) {
        ++ones;
        chosen = k;
      }
    }
    if (ones != 1)
      out.violating_torsions.push_back(i);
    else
      theta.angle_index.push_back(chosen);
  }
  if (out.violating_torsions.empty()) out.theta = std::move(theta);
  return out;
}

UnfoldResult select_best(const SampleSet& samples, const QuboModel& q, int k,
                         const Molecule& m, const TorsionGraph& g,
                         const AngleTable& table) {
  const int n = g.torsion_count();
  const auto full = all_atoms(m);
  const double initial =
      objective_volume(m, g, TorsionAssignment::folded(n, table.d), table, full);

  UnfoldResult best;
  bool found = false;
  int used = 0;
  for (size_t s = 0; s < samples.samples.size() && used < k; ++s) {
    if (!samples.samples[s].feasible) continue;
    DecodeResult dec = decode(samples.assignment(q, s), n, table.d);
    if (!dec.feasible()) continue;
    ++used;
    const double final_volume = objective_volume(m, g, *dec.theta, table, full);
    if (!found || final_volume > best.volume_final) {
      found = true;
      best.theta = *dec.theta;
      best.volume_initial = initial;
      best.volume_final = final_volume;
      best.gain_percent = volume_gain_percent(initial, final_volume);
      best.energy = samples.samples[s].energy;
    }
  }
  if (!found) throw NoFeasibleSample();
  best.feasible_count = samples.feasible_count();
  return best;
}

std::string format_samples_jsonl(const SampleSet& s) {
  std::string out;
  char buf[64];
  for (const Sample& sample : s.samples) {
    out += "{\"assignment\": \"";
    for (std::uint8_t b : sample.bits) out += b ? '1' : '0';
    out += "\", \"energy\": ";
    std::snprintf(buf, sizeof buf, "%.17g", sample.energy);
    out += buf;
    out += ", \"feasible\": ";
    out += sample.feasible ? "true" : "false";
    out += "}\n";
  }
  return out;
}

}  // namespace mu
