#include "parabasin/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

namespace parabasin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClosureTolerance = 1e-8;

// Lift of z0 used for every distance evaluation.
DomainPoint base_point(const TheoremParams& p) {
  return LiftedPoint{p.epsilon, p.sector_low + p.theta_star};
}

ModelDomain comparison_domain_for(const ParabolicMap& f, double sector_low,
                                  double theta0) {
  const int m = f.m();
  if (!f.has_higher_terms()) {
    if (m == 1) {
      const double turns = sector_low / kTwoPi;
      if (std::abs(turns - std::round(turns)) < 1e-15) return SlitPlane{};
      return Sector{sector_low, sector_low + kTwoPi};
    }
    return Sector{sector_low, sector_low + kTwoPi / m};
  }
  if (m == 1) return DoubleSector{sector_low - theta0, sector_low + kTwoPi + theta0};
  return Sector{sector_low - theta0, sector_low + kTwoPi / m + theta0};
}

std::uint64_t cell_key(long long i, long long j) {
  return static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL ^
         static_cast<std::uint64_t>(j);
}

}  // namespace

TheoremParams choose_parameters(const ParabolicMap& f, double C, int direction) {
  if (!(C > 0.0) || !std::isfinite(C)) {
    throw Error(ErrorKind::InvalidArgument, "choose_parameters: C must be positive");
  }
  if (direction < 0 || direction >= f.m()) {
    throw Error(ErrorKind::InvalidArgument, "choose_parameters: bad direction index");
  }
  TheoremParams p;
  p.C = C;
  p.m = f.m();
  p.direction = direction;
  const double cap = 1.0 / (2.0 * C * std::exp(C));
  p.theta0 = 0.5 * std::min(cap, kPi / 6.0);
  try {
    p.construction = construct_pacman(f, p.theta0);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConstructionFailed, e.what());
  }
  p.epsilon = p.construction.R0_prime * std::exp(-2.0 * C / p.m);
  p.theta_star = std::min(1.5 * p.theta0, 0.9 * std::asin(std::min(1.0, cap)));
  p.sector_low = std::arg(f.attraction()[direction]) - kPi / p.m;
  p.z0 = std::polar(p.epsilon, p.sector_low + p.theta_star);
  p.z0_normalized = std::polar(1.0, p.theta_star);
  p.comparison_domain = comparison_domain_for(f, p.sector_low, p.theta0);
  p.comparison_contains_basin = !f.has_higher_terms();

  const double probe = angular_range(p.comparison_domain).first;
  try {
    const double clearance =
        kobayashi_disk_clearance(p.comparison_domain, base_point(p), C, probe);
    p.theta0_prime = clearance < p.theta0 ? clearance : 0.5 * p.theta0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoClearance) throw;
    p.theta0_prime = 0.0;
  }
  return p;
}

std::vector<DistanceBound> case_bounds(const TheoremParams& params,
                                       const DomainPoint& q_tilde) {
  const ModelDomain& domain = params.comparison_domain;
  const DomainPoint z0 = base_point(params);
  std::vector<DistanceBound> out;
  const auto& c = params.construction;
  const double r = std::abs(q_tilde.z);
  if (r >= c.R0_prime && params.epsilon < c.R0_prime) {
    out.push_back(bound_case1(params.epsilon, c.R0_prime, params.m));
  }
  const double ray = params.sector_low + kPi / (2.0 * params.m);
  if (!(params.sector_low + params.theta_star < ray)) return out;

  // Walk the geodesic from z0 until it meets the ray or leaves the band
  // Im z0~ e^{-C} < Im < Im z0~ e^C, whichever happens first.
  const double im0 = params.z0_normalized.imag();
  const double band = std::exp(params.C);
  auto arg_of = [&](const DomainPoint& p) {
    return p.theta ? *p.theta : lifts(domain, p.z).front();
  };
  auto normalized = [&](const DomainPoint& p) {
    return std::polar(std::abs(p.z) / params.epsilon, arg_of(p) - params.sector_low);
  };
  enum class Event { None, Crossed, LeftBand };
  auto event_at = [&](double t) {
    const DomainPoint p = geodesic_sample(domain, z0, q_tilde, t).point;
    if (arg_of(p) >= ray) return Event::Crossed;
    const double im = normalized(p).imag();
    if (!(im > im0 / band && im < im0 * band)) return Event::LeftBand;
    return Event::None;
  };
  constexpr int kGrid = 1024;
  for (int i = 1; i <= kGrid; ++i) {
    double hi = static_cast<double>(i) / kGrid;
    const Event e = event_at(hi);
    if (e == Event::None) continue;
    double lo = static_cast<double>(i - 1) / kGrid;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (event_at(mid) == Event::None ? lo : hi) = mid;
    }
    if (event_at(hi) == Event::LeftBand) {
      // Last point still inside the band: the vertical cost up to it is certified.
      const Complex inside =
          normalized(geodesic_sample(domain, z0, q_tilde, lo).point);
      out.push_back(bound_case2(params.z0_normalized, inside, params.m,
                                {0.0, kPi / (2.0 * params.m)}));
    } else if (params.z0_normalized.real() > 0.5) {
      out.push_back(bound_case2_horizontal(params.z0_normalized, params.C));
    }
    break;
  }
  return out;
}

PairCertificate certify_pair(const TheoremParams& params, Complex q_tilde) {
  const ModelDomain& domain = params.comparison_domain;
  const auto candidates = lifts(domain, q_tilde);
  if (candidates.empty()) {
    throw Error(ErrorKind::OutsideComparisonDomain,
                "certify_pair: point outside the comparison domain");
  }
  const DomainPoint z0 = base_point(params);
  PairCertificate cert;
  cert.bound = {std::numeric_limits<double>::infinity(), BoundKind::LowerBound,
                BoundMethod::Monotonicity, std::nullopt};
  double best_theta = candidates.front();
  for (double theta : candidates) {
    const double d =
        distance_exact(domain, z0, LiftedPoint{std::abs(q_tilde), theta}).value;
    if (d < cert.bound.value) {
      cert.bound.value = d;
      best_theta = theta;
    }
  }
  if (params.comparison_contains_basin) {
    cert.case_bounds = case_bounds(params, LiftedPoint{std::abs(q_tilde), best_theta});
  }
  return cert;
}

TheoremCertificate verify_theorem(const ParabolicMap& f, double C, Complex q,
                                  int k_max, int l_max, int direction,
                                  const VerifyOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  TheoremCertificate cert;
  cert.params = choose_parameters(f, C, direction);
  TheoremParams& params = cert.params;
  if (options.z0_override) {
    const Complex z0 = *options.z0_override;
    const auto candidates = lifts(params.comparison_domain, z0);
    if (candidates.empty()) {
      throw Error(ErrorKind::OutsideComparisonDomain,
                  "verify_theorem: z0 outside the comparison domain");
    }
    params.z0 = z0;
    params.epsilon = std::abs(z0);
    params.theta_star = candidates.front() - params.sector_low;
    params.z0_normalized = std::polar(1.0, params.theta_star);
  }
  cert.q = q;
  cert.k_max = k_max;
  cert.l_max = l_max;

  EnumerateOptions enum_options;
  if (params.comparison_contains_basin) {
    const ModelDomain domain = params.comparison_domain;
    enum_options.immediate_basin_superset = [domain](Complex z) {
      return !lifts(domain, z).empty();
    };
  }
  const QEnumeration enumeration =
      enumerate_q(f, q, k_max, l_max, direction, options.tol, enum_options);
  cert.generated = enumeration.generated;
  cert.excluded = enumeration.excluded_undecided +
                  enumeration.excluded_other_direction +
                  enumeration.excluded_outside_region;

  const auto petals =
      pacman_petals(f, params.construction, params.construction.R0_prime);
  const PacManDomain& petal = petals[direction];
  cert.global_min = std::numeric_limits<double>::infinity();
  for (const QPoint& point : enumeration.points) {
    ++cert.counts[{point.k, point.l}];
    if (petal.contains(point.value) && std::abs(point.value.imag()) > 0.0) {
      ++cert.remark3_violations;
    }
    PairCertificate pair;
    try {
      pair = certify_pair(params, point.value);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutsideComparisonDomain) throw;
      cert.uncertifiable.push_back(point);
      continue;
    }
    const double exact = pair.bound.value;
    for (const auto& b : pair.case_bounds) {
      if (b.value > exact + 1e-12 * std::max(1.0, exact)) ++cert.case_bound_violations;
    }
    cert.bounds.push_back({point, exact});
    if (exact < cert.global_min) {
      cert.global_min = exact;
      cert.witness = cert.bounds.back();
    }
  }
  cert.pass = cert.uncertifiable.empty() && !cert.bounds.empty() &&
              cert.global_min >= C;
  cert.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
  return cert;
}

ClosureReport corollary_d_closure(const ParabolicMap& f,
                                  const TheoremCertificate& cert, int depth) {
  ClosureReport report;
  report.depth = depth;
  if (!cert.pass) {
    report.status = ClosureStatus::PreconditionFailed;
    return report;
  }
  if (depth <= 0) return report;

  // Preimage tree of z0: every node must map onto its parent.
  std::vector<Complex> level{cert.params.z0};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Complex> next;
    for (const Complex& parent : level) {
      for (const Complex& w : preimages(f, parent, 1e-10)) {
        ++report.preimages_checked;
        const double residual = std::abs(f(w) - parent);
        if (!(residual < kClosureTolerance)) {
          report.failures.push_back({w, "forward residual " + std::to_string(residual)});
        }
        next.push_back(w);
      }
    }
    level = std::move(next);
  }

  // Every certified point whose image stays inside the truncation must map
  // onto another certified point.
  std::unordered_map<std::uint64_t, std::vector<const PointBound*>> cells;
  auto cell_of = [](Complex z) {
    return std::pair(static_cast<long long>(std::floor(z.real() / kClosureTolerance)),
                     static_cast<long long>(std::floor(z.imag() / kClosureTolerance)));
  };
  for (const auto& b : cert.bounds) {
    const auto [i, j] = cell_of(b.point.value);
    cells[cell_key(i, j)].push_back(&b);
  }
  for (const auto& b : cert.bounds) {
    if (b.point.l == 0 && b.point.k == cert.k_max) {
      ++report.q_points_beyond_truncation;
      continue;
    }
    ++report.q_points_checked;
    const Complex image = f(b.point.value);
    const auto [ci, cj] = cell_of(image);
    const PointBound* match = nullptr;
    for (long long di = -1; di <= 1 && !match; ++di) {
      for (long long dj = -1; dj <= 1 && !match; ++dj) {
        auto it = cells.find(cell_key(ci + di, cj + dj));
        if (it == cells.end()) continue;
        for (const PointBound* candidate : it->second) {
          if (std::abs(candidate->point.value - image) < kClosureTolerance) {
            match = candidate;
            break;
          }
        }
      }
    }
    if (!match) {
      report.failures.push_back({b.point.value, "image not among certified points"});
    } else if (match->bound < cert.params.C) {
      report.failures.push_back({b.point.value, "image certified below C"});
    }
  }
  return report;
}

}  // namespace parabasin
