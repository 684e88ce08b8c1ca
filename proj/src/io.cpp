#include "parabasin/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

namespace parabasin::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

// Imaginary coefficient; a bare sign means unit.
double parse_imaginary(std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text);
}

std::string format(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

Json point_json(const QPoint& p) {
  return {{"value", complex_json(p.value)}, {"k", p.k}, {"l", p.l},
          {"residual", number(p.residual)}};
}

}  // namespace

Complex parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty complex number");
  if (const auto comma = text.find(','); comma != std::string_view::npos) {
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
  }
  if (text.back() != 'i' && text.back() != 'j') return parse_real(text);
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not an exponent sign.
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      return {parse_real(body.substr(0, i)), parse_imaginary(body.substr(i))};
    }
  }
  return {0.0, parse_imaginary(body)};
}

std::vector<Complex> parse_coefficients(std::string_view text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  if (x == std::trunc(x) && std::abs(x) < 1e15) return static_cast<std::int64_t>(x);
  return x;
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const ParabolicMap& f) {
  Json attraction = Json::array();
  for (const Complex& v : f.vectors().attraction) attraction.push_back(complex_json(v));
  Json repulsion = Json::array();
  for (const Complex& v : f.vectors().repulsion) repulsion.push_back(complex_json(v));
  return {{"m", f.m()},
          {"a", complex_json(f.a())},
          {"attraction", attraction},
          {"repulsion", repulsion}};
}

Json to_json(const PacManConstruction& c) {
  return {{"theta0", number(c.theta0)},
          {"omega_gap", number(c.omega_gap)},
          {"r0", number(c.r0)},
          {"r", number(c.R0)},
          {"R0", number(c.R0)},
          {"R0_prime", number(c.R0_prime)},
          {"radii_reading", "R0_prime < R0 = r < r0"},
          {"rho", {number(c.rho0), number(c.rho1), number(c.rho2)}},
          {"remainder_bound", number(c.remainder_bound)},
          {"tangent_points",
           {{"A0", complex_json(c.A0)},
            {"B0", complex_json(c.B0)},
            {"A", complex_json(c.A)},
            {"B", complex_json(c.B)}}}};
}

Json to_json(const DistanceBound& b) {
  Json out = {{"value", number(b.value)},
              {"kind", to_string(b.kind)},
              {"method", to_string(b.method)},
              {"constants", nullptr}};
  if (b.constants) {
    out["constants"] = {{"c1", number(b.constants->c1)},
                        {"c2", number(b.constants->c2)},
                        {"c1c2", number(b.constants->c1 * b.constants->c2)},
                        {"kappa", number(b.constants->kappa)}};
  }
  return out;
}

Json to_json(const ModelDomain& domain) {
  Json params = Json::object();
  if (const auto* s = std::get_if<Sector>(&domain)) {
    params = {{"arg_low", number(s->arg_low)}, {"arg_high", number(s->arg_high)}};
  } else if (const auto* d = std::get_if<DoubleSector>(&domain)) {
    params = {{"arg_low", number(d->arg_low)}, {"arg_high", number(d->arg_high)}};
  }
  return {{"variant", variant_name(domain)}, {"params", params}};
}

Json to_json(const TheoremParams& p) {
  return {{"C", number(p.C)},
          {"m", p.m},
          {"direction", p.direction},
          {"theta0", number(p.theta0)},
          {"theta0_prime", number(p.theta0_prime)},
          {"epsilon", number(p.epsilon)},
          {"theta_star", number(p.theta_star)},
          {"sector_low", number(p.sector_low)},
          {"z0", complex_json(p.z0)},
          {"z0_normalized", complex_json(p.z0_normalized)},
          {"comparison_domain", to_json(p.comparison_domain)},
          {"comparison_contains_basin", p.comparison_contains_basin},
          {"construction", to_json(p.construction)}};
}

Json to_json(const TheoremCertificate& cert) {
  Json counts = Json::array();
  for (const auto& [key, count] : cert.counts) {
    counts.push_back({{"k", key.first}, {"l", key.second}, {"count", count}});
  }
  Json uncertifiable = Json::array();
  for (const auto& p : cert.uncertifiable) uncertifiable.push_back(point_json(p));
  Json witness = nullptr;
  if (cert.witness) {
    witness = point_json(cert.witness->point);
    witness["bound"] = number(cert.witness->bound);
  }
  return {{"params", to_json(cert.params)},
          {"q", complex_json(cert.q)},
          {"k_max", cert.k_max},
          {"l_max", cert.l_max},
          {"generated", cert.generated},
          {"excluded", cert.excluded},
          {"certified", cert.bounds.size()},
          {"counts", counts},
          {"uncertifiable", uncertifiable},
          {"global_min", number(cert.global_min)},
          {"witness", witness},
          {"remark3_violations", cert.remark3_violations},
          {"case_bound_violations", cert.case_bound_violations},
          {"pass", cert.pass}};
}

Json to_json(const ClosureReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"point", complex_json(f.point)}, {"reason", f.reason}});
  }
  return {{"status", r.status == ClosureStatus::Ok ? "Ok" : "PreconditionFailed"},
          {"depth", r.depth},
          {"preimages_checked", r.preimages_checked},
          {"q_points_checked", r.q_points_checked},
          {"q_points_beyond_truncation", r.q_points_beyond_truncation},
          {"failures", failures}};
}

Json to_json(const Prop3Report& r) {
  return {{"disjoint", r.disjoint},
          {"overlap_pixels", r.overlap_pixels},
          {"s1_pixels", r.s1_pixels},
          {"s2_pixels", r.s2_pixels},
          {"resolution", r.resolution}};
}

Json to_json(const InvarianceReport& r) {
  return {{"violations", r.violations},
          {"worst_margin", number(r.worst_margin)},
          {"samples", r.samples},
          {"steps", r.steps}};
}

void write_csv(std::ostream& out, const QEnumeration& q) {
  out << "re,im,k,l,residual\n";
  for (const auto& p : q.points) {
    out << format(p.value.real()) << ',' << format(p.value.imag()) << ',' << p.k
        << ',' << p.l << ',' << format(p.residual) << '\n';
  }
}

void write_bounds_csv(std::ostream& out, const TheoremCertificate& cert) {
  out << "re,im,k,l,bound\n";
  for (const auto& b : cert.bounds) {
    out << format(b.point.value.real()) << ',' << format(b.point.value.imag()) << ','
        << b.point.k << ',' << b.point.l << ',' << format(b.bound) << '\n';
  }
}

void write_table(std::ostream& out, const TheoremCertificate& cert) {
  const auto& p = cert.params;
  auto line = [&](std::string_view key, const std::string& value) {
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "%-22s %s\n", std::string(key).c_str(),
                  value.c_str());
    out << buffer;
  };
  auto cplx = [](Complex z) { return format(z.real()) + " " + format(z.imag()) + "i"; };
  line("C", format(p.C));
  line("m", std::to_string(p.m));
  line("direction", std::to_string(p.direction));
  line("theta0", format(p.theta0));
  line("theta0_prime", format(p.theta0_prime));
  line("R0_prime", format(p.construction.R0_prime));
  line("epsilon", format(p.epsilon));
  line("z0", cplx(p.z0));
  line("comparison domain", std::string(variant_name(p.comparison_domain)));
  line("q", cplx(cert.q));
  line("truncation", "k <= " + std::to_string(cert.k_max) +
                         ", l <= " + std::to_string(cert.l_max));
  line("generated", std::to_string(cert.generated));
  line("excluded", std::to_string(cert.excluded));
  line("certified points", std::to_string(cert.bounds.size()));
  line("uncertifiable", std::to_string(cert.uncertifiable.size()));
  line("global min", format(cert.global_min));
  if (cert.witness) line("witness", cplx(cert.witness->point.value));
  line("remark3 violations", std::to_string(cert.remark3_violations));
  line("case bound violations", std::to_string(cert.case_bound_violations));
  line("runtime ms", std::to_string(cert.runtime_ms));
  line("result", cert.pass ? "PASS" : "FAIL");
}

}  // namespace parabasin::io
