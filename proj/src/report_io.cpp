#include "rgiso/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rgiso/errors.hpp"

namespace rgiso::io {

std::string sig9(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Json to_json(const theory::ThresholdReport& r) {
  Json j;
  j["p1"] = r.p1;
  j["p2"] = r.p2;
  j["N"] = r.N;
  j["a"] = r.a;
  j["n_star"] = r.n_star;
  j["sigma2"] = r.sigma2;
  j["psi"] = r.psi;
  j["eps_N"] = r.eps_N;
  return j;
}

Json limit_f_samples(const ProbPair& pp) {
  Json arr = Json::array();
  if (pp.p2() == 0.5) return arr;
  const double sigma = std::sqrt(theory::sigma2(pp));
  for (int k = -10; k <= 10; ++k) {
    const double c = 0.5 * k * sigma;
    arr.push_back({{"c", c}, {"f", theory::limit_f(pp, c)}});
  }
  return arr;
}

Json to_json(const theory::McisLocationReport& r) {
  Json j;
  j["p1"] = r.p1;
  j["p2"] = r.p2;
  j["N"] = r.N;
  j["region"] = theory::to_string(r.region);
  j["ambiguous"] = r.ambiguous;
  j["p_opt"] = r.p_opt;
  j["p0"] = r.p0;
  j["phat"] = r.phat;
  j["g_p0"] = r.g_p0;
  j["x0"] = r.x0;
  j["x1"] = r.x1;
  j["x2"] = r.x2;
  j["n_N"] = r.n_N;
  j["eps_N"] = r.eps_N;
  j["interval_lo"] = r.interval_lo;
  j["interval_hi"] = r.interval_hi;
  return j;
}

namespace {

Json seed_json(const Seed& s) { return {{"master", s.master}, {"stream", s.stream}}; }

const char* reference_name(mc::Reference r) {
  switch (r) {
    case mc::Reference::Poisson: return "poisson";
    case mc::Reference::TNor: return "tnor";
    case mc::Reference::TwoPoint: return "two_point";
  }
  return "?";
}

}  // namespace

Json to_json(const mc::EstimateReport& r) {
  Json j;
  j["rate"] = r.rate;
  j["ci_lo"] = r.ci_lo;
  j["ci_hi"] = r.ci_hi;
  j["trials"] = r.trials;
  j["successes"] = r.successes;
  j["timeouts"] = r.timeouts;
  j["seed"] = seed_json(r.seed);
  return j;
}

Json to_json(const mc::DistributionReport& r) {
  Json j;
  Json hist = Json::array();
  for (const auto& [v, c] : r.histogram) hist.push_back({{"value", v}, {"count", c}});
  j["histogram"] = hist;
  j["trials"] = r.trials;
  j["timeouts"] = r.timeouts;
  Json ref;
  ref["name"] = reference_name(r.reference);
  if (r.reference == mc::Reference::Poisson) {
    ref["mu"] = r.mu;
  } else if (r.reference == mc::Reference::TNor) {
    ref["mu"] = r.mu;
    ref["sigma2"] = r.sigma2;
    ref["statistic"] = "ln(1+X)/ln N";
  }
  j["reference"] = ref;
  j["N"] = r.N;
  j["metric"] = r.metric;
  j["distance"] = r.distance;
  if (!r.histogram.empty() && r.reference != mc::Reference::TwoPoint) {
    const auto [mean, se] = stats::mean_and_se(r.histogram);
    j["mean"] = mean;
    j["se"] = se;
  }
  j["seed"] = seed_json(r.seed);
  return j;
}

Json to_json(const mc::ConcentrationReport& r) {
  Json j = to_json(r.distribution);
  j["timeout_lower_bounds"] = r.timeout_lower_bounds;
  j["has_interval"] = r.has_interval;
  if (r.has_interval) {
    j["n_N"] = r.n_N;
    j["interval_lo"] = r.interval_lo;
    j["interval_hi"] = r.interval_hi;
    j["slack"] = r.slack;
    j["hit_rate"] = r.hit_rate;
  }
  return j;
}

Json to_json(const pseudorandom::PropertyVerdict& v) {
  Json j;
  j["holds"] = v.holds;
  if (v.witness) {
    j["witness"] = *v.witness;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

void write_csv_meta(std::ostream& out, const Json& meta) {
  for (const auto& [k, v] : meta.items()) out << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

void write_containment_row(std::ostream& out, double x, double y, int n, int N, std::int64_t trials,
                           const std::optional<mc::EstimateReport>& r, std::int64_t timeouts) {
  const double nan = std::nan("");
  out << sig9(x) << ',' << sig9(y) << ',' << n << ',' << N << ',' << trials << ',' << sig9(r ? r->rate : nan) << ','
      << sig9(r ? r->ci_lo : nan) << ',' << sig9(r ? r->ci_hi : nan) << ',' << timeouts << '\n';
}

void write_distribution_csv(std::ostream& out, const stats::Histogram& h) {
  out << "value,count\n";
  for (const auto& [v, c] : h) out << v << ',' << c << '\n';
}

stats::Histogram read_distribution_csv(std::istream& in) {
  stats::Histogram h;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "value,count") throw DomainError("distribution CSV: expected header value,count");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("distribution CSV: malformed row");
    h[std::stoll(line.substr(0, comma))] += std::stoll(line.substr(comma + 1));
  }
  return h;
}

std::vector<RegionCell> region_map(int grid_k) {
  if (grid_k < 2) throw DomainError("region map grid must have at least 2 points per axis");
  std::vector<RegionCell> cells;
  cells.reserve(static_cast<std::size_t>(grid_k) * grid_k);
  auto coord = [&](int i) { return 0.05 + 0.9 * static_cast<double>(i) / (grid_k - 1); };
  for (int j = 0; j < grid_k; ++j) {
    for (int i = 0; i < grid_k; ++i) {
      const double x = coord(i), y = coord(j);
      cells.push_back({x, y, theory::classify_region(ProbPair(x, y)).region});
    }
  }
  return cells;
}

void write_region_csv(std::ostream& out, const std::vector<RegionCell>& cells) {
  out << "x,y,region\n";
  for (const auto& c : cells) out << sig9(c.x) << ',' << sig9(c.y) << ',' << theory::to_string(c.region) << '\n';
}

namespace {

constexpr int kPlot = 540;
constexpr int kMargin = 40;

void svg_open(std::ostream& out, const std::string& title) {
  const int size = kPlot + 2 * kMargin;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
      << "<title>" << title << "</title>\n";
}

void svg_axes(std::ostream& out) {
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlot << "\" height=\"" << kPlot
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << kMargin + kPlot / 2 << "\" y=\"" << kPlot + 2 * kMargin - 10
      << "\" text-anchor=\"middle\" font-size=\"14\">p1</text>\n"
      << "<text x=\"12\" y=\"" << kMargin + kPlot / 2 << "\" font-size=\"14\">p2</text>\n";
}

double sx(double x) { return kMargin + x * kPlot; }
double sy(double y) { return kMargin + (1.0 - y) * kPlot; }

}  // namespace

void write_region_svg(std::ostream& out, const std::vector<RegionCell>& cells, int grid_k) {
  svg_open(out, "region map");
  const double w = 0.9 / (grid_k - 1);
  for (const auto& c : cells) {
    const char* fill = c.region == theory::Region::A ? "#4c72b0" : c.region == theory::Region::B1 ? "#dd8452" : "#55a868";
    out << "<rect class=\"cell\" x=\"" << sig9(sx(c.x - w / 2)) << "\" y=\"" << sig9(sy(c.y + w / 2)) << "\" width=\""
        << sig9(w * kPlot) << "\" height=\"" << sig9(w * kPlot) << "\" fill=\"" << fill << "\" data-region=\""
        << theory::to_string(c.region) << "\"/>\n";
  }
  svg_axes(out);
  out << "</svg>\n";
}

void write_heatmap_svg(std::ostream& out, const std::vector<mc::HeatmapCell>& cells, int grid_k, int N, int n) {
  svg_open(out, "induced containment N=" + std::to_string(N) + " n=" + std::to_string(n));
  const double w = 1.0 / (grid_k + 1);
  for (const auto& c : cells) {
    std::string fill = "#ff0000";
    if (c.estimate) {
      const int level = static_cast<int>(std::lround(255.0 * (1.0 - c.estimate->rate)));
      char buf[16];
      std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
      fill = buf;
    }
    out << "<rect class=\"cell\" x=\"" << sig9(sx(c.x - w / 2)) << "\" y=\"" << sig9(sy(c.y + w / 2)) << "\" width=\""
        << sig9(w * kPlot) << "\" height=\"" << sig9(w * kPlot) << "\" fill=\"" << fill << "\"/>\n";
  }
  if (n > 1 && N >= 2) {
    for (const auto& line : theory::threshold_curve(N, n, 400)) {
      out << "<polyline class=\"threshold\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" "
             "stroke-dasharray=\"6,4\" points=\"";
      for (std::size_t i = 0; i < line.size(); ++i) {
        out << (i ? " " : "") << sig9(sx(line[i].first)) << ',' << sig9(sy(line[i].second));
      }
      out << "\"/>\n";
    }
  }
  svg_axes(out);
  out << "</svg>\n";
}

}  // namespace rgiso::io
