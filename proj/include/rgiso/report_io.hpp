#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgiso/montecarlo.hpp"
#include "rgiso/pseudorandom.hpp"
#include "rgiso/theory.hpp"

namespace rgiso::io {

using Json = nlohmann::ordered_json;

/// Nine significant digits, as used by every CSV artifact.
std::string sig9(double v);

Json to_json(const theory::ThresholdReport& r);
Json to_json(const theory::McisLocationReport& r);
Json to_json(const mc::EstimateReport& r);
Json to_json(const mc::DistributionReport& r);
Json to_json(const mc::ConcentrationReport& r);
Json to_json(const pseudorandom::PropertyVerdict& v);

/// f(c) samples at 21 points spanning [-5 sigma, 5 sigma]; empty when p2 = 1/2.
Json limit_f_samples(const ProbPair& pp);

/// Comment lines ("# key=value") echoing the resolved configuration.
void write_csv_meta(std::ostream& out, const Json& meta);

inline constexpr const char* kContainmentHeader = "x,y,n,N,trials,rate,ci_lo,ci_hi,timeouts";

/// One containment row; rate fields are "nan" when the cell has no decided trial.
void write_containment_row(std::ostream& out, double x, double y, int n, int N, std::int64_t trials,
                           const std::optional<mc::EstimateReport>& r, std::int64_t timeouts);

/// "value,count" rows preceded by a header.
void write_distribution_csv(std::ostream& out, const stats::Histogram& h);

/// Parses the body written by write_distribution_csv, skipping '#' lines.
stats::Histogram read_distribution_csv(std::istream& in);

struct RegionCell {
  double x;  ///< p1
  double y;  ///< p2
  theory::Region region;
};

/// Region tags on x, y in {0.05 + 0.9 i / (k-1)}, row-major with y outer.
std::vector<RegionCell> region_map(int grid_k);

void write_region_csv(std::ostream& out, const std::vector<RegionCell>& cells);
void write_region_svg(std::ostream& out, const std::vector<RegionCell>& cells, int grid_k);

/// Grayscale containment raster with the dashed n* = n curve overlaid.
void write_heatmap_svg(std::ostream& out, const std::vector<mc::HeatmapCell>& cells, int grid_k, int N, int n);

}  // namespace rgiso::io
