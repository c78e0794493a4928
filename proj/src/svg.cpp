#include "rmt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rmt/csv.hpp"

namespace rmt {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string file_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<int> log_ticks(double ymin, double ymax) {
  if (!(ymin > 0.0) || !(ymax > 0.0) || ymin > ymax)
    throw std::invalid_argument("log_ticks needs 0 < ymin <= ymax");
  int lo = int(std::floor(std::log10(ymin) + 1e-12));
  int hi = int(std::ceil(std::log10(ymax) - 1e-12));
  if (lo == hi) ++hi;
  std::vector<int> ticks;
  int stride = 1 + (hi - lo) / 12;
  for (int e = lo; e <= hi; e += stride) ticks.push_back(e);
  if (ticks.back() != hi) ticks.push_back(hi);
  return ticks;
}

void emit_svg_chart(const std::vector<std::string>& csv_paths,
                    const std::string& field, const std::string& out_path) {
  if (csv_paths.empty()) throw std::invalid_argument("emit_svg_chart: no inputs");

  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (k, value), value > 0
  };
  std::vector<Series> series;
  double kmin = 0.0, kmax = 1.0, vmin = 0.0, vmax = 0.0;
  bool have_any = false;
  for (const std::string& path : csv_paths) {
    CsvTable t = read_csv_table(path);
    if (t.rows.empty())
      throw std::runtime_error("emit_svg_chart: no data rows in " + path);
    const std::size_t ck = t.column_index("k");
    const std::size_t cv = t.column_index(field);
    Series s;
    s.name = file_stem(path);
    for (const auto& row : t.rows) {
      if (row[cv] > 0.0) s.points.emplace_back(row[ck], row[cv]);
    }
    for (const auto& [k, v] : s.points) {
      if (!have_any) {
        kmin = kmax = k;
        vmin = vmax = v;
        have_any = true;
      } else {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
    series.push_back(std::move(s));
  }
  if (!have_any)
    throw std::runtime_error("emit_svg_chart: no positive values for field " + field);
  if (kmax == kmin) kmax = kmin + 1.0;

  const double width = 860, height = 520;
  const double ml = 90, mr = 30, mt = 40, mb = 60;
  const double pw = width - ml - mr, ph = height - mt - mb;

  const std::vector<int> yticks = log_ticks(vmin, vmax);
  const double ylo = double(yticks.front());
  const double yhi = double(yticks.back());
  auto xpix = [&](double k) { return ml + (k - kmin) / (kmax - kmin) * pw; };
  auto ypix = [&](double v) {
    return mt + (yhi - std::log10(v)) / (yhi - ylo) * ph;
  };

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("emit_svg_chart: cannot open " + out_path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int e : yticks) {
    const double y = mt + (yhi - double(e)) / (yhi - ylo) * ph;
    out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">1e"
        << e << "</text>\n";
  }
  const int nx = 5;
  for (int i = 0; i <= nx; ++i) {
    const double k = kmin + (kmax - kmin) * double(i) / nx;
    const double x = xpix(k);
    out << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x
        << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
        << fmt(std::round(k)) << "</text>\n";
  }
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444444\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 18
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">k</text>\n";
  out << "<text x=\"20\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 20 "
      << mt + ph / 2 << ")\">" << field << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [k, v] : series[si].points)
      out << fmt(xpix(k)) << "," << fmt(ypix(v)) << " ";
    out << "\"/>\n";
    const double ly = mt + 16 + 18 * double(si);
    out << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw - 120 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw - 114 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << series[si].name
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("emit_svg_chart: write failed");
}

}  // namespace rmt
