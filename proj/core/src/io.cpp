#include "slcyl/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slcyl/errors.hpp"

namespace slcyl::io {

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os << content;
  if (!os) throw Error("write failed for " + path.string());
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ArgumentError("csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

namespace {

constexpr double W = 640, H = 480, M = 60;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<std::pair<double, double>>& points, const FitResult* fit) {
  std::vector<std::pair<double, double>> lp;
  for (const auto& [x, y] : points)
    if (x > 0.0 && y > 0.0) lp.emplace_back(std::log10(x), std::log10(y));
  if (lp.empty()) throw ArgumentError("loglog_svg: no positive points");
  double x0 = lp[0].first, x1 = x0, y0 = lp[0].second, y1 = y0;
  for (const auto& [x, y] : lp) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-12) y1 = y0 + 1.0;
  auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title) << "</text>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">log10 " << escape(xlabel) << "</text>\n";
  os << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
     << ")\" text-anchor=\"middle\">log10 " << escape(ylabel) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double x = x0 + (x1 - x0) * k / 4, y = y0 + (y1 - y0) * k / 4;
    os << "<text x=\"" << px(x) << "\" y=\"" << H - M + 18 << "\" text-anchor=\"middle\" font-size=\"11\">" << x << "</text>\n";
    os << "<text x=\"" << M - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << y << "</text>\n";
  }
  for (const auto& [x, y] : lp)
    os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  if (fit) {
    // the fit is in natural logs; slopes agree, intercepts convert by log10(e)
    const double c = fit->intercept / std::log(10.0);
    os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(c + fit->slope * x0) << "\" x2=\"" << px(x1) << "\" y2=\""
       << py(c + fit->slope * x1) << "\" stroke=\"firebrick\" stroke-dasharray=\"6 3\"/>\n";
    os << "<text x=\"" << W - M << "\" y=\"" << M << "\" text-anchor=\"end\" font-size=\"12\">slope " << fit->slope
       << ", r2 " << fit->r2 << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string region_map_svg(const SmoothingProfile& profile) {
  const double umax = 1.0 / profile.A;
  const double rmax = 2.5 * std::pow(umax, profile.b);
  const int N = 200;
  auto px = [&](double u) { return M + u / umax * (W - 2 * M); };
  auto py = [&](double r) { return H - M - std::min(r, rmax) / rmax * (H - 2 * M); };
  auto curve = [&](double scale, double expo) {
    std::ostringstream os;
    os.precision(6);
    for (int i = 0; i <= N; ++i) {
      const double u = umax * i / N;
      os << (i ? " " : "") << px(u) << ',' << py(scale * std::pow(u, expo));
    }
    return os.str();
  };
  auto band = [&](double lo_s, double lo_e, double hi_s, double hi_e) {
    std::ostringstream os;
    os.precision(6);
    for (int i = 0; i <= N; ++i) {
      const double u = umax * i / N;
      os << px(u) << ',' << py(hi_s * std::pow(u, hi_e)) << ' ';
    }
    for (int i = N; i >= 0; --i) {
      const double u = umax * i / N;
      os << px(u) << ',' << py(lo_s * std::pow(u, lo_e)) << ' ';
    }
    return os.str();
  };
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
     << "\" fill=\"#e8f0fa\"/>\n";
  os << "<polygon points=\"" << band(1.0, profile.b, 2.0, profile.b) << "\" fill=\"#f6e3b4\"/>\n";
  os << "<polygon points=\"" << band(0.0, 1.0, 1.0, profile.b) << "\" fill=\"#f4c7c3\"/>\n";
  os << "<polyline points=\"" << curve(profile.Lambda, profile.a) << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  os << "<polyline points=\"" << curve(1.0, profile.b) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<polyline points=\"" << curve(2.0, profile.b) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">regions of X, a = " << profile.a
     << ", b = " << profile.b << "</text>\n";
  os << "<text x=\"" << px(0.25 * umax) << "\" y=\"" << py(0.8 * rmax) << "\">X1: graph of d phi_a</text>\n";
  os << "<text x=\"" << px(0.7 * umax) << "\" y=\"" << py(1.6 * std::pow(0.7 * umax, profile.b)) + 4
     << "\" font-size=\"12\">band: graph of d I</text>\n";
  os << "<text x=\"" << px(0.75 * umax) << "\" y=\"" << py(0.3 * std::pow(0.75 * umax, profile.b)) + 4
     << "\" font-size=\"12\">X2</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">|u| (up to 1/A)</text>\n";
  os << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2 << ")\" text-anchor=\"middle\">r</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace slcyl::io
