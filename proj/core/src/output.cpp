#include "thinfilm/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "thinfilm/error.hpp"

namespace fs = std::filesystem;

namespace thinfilm {

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Config, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::Config, "cannot move output into place at '" + path + "': " + ec.message());
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string records_csv(std::span<const SimRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    const double cols[] = {r.t, r.mass, r.mass_expected, r.energy, r.dissipation,
                           r.ux_l2, r.h1_error, r.envelope, r.min_u};
    for (double c : cols) {
      out += format_number(c);
      out += ',';
    }
    out += r.hyp_ok ? "1" : "0";
    out += '\n';
  }
  return out;
}

namespace {

constexpr double kWidth = 760, kHeight = 460;
constexpr double kLeft = 84, kRight = 190, kTop = 44, kBottom = 58;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf",
                                "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string short_num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // in transformed units

  double tf(double v) const { return log ? std::log10(v) : v; }
  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }

  void fit(double mn, double mx) {
    if (!(mx > mn)) {
      const double pad = (mn == 0.0) ? 1.0 : std::abs(mn) * 0.1;
      mn -= pad;
      mx += pad;
    }
    if (log) {
      lo = std::floor(mn);
      hi = std::ceil(mx);
      if (hi == lo) hi = lo + 1.0;
    } else {
      const double pad = 0.04 * (mx - mn);
      lo = mn - pad;
      hi = mx + pad;
    }
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      const double step = std::max(1.0, std::ceil((hi - lo) / 8.0));
      for (double e = lo; e <= hi + 1e-9; e += step) t.push_back(e);
      return t;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * std::abs(hi); v += step) {
      t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return t;
  }

  std::string label(double v) const { return log ? "1e" + short_num(v) : short_num(v); }
};

}  // namespace

std::string render_svg(const Chart& chart) {
  Axis ax{chart.log_x}, ay{chart.log_y};
  double xmn = std::numeric_limits<double>::infinity(), xmx = -xmn, ymn = xmn, ymx = -xmn;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
      xmn = std::min(xmn, ax.tf(s.x[i]));
      xmx = std::max(xmx, ax.tf(s.x[i]));
      ymn = std::min(ymn, ay.tf(s.y[i]));
      ymx = std::max(ymx, ay.tf(s.y[i]));
    }
  }
  if (!std::isfinite(xmn)) xmn = 0, xmx = 1, ymn = 0, ymx = 1;
  ax.fit(xmn, xmx);
  ay.fit(ymn, ymx);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (ax.tf(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (ay.tf(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(chart.title)
     << "</text>\n";

  // grid and ticks
  for (double v : ax.ticks()) {
    const double x = kLeft + (v - ax.lo) / (ax.hi - ax.lo) * pw;
    os << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\"" << kTop + ph
       << "\" stroke=\"#e5e5e5\"/>\n"
       << "<text x=\"" << x << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << ax.label(v)
       << "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double y = kTop + ph - (v - ay.lo) / (ay.hi - ay.lo) * ph;
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
       << "\" stroke=\"#e5e5e5\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << ay.label(v)
       << "</text>\n";
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16 << "\" text-anchor=\"middle\">"
     << esc(chart.x_label) << "</text>\n"
     << "<text transform=\"translate(20," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << esc(chart.y_label) << "</text>\n";

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const Series& ser = chart.series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    std::ostringstream pts;
    pts.precision(6);
    auto flush = [&] {
      const std::string p = pts.str();
      if (!p.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\""
           << (ser.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << p << "\"/>\n";
      }
      pts.str("");
    };
    for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i) {
      if (!ax.usable(ser.x[i]) || !ay.usable(ser.y[i])) {
        flush();
        continue;
      }
      pts << px(ser.x[i]) << "," << py(ser.y[i]) << " ";
    }
    flush();
    const double ly = kTop + 14 + 20 * static_cast<double>(s);
    os << "<line x1=\"" << kLeft + pw + 14 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 40 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (ser.dashed ? " stroke-dasharray=\"6 4\"" : "")
       << "/>\n<text x=\"" << kLeft + pw + 46 << "\" y=\"" << ly + 4 << "\">" << esc(ser.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string profiles_svg(const Grid& grid, std::span<const State> snapshots, const std::string& title) {
  Chart c;
  c.title = title;
  c.x_label = "x";
  c.y_label = "u(t, x)";
  const std::vector<double> xs = grid.centers();
  for (const auto& s : snapshots) {
    c.series.push_back({"t = " + short_num(s.t), xs, s.u, false});
  }
  return render_svg(c);
}

std::string error_svg(std::span<const SimRecord> records, const std::string& title, bool log_x, bool log_y) {
  Chart c;
  c.title = title;
  c.x_label = "t";
  c.y_label = "H1 error";
  c.log_x = log_x;
  c.log_y = log_y;
  Series err{"h1 error", {}, {}, false};
  Series env{"envelope", {}, {}, true};
  for (const auto& r : records) {
    err.x.push_back(r.t);
    err.y.push_back(r.h1_error);
    env.x.push_back(r.t);
    env.y.push_back(r.envelope);
  }
  c.series.push_back(std::move(err));
  if (std::any_of(env.y.begin(), env.y.end(), [](double v) { return std::isfinite(v); })) {
    c.series.push_back(std::move(env));
  }
  return render_svg(c);
}

}  // namespace thinfilm
