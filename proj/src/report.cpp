#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "drad/errors.hpp"
#include "drad/evaluation.hpp"

namespace drad {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError(DataError::Kind::Io, "cannot write " + path.string());
  f << body;
  if (!f) throw DataError(DataError::Kind::Io, "write failed for " + path.string());
}

// Tableau-like categorical palette, cycled for long legends.
constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

}  // namespace

std::string curves_csv(const std::vector<AccuracyCurve>& curves) {
  std::ostringstream os;
  os << "scope,class_name,snr_db,accuracy,n_examples\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      os << c.scope << ',' << c.class_name << ',' << p.snr_db << ',' << fmt("%.6f", p.accuracy) << ','
         << p.n_examples << '\n';
    }
  }
  return os.str();
}

std::string render_curves_svg(const std::vector<AccuracyCurve>& curves, const std::string& title) {
  const double W = 760, H = 440, left = 60, right = 170, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;

  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      if (first) lo = hi = p.snr_db, first = false;
      lo = std::min(lo, p.snr_db);
      hi = std::max(hi, p.snr_db);
    }
  }
  if (hi == lo) hi = lo + 1;
  const auto sx = [&](double s) { return left + pw * (s - lo) / (hi - lo); };
  const auto sy = [&](double a) { return top + ph * (1.0 - a); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
     << "</text>\n";

  for (int i = 0; i <= 10; ++i) {
    const double a = i / 10.0, y = sy(a);
    os << "<line x1=\"" << left << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << left + pw << "\" y2=\""
       << fmt("%.2f", y) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << fmt("%.2f", y + 4) << "\" text-anchor=\"end\">"
       << fmt("%.1f", a) << "</text>\n";
  }
  const int step = std::max(1, (hi - lo) / 16);
  for (int s = lo; s <= hi; s += step) {
    const double x = sx(s);
    os << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << top + ph << "\" x2=\"" << fmt("%.2f", x) << "\" y2=\""
       << top + ph + 4 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << s
       << "</text>\n";
  }
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + ph / 2 << ")\">accuracy</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = kPalette[i % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      if (k) os << ' ';
      os << fmt("%.2f", sx(c.points[k].snr_db)) << ',' << fmt("%.2f", sy(c.points[k].accuracy));
    }
    os << "\"/>\n";
    for (const auto& p : c.points) {
      os << "<circle cx=\"" << fmt("%.2f", sx(p.snr_db)) << "\" cy=\"" << fmt("%.2f", sy(p.accuracy))
         << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 10 + 14.0 * static_cast<double>(i);
    os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 36 << "\" y=\"" << ly + 4 << "\">" << xml_escape(c.class_name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_confusion_svg(const ConfusionMatrix& cm, const std::vector<std::string>& class_names) {
  const std::size_t n = cm.n_classes;
  const double cell = n > 12 ? 28 : 44, left = 110, top = 60;
  const double W = left + cell * static_cast<double>(n) + 20, H = top + cell * static_cast<double>(n) + 100;
  const auto name = [&](std::size_t i) { return i < class_names.size() ? class_names[i] : std::to_string(i); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">Confusion matrix at "
     << cm.snr_db << " dB</text>\n";
  os << "<text x=\"" << left + cell * n / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">predicted</text>\n";
  os << "<text x=\"14\" y=\"" << top + cell * n / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
     << "transform=\"rotate(-90 14 " << top + cell * n / 2 << ")\">true</text>\n";

  for (std::size_t r = 0; r < n; ++r) {
    const auto rs = cm.row_sum(r);
    const double y = top + cell * static_cast<double>(r);
    os << "<text x=\"" << left - 4 << "\" y=\"" << fmt("%.1f", y + cell / 2 + 3) << "\" text-anchor=\"end\">"
       << xml_escape(name(r)) << "</text>\n";
    for (std::size_t c = 0; c < n; ++c) {
      const double x = left + cell * static_cast<double>(c);
      const auto v = cm.at(r, c);
      const double frac = rs ? static_cast<double>(v) / static_cast<double>(rs) : 0.0;
      const int shade = static_cast<int>(255.0 - 200.0 * frac);
      os << "<rect class=\"cell\" data-row=\"" << r << "\" data-col=\"" << c << "\" x=\"" << fmt("%.1f", x)
         << "\" y=\"" << fmt("%.1f", y) << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb("
         << shade << ',' << shade << ",255)\" stroke=\"#999999\"/>\n";
      os << "<text class=\"count\" data-row=\"" << r << "\" data-col=\"" << c << "\" x=\""
         << fmt("%.1f", x + cell / 2) << "\" y=\"" << fmt("%.1f", y + cell / 2 + 3)
         << "\" text-anchor=\"middle\">" << v << "</text>\n";
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    const double x = left + cell * static_cast<double>(c) + cell / 2;
    const double y = top + cell * static_cast<double>(n) + 8;
    os << "<text x=\"" << fmt("%.1f", x) << "\" y=\"" << fmt("%.1f", y) << "\" text-anchor=\"end\" transform=\"rotate(-60 "
       << fmt("%.1f", x) << ' ' << fmt("%.1f", y) << ")\">" << xml_escape(name(c)) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_report(const EvalReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw DataError(DataError::Kind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<AccuracyCurve> all{report.curves.overall};
  all.insert(all.end(), report.curves.per_class.begin(), report.curves.per_class.end());
  write_text(out_dir / "accuracy_vs_snr.csv", curves_csv(all));

  std::ostringstream sens;
  sens << "scope,class_name,threshold,snr_db_or_NA\n";
  for (const auto& s : report.sensitivities) {
    sens << s.scope << ',' << s.class_name << ',' << fmt("%.2f", s.threshold) << ','
         << (s.snr_db ? std::to_string(*s.snr_db) : std::string("NA")) << '\n';
  }
  write_text(out_dir / "sensitivity.csv", sens.str());

  std::ostringstream conf;
  conf << "snr_db,true_class,pred_class,count\n";
  for (const auto& cm : report.confusions) {
    for (std::size_t r = 0; r < cm.n_classes; ++r) {
      for (std::size_t c = 0; c < cm.n_classes; ++c) {
        conf << cm.snr_db << ',' << report.class_names.at(r) << ',' << report.class_names.at(c) << ','
             << cm.at(r, c) << '\n';
      }
    }
  }
  write_text(out_dir / "confusion.csv", conf.str());

  write_text(out_dir / "accuracy_vs_snr.svg", render_curves_svg(all, "Accuracy vs SNR"));
  for (const auto& cm : report.confusions) {
    write_text(out_dir / ("confusion_snr_" + std::to_string(cm.snr_db) + ".svg"),
               render_confusion_svg(cm, report.class_names));
  }
}

}  // namespace drad
