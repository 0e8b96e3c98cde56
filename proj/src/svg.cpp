#include "elephant/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace elephant {

namespace {
std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

SvgPanel::SvgPanel(double x_min, double x_max, double y_min, double y_max, int width, int height)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width), height_(height) {
  if (!(x_max > x_min) || !(y_max > y_min)) throw std::invalid_argument("svg: empty range");
}

double SvgPanel::px(double x) const {
  return margin_ + (x - x_min_) / (x_max_ - x_min_) * (width_ - 2 * margin_);
}

double SvgPanel::py(double y) const {
  return height_ - margin_ - (y - y_min_) / (y_max_ - y_min_) * (height_ - 2 * margin_);
}

void SvgPanel::add_histogram(const std::vector<double>& edges, const std::vector<double>& density,
                             const std::string& fill) {
  if (edges.size() != density.size() + 1) throw std::invalid_argument("svg: edges/density mismatch");
  for (std::size_t b = 0; b < density.size(); ++b) {
    const double x0 = px(edges[b]);
    const double x1 = px(edges[b + 1]);
    const double y0 = py(0.0);
    const double y1 = py(density[b]);
    body_.push_back("<rect x=\"" + num(x0) + "\" y=\"" + num(std::min(y0, y1)) + "\" width=\"" +
                    num(std::max(1.0, x1 - x0)) + "\" height=\"" + num(std::fabs(y0 - y1)) +
                    "\" fill=\"" + fill + "\" stroke=\"#667\" stroke-width=\"0.4\"/>");
  }
}

void SvgPanel::add_polyline(const VecD& x, const VecD& y, const std::string& stroke,
                            double stroke_width) {
  if (x.size() != y.size()) throw std::invalid_argument("svg: polyline size mismatch");
  std::string pts;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    pts += num(px(x(i))) + "," + num(py(y(i))) + " ";
  }
  body_.push_back("<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
                  num(stroke_width) + "\" points=\"" + pts + "\"/>");
}

void SvgPanel::add_title(const std::string& title) { title_ = title; }

void SvgPanel::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << num(px(x_min_)) << "\" y1=\"" << num(py(y_min_)) << "\" x2=\""
      << num(px(x_max_)) << "\" y2=\"" << num(py(y_min_)) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(px(x_min_)) << "\" y1=\"" << num(py(y_min_)) << "\" x2=\""
      << num(px(x_min_)) << "\" y2=\"" << num(py(y_max_)) << "\" stroke=\"black\"/>\n";
  const int ticks = 6;
  for (int t = 0; t <= ticks; ++t) {
    const double x = x_min_ + (x_max_ - x_min_) * t / ticks;
    out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(py(y_min_)) << "\" x2=\"" << num(px(x))
        << "\" y2=\"" << num(py(y_min_) + 4) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y_min_) + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    const double y = y_min_ + (y_max_ - y_min_) * t / ticks;
    out << "<text x=\"" << num(px(x_min_) - 6) << "\" y=\"" << num(py(y) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  for (const auto& fragment : body_) out << fragment << '\n';
  if (!title_.empty())
    out << "<text x=\"" << width_ / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">"
        << title_ << "</text>\n";
  out << "</svg>\n";
}

}  // namespace elephant
