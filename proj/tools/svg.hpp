#ifndef SCATTERLAB_SVG_HPP
#define SCATTERLAB_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

namespace scatterlab {

// Minimal static SVG line/scatter plot: axes, ticks, one or two series,
// optional horizontal reference line. No external tooling.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add_series(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color) {
        series_.push_back({x, y, color});
        for (double v : x) {
            x_min_ = std::min(x_min_, v);
            x_max_ = std::max(x_max_, v);
        }
        for (double v : y) {
            y_min_ = std::min(y_min_, v);
            y_max_ = std::max(y_max_, v);
        }
    }

    void add_reference_line(double y, const std::string& color) {
        reference_ = y;
        reference_color_ = color;
        y_min_ = std::min(y_min_, y);
        y_max_ = std::max(y_max_, y);
    }

    std::string render() const {
        const double w = 640, h = 480, ml = 64, mr = 16, mt = 36, mb = 48;
        double x0 = x_min_, x1 = x_max_, y0 = y_min_, y1 = y_max_;
        if (!(x1 > x0)) x1 = x0 + 1.0;
        if (!(y1 > y0)) y1 = y0 + 1.0;
        const double ypad = 0.05 * (y1 - y0);
        y0 -= ypad;
        y1 += ypad;

        auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
        auto py = [&](double y) { return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb); };

        std::string s;
        s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
             "viewBox=\"0 0 640 480\">\n";
        s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
        s += fmt("<text x=\"%g\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
                 "text-anchor=\"middle\">%s</text>\n",
                 0.5 * w, title_.c_str());
        // axes
        s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", ml,
                 h - mb, w - mr, h - mb);
        s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", ml,
                 mt, ml, h - mb);
        for (int i = 0; i <= 4; ++i) {
            const double fx = x0 + i * (x1 - x0) / 4.0;
            const double fy = y0 + i * (y1 - y0) / 4.0;
            s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                     px(fx), h - mb, px(fx), h - mb + 4);
            s += fmt("<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
                     "text-anchor=\"middle\">%.4g</text>\n",
                     px(fx), h - mb + 18, fx);
            s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                     ml - 4, py(fy), ml, py(fy));
            s += fmt("<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
                     "text-anchor=\"end\">%.4g</text>\n",
                     ml - 8, py(fy) + 4, fy);
        }
        s += fmt("<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" "
                 "text-anchor=\"middle\">%s</text>\n",
                 0.5 * w, h - 10, x_label_.c_str());
        s += fmt("<text x=\"16\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" "
                 "text-anchor=\"middle\" transform=\"rotate(-90 16 %g)\">%s</text>\n",
                 0.5 * h, 0.5 * h, y_label_.c_str());

        if (reference_color_ != "") {
            s += fmt("<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
                     "stroke-dasharray=\"6 4\"/>\n",
                     ml, py(reference_), w - mr, py(reference_), reference_color_.c_str());
        }
        for (const Series& ser : series_) {
            std::string pts;
            for (std::size_t i = 0; i < ser.x.size(); ++i)
                pts += fmt("%g,%g ", px(ser.x[i]), py(ser.y[i]));
            s += fmt("<polyline points=\"%s\" fill=\"none\" stroke=\"%s\"/>\n", pts.c_str(),
                     ser.color.c_str());
            for (std::size_t i = 0; i < ser.x.size(); ++i)
                s += fmt("<circle cx=\"%g\" cy=\"%g\" r=\"2.5\" fill=\"%s\"/>\n",
                         px(ser.x[i]), py(ser.y[i]), ser.color.c_str());
        }
        s += "</svg>\n";
        return s;
    }

private:
    struct Series {
        std::vector<double> x, y;
        std::string color;
    };

    static std::string fmt(const char* f, ...) {
        char buf[512];
        va_list args;
        va_start(args, f);
        std::vsnprintf(buf, sizeof buf, f, args);
        va_end(args);
        return buf;
    }

    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
    double reference_ = 0.0;
    std::string reference_color_;
    double x_min_ = 1e300, x_max_ = -1e300, y_min_ = 1e300, y_max_ = -1e300;
};

}  // namespace scatterlab

#endif
