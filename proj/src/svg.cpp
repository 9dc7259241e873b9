#include "regspec/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "regspec/errors.hpp"
#include "regspec/format.hpp"

namespace regspec {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

// Fixed-point text for coordinates; keeps the documents small and stable.
std::string fixed(double x, int digits = 2) {
    if (x == 0.0) x = 0.0;  // no "-0.00"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, digits);
    std::string out(buf, res.ptr);
    if (out == "-0.00" || out == "-0.000" || out == "-0.0") out.erase(0, 1);
    return out;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out.push_back(ch);
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

class SvgWriter {
public:
    SvgWriter(const Frame& frame, const std::string& title) : frame_(frame) {
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
                fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) + "\">\n";
        out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out_ += "<text x=\"" + fixed(kWidth / 2, 0) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                "font-size=\"15\">" + escape(title) + "</text>\n";
    }

    void axes(const std::string& xlabel, const std::string& ylabel, bool log_y = false) {
        const auto& f = frame_;
        out_ += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" +
                fixed(kWidth - kLeft - kRight) + "\" height=\"" + fixed(kHeight - kTop - kBottom) +
                "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int t = 0; t <= 4; ++t) {
            const double xv = f.x0 + (f.x1 - f.x0) * t / 4.0;
            const double yv = f.y0 + (f.y1 - f.y0) * t / 4.0;
            const double px = f.px(xv);
            const double py = f.py(yv);
            out_ += "<line x1=\"" + fixed(px) + "\" y1=\"" + fixed(kHeight - kBottom) + "\" x2=\"" + fixed(px) +
                    "\" y2=\"" + fixed(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
            out_ += "<text x=\"" + fixed(px) + "\" y=\"" + fixed(kHeight - kBottom + 18) +
                    "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fixed(xv) + "</text>\n";
            out_ += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py) + "\" x2=\"" + fixed(kLeft) +
                    "\" y2=\"" + fixed(py) + "\" stroke=\"black\"/>\n";
            const std::string label = log_y ? "1e" + fixed(yv, 1) : fixed(yv);
            out_ += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py + 4) +
                    "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
        }
        out_ += "<text x=\"" + fixed(kLeft + (kWidth - kLeft - kRight) / 2) + "\" y=\"" + fixed(kHeight - 12) +
                "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + escape(xlabel) +
                "</text>\n";
        out_ += "<text x=\"16\" y=\"" + fixed(kTop + (kHeight - kTop - kBottom) / 2) +
                "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " +
                fixed(kTop + (kHeight - kTop - kBottom) / 2) + ")\">" + escape(ylabel) + "</text>\n";
    }

    void dot(double x, double y, const char* colour) {
        out_ += "<circle cx=\"" + fixed(frame_.px(x)) + "\" cy=\"" + fixed(frame_.py(y)) + "\" r=\"1.6\" fill=\"" +
                colour + "\"/>\n";
    }

    void circle(double cx, double cy, double r, const char* colour) {
        const double rx = std::abs(frame_.px(cx + r) - frame_.px(cx));
        const double ry = std::abs(frame_.py(cy + r) - frame_.py(cy));
        out_ += "<ellipse cx=\"" + fixed(frame_.px(cx)) + "\" cy=\"" + fixed(frame_.py(cy)) + "\" rx=\"" + fixed(rx) +
                "\" ry=\"" + fixed(ry) + "\" fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\"/>\n";
    }

    void polyline(const std::vector<double>& x, const std::vector<double>& y, const char* colour) {
        if (x.empty()) return;
        out_ += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < x.size(); ++k)
            out_ += (k ? " " : "") + fixed(frame_.px(x[k])) + "," + fixed(frame_.py(y[k]));
        out_ += "\"/>\n";
    }

    void legend(const std::vector<std::pair<std::string, const char*>>& entries) {
        double y = kTop + 16;
        for (const auto& [name, colour] : entries) {
            out_ += "<rect x=\"" + fixed(kWidth - kRight - 170) + "\" y=\"" + fixed(y - 9) +
                    "\" width=\"10\" height=\"10\" fill=\"" + colour + "\"/>\n";
            out_ += "<text x=\"" + fixed(kWidth - kRight - 154) + "\" y=\"" + fixed(y) +
                    "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(name) + "</text>\n";
            y += 16;
        }
    }

    std::string finish() {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    Frame frame_;
    std::string out_;
};

void csv_row(std::string& csv, const std::string& series, double x, double y) {
    csv += series + "," + format_double(x) + "," + format_double(y) + "\n";
}

}  // namespace

Plot render_scatter(std::span<const Complex> points, double overlay_radius, const std::string& title) {
    require(overlay_radius > 0.0, "overlay radius must be positive");
    double extent = overlay_radius;
    for (const auto& p : points) extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
    extent *= 1.1;
    SvgWriter svg({-extent, extent, -extent, extent}, title);
    svg.axes("Re", "Im");
    Plot plot;
    plot.csv = "series,x,y\n";
    for (const auto& p : points) {
        svg.dot(p.real(), p.imag(), "#1f77b4");
        csv_row(plot.csv, "point", p.real(), p.imag());
    }
    svg.circle(0.0, 0.0, overlay_radius, kPalette[0]);
    csv_row(plot.csv, "circle_radius", overlay_radius, 0.0);
    svg.legend({{"eigenvalues", "#1f77b4"}, {"radius " + format_double(overlay_radius), kPalette[0]}});
    plot.svg = svg.finish();
    return plot;
}

Plot render_sv_profile(std::span<const double> svals, const std::vector<Curve>& bounds, const std::string& title) {
    require(!svals.empty(), "need at least one singular value");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto include = [&](double v) {
        if (v > 0.0 && std::isfinite(v)) {
            lo = std::min(lo, std::log10(v));
            hi = std::max(hi, std::log10(v));
        }
    };
    for (double s : svals) include(s);
    for (const auto& c : bounds) {
        require(c.x.size() == c.y.size(), "curve coordinates differ in length");
        for (double v : c.y) include(v);
    }
    if (!std::isfinite(lo)) lo = hi = 0.0;
    lo = std::floor(lo) - 0.5;
    hi = std::ceil(hi) + 0.5;
    const double n = static_cast<double>(svals.size());
    SvgWriter svg({0.0, n + 1.0, lo, hi}, title);
    svg.axes("k", "s_k (log10)", true);
    auto y_of = [&](double v) { return v > 0.0 ? std::log10(v) : lo; };

    Plot plot;
    plot.csv = "series,x,y\n";
    for (std::size_t k = 0; k < svals.size(); ++k) {
        svg.dot(static_cast<double>(k + 1), y_of(svals[k]), "#1f77b4");
        csv_row(plot.csv, "singular_value", static_cast<double>(k + 1), svals[k]);
    }
    std::vector<std::pair<std::string, const char*>> legend = {{"s_k", "#1f77b4"}};
    for (std::size_t c = 0; c < bounds.size(); ++c) {
        const char* colour = kPalette[c % std::size(kPalette)];
        std::vector<double> ys;
        for (double v : bounds[c].y) ys.push_back(y_of(v));
        svg.polyline(bounds[c].x, ys, colour);
        for (std::size_t k = 0; k < bounds[c].x.size(); ++k) csv_row(plot.csv, bounds[c].name, bounds[c].x[k], bounds[c].y[k]);
        legend.emplace_back(bounds[c].name, colour);
    }
    svg.legend(legend);
    plot.svg = svg.finish();
    return plot;
}

std::vector<Curve> sv_bound_curves(int n, int d, const SvBoundReport& report, const BoundKnobs& knobs) {
    require(n >= 1 && d >= 1, "need n, d >= 1");
    const double nn = n;
    const double root_d = std::sqrt(static_cast<double>(d));
    std::vector<Curve> out;
    auto add = [&](const std::string& name, const BoundCheck& check, auto bound) {
        if (check.k_lo > check.k_hi) return;
        Curve c{name, {}, {}};
        // At most ~400 vertices per curve keeps the documents small.
        const long long span = check.k_hi - check.k_lo;
        const long long step = std::max<long long>(1, span / 400);
        for (long long k = check.k_lo; k <= check.k_hi; k += step) {
            c.x.push_back(static_cast<double>(k));
            c.y.push_back(bound(static_cast<double>(k)));
            if (k + step > check.k_hi && k != check.k_hi) {
                c.x.push_back(static_cast<double>(check.k_hi));
                c.y.push_back(bound(static_cast<double>(check.k_hi)));
            }
        }
        out.push_back(std::move(c));
    };
    add("smin", report.smin, [&](double) { return std::pow(nn, -6.0) / root_d; });
    add("cook_anti", report.cook_anti, [&](double k) { return knobs.c * (nn - k) / nn; });
    add("inter_sv", report.inter_sv,
        [&](double k) { return std::exp(-knobs.C * std::pow(nn / (nn - k), 1.0 / 144.0)) / root_d; });
    return out;
}

Plot render_radial_cdf(const EmpiricalMeasure& mu, const ReferenceLaw& law, const std::string& title) {
    require(mu.size() > 0, "empty measure");
    std::vector<double> radii;
    radii.reserve(mu.size());
    for (const auto& a : mu.atoms) radii.push_back(std::abs(a));
    std::sort(radii.begin(), radii.end());
    const double rmax = std::max(1.0, radii.back()) * 1.05;
    SvgWriter svg({0.0, rmax, 0.0, 1.0}, title);
    svg.axes("r", "P{|lambda| <= r}");

    Plot plot;
    plot.csv = "series,x,y\n";
    std::vector<double> ex, ey;
    const double w = mu.weight();
    ex.push_back(0.0);
    ey.push_back(0.0);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        ex.push_back(radii[k]);
        ey.push_back(k * w);
        ex.push_back(radii[k]);
        ey.push_back((k + 1) * w);
        csv_row(plot.csv, "empirical", radii[k], (k + 1) * w);
    }
    ex.push_back(rmax);
    ey.push_back(1.0);
    std::vector<double> rx, ry;
    for (int k = 0; k <= 200; ++k) {
        const double r = rmax * k / 200.0;
        rx.push_back(r);
        ry.push_back(law.radial_cdf(r));
        csv_row(plot.csv, "reference", r, ry.back());
    }
    svg.polyline(ex, ey, "#1f77b4");
    svg.polyline(rx, ry, kPalette[0]);
    svg.legend({{"empirical", "#1f77b4"}, {law.name(), kPalette[0]}});
    plot.svg = svg.finish();
    return plot;
}

}  // namespace regspec
