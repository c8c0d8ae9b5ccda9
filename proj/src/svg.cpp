#include "pfn/svg.hpp"

#include <cmath>
#include <sstream>

namespace pfn {

namespace {

constexpr int kGrid = 512;
constexpr int kColorRaster = 128;

struct Bbox {
    double xlo = -1, xhi = 1, ylo = -1, yhi = 1;
};

Bbox bbox_of(const std::vector<std::vector<Point>>& collections) {
    Bbox b;
    bool first = true;
    for (const auto& col : collections) {
        for (const Point& p : col) {
            double x = p[0].get_d(), y = p[1].get_d();
            if (first) {
                b = {x, x, y, y};
                first = false;
            } else {
                b.xlo = std::min(b.xlo, x);
                b.xhi = std::max(b.xhi, x);
                b.ylo = std::min(b.ylo, y);
                b.yhi = std::max(b.yhi, y);
            }
        }
    }
    double mx = 0.05 * (b.xhi - b.xlo) + 0.05;
    double my = 0.05 * (b.yhi - b.ylo) + 0.05;
    return {b.xlo - mx, b.xhi + mx, b.ylo - my, b.yhi + my};
}

std::string cell_color(const std::string& key) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : key) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    int hue = static_cast<int>(h % 360);
    std::ostringstream os;
    os << "hsl(" << hue << ",55%,88%)";
    return os.str();
}

const char* kPointColors[] = {"#1f4e9c", "#9c1f2e", "#1f7a3a", "#7a5a1f", "#5a1f7a", "#1f7a72"};

// bisection refinement of a sign change along a segment, returning the
// crossing parameter; the final bracket is verified with exact rational signs
// and falls back to the midpoint if roundoff lied about a sign
double refine_crossing(const MultiPoly& f, double ax, double ay, double bx, double by,
                       double fa0) {
    double lo = 0.0, hi = 1.0, fa = fa0;
    for (int it = 0; it < 14; ++it) {
        double m = 0.5 * (lo + hi);
        double fm = f.eval(std::span<const double>(
            std::vector<double>{ax + m * (bx - ax), ay + m * (by - ay)}));
        if ((fa < 0) == (fm < 0)) {
            lo = m;
            fa = fm;
        } else {
            hi = m;
        }
    }
    Point pa{rational_from_double(ax + lo * (bx - ax)), rational_from_double(ay + lo * (by - ay))};
    Point pb{rational_from_double(ax + hi * (bx - ax)), rational_from_double(ay + hi * (by - ay))};
    int sa = sgn(f.eval(std::span<const Rational>(pa)));
    int sb = sgn(f.eval(std::span<const Rational>(pb)));
    if (sa != 0 && sa == sb) return 0.5;
    return 0.5 * (lo + hi);
}

} // namespace

std::string render_partition_svg(const Partition& partition,
                                 const std::vector<std::vector<Point>>& collections,
                                 int pixels) {
    for (const auto& col : collections) {
        for (const Point& p : col) {
            if (p.size() != 2) throw std::invalid_argument("svg rendering needs plane points");
        }
    }
    Bbox bb = bbox_of(collections);
    auto sx = [&](double x) { return (x - bb.xlo) / (bb.xhi - bb.xlo) * pixels; };
    auto sy = [&](double y) { return (1.0 - (y - bb.ylo) / (bb.yhi - bb.ylo)) * pixels; };

    std::ostringstream svg;
    svg.precision(8);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << pixels << "' height='" << pixels
        << "' viewBox='0 0 " << pixels << " " << pixels << "'>\n";

    // cell colors on a coarse raster
    double dxc = (bb.xhi - bb.xlo) / kColorRaster;
    double dyc = (bb.yhi - bb.ylo) / kColorRaster;
    double cell_w = static_cast<double>(pixels) / kColorRaster;
    for (int i = 0; i < kColorRaster; ++i) {
        for (int j = 0; j < kColorRaster; ++j) {
            double x = bb.xlo + (i + 0.5) * dxc;
            double y = bb.ylo + (j + 0.5) * dyc;
            std::string key;
            for (const MultiPoly& f : partition.factors) {
                double v = f.eval(std::span<const double>(std::vector<double>{x, y}));
                key.push_back(v >= 0 ? '+' : '-');
            }
            svg << "<rect x='" << (i * cell_w) << "' y='" << (pixels - (j + 1) * cell_w)
                << "' width='" << cell_w + 0.5 << "' height='" << cell_w + 0.5 << "' fill='"
                << cell_color(key) << "'/>\n";
        }
    }

    // factor zero-curves: sign grid marching with refined crossings
    double dx = (bb.xhi - bb.xlo) / kGrid;
    double dy = (bb.yhi - bb.ylo) / kGrid;
    for (const MultiPoly& f : partition.factors) {
        std::vector<std::vector<double>> val(kGrid + 1, std::vector<double>(kGrid + 1));
        for (int i = 0; i <= kGrid; ++i) {
            for (int j = 0; j <= kGrid; ++j) {
                val[i][j] = f.eval(std::span<const double>(
                    std::vector<double>{bb.xlo + i * dx, bb.ylo + j * dy}));
            }
        }
        svg << "<g stroke='#303030' stroke-width='1.1' fill='none'>\n";
        for (int i = 0; i < kGrid; ++i) {
            for (int j = 0; j < kGrid; ++j) {
                double x0 = bb.xlo + i * dx, y0 = bb.ylo + j * dy;
                struct Pt {
                    double x, y;
                };
                std::vector<Pt> hits;
                auto edge = [&](double ax, double ay, double bx, double by, double fa, double fb) {
                    if (fa == 0.0) {
                        hits.push_back({ax, ay});
                        return;
                    }
                    if (fb == 0.0 || (fa < 0) == (fb < 0)) return;
                    double s = refine_crossing(f, ax, ay, bx, by, fa);
                    hits.push_back({ax + s * (bx - ax), ay + s * (by - ay)});
                };
                edge(x0, y0, x0 + dx, y0, val[i][j], val[i + 1][j]);
                edge(x0 + dx, y0, x0 + dx, y0 + dy, val[i + 1][j], val[i + 1][j + 1]);
                edge(x0, y0 + dy, x0 + dx, y0 + dy, val[i][j + 1], val[i + 1][j + 1]);
                edge(x0, y0, x0, y0 + dy, val[i][j], val[i][j + 1]);
                if (hits.size() >= 2) {
                    svg << "<line x1='" << sx(hits[0].x) << "' y1='" << sy(hits[0].y) << "' x2='"
                        << sx(hits[1].x) << "' y2='" << sy(hits[1].y) << "'/>\n";
                }
            }
        }
        svg << "</g>\n";
    }

    // input points
    for (std::size_t c = 0; c < collections.size(); ++c) {
        const char* color = kPointColors[c % 6];
        for (const Point& p : collections[c]) {
            svg << "<circle cx='" << sx(p[0].get_d()) << "' cy='" << sy(p[1].get_d())
                << "' r='2.2' fill='" << color << "'/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace pfn
