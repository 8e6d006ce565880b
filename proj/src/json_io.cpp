#include "inbox/json_io.hpp"

#include <Eigen/Cholesky>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace inbox {

namespace {

constexpr double kPi = 3.14159265358979323846;

double require_number(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw InputError(std::string("set schema: missing or non-numeric \"") + key + "\"");
    }
    return j[key].get<double>();
}

VectorXd parse_vector(const ordered_json& j, const char* key, int dim) {
    if (!j.contains(key) || !j[key].is_array() || (int)j[key].size() != dim) {
        throw InputError(std::string("set schema: \"") + key + "\" must be an array of length " +
                         std::to_string(dim));
    }
    VectorXd v(dim);
    for (int i = 0; i < dim; ++i) {
        if (!j[key][i].is_number()) {
            throw InputError(std::string("set schema: \"") + key + "\" has a non-numeric entry");
        }
        v(i) = j[key][i].get<double>();
    }
    return v;
}

}  // namespace

ConvexSet parse_set(const ordered_json& j) {
    if (j.contains("polygon")) {
        const auto& pj = j["polygon"];
        if (!pj.contains("vertices") || !pj["vertices"].is_array()) {
            throw InputError("set schema: \"polygon\" needs a \"vertices\" array");
        }
        std::vector<Vector2d> verts;
        for (const auto& vj : pj["vertices"]) {
            if (!vj.is_array() || vj.size() != 2 || !vj[0].is_number() || !vj[1].is_number()) {
                throw InputError("set schema: polygon vertices must be [x, y] pairs");
            }
            verts.emplace_back(vj[0].get<double>(), vj[1].get<double>());
        }
        return polygon_to_halfspaces(make_polygon(std::move(verts)));
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw InputError("set schema: missing integer \"dim\"");
    }
    const int dim = j["dim"].get<int>();
    if (!j.contains("constraints") || !j["constraints"].is_array() || j["constraints"].empty()) {
        throw InputError("set schema: missing non-empty \"constraints\" array");
    }
    std::vector<Inequality> ineqs;
    for (const auto& cj : j["constraints"]) {
        const std::string type = cj.value("type", "");
        if (type == "linear") {
            LinearIneq lin;
            lin.p = parse_vector(cj, "p", dim);
            lin.b = require_number(cj, "b");
            ineqs.emplace_back(std::move(lin));
        } else if (type == "quadratic") {
            QuadraticIneq q;
            if (!cj.contains("A") || !cj["A"].is_array() || (int)cj["A"].size() != dim) {
                throw InputError("set schema: quadratic \"A\" must be a dim x dim matrix");
            }
            q.A.resize(dim, dim);
            for (int r = 0; r < dim; ++r) {
                const auto& row = cj["A"][r];
                if (!row.is_array() || (int)row.size() != dim) {
                    throw InputError("set schema: quadratic \"A\" must be a dim x dim matrix");
                }
                for (int c = 0; c < dim; ++c) q.A(r, c) = row[c].get<double>();
            }
            q.b = parse_vector(cj, "b", dim);
            q.c = require_number(cj, "c");
            ineqs.emplace_back(std::move(q));
        } else {
            throw InputError("set schema: constraint \"type\" must be \"linear\" or "
                             "\"quadratic\"");
        }
    }
    return make_convex_set(dim, std::move(ineqs));
}

ConvexSet parse_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return parse_set(j);
}

Rectangle2D parse_rectangle(const ordered_json& j) {
    Rectangle2D r;
    const VectorXd x = parse_vector(j, "x", 2);
    const VectorXd u = parse_vector(j, "u", 2);
    const VectorXd v = parse_vector(j, "v", 2);
    r.x = Vector2d(x(0), x(1));
    r.u = Vector2d(u(0), u(1));
    r.v = Vector2d(v(0), v(1));
    return r;
}

Rectangle2D parse_rectangle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open rectangle file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return parse_rectangle(j);
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

ordered_json to_json(const BoxRegion& box) {
    ordered_json xl = ordered_json::array();
    ordered_json xu = ordered_json::array();
    for (Eigen::Index i = 0; i < box.xl.size(); ++i) {
        xl.push_back(round12(box.xl(i)));
        xu.push_back(round12(box.xu(i)));
    }
    ordered_json j;
    j["xl"] = std::move(xl);
    j["xu"] = std::move(xu);
    return j;
}

ordered_json to_json(const Rectangle2D& rect) {
    ordered_json j;
    j["x"] = {round12(rect.x.x()), round12(rect.x.y())};
    j["u"] = {round12(rect.u.x()), round12(rect.u.y())};
    j["v"] = {round12(rect.v.x()), round12(rect.v.y())};
    return j;
}

std::string set_digest(const ConvexSet& set) {
    std::ostringstream canon;
    canon.precision(17);
    canon << "dim:" << set.dim << ";";
    for (const auto& iq : set.ineqs) {
        if (const auto* lin = std::get_if<LinearIneq>(&iq)) {
            canon << "L:";
            for (Eigen::Index i = 0; i < lin->p.size(); ++i) canon << lin->p(i) << ",";
            canon << lin->b << ";";
        } else {
            const auto& q = std::get<QuadraticIneq>(iq);
            canon << "Q:";
            for (Eigen::Index r = 0; r < q.A.rows(); ++r) {
                for (Eigen::Index c = 0; c < q.A.cols(); ++c) canon << q.A(r, c) << ",";
            }
            for (Eigen::Index i = 0; i < q.b.size(); ++i) canon << q.b(i) << ",";
            canon << q.c << ";";
        }
    }
    const std::string s = canon.str();
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return std::string("fnv1a:") + buf;
}

std::optional<double> exact_area(const ConvexSet& set) {
    if (set.dim != 2) return std::nullopt;
    if (set.polygon) return area(*set.polygon);
    if (set.ineqs.size() == 1) {
        if (const auto* q = std::get_if<QuadraticIneq>(&set.ineqs.front())) {
            Eigen::LLT<MatrixXd> llt(q->A);
            if (llt.info() == Eigen::Success) {
                const VectorXd center = llt.solve(-q->b);
                const double level = center.dot(q->A * center) - q->c;
                const double det = q->A.determinant();
                if (level > 0.0 && det > 0.0) return kPi * level / std::sqrt(det);
            }
        }
    }
    return std::nullopt;
}

}  // namespace inbox
